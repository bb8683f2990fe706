#pragma once

#include "secnoma/channel.hpp"
#include "secnoma/power_min.hpp"
#include "secnoma/secrecy.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace secnoma {

/// Fractions of the fading block given to each user; t_k >= 0 and sum <= 1.
struct TimeAllocation {
    std::vector<double> ratios;

    void validate() const;
    double total() const;
};

/// t * [log2((1 + P gamma) / (1 + P phi))]^+ with phi = gbar_e ln(1/epsilon).
double tdma_user_rate(double gain, double eaves_avg_gain, double outage_budget,
                      double power, double time_ratio);

enum class TimeSharing { equal_time, optimal_time };

struct TdmaMaxMin {
    double rate = 0.0;
    TimeAllocation time;
};

/// Max-min TDMA confidential rate at fixed per-slot power P.
///
/// equal_time gives every user 1/K. optimal_time equalizes the user rates,
/// t_k proportional to 1/c_k with c_k the full-slot rate of user k. When some
/// user has c_k = 0 the rate is 0 and the equal split is returned.
TdmaMaxMin tdma_maxmin(const ChannelRealization& channel, double outage_budget, double power,
                       TimeSharing mode);

struct TdmaPower {
    std::vector<double> slot_powers;  // power used inside each user's slot
    double average_power = 0.0;       // sum_k t_k P_k
    double peak_power = 0.0;          // max_k P_k
};

/// Smallest per-slot powers giving every user rate >= Q with equal time sharing.
Outcome<TdmaPower> tdma_min_power(const ChannelRealization& channel,
                                  const SecrecyRequirement& req);

struct MaxMinComparison {
    double noma = 0.0;
    double tdma_optimal = 0.0;
    double tdma_equal = 0.0;
    double ratio = 0.0;  // noma / tdma_optimal
    bool dominance_holds = false;
};

/// Runs NOMA and both TDMA variants on one instance. Two users use the closed
/// form, more users the bisection. `dominance_holds` checks
/// noma >= tdma_optimal >= tdma_equal, with strict first inequality when the
/// gains differ and equality within 1e-8 when they are all equal.
MaxMinComparison compare_maxmin(const ChannelRealization& channel, double outage_budget,
                                double power);

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

struct RateRegionBoundary {
    std::vector<RatePoint> noma;  // P_2 swept uniformly over [0, P]
    std::vector<RatePoint> tdma;  // t_2 swept uniformly over [0, 1]
};

/// Upper boundaries of the two-user confidential rate regions; `samples` >= 3
/// points each, endpoints included.
RateRegionBoundary noma_rate_region_boundary(const ChannelRealization& channel,
                                             double outage_budget, double power,
                                             std::size_t samples);

/// Slope changes of r1 as a function of r2 along a boundary:
/// s_{i+1} - s_i with s_i = (r1_i - r1_{i-1}) / (r2_i - r2_{i-1}). Nonpositive
/// everywhere for a concave boundary, zero for an affine one.
std::vector<double> boundary_second_differences(std::span<const RatePoint> boundary);

} // namespace secnoma

#pragma once

#include "secnoma/channel.hpp"
#include "secnoma/power_min.hpp"
#include "secnoma/secrecy.hpp"

#include <cstddef>

namespace secnoma {

inline constexpr double kDefaultRateTolerance = 1e-10;

/// Max-min confidential rate under a total power budget.
///
/// `allocation` is empty only when the budget is too small for the bisection
/// to certify any rate above its tolerance; `rate` is 0 in that case.
struct MaxMinSolution {
    double rate = 0.0;
    PowerAllocation allocation;
    std::size_t iterations_used = 0;
};

/// True iff gamma_k > phi for every user, i.e. some positive common rate is achievable.
bool check_positive_rate_feasibility(const ChannelRealization& channel, double outage_budget);

/// Bisection on the common rate Q over [0, log2(1 + gamma_1 P)].
///
/// Each step solves the power-minimization problem at the midpoint and keeps
/// it when that problem is feasible and its total power fits the budget. The
/// loop runs while the bracket is at least `tolerance` wide and returns the
/// last accepted point.
Outcome<MaxMinSolution> solve_maxmin_bisection(const ChannelRealization& channel,
                                               double outage_budget, double power_budget,
                                               double tolerance = kDefaultRateTolerance);

/// Number of halvings the bisection performs on a bracket of the given width.
std::size_t bisection_iteration_count(double bracket_width, double tolerance);

/// Closed-form two-user optimum. Throws std::domain_error unless K = 2 and
/// gamma_1 > phi, std::invalid_argument for a nonpositive budget.
MaxMinSolution solve_maxmin_two_user(const ChannelRealization& channel, double outage_budget,
                                     double power_budget);

/// Share of the budget given to the weaker user at the two-user optimum.
/// Requires gamma_2 >= gamma_1 > phi > 0 and P > 0.
double optimal_power_ratio_user1(double gain1, double gain2, double phi, double power_budget);

/// Upper bounds on 2^Q for two users: b1 from the strong user's condition,
/// b2 from the weak user's recursion condition, b3 from the power budget.
/// b3 is always the smallest on feasible instances.
struct BoundTriple {
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

BoundTriple bound_triple(double gain1, double gain2, double phi, double power_budget);

} // namespace secnoma

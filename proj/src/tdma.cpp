#include "secnoma/tdma.hpp"

#include "secnoma/maxmin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace secnoma {

namespace {

double full_slot_rate(double gain, double phi, double power) {
    return std::max(0.0, std::log2((1.0 + power * gain) / (1.0 + power * phi)));
}

void check_power(double power) {
    if (!std::isfinite(power) || !(power > 0.0))
        throw std::invalid_argument("transmit power must be positive");
}

} // namespace

void TimeAllocation::validate() const {
    for (double t : ratios)
        if (!(t >= 0.0) || !std::isfinite(t))
            throw std::invalid_argument("time ratios must be nonnegative");
    if (total() > 1.0 + 1e-12)
        throw std::invalid_argument("time ratios must sum to at most 1");
}

double TimeAllocation::total() const {
    return std::accumulate(ratios.begin(), ratios.end(), 0.0);
}

double tdma_user_rate(double gain, double eaves_avg_gain, double outage_budget, double power,
                      double time_ratio) {
    check_power(power);
    if (!(gain > 0.0) || !(eaves_avg_gain > 0.0))
        throw std::invalid_argument("gains must be positive");
    if (!(time_ratio >= 0.0 && time_ratio <= 1.0))
        throw std::invalid_argument("time ratio must lie in [0, 1]");
    return time_ratio * full_slot_rate(gain, stringency(eaves_avg_gain, outage_budget), power);
}

TdmaMaxMin tdma_maxmin(const ChannelRealization& channel, double outage_budget, double power,
                       TimeSharing mode) {
    check_power(power);
    const std::size_t n = channel.num_users();
    const double phi = stringency(channel, outage_budget);
    std::vector<double> rates(n);
    for (std::size_t k = 0; k < n; ++k)
        rates[k] = full_slot_rate(channel.gain(k), phi, power);

    TdmaMaxMin result;
    const double share = 1.0 / static_cast<double>(n);
    result.time.ratios.assign(n, share);
    const double worst = *std::min_element(rates.begin(), rates.end());
    if (worst <= 0.0)
        return result;

    if (mode == TimeSharing::equal_time) {
        result.rate = share * worst;
        return result;
    }
    double inverse_sum = 0.0;
    for (double c : rates)
        inverse_sum += 1.0 / c;
    for (std::size_t k = 0; k < n; ++k)
        result.time.ratios[k] = (1.0 / rates[k]) / inverse_sum;
    result.rate = 1.0 / inverse_sum;
    return result;
}

Outcome<TdmaPower> tdma_min_power(const ChannelRealization& channel,
                                  const SecrecyRequirement& req) {
    req.validate();
    const std::size_t n = channel.num_users();
    const double phi = stringency(channel, req);
    // Each user gets 1/K of the block, so its slot must carry K Q bits per use.
    const double target = std::exp2(static_cast<double>(n) * req.qos_rate);

    TdmaPower result;
    InfeasibleVerdict verdict{{}, InfeasibleReason::slot_condition};
    for (std::size_t k = 0; k < n; ++k) {
        const double denominator = channel.gain(k) - phi * target;
        if (!(denominator > kDenominatorFloor)) {
            verdict.failing_users.push_back(k);
            continue;
        }
        result.slot_powers.push_back((target - 1.0) / denominator);
    }
    if (!verdict.failing_users.empty())
        return verdict;
    result.average_power = std::accumulate(result.slot_powers.begin(), result.slot_powers.end(),
                                           0.0) / static_cast<double>(n);
    result.peak_power = *std::max_element(result.slot_powers.begin(), result.slot_powers.end());
    return result;
}

MaxMinComparison compare_maxmin(const ChannelRealization& channel, double outage_budget,
                                double power) {
    check_power(power);
    MaxMinComparison c;
    if (channel.num_users() == 2 && check_positive_rate_feasibility(channel, outage_budget)) {
        c.noma = solve_maxmin_two_user(channel, outage_budget, power).rate;
    } else {
        const auto outcome = solve_maxmin_bisection(channel, outage_budget, power);
        if (is_feasible(outcome))
            c.noma = std::get<MaxMinSolution>(outcome).rate;
    }
    c.tdma_optimal = tdma_maxmin(channel, outage_budget, power, TimeSharing::optimal_time).rate;
    c.tdma_equal = tdma_maxmin(channel, outage_budget, power, TimeSharing::equal_time).rate;
    c.ratio = c.tdma_optimal > 0.0 ? c.noma / c.tdma_optimal : 0.0;

    const auto gains = channel.gains();
    const bool all_equal = std::all_of(gains.begin(), gains.end(),
                                       [&](double g) { return g == gains.front(); });
    const bool ordered = c.tdma_optimal >= c.tdma_equal - 1e-12;
    if (c.tdma_optimal <= 0.0)
        c.dominance_holds = ordered && c.noma >= 0.0;
    else if (all_equal)
        c.dominance_holds = ordered && std::abs(c.noma - c.tdma_optimal) < 1e-8;
    else
        c.dominance_holds = ordered && c.noma > c.tdma_optimal;
    return c;
}

RateRegionBoundary noma_rate_region_boundary(const ChannelRealization& channel,
                                             double outage_budget, double power,
                                             std::size_t samples) {
    if (channel.num_users() != 2)
        throw std::domain_error("rate region boundary requires exactly two users");
    if (!check_positive_rate_feasibility(channel, outage_budget))
        throw std::domain_error("rate region is empty (gamma_1 <= phi)");
    check_power(power);
    if (samples < 3)
        throw std::invalid_argument("at least three boundary samples are required");

    const double g1 = channel.gain(0);
    const double g2 = channel.gain(1);
    const double phi = stringency(channel, outage_budget);
    const double c1 = full_slot_rate(g1, phi, power);
    const double c2 = full_slot_rate(g2, phi, power);

    RateRegionBoundary region;
    region.noma.reserve(samples);
    region.tdma.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double p2 = frac * power;
        // User 1 sees user 2's power as interference; user 2 decodes interference-free.
        const double r1 =
            std::log2((1.0 + g1 * power) * (1.0 + phi * p2) / ((1.0 + g1 * p2) * (1.0 + phi * power)));
        const double r2 = std::log2((1.0 + g2 * p2) / (1.0 + phi * p2));
        region.noma.push_back({r1, r2});
        region.tdma.push_back({(1.0 - frac) * c1, frac * c2});
    }
    return region;
}

std::vector<double> boundary_second_differences(std::span<const RatePoint> boundary) {
    std::vector<double> out;
    if (boundary.size() < 3)
        return out;
    auto slope = [&](std::size_t i) {
        return (boundary[i].r1 - boundary[i - 1].r1) / (boundary[i].r2 - boundary[i - 1].r2);
    };
    out.reserve(boundary.size() - 2);
    for (std::size_t i = 1; i + 1 < boundary.size(); ++i)
        out.push_back(slope(i + 1) - slope(i));
    return out;
}

} // namespace secnoma

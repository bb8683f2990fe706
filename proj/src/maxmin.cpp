#include "secnoma/maxmin.hpp"

#include <cmath>
#include <stdexcept>

namespace secnoma {

namespace {

struct TwoUserTerms {
    double psi;
    double denominator;  // shared by P1* and P2*
};

TwoUserTerms two_user_terms(double g1, double g2, double phi, double p) {
    const double one_phi_p = 1.0 + phi * p;
    const double psi = std::sqrt(one_phi_p * (4.0 * (1.0 + g1 * p) * (g1 - phi) * (g2 - phi) +
                                              one_phi_p * (g2 - g1) * (g2 - g1)));
    const double denominator = 2.0 * (one_phi_p * g1 * g2 - phi * phi * (1.0 + g1 * p));
    return {psi, denominator};
}

double user1_power(double g1, double g2, double phi, double p, const TwoUserTerms& t) {
    const double one_phi_p = 1.0 + phi * p;
    return (one_phi_p * (g2 + g1 * (1.0 + 2.0 * g2 * p) - 2.0 * phi * (1.0 + g1 * p)) - t.psi) /
           t.denominator;
}

double budget_bound(double g1, double g2, double phi, double p, const TwoUserTerms& t) {
    const double one_phi_p = 1.0 + phi * p;
    return (t.psi - one_phi_p * (g2 - g1)) / (2.0 * one_phi_p * (g1 - phi));
}

void check_two_user_inputs(double g1, double g2, double phi, double p) {
    if (!(phi > 0.0) || !(g1 > phi) || !(g2 >= g1))
        throw std::invalid_argument("two-user solution requires gamma_2 >= gamma_1 > phi > 0");
    if (!std::isfinite(p) || !(p > 0.0))
        throw std::invalid_argument("power budget must be positive");
}

} // namespace

bool check_positive_rate_feasibility(const ChannelRealization& channel, double outage_budget) {
    const double phi = stringency(channel, outage_budget);
    // Gains are ascending, so the weakest user decides.
    return channel.gain(0) > phi;
}

std::size_t bisection_iteration_count(double bracket_width, double tolerance) {
    std::size_t n = 0;
    for (double w = bracket_width; w >= tolerance; w *= 0.5)
        ++n;
    return n;
}

Outcome<MaxMinSolution> solve_maxmin_bisection(const ChannelRealization& channel,
                                               double outage_budget, double power_budget,
                                               double tolerance) {
    if (!std::isfinite(tolerance) || !(tolerance > 0.0))
        throw std::invalid_argument("rate tolerance must be positive");
    if (!std::isfinite(power_budget) || !(power_budget > 0.0))
        throw std::invalid_argument("power budget must be positive");

    if (!check_positive_rate_feasibility(channel, outage_budget)) {
        const double phi = stringency(channel, outage_budget);
        InfeasibleVerdict verdict{{}, InfeasibleReason::positive_rate_condition};
        for (std::size_t k = 0; k < channel.num_users(); ++k)
            if (channel.gain(k) <= phi)
                verdict.failing_users.push_back(k);
        return verdict;
    }

    double lower = 0.0;
    double upper = std::log2(1.0 + channel.gain(0) * power_budget);
    MaxMinSolution best;
    while (upper - lower >= tolerance) {
        const double q = 0.5 * (upper + lower);
        ++best.iterations_used;
        const auto outcome = solve_min_power(channel, {q, outage_budget});
        if (is_feasible(outcome) &&
            std::get<PowerMinSolution>(outcome).total_power <= power_budget) {
            lower = q;
            best.rate = q;
            best.allocation = std::get<PowerMinSolution>(outcome).allocation;
        } else {
            upper = q;
        }
    }
    return best;
}

MaxMinSolution solve_maxmin_two_user(const ChannelRealization& channel, double outage_budget,
                                     double power_budget) {
    if (channel.num_users() != 2)
        throw std::domain_error("two-user solution requires exactly two users");
    if (!check_positive_rate_feasibility(channel, outage_budget))
        throw std::domain_error("no positive confidential rate is achievable (gamma_1 <= phi)");
    const double g1 = channel.gain(0);
    const double g2 = channel.gain(1);
    const double phi = stringency(channel, outage_budget);
    check_two_user_inputs(g1, g2, phi, power_budget);

    const TwoUserTerms t = two_user_terms(g1, g2, phi, power_budget);
    const double p1 = user1_power(g1, g2, phi, power_budget, t);
    const double p2 = (t.psi - (g1 + g2) - phi * (g2 * power_budget - g1 * power_budget - 2.0)) /
                      t.denominator;
    MaxMinSolution solution;
    solution.rate = std::log2(budget_bound(g1, g2, phi, power_budget, t));
    solution.allocation = PowerAllocation({p1, p2});
    return solution;
}

double optimal_power_ratio_user1(double gain1, double gain2, double phi, double power_budget) {
    check_two_user_inputs(gain1, gain2, phi, power_budget);
    const TwoUserTerms t = two_user_terms(gain1, gain2, phi, power_budget);
    return user1_power(gain1, gain2, phi, power_budget, t) / power_budget;
}

BoundTriple bound_triple(double gain1, double gain2, double phi, double power_budget) {
    check_two_user_inputs(gain1, gain2, phi, power_budget);
    const double g1 = gain1;
    const double g2 = gain2;
    const double radicand = 4.0 * phi * phi * g1 - 3.0 * phi * g1 * g1 - 6.0 * phi * g1 * g2 +
                            4.0 * g1 * g1 * g2 + phi * g2 * g2;
    BoundTriple b;
    b.b1 = g2 / phi;
    b.b2 = (std::sqrt(radicand / phi) - (g2 - g1)) / (2.0 * (g1 - phi));
    b.b3 = budget_bound(g1, g2, phi, power_budget, two_user_terms(g1, g2, phi, power_budget));
    return b;
}

} // namespace secnoma

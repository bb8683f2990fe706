#include "secnoma/power_min.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace secnoma {

std::string_view to_string(InfeasibleReason reason) {
    switch (reason) {
    case InfeasibleReason::user_condition_k: return "user_condition_k";
    case InfeasibleReason::user_condition_K: return "user_condition_K";
    case InfeasibleReason::slot_condition: return "slot_condition";
    case InfeasibleReason::positive_rate_condition: return "positive_rate_condition";
    }
    return "unknown";
}

Outcome<PowerMinSolution> solve_min_power(const ChannelRealization& channel,
                                          const SecrecyRequirement& req) {
    req.validate();
    const std::size_t n = channel.num_users();
    const double phi = stringency(channel, req);
    const double two_q = std::exp2(req.qos_rate);
    const double excess = two_q - 1.0;

    std::vector<double> powers(n);
    double later = 0.0;
    for (std::size_t pos = n; pos-- > 0;) {
        const double g = channel.gain(pos);
        const double denominator = g * (1.0 - phi * excess * later) - phi * two_q;
        if (!(denominator > kDenominatorFloor)) {
            InfeasibleVerdict verdict;
            verdict.reason = pos + 1 == n ? InfeasibleReason::user_condition_K
                                          : InfeasibleReason::user_condition_k;
            for (std::size_t i = 0; i < pos; ++i)
                if (channel.gain(i) <= phi * two_q)
                    verdict.failing_users.push_back(i);
            verdict.failing_users.push_back(pos);
            return verdict;
        }
        const double p = excess * (1.0 + phi * later) * (1.0 + g * later) / denominator;
        if (!std::isfinite(p))
            throw std::overflow_error("solve_min_power: power overflow");
        powers[pos] = p;
        later += p;
    }

    PowerMinSolution solution{PowerAllocation(std::move(powers)), {}, 0.0};
    solution.total_power = solution.allocation.total();
    solution.rate_pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        solution.rate_pairs.push_back(
            {max_codeword_rate(channel, solution.allocation, k), req.qos_rate});
    return solution;
}

UserSelection select_users(const ChannelRealization& channel, const SecrecyRequirement& req,
                           SelectionPolicy policy) {
    req.validate();
    if (policy != SelectionPolicy::best_channel_greedy)
        throw std::invalid_argument("select_users: unsupported policy");
    const double threshold = stringency(channel, req) * std::exp2(req.qos_rate);

    std::vector<std::size_t> candidates;
    for (std::size_t i = channel.num_users(); i-- > 0;)
        if (channel.gain(i) > threshold)
            candidates.push_back(i);  // strongest first

    UserSelection selection;
    std::vector<std::size_t> trial;
    for (std::size_t c : candidates) {
        trial.insert(trial.begin(), c);  // c is weaker than everything already chosen
        auto outcome = solve_min_power(channel.subset(trial), req);
        if (!is_feasible(outcome))
            break;
        selection.users = trial;
        selection.solution = std::get<PowerMinSolution>(std::move(outcome));
    }
    return selection;
}

double max_feasible_qos(const ChannelRealization& channel, double outage_budget,
                        double tolerance) {
    const double phi = stringency(channel, outage_budget);
    if (channel.gain(0) <= phi)
        return 0.0;
    // gamma_K > phi 2^Q bounds Q from above.
    double lo = 0.0;
    double hi = std::log2(channel.gain(channel.num_users() - 1) / phi);
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (is_feasible(solve_min_power(channel, {mid, outage_budget})))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::optional<GridSearchResult> bruteforce_min_power(const ChannelRealization& channel,
                                                     const SecrecyRequirement& req, double step,
                                                     double upper) {
    req.validate();
    const std::size_t n = channel.num_users();
    if (n > 3)
        throw std::invalid_argument("bruteforce_min_power: at most three users");
    if (!(step > 0.0) || !(upper >= step))
        throw std::invalid_argument("bruteforce_min_power: need 0 < step <= upper");

    const auto points = static_cast<std::size_t>(std::floor(upper / step + 1e-9));
    std::vector<double> powers(n, step);
    std::optional<GridSearchResult> best;

    auto feasible = [&] {
        for (std::size_t k = n; k-- > 0;)
            if (secrecy_outage_given_gain(channel.gain(k), powers, channel.eaves_avg_gain(),
                                          req.qos_rate, k) > req.outage_budget)
                return false;
        return true;
    };

    // Coordinates are filled from the last; the first coordinate is scanned
    // innermost and the scan stops at the first feasible value since every
    // larger value costs more.
    std::function<void(std::size_t, double)> scan = [&](std::size_t dim, double partial) {
        for (std::size_t i = 1; i <= points; ++i) {
            const double p = static_cast<double>(i) * step;
            const double sum = partial + p;
            if (best && sum >= best->total_power)
                return;
            powers[dim] = p;
            if (dim == 0) {
                if (feasible()) {
                    best = GridSearchResult{powers, sum};
                    return;
                }
            } else {
                scan(dim - 1, sum);
            }
        }
    };
    scan(n - 1, 0.0);
    return best;
}

double verify_optimality_bruteforce(const ChannelRealization& channel,
                                    const SecrecyRequirement& req, double step,
                                    std::optional<double> upper) {
    const auto outcome = solve_min_power(channel, req);
    if (!is_feasible(outcome))
        throw std::domain_error("verify_optimality_bruteforce: instance is infeasible");
    const double closed = std::get<PowerMinSolution>(outcome).total_power;
    const auto grid =
        bruteforce_min_power(channel, req, step, upper.value_or(closed + 3.0 * step));
    if (!grid)
        return std::numeric_limits<double>::infinity();
    return (grid->total_power - closed) / closed;
}

} // namespace secnoma

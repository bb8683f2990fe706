#pragma once

#include "secnoma/channel.hpp"
#include "secnoma/secrecy.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace secnoma {

/// Denominators at or below this value are treated as infeasible.
inline constexpr double kDenominatorFloor = 1e-12;

enum class InfeasibleReason {
    user_condition_k,        // a user decoded before the last fails its recursion condition
    user_condition_K,        // the last-decoded user fails gamma_K > phi 2^Q
    slot_condition,          // a TDMA slot cannot meet its rate target at any power
    positive_rate_condition, // some gamma_k <= phi: no positive confidential rate exists
};

std::string_view to_string(InfeasibleReason reason);

/// Why a problem instance has no solution. `failing_users` is nonempty, ascending,
/// zero-based.
struct InfeasibleVerdict {
    std::vector<std::size_t> failing_users;
    InfeasibleReason reason = InfeasibleReason::user_condition_k;
};

template <class T>
using Outcome = std::variant<T, InfeasibleVerdict>;

template <class T>
bool is_feasible(const Outcome<T>& outcome) {
    return std::holds_alternative<T>(outcome);
}

struct PowerMinSolution {
    PowerAllocation allocation;
    std::vector<RatePair> rate_pairs;  // R_t maximal at the solution, R_s = Q
    double total_power = 0.0;
};

/// Minimum total power meeting R_s >= Q and outage <= epsilon for every user.
///
/// Runs the closed-form backward recursion from the strongest user. The
/// feasibility condition of each position is checked right before its division.
/// On failure the verdict names the first position that fails along the
/// recursion plus every user with gamma_i <= phi 2^Q (those fail for any
/// suffix power).
Outcome<PowerMinSolution> solve_min_power(const ChannelRealization& channel,
                                          const SecrecyRequirement& req);

enum class SelectionPolicy { best_channel_greedy };

struct UserSelection {
    std::vector<std::size_t> users;  // ascending indices into the input channel
    std::optional<PowerMinSolution> solution;

    bool suspended() const { return users.empty(); }
};

/// Drops users with gamma_i <= phi 2^Q, then adds the strongest remaining users
/// one at a time until the joint problem would become infeasible.
UserSelection select_users(const ChannelRealization& channel, const SecrecyRequirement& req,
                           SelectionPolicy policy = SelectionPolicy::best_channel_greedy);

/// Largest Q for which solve_min_power is feasible (no power budget).
/// Returns 0 when some gamma_k <= phi.
double max_feasible_qos(const ChannelRealization& channel, double outage_budget,
                        double tolerance = 1e-12);

struct GridSearchResult {
    std::vector<double> powers;
    double total_power = 0.0;
};

/// Exhaustive search over the grid {step, 2 step, ...} <= upper in every
/// coordinate for the cheapest allocation whose closed-form outages are all
/// <= epsilon. Independent of the recursion. K <= 3.
std::optional<GridSearchResult> bruteforce_min_power(const ChannelRealization& channel,
                                                     const SecrecyRequirement& req, double step,
                                                     double upper);

/// (grid optimum - closed-form optimum) / closed-form optimum, searching up to
/// `upper` (default: closed-form total plus three steps). +inf when the grid
/// holds no feasible point. Throws std::domain_error if the instance is infeasible.
double verify_optimality_bruteforce(const ChannelRealization& channel,
                                    const SecrecyRequirement& req, double step,
                                    std::optional<double> upper = std::nullopt);

} // namespace secnoma

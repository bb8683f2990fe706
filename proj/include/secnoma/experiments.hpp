#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace secnoma {

enum class SweepKind {
    power_vs_Q,       // min total power vs QoS rate, fixed gains
    rate_vs_P,        // max-min rate vs power budget, fixed gains
    beta_vs_eps,      // weak-user power share of the two-user optimum
    avg_rate_vs_eps,  // fading average of the max-min rate
    gain_vs_K,        // fading average, NOMA over TDMA vs number of users
};

std::string_view to_string(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view name);
bool is_fading(SweepKind kind);

/// `steps` evenly spaced points from start to stop inclusive.
struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 2;

    std::vector<double> points() const;
};

/// One experiment. The axis overrides the parameter of the same name in
/// `fixed_params` at each point; missing parameters take the defaults below.
///
/// Fixed-gain kinds: num_users (2), gain_base_db (23), gain_step_db (2),
/// giving gamma_k = base + step k dB; eaves_db (20), eps (0.1), q (0.1),
/// power_dbm (20), tolerance (1e-10).
/// Fading kinds: num_users (2), user_distance (50), eaves_distance (80),
/// alpha (4), user_noise_dbm (-70), eaves_noise_dbm (-70), power_dbm (20),
/// eps (0.1), tolerance (1e-10).
struct SweepSpec {
    SweepKind kind = SweepKind::power_vs_Q;
    std::map<std::string, double> fixed_params;
    SweepAxis axis;
    std::uint64_t trials = 5000;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// One CSV row: a (point, scheme, metric) value.
struct AggregateResult {
    double x = 0.0;
    std::string scheme;
    std::string metric;
    double value = 0.0;
    double std_error = 0.0;
    double feasible_frac = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

using ResultTable = std::vector<AggregateResult>;

inline constexpr std::string_view kResultsHeader =
    "x,scheme,metric,value,stderr,feasible_frac,trials,seed";

/// Runs every axis point. Fading kinds reuse the same per-trial seeds at every
/// point, and infeasible realizations contribute rate 0. Infeasible
/// fixed-gain points report value inf (powers) or 0 (rates) with
/// feasible_frac 0.
ResultTable run_sweep(const SweepSpec& spec);

/// CSV with kResultsHeader, rows in table order, floats at 12 significant digits.
void write_results(const ResultTable& table, std::ostream& out);
void write_results(const ResultTable& table, const std::filesystem::path& path);

ResultTable read_results(std::istream& in);
ResultTable read_results(const std::filesystem::path& path);

/// Rows matching scheme and metric, in table order.
ResultTable select_rows(const ResultTable& table, std::string_view scheme,
                        std::string_view metric);

} // namespace secnoma

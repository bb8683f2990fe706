#include "secnoma/cli.hpp"

#include "secnoma/channel.hpp"
#include "secnoma/config.hpp"
#include "secnoma/experiments.hpp"
#include "secnoma/maxmin.hpp"
#include "secnoma/power_min.hpp"
#include "secnoma/secrecy.hpp"
#include "secnoma/tdma.hpp"
#include "secnoma/units.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace secnoma {

namespace {

using nlohmann::json;

struct ChannelArgs {
    std::vector<double> gains_db;
    std::vector<double> gains;
    std::vector<double> user_distances;
    std::optional<double> eaves_db;
    std::optional<double> eaves;
    std::optional<double> eaves_distance;
    double alpha = 4.0;
    double user_noise_dbm = -70.0;
    double eaves_noise_dbm = -70.0;
    std::uint64_t seed = 1;
};

struct CommonArgs {
    ChannelArgs channel;
    double eps = 0.1;
    bool json = false;
};

struct PowerArgs {
    std::optional<double> power_dbm;
    std::optional<double> power_mw;

    double mw() const {
        if (power_dbm && power_mw)
            throw CLI::ValidationError("give only one of --power-dbm and --power-mw");
        if (power_dbm)
            return dbm_to_mw(*power_dbm);
        if (power_mw)
            return *power_mw;
        throw CLI::ValidationError("a power budget is required (--power-dbm or --power-mw)");
    }
};

// Channel in decoding order plus, per decoding position, the 1-based user
// number the caller used.
struct ResolvedChannel {
    ChannelRealization channel;
    std::vector<std::size_t> user_numbers;
};

void add_channel_options(CLI::App& cmd, CommonArgs& a) {
    auto* gdb = cmd.add_option("--gains-db", a.channel.gains_db,
                               "Normalized user gains in dB, comma separated")
                    ->delimiter(',');
    auto* glin = cmd.add_option("--gains", a.channel.gains, "Normalized user gains, linear")
                     ->delimiter(',');
    auto* dist = cmd.add_option("--user-distances", a.channel.user_distances,
                                "Sample one Rayleigh realization at these user distances")
                     ->delimiter(',');
    gdb->excludes(glin)->excludes(dist);
    glin->excludes(dist);
    auto* edb = cmd.add_option("--eaves-db", a.channel.eaves_db,
                               "Eavesdropper average normalized gain in dB");
    auto* elin = cmd.add_option("--eaves", a.channel.eaves,
                                "Eavesdropper average normalized gain, linear");
    edb->excludes(elin);
    cmd.add_option("--eaves-distance", a.channel.eaves_distance, "Eavesdropper distance");
    cmd.add_option("--alpha", a.channel.alpha, "Path-loss exponent")->capture_default_str();
    cmd.add_option("--user-noise-dbm", a.channel.user_noise_dbm, "User noise power (dBm)")
        ->capture_default_str();
    cmd.add_option("--eaves-noise-dbm", a.channel.eaves_noise_dbm,
                   "Eavesdropper noise power (dBm)")
        ->capture_default_str();
    cmd.add_option("--seed", a.channel.seed, "Seed for --user-distances")->capture_default_str();
    cmd.add_option("--eps", a.eps, "Secrecy outage budget in (0, 1)")->capture_default_str();
    cmd.add_flag("--json", a.json, "Print one JSON object instead of text");
}

ResolvedChannel resolve_channel(const ChannelArgs& a) {
    if (!a.user_distances.empty()) {
        if (!a.eaves_distance)
            throw CLI::ValidationError("--user-distances needs --eaves-distance");
        if (a.eaves_db || a.eaves)
            throw CLI::ValidationError("--eaves-db/--eaves conflict with --user-distances");
        NetworkGeometry g{a.user_distances, *a.eaves_distance, a.alpha,
                          dbm_to_mw(a.user_noise_dbm), dbm_to_mw(a.eaves_noise_dbm)};
        ChannelRealization channel = sample_realization(g, a.seed);
        std::vector<std::size_t> numbers(channel.num_users());
        for (std::size_t k = 0; k < numbers.size(); ++k)
            numbers[k] = k + 1;
        return {std::move(channel), std::move(numbers)};
    }
    std::vector<double> gains = a.gains;
    if (!a.gains_db.empty())
        for (double db : a.gains_db)
            gains.push_back(db_to_linear(db));
    if (gains.empty())
        throw CLI::ValidationError("user gains are required (--gains-db, --gains or "
                                   "--user-distances)");
    if (!a.eaves_db && !a.eaves)
        throw CLI::ValidationError("eavesdropper gain is required (--eaves-db or --eaves)");
    const double eaves = a.eaves ? *a.eaves : db_to_linear(*a.eaves_db);

    const auto order = optimal_decoding_order(gains);
    std::vector<double> sorted;
    std::vector<std::size_t> numbers;
    for (std::size_t i : order) {
        sorted.push_back(gains[i]);
        numbers.push_back(i + 1);
    }
    return {ChannelRealization(std::move(sorted), eaves), std::move(numbers)};
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

int report_infeasible(const char* command, const InfeasibleVerdict& v,
                      const ResolvedChannel& rc, bool as_json, std::ostream& out) {
    std::vector<std::size_t> users;
    for (std::size_t k : v.failing_users)
        users.push_back(rc.user_numbers.at(k));
    std::sort(users.begin(), users.end());
    if (as_json) {
        out << json{{"command", command},
                    {"feasible", false},
                    {"reason", std::string(to_string(v.reason))},
                    {"failing_users", users}}
                   .dump()
            << '\n';
    } else {
        out << command << ": infeasible (" << to_string(v.reason) << ")\n";
        out << "failing users:";
        for (std::size_t u : users)
            out << ' ' << u;
        out << '\n';
    }
    return kExitInfeasible;
}

int run_min_power(const CommonArgs& a, double q, std::ostream& out) {
    const ResolvedChannel rc = resolve_channel(a.channel);
    const SecrecyRequirement req{q, a.eps};
    req.validate();
    const auto outcome = solve_min_power(rc.channel, req);
    if (!is_feasible(outcome))
        return report_infeasible("min-power", std::get<InfeasibleVerdict>(outcome), rc, a.json,
                                 out);
    const auto& s = std::get<PowerMinSolution>(outcome);
    const std::size_t n = rc.channel.num_users();

    if (a.json) {
        json users = json::array();
        for (std::size_t k = 0; k < n; ++k)
            users.push_back({{"user", rc.user_numbers[k]},
                             {"decoding_position", k + 1},
                             {"gain_db", linear_to_db(rc.channel.gain(k))},
                             {"power_mw", s.allocation.power(k)},
                             {"power_dbm", mw_to_dbm(s.allocation.power(k))},
                             {"codeword_rate", s.rate_pairs[k].codeword_rate},
                             {"confidential_rate", s.rate_pairs[k].confidential_rate},
                             {"outage", secrecy_outage_closed_form(rc.channel, s.allocation, q, k)}});
        out << json{{"command", "min-power"},
                    {"feasible", true},
                    {"qos_rate", q},
                    {"eps", a.eps},
                    {"eaves_avg_gain", rc.channel.eaves_avg_gain()},
                    {"users", users},
                    {"total_power_mw", s.total_power},
                    {"total_power_dbm", mw_to_dbm(s.total_power)}}
                   .dump()
            << '\n';
        return kExitFeasible;
    }
    out << "min-power: feasible\n";
    out << "qos rate: " << fmt("%.9g", q) << "  eps: " << fmt("%.9g", a.eps)
        << "  eaves avg gain: " << fmt("%.9g", rc.channel.eaves_avg_gain()) << '\n';
    out << "pos  user  gain_db      power_mw         power_dbm    R_t          R_s          outage\n";
    for (std::size_t k = 0; k < n; ++k) {
        char line[256];
        std::snprintf(line, sizeof line, "%-4zu %-5zu %-12.6g %-16.9g %-12.6f %-12.9g %-12.9g %.9g\n",
                      k + 1, rc.user_numbers[k], linear_to_db(rc.channel.gain(k)),
                      s.allocation.power(k), mw_to_dbm(s.allocation.power(k)),
                      s.rate_pairs[k].codeword_rate, s.rate_pairs[k].confidential_rate,
                      secrecy_outage_closed_form(rc.channel, s.allocation, q, k));
        out << line;
    }
    out << "total power: " << fmt("%.9g", s.total_power) << " mW ("
        << fmt("%.6f", mw_to_dbm(s.total_power)) << " dBm)\n";
    return kExitFeasible;
}

int run_max_min(const CommonArgs& a, const PowerArgs& p, double tolerance, std::ostream& out) {
    const ResolvedChannel rc = resolve_channel(a.channel);
    const double budget = p.mw();
    const auto outcome = solve_maxmin_bisection(rc.channel, a.eps, budget, tolerance);
    if (!is_feasible(outcome))
        return report_infeasible("max-min-rate", std::get<InfeasibleVerdict>(outcome), rc,
                                 a.json, out);
    const auto& s = std::get<MaxMinSolution>(outcome);
    const std::size_t n = s.allocation.num_users();

    if (a.json) {
        json users = json::array();
        for (std::size_t k = 0; k < n; ++k)
            users.push_back({{"user", rc.user_numbers[k]},
                             {"decoding_position", k + 1},
                             {"gain_db", linear_to_db(rc.channel.gain(k))},
                             {"power_mw", s.allocation.power(k)},
                             {"power_dbm", mw_to_dbm(s.allocation.power(k))}});
        out << json{{"command", "max-min-rate"},
                    {"feasible", true},
                    {"rate", s.rate},
                    {"iterations", s.iterations_used},
                    {"eps", a.eps},
                    {"power_budget_mw", budget},
                    {"users", users},
                    {"total_power_mw", s.allocation.total()}}
                   .dump()
            << '\n';
        return kExitFeasible;
    }
    out << "max-min-rate: feasible\n";
    out << "rate: " << fmt("%.9g", s.rate) << " bits/channel use\n";
    out << "iterations: " << s.iterations_used << '\n';
    out << "eps: " << fmt("%.9g", a.eps) << "  power budget: " << fmt("%.9g", budget)
        << " mW\n";
    for (std::size_t k = 0; k < n; ++k) {
        char line[192];
        std::snprintf(line, sizeof line,
                      "user %zu (position %zu, gain %.6g dB): %.9g mW (%.6f dBm)\n",
                      rc.user_numbers[k], k + 1, linear_to_db(rc.channel.gain(k)),
                      s.allocation.power(k),
                      mw_to_dbm(s.allocation.power(k)));
        out << line;
    }
    out << "total power: " << fmt("%.9g", s.allocation.total()) << " mW\n";
    return kExitFeasible;
}

int run_compare(const CommonArgs& a, const PowerArgs& p, std::ostream& out) {
    const ResolvedChannel rc = resolve_channel(a.channel);
    const double budget = p.mw();
    if (!check_positive_rate_feasibility(rc.channel, a.eps)) {
        const double phi = stringency(rc.channel, a.eps);
        InfeasibleVerdict v{{}, InfeasibleReason::positive_rate_condition};
        for (std::size_t k = 0; k < rc.channel.num_users(); ++k)
            if (rc.channel.gain(k) <= phi)
                v.failing_users.push_back(k);
        return report_infeasible("compare-oma", v, rc, a.json, out);
    }
    const MaxMinComparison c = compare_maxmin(rc.channel, a.eps, budget);
    if (a.json) {
        out << json{{"command", "compare-oma"},
                    {"feasible", true},
                    {"noma", c.noma},
                    {"tdma_optimal", c.tdma_optimal},
                    {"tdma_equal", c.tdma_equal},
                    {"ratio", c.ratio},
                    {"dominance_holds", c.dominance_holds}}
                   .dump()
            << '\n';
        return kExitFeasible;
    }
    out << "compare-oma: feasible\n";
    out << "noma max-min rate:         " << fmt("%.9g", c.noma) << '\n';
    out << "tdma optimal-time rate:    " << fmt("%.9g", c.tdma_optimal) << '\n';
    out << "tdma equal-time rate:      " << fmt("%.9g", c.tdma_equal) << '\n';
    out << "ratio noma/tdma_optimal:   " << fmt("%.6f", c.ratio) << '\n';
    out << "dominance holds:           " << (c.dominance_holds ? "yes" : "no") << '\n';
    return kExitFeasible;
}

int run_sweep_command(const std::string& config_path, const std::string& output_flag,
                      bool as_json, std::ostream& out) {
    const KeyValueConfig config = load_key_value(config_path);
    const SweepSpec spec = sweep_spec_from_config(config);
    std::string output = output_flag;
    if (output.empty())
        if (const auto it = config.find("output"); it != config.end())
            output = it->second;

    const ResultTable table = run_sweep(spec);
    if (output.empty() || output == "-") {
        write_results(table, out);
        return kExitFeasible;
    }
    write_results(table, std::filesystem::path(output));
    if (as_json)
        out << json{{"command", "sweep"},
                    {"kind", std::string(to_string(spec.kind))},
                    {"output", output},
                    {"rows", table.size()}}
                   .dump()
            << '\n';
    else
        out << "sweep " << to_string(spec.kind) << ": wrote " << table.size() << " rows to "
            << output << '\n';
    return kExitFeasible;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secure NOMA downlink design: power minimization, max-min confidential rate, "
                 "TDMA comparison and experiment sweeps"};
    app.name("secnoma");
    app.require_subcommand(1);

    CommonArgs min_args;
    double q = 0.0;
    auto* min_cmd = app.add_subcommand("min-power", "Minimum power meeting QoS and secrecy");
    add_channel_options(*min_cmd, min_args);
    min_cmd->add_option("--q", q, "QoS floor on the confidential rate (bits/channel use)")
        ->required();

    CommonArgs mm_args;
    PowerArgs mm_power;
    double tolerance = kDefaultRateTolerance;
    auto* mm_cmd = app.add_subcommand("max-min-rate", "Max-min confidential rate under a budget");
    add_channel_options(*mm_cmd, mm_args);
    mm_cmd->add_option("--power-dbm", mm_power.power_dbm, "Power budget (dBm)");
    mm_cmd->add_option("--power-mw", mm_power.power_mw, "Power budget (mW)");
    mm_cmd->add_option("--tolerance", tolerance, "Bisection tolerance on the rate")
        ->capture_default_str();

    CommonArgs cmp_args;
    PowerArgs cmp_power;
    auto* cmp_cmd = app.add_subcommand("compare-oma", "NOMA vs TDMA max-min rate");
    add_channel_options(*cmp_cmd, cmp_args);
    cmp_cmd->add_option("--power-dbm", cmp_power.power_dbm, "Power budget (dBm)");
    cmp_cmd->add_option("--power-mw", cmp_power.power_mw, "Power budget (mW)");

    std::string config_path;
    std::string output_path;
    bool sweep_json = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep from a config file");
    sweep_cmd->add_option("--config", config_path, "key = value sweep description")->required();
    sweep_cmd->add_option("--output", output_path, "CSV path ('-' for standard output)");
    sweep_cmd->add_flag("--json", sweep_json, "Print a JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitFeasible;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*min_cmd)
            return run_min_power(min_args, q, out);
        if (*mm_cmd)
            return run_max_min(mm_args, mm_power, tolerance, out);
        if (*cmp_cmd)
            return run_compare(cmp_args, cmp_power, out);
        if (*sweep_cmd)
            return run_sweep_command(config_path, output_path, sweep_json, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace secnoma

#include "secnoma/experiments.hpp"

#include "secnoma/channel.hpp"
#include "secnoma/maxmin.hpp"
#include "secnoma/parallel.hpp"
#include "secnoma/power_min.hpp"
#include "secnoma/random.hpp"
#include "secnoma/tdma.hpp"
#include "secnoma/units.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace secnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Params = std::map<std::string, double>;

const Params& defaults(SweepKind kind) {
    static const Params fixed_gain = {
        {"num_users", 2},  {"gain_base_db", 23}, {"gain_step_db", 2},  {"eaves_db", 20},
        {"eps", 0.1},      {"q", 0.1},           {"power_dbm", 20},    {"tolerance", 1e-10},
    };
    static const Params fading = {
        {"num_users", 2},        {"user_distance", 50},    {"eaves_distance", 80},
        {"alpha", 4},            {"user_noise_dbm", -70},  {"eaves_noise_dbm", -70},
        {"power_dbm", 20},       {"eps", 0.1},             {"tolerance", 1e-10},
    };
    return is_fading(kind) ? fading : fixed_gain;
}

Params resolve(const SweepSpec& spec, double x) {
    Params p = defaults(spec.kind);
    for (const auto& [k, v] : spec.fixed_params)
        p[k] = v;
    p[spec.axis.name] = x;
    return p;
}

std::size_t user_count(const Params& p) {
    const double n = p.at("num_users");
    if (!(n >= 1.0) || n != std::floor(n) || n > 64.0)
        throw std::invalid_argument("sweep: num_users must be an integer in [1, 64]");
    return static_cast<std::size_t>(n);
}

ChannelRealization fixed_channel(const Params& p) {
    const std::size_t n = user_count(p);
    std::vector<double> gains(n);
    for (std::size_t k = 0; k < n; ++k)
        gains[k] = db_to_linear(p.at("gain_base_db") +
                                p.at("gain_step_db") * static_cast<double>(k + 1));
    return ChannelRealization::from_unsorted(std::move(gains), db_to_linear(p.at("eaves_db")));
}

NetworkGeometry fading_geometry(const Params& p) {
    NetworkGeometry g;
    g.user_distances.assign(user_count(p), p.at("user_distance"));
    g.eaves_distance = p.at("eaves_distance");
    g.path_loss_exponent = p.at("alpha");
    g.user_noise_mw = dbm_to_mw(p.at("user_noise_dbm"));
    g.eaves_noise_mw = dbm_to_mw(p.at("eaves_noise_dbm"));
    g.validate();
    return g;
}

AggregateResult row(const SweepSpec& spec, double x, std::string scheme, std::string metric,
                    double value, double feasible) {
    return {x, std::move(scheme), std::move(metric), value, 0.0, feasible, 1, spec.seed};
}

void sweep_power_vs_q(const SweepSpec& spec, double x, const Params& p, ResultTable& out) {
    const ChannelRealization channel = fixed_channel(p);
    const SecrecyRequirement req{p.at("q"), p.at("eps")};
    const auto noma = solve_min_power(channel, req);
    const auto tdma = tdma_min_power(channel, req);
    const bool noma_ok = is_feasible(noma);
    const bool tdma_ok = is_feasible(tdma);
    out.push_back(row(spec, x, "noma", "min_power",
                      noma_ok ? std::get<PowerMinSolution>(noma).total_power : kInf, noma_ok));
    out.push_back(row(spec, x, "tdma_equal", "avg_power",
                      tdma_ok ? std::get<TdmaPower>(tdma).average_power : kInf, tdma_ok));
    out.push_back(row(spec, x, "tdma_equal", "peak_power",
                      tdma_ok ? std::get<TdmaPower>(tdma).peak_power : kInf, tdma_ok));
}

void sweep_rate_vs_p(const SweepSpec& spec, double x, const Params& p, ResultTable& out) {
    const ChannelRealization channel = fixed_channel(p);
    const double eps = p.at("eps");
    const double power = dbm_to_mw(p.at("power_dbm"));
    const auto noma = solve_maxmin_bisection(channel, eps, power, p.at("tolerance"));
    const bool ok = is_feasible(noma);
    out.push_back(row(spec, x, "noma", "min_rate",
                      ok ? std::get<MaxMinSolution>(noma).rate : 0.0, ok));
    out.push_back(row(spec, x, "tdma_equal", "min_rate",
                      tdma_maxmin(channel, eps, power, TimeSharing::equal_time).rate, ok));
    out.push_back(row(spec, x, "tdma_optimal", "min_rate",
                      tdma_maxmin(channel, eps, power, TimeSharing::optimal_time).rate, ok));
}

void sweep_beta(const SweepSpec& spec, double x, const Params& p, ResultTable& out) {
    const ChannelRealization channel = fixed_channel(p);
    if (channel.num_users() != 2)
        throw std::invalid_argument("sweep: beta_vs_eps needs num_users = 2");
    const double eps = p.at("eps");
    const double phi = stringency(channel, eps);
    const bool ok = check_positive_rate_feasibility(channel, eps);
    const double beta = ok ? optimal_power_ratio_user1(channel.gain(0), channel.gain(1), phi,
                                                       dbm_to_mw(p.at("power_dbm")))
                           : kNaN;
    out.push_back(row(spec, x, "noma", "beta1", beta, ok));
}

struct TrialRates {
    std::array<double, 3> rate{};  // noma, tdma_equal, tdma_optimal
    bool feasible = false;
};

struct Moments {
    double mean = 0.0;
    double std_error = 0.0;
};

Moments moments(const std::vector<TrialRates>& trials, std::size_t scheme) {
    const double n = static_cast<double>(trials.size());
    double sum = 0.0;
    for (const auto& t : trials)
        sum += t.rate[scheme];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& t : trials)
        ss += (t.rate[scheme] - mean) * (t.rate[scheme] - mean);
    const double var = trials.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

// Delta-method standard error of mean(a) / mean(b).
double ratio_std_error(const std::vector<TrialRates>& trials, std::size_t a, std::size_t b) {
    const double n = static_cast<double>(trials.size());
    if (trials.size() < 2)
        return 0.0;
    const double ma = moments(trials, a).mean;
    const double mb = moments(trials, b).mean;
    if (mb <= 0.0)
        return kNaN;
    double vaa = 0.0, vbb = 0.0, vab = 0.0;
    for (const auto& t : trials) {
        const double da = t.rate[a] - ma;
        const double db = t.rate[b] - mb;
        vaa += da * da;
        vbb += db * db;
        vab += da * db;
    }
    vaa /= n - 1.0;
    vbb /= n - 1.0;
    vab /= n - 1.0;
    const double r = ma / mb;
    const double var = (vaa - 2.0 * r * vab + r * r * vbb) / (mb * mb * n);
    return std::sqrt(std::max(0.0, var));
}

void sweep_fading(const SweepSpec& spec, double x, const Params& p, ResultTable& out) {
    const NetworkGeometry geometry = fading_geometry(p);
    const double eps = p.at("eps");
    const double power = dbm_to_mw(p.at("power_dbm"));
    const double tolerance = p.at("tolerance");
    stringency(geometry.eaves_avg_gain(), eps);  // validates eps

    std::vector<TrialRates> trials(spec.trials);
    detail::parallel_for(trials.size(), [&](std::size_t t) {
        const ChannelRealization channel = sample_realization(geometry, derive_seed(spec.seed, t));
        TrialRates& r = trials[t];
        if (!check_positive_rate_feasibility(channel, eps))
            return;  // transmission suspended: every scheme gets rate 0
        r.feasible = true;
        r.rate[0] =
            std::get<MaxMinSolution>(solve_maxmin_bisection(channel, eps, power, tolerance)).rate;
        r.rate[1] = tdma_maxmin(channel, eps, power, TimeSharing::equal_time).rate;
        r.rate[2] = tdma_maxmin(channel, eps, power, TimeSharing::optimal_time).rate;
    });

    const auto feasible = static_cast<double>(
        std::count_if(trials.begin(), trials.end(), [](const TrialRates& t) { return t.feasible; }));
    const double frac = feasible / static_cast<double>(trials.size());
    static const std::array<const char*, 3> names = {"noma", "tdma_equal", "tdma_optimal"};
    for (std::size_t s = 0; s < names.size(); ++s) {
        const Moments m = moments(trials, s);
        out.push_back({x, names[s], "avg_min_rate", m.mean, m.std_error, frac, spec.trials,
                       spec.seed});
    }
    for (std::size_t s = 1; s < names.size(); ++s) {
        const double denom = moments(trials, s).mean;
        const double gain = denom > 0.0 ? moments(trials, 0).mean / denom : kNaN;
        out.push_back({x, names[s], "gain", gain, ratio_std_error(trials, 0, s), frac,
                       spec.trials, spec.seed});
    }
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
        throw std::invalid_argument("results: malformed number '" + s + "'");
    return v;
}

} // namespace

std::string_view to_string(SweepKind kind) {
    switch (kind) {
    case SweepKind::power_vs_Q: return "power_vs_Q";
    case SweepKind::rate_vs_P: return "rate_vs_P";
    case SweepKind::beta_vs_eps: return "beta_vs_eps";
    case SweepKind::avg_rate_vs_eps: return "avg_rate_vs_eps";
    case SweepKind::gain_vs_K: return "gain_vs_K";
    }
    return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) {
    for (SweepKind k : {SweepKind::power_vs_Q, SweepKind::rate_vs_P, SweepKind::beta_vs_eps,
                        SweepKind::avg_rate_vs_eps, SweepKind::gain_vs_K})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

bool is_fading(SweepKind kind) {
    return kind == SweepKind::avg_rate_vs_eps || kind == SweepKind::gain_vs_K;
}

std::vector<double> SweepAxis::points() const {
    std::vector<double> xs(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double frac = steps > 1 ? static_cast<double>(i) / static_cast<double>(steps - 1) : 0.0;
        xs[i] = i + 1 == steps ? stop : start + frac * (stop - start);
    }
    return xs;
}

void SweepSpec::validate() const {
    const Params& known = defaults(kind);
    for (const auto& [name, value] : fixed_params) {
        if (!known.contains(name))
            throw std::invalid_argument("sweep: unknown parameter '" + name + "' for kind " +
                                        std::string(to_string(kind)));
        if (std::isnan(value))
            throw std::invalid_argument("sweep: parameter '" + name + "' is not a number");
    }
    if (!known.contains(axis.name))
        throw std::invalid_argument("sweep: axis '" + axis.name + "' is not a parameter of kind " +
                                    std::string(to_string(kind)));
    if (axis.steps < 2)
        throw std::invalid_argument("sweep: steps must be at least 2");
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
        throw std::invalid_argument("sweep: axis bounds must be finite");
    if (is_fading(kind) && trials < 1)
        throw std::invalid_argument("sweep: trials must be at least 1");
}

ResultTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    ResultTable table;
    for (double x : spec.axis.points()) {
        const Params p = resolve(spec, x);
        switch (spec.kind) {
        case SweepKind::power_vs_Q: sweep_power_vs_q(spec, x, p, table); break;
        case SweepKind::rate_vs_P: sweep_rate_vs_p(spec, x, p, table); break;
        case SweepKind::beta_vs_eps: sweep_beta(spec, x, p, table); break;
        case SweepKind::avg_rate_vs_eps:
        case SweepKind::gain_vs_K: sweep_fading(spec, x, p, table); break;
        }
    }
    return table;
}

void write_results(const ResultTable& table, std::ostream& out) {
    out << kResultsHeader << '\n';
    for (const auto& r : table)
        out << format_double(r.x) << ',' << r.scheme << ',' << r.metric << ','
            << format_double(r.value) << ',' << format_double(r.std_error) << ','
            << format_double(r.feasible_frac) << ',' << r.trials << ',' << r.seed << '\n';
}

void write_results(const ResultTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_results(table, out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

ResultTable read_results(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kResultsHeader)
        throw std::invalid_argument("results: missing or unexpected header");
    ResultTable table;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (f.size() != 8)
            throw std::invalid_argument("results: expected 8 fields in '" + line + "'");
        table.push_back({parse_double(f[0]), f[1], f[2], parse_double(f[3]), parse_double(f[4]),
                         parse_double(f[5]), std::stoull(f[6]), std::stoull(f[7])});
    }
    return table;
}

ResultTable read_results(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    return read_results(in);
}

ResultTable select_rows(const ResultTable& table, std::string_view scheme,
                        std::string_view metric) {
    ResultTable out;
    for (const auto& r : table)
        if (r.scheme == scheme && r.metric == metric)
            out.push_back(r);
    return out;
}

} // namespace secnoma

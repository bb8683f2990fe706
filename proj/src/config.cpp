#include "secnoma/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace secnoma {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
    return v;
}

std::uint64_t to_count(const std::string& key, const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("config: '" + key + "' expects a nonnegative integer, got '" +
                                    text + "'");
    return std::stoull(text);
}

const std::string& required(const KeyValueConfig& config, const std::string& key) {
    const auto it = config.find(key);
    if (it == config.end())
        throw std::invalid_argument("config: missing required key '" + key + "'");
    return it->second;
}

} // namespace

KeyValueConfig parse_key_value(std::istream& in) {
    KeyValueConfig config;
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(number) +
                                        ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
        if (!config.emplace(key, value).second)
            throw std::invalid_argument("config line " + std::to_string(number) +
                                        ": duplicate key '" + key + "'");
    }
    return config;
}

KeyValueConfig load_key_value(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config '" + path.string() + "'");
    return parse_key_value(in);
}

SweepSpec sweep_spec_from_config(const KeyValueConfig& config) {
    SweepSpec spec;
    const std::string& kind = required(config, "kind");
    const auto parsed = parse_sweep_kind(kind);
    if (!parsed)
        throw std::invalid_argument("config: unknown sweep kind '" + kind + "'");
    spec.kind = *parsed;
    spec.axis.name = required(config, "axis");
    spec.axis.start = to_number("start", required(config, "start"));
    spec.axis.stop = to_number("stop", required(config, "stop"));
    spec.axis.steps = to_count("steps", required(config, "steps"));
    if (const auto it = config.find("trials"); it != config.end())
        spec.trials = to_count("trials", it->second);
    if (const auto it = config.find("seed"); it != config.end())
        spec.seed = to_count("seed", it->second);

    static const char* reserved[] = {"kind", "axis", "start", "stop", "steps", "trials", "seed",
                                     "output"};
    for (const auto& [key, value] : config) {
        if (std::find(std::begin(reserved), std::end(reserved), key) != std::end(reserved))
            continue;
        spec.fixed_params[key] = to_number(key, value);
    }
    spec.validate();
    return spec;
}

} // namespace secnoma

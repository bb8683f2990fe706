#include "secnoma/secrecy.hpp"

#include "secnoma/parallel.hpp"
#include "secnoma/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace secnoma {

namespace {

constexpr std::uint64_t kTrialsPerStream = 1u << 16;

void check_index(std::size_t k, std::size_t n, const char* what) {
    if (k >= n)
        throw std::out_of_range(std::string(what) + ": index " + std::to_string(k) +
                                " out of range for " + std::to_string(n) + " users");
}

void check_sizes(const ChannelRealization& channel, const PowerAllocation& alloc) {
    if (channel.num_users() != alloc.num_users())
        throw std::invalid_argument("allocation size does not match the number of users");
}

double interference_limited_sinr(double gain, double own, double suffix) {
    return gain * own / (1.0 + gain * suffix);
}

} // namespace

PowerAllocation::PowerAllocation(std::vector<double> powers) : powers_(std::move(powers)) {
    for (std::size_t k = 0; k < powers_.size(); ++k)
        if (!std::isfinite(powers_[k]) || powers_[k] <= 0.0)
            throw std::invalid_argument("allocation: power of user " + std::to_string(k + 1) +
                                        " must be positive and finite");
}

double PowerAllocation::total() const {
    return std::accumulate(powers_.begin(), powers_.end(), 0.0);
}

double PowerAllocation::suffix_sum(std::size_t k) const {
    check_index(k, powers_.size(), "suffix_sum");
    return std::accumulate(powers_.begin() + static_cast<std::ptrdiff_t>(k) + 1, powers_.end(),
                           0.0);
}

void RatePair::validate() const {
    if (!std::isfinite(codeword_rate) || !std::isfinite(confidential_rate) ||
        confidential_rate < 0.0 || confidential_rate > codeword_rate)
        throw std::invalid_argument("rate pair must satisfy 0 <= R_s <= R_t");
}

void SecrecyRequirement::validate() const {
    if (!std::isfinite(qos_rate) || qos_rate <= 0.0)
        throw std::invalid_argument("QoS rate must be positive");
    if (!(outage_budget > 0.0 && outage_budget < 1.0))
        throw std::invalid_argument("outage budget must lie in (0, 1)");
}

double stringency(double eaves_avg_gain, double outage_budget) {
    if (!(outage_budget > 0.0 && outage_budget < 1.0))
        throw std::invalid_argument("outage budget must lie in (0, 1)");
    return eaves_avg_gain * std::log(1.0 / outage_budget);
}

double stringency(const ChannelRealization& channel, double outage_budget) {
    return stringency(channel.eaves_avg_gain(), outage_budget);
}

double stringency(const ChannelRealization& channel, const SecrecyRequirement& req) {
    return stringency(channel.eaves_avg_gain(), req.outage_budget);
}

double sinr_own_message(const ChannelRealization& channel, const PowerAllocation& alloc,
                        std::size_t k) {
    check_sizes(channel, alloc);
    check_index(k, alloc.num_users(), "sinr_own_message");
    return interference_limited_sinr(channel.gain(k), alloc.power(k), alloc.suffix_sum(k));
}

double sinr_cross_message(const ChannelRealization& channel, const PowerAllocation& alloc,
                          std::size_t m, std::size_t k) {
    check_sizes(channel, alloc);
    check_index(m, alloc.num_users(), "sinr_cross_message");
    if (k >= m)
        throw std::invalid_argument("sinr_cross_message: message must be decoded before the "
                                    "decoder's own (k < m)");
    return interference_limited_sinr(channel.gain(m), alloc.power(k), alloc.suffix_sum(k));
}

double eaves_sinr(double eaves_gain, const PowerAllocation& alloc, std::size_t k) {
    check_index(k, alloc.num_users(), "eaves_sinr");
    if (!(eaves_gain >= 0.0))
        throw std::invalid_argument("eaves_sinr: eavesdropper gain must be nonnegative");
    return interference_limited_sinr(eaves_gain, alloc.power(k), alloc.suffix_sum(k));
}

double bottleneck_gain(std::span<const double> position_gains, std::size_t k) {
    check_index(k, position_gains.size(), "bottleneck_gain");
    return *std::min_element(position_gains.begin() + static_cast<std::ptrdiff_t>(k),
                             position_gains.end());
}

double max_codeword_rate(const ChannelRealization& channel, const PowerAllocation& alloc,
                         std::size_t k) {
    check_sizes(channel, alloc);
    check_index(k, alloc.num_users(), "max_codeword_rate");
    const double g = bottleneck_gain(channel.gains(), k);
    return std::log2(1.0 + interference_limited_sinr(g, alloc.power(k), alloc.suffix_sum(k)));
}

double secrecy_outage_given_gain(double decoding_gain, std::span<const double> position_powers,
                                 double eaves_avg_gain, double qos_rate, std::size_t k) {
    check_index(k, position_powers.size(), "secrecy_outage");
    if (!std::isfinite(qos_rate) || qos_rate <= 0.0)
        throw std::invalid_argument("secrecy_outage: QoS rate must be positive");

    double later = 0.0;
    for (std::size_t i = k + 1; i < position_powers.size(); ++i)
        later += position_powers[i];
    const double from_k = later + position_powers[k];

    const double two_q = std::exp2(qos_rate);
    const double a = (1.0 + decoding_gain * from_k) / (1.0 + decoding_gain * later);
    const double numerator = a - two_q;
    const double denominator = two_q * from_k - a * later;
    if (denominator <= 0.0)
        return 1.0;
    const double p = std::exp(-numerator / (denominator * eaves_avg_gain));
    return std::clamp(p, 0.0, 1.0);
}

double secrecy_outage_closed_form(const ChannelRealization& channel, const PowerAllocation& alloc,
                                  double qos_rate, std::size_t k) {
    check_sizes(channel, alloc);
    // Ascending gains make the bottleneck receiver of message k user k itself.
    return secrecy_outage_given_gain(channel.gain(k), alloc.powers(), channel.eaves_avg_gain(),
                                     qos_rate, k);
}

double empirical_outage(const ChannelRealization& channel, const PowerAllocation& alloc,
                        std::span<const RatePair> rate_pairs, std::size_t k,
                        std::uint64_t trials, std::uint64_t seed) {
    check_sizes(channel, alloc);
    check_index(k, alloc.num_users(), "empirical_outage");
    if (rate_pairs.size() != alloc.num_users())
        throw std::invalid_argument("empirical_outage: one rate pair per user is required");
    if (trials == 0)
        throw std::invalid_argument("empirical_outage: at least one trial is required");

    const double margin = rate_pairs[k].codeword_rate - rate_pairs[k].confidential_rate;
    const double own = alloc.power(k);
    const double later = alloc.suffix_sum(k);
    const double mean = channel.eaves_avg_gain();

    const std::uint64_t streams = (trials + kTrialsPerStream - 1) / kTrialsPerStream;
    std::vector<std::uint64_t> outages(streams, 0);
    detail::parallel_for(streams, [&](std::size_t s) {
        const std::uint64_t begin = s * kTrialsPerStream;
        const std::uint64_t count = std::min(kTrialsPerStream, trials - begin);
        RandomStream rng(derive_seed(seed, s));
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            const double ge = rng.exponential(mean);
            const double capacity = std::log2(1.0 + interference_limited_sinr(ge, own, later));
            if (margin < capacity)
                ++hits;
        }
        outages[s] = hits;
    });
    const auto total = std::accumulate(outages.begin(), outages.end(), std::uint64_t{0});
    return static_cast<double>(total) / static_cast<double>(trials);
}

std::vector<std::size_t> optimal_decoding_order(std::span<const double> gains) {
    std::vector<std::size_t> order(gains.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] < gains[b]; });
    return order;
}

std::vector<std::size_t> optimal_decoding_order(const ChannelRealization& channel) {
    return optimal_decoding_order(channel.gains());
}

double outage_constraint_value(double gain, double own_power, double suffix_power,
                               double qos_rate) {
    const double two_q = std::exp2(qos_rate);
    const double a = (1.0 + gain * (own_power + suffix_power)) / (1.0 + gain * suffix_power);
    return (a - two_q) / (two_q * (own_power + suffix_power) - a * suffix_power);
}

} // namespace secnoma

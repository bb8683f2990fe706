#include "secnoma/channel.hpp"

#include "secnoma/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace secnoma {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

void NetworkGeometry::validate() const {
    if (user_distances.empty())
        throw std::invalid_argument("geometry: at least one user is required");
    for (double d : user_distances)
        if (!positive_finite(d))
            throw std::invalid_argument("geometry: user distances must be positive");
    if (!positive_finite(eaves_distance))
        throw std::invalid_argument("geometry: eavesdropper distance must be positive");
    if (!positive_finite(path_loss_exponent))
        throw std::invalid_argument("geometry: path-loss exponent must be positive");
    if (!positive_finite(user_noise_mw) || !positive_finite(eaves_noise_mw))
        throw std::invalid_argument("geometry: noise powers must be positive");
}

double NetworkGeometry::mean_user_gain(std::size_t k) const {
    return std::pow(user_distances.at(k), -path_loss_exponent) / user_noise_mw;
}

double NetworkGeometry::eaves_avg_gain() const {
    return std::pow(eaves_distance, -path_loss_exponent) / eaves_noise_mw;
}

ChannelRealization::ChannelRealization(std::vector<double> user_gains, double eaves_avg_gain)
    : gains_(std::move(user_gains)), eaves_avg_gain_(eaves_avg_gain) {
    if (gains_.empty())
        throw std::invalid_argument("channel: at least one user gain is required");
    for (std::size_t k = 0; k < gains_.size(); ++k) {
        if (!positive_finite(gains_[k]))
            throw std::invalid_argument("channel: gain of user " + std::to_string(k + 1) +
                                        " must be positive and finite");
        if (k > 0 && gains_[k] < gains_[k - 1])
            throw std::invalid_argument("channel: gains must be sorted ascending");
    }
    if (!positive_finite(eaves_avg_gain_))
        throw std::invalid_argument("channel: eavesdropper average gain must be positive");
}

ChannelRealization ChannelRealization::from_unsorted(std::vector<double> user_gains,
                                                     double eaves_avg_gain) {
    std::sort(user_gains.begin(), user_gains.end());
    return ChannelRealization(std::move(user_gains), eaves_avg_gain);
}

ChannelRealization ChannelRealization::subset(std::span<const std::size_t> users) const {
    std::vector<double> g;
    g.reserve(users.size());
    for (std::size_t i : users)
        g.push_back(gains_.at(i));
    return from_unsorted(std::move(g), eaves_avg_gain_);
}

ChannelRealization sample_realization(const NetworkGeometry& geometry, std::uint64_t seed) {
    geometry.validate();
    RandomStream rng(seed);
    std::vector<double> gains(geometry.num_users());
    for (std::size_t k = 0; k < gains.size(); ++k)
        gains[k] = geometry.mean_user_gain(k) * rng.exponential(1.0);
    // A zero draw would break strict positivity; it has probability 2^-53.
    for (double& g : gains)
        if (g <= 0.0)
            g = std::numeric_limits<double>::min();
    return ChannelRealization::from_unsorted(std::move(gains), geometry.eaves_avg_gain());
}

} // namespace secnoma

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace secnoma {

/// Placement and noise of a single-cell downlink with one external eavesdropper.
struct NetworkGeometry {
    std::vector<double> user_distances;  // one per user, metres
    double eaves_distance = 1.0;
    double path_loss_exponent = 4.0;
    double user_noise_mw = 1.0;
    double eaves_noise_mw = 1.0;

    std::size_t num_users() const { return user_distances.size(); }

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;

    /// Mean of the normalized gain of user k, d_k^-alpha / sigma_u^2.
    double mean_user_gain(std::size_t k) const;
    double eaves_avg_gain() const;
};

/// Normalized user gains (ascending) and the eavesdropper's average normalized gain.
///
/// Gains are |h|^2 / sigma^2 in 1/mW. The ascending order is the canonical SIC
/// decoding order used by every solver.
class ChannelRealization {
public:
    /// Requires ascending, strictly positive, finite gains and a positive eavesdropper gain.
    ChannelRealization(std::vector<double> user_gains, double eaves_avg_gain);

    /// Sorts the gains first. The permutation is lost; use optimal_decoding_order for it.
    static ChannelRealization from_unsorted(std::vector<double> user_gains, double eaves_avg_gain);

    std::span<const double> gains() const { return gains_; }
    double gain(std::size_t k) const { return gains_.at(k); }
    double eaves_avg_gain() const { return eaves_avg_gain_; }
    std::size_t num_users() const { return gains_.size(); }

    /// The same channel restricted to the given users (indices into gains()).
    ChannelRealization subset(std::span<const std::size_t> users) const;

    friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;

private:
    std::vector<double> gains_;
    double eaves_avg_gain_;
};

/// One Rayleigh block-fading draw: |g_k|^2 ~ Exp(1), gamma_k = d_k^-alpha |g_k|^2 / sigma_u^2.
ChannelRealization sample_realization(const NetworkGeometry& geometry, std::uint64_t seed);

} // namespace secnoma

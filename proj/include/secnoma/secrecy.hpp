#pragma once

#include "secnoma/channel.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace secnoma {

/// Per-user transmit powers (mW) indexed by decoding position.
///
/// Every power is strictly positive. A default-constructed allocation is empty
/// and stands for "nothing allocated".
class PowerAllocation {
public:
    PowerAllocation() = default;
    explicit PowerAllocation(std::vector<double> powers);

    std::span<const double> powers() const { return powers_; }
    double power(std::size_t k) const { return powers_.at(k); }
    std::size_t num_users() const { return powers_.size(); }
    bool empty() const { return powers_.empty(); }

    double total() const;
    /// Sum of the powers decoded after position k (positions k+1 .. K-1).
    double suffix_sum(std::size_t k) const;

    friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;

private:
    std::vector<double> powers_;
};

/// Wiretap-code rates in bits per channel use; 0 <= confidential <= codeword.
struct RatePair {
    double codeword_rate = 0.0;
    double confidential_rate = 0.0;

    void validate() const;
};

/// Common QoS floor Q on the confidential rate and secrecy-outage budget epsilon.
struct SecrecyRequirement {
    double qos_rate = 1.0;
    double outage_budget = 0.1;

    void validate() const;
};

/// phi = gbar_e * ln(1/epsilon). Every feasibility threshold is expressed in it.
double stringency(double eaves_avg_gain, double outage_budget);
double stringency(const ChannelRealization& channel, double outage_budget);
double stringency(const ChannelRealization& channel, const SecrecyRequirement& req);

// All user/message indices below are zero-based decoding positions.

/// SINR of user k decoding its own message, the later messages acting as interference.
double sinr_own_message(const ChannelRealization& channel, const PowerAllocation& alloc,
                        std::size_t k);

/// SINR of user m decoding message k during SIC; requires k < m.
double sinr_cross_message(const ChannelRealization& channel, const PowerAllocation& alloc,
                          std::size_t m, std::size_t k);

/// Eavesdropper SINR for message k, assuming messages before k were already removed.
double eaves_sinr(double eaves_gain, const PowerAllocation& alloc, std::size_t k);

/// Largest codeword rate every user decoding message k can support.
double max_codeword_rate(const ChannelRealization& channel, const PowerAllocation& alloc,
                         std::size_t k);

/// min over i >= k of position_gains[i]: the weakest receiver of message k.
double bottleneck_gain(std::span<const double> position_gains, std::size_t k);

/// Secrecy outage of message k when R_t is maximal for `decoding_gain` and R_s = Q.
///
/// The outage event is gamma_e > N / D with N = A - 2^Q, D = 2^Q S_k - A S_{k+1},
/// A = (1 + g S_k) / (1 + g S_{k+1}) and S_j the power decoded from position j on.
/// Returns exp(-N / (D gbar_e)) clamped to [0, 1], and 1 when D <= 0.
/// Throws std::invalid_argument for Q <= 0.
double secrecy_outage_given_gain(double decoding_gain, std::span<const double> position_powers,
                                 double eaves_avg_gain, double qos_rate, std::size_t k);

/// secrecy_outage_given_gain under the canonical ascending order.
double secrecy_outage_closed_form(const ChannelRealization& channel, const PowerAllocation& alloc,
                                  double qos_rate, std::size_t k);

/// Monte Carlo estimate of P(R_t - R_s < log2(1 + eavesdropper SINR)) for message k,
/// with gamma_e ~ Exp(gbar_e). Trials are split into fixed-size seeded sub-streams,
/// so the estimate depends only on (trials, seed).
double empirical_outage(const ChannelRealization& channel, const PowerAllocation& alloc,
                        std::span<const RatePair> rate_pairs, std::size_t k,
                        std::uint64_t trials, std::uint64_t seed);

/// Positions sorted by ascending gain; ties keep their original order.
std::vector<std::size_t> optimal_decoding_order(std::span<const double> gains);
std::vector<std::size_t> optimal_decoding_order(const ChannelRealization& channel);

/// f(x, y): right-hand side of the secrecy constraint phi <= f for a message with
/// own power x, later-decoded power y and receiver gain `gain`.
double outage_constraint_value(double gain, double own_power, double suffix_power,
                               double qos_rate);

} // namespace secnoma

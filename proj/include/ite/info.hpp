#pragma once

#include <cstddef>
#include <span>

namespace ite {

/// Two-sided 95% normal quantile used by every confidence interval in the toolkit.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Read-out error statistics of a memory treated as a binary channel from writer to reader.
struct BitChannelStats {
    std::size_t trials = 0;
    std::size_t errors = 0;
    double p_e_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Remaining information of a bit in [0, 1] bits, with the image of the p_e interval.
struct InformationContent {
    double bits = 0.0;
    double low = 0.0;
    double high = 0.0;
};

/**
 * Information content of one stored bit read with error probability p_e:
 *   I = 1 + p_e log2 p_e + (1 - p_e) log2 (1 - p_e)
 * i.e. the capacity of the binary symmetric channel. I(0) = I(1) = 1, I(1/2) = 0.
 * Throws std::invalid_argument outside [0, 1].
 */
double bit_information(double p_e);

/// Binary entropy h2(p) in bits, with 0 log 0 = 0.
double binary_entropy_bits(double p);

/// Information entropy of a one-bit memory divided by k, in nats:
/// -[p0 ln p0 + p1 ln p1] with p1 = 1 - p0 and 0 ln 0 = 0.
double memory_entropy(double p0);

inline double nats_to_bits(double nats) noexcept { return nats / 0.69314718055994530942; }

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

/// Builds the stats from raw counts (Wilson 95% interval).
BitChannelStats make_channel_stats(std::size_t errors, std::size_t trials);

/// Compares sent and received bit values position by position.
BitChannelStats estimate_error_prob(std::span<const int> sent, std::span<const int> received);

/// bit_information at p_e_hat; the interval is the image of [ci_low, ci_high] after folding p > 1/2.
InformationContent remaining_information(const BitChannelStats& stats);

}  // namespace ite

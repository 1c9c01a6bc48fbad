#include "ite/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ite {

namespace {

void check_probability(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(who) + ": probability must lie in [0, 1]");
}

// p * log2(p) with the p -> 0 limit taken explicitly.
double plog2p(double p) { return p == 0.0 ? 0.0 : p * std::log2(p); }

double plnp(double p) { return p == 0.0 ? 0.0 : p * std::log(p); }

}  // namespace

double binary_entropy_bits(double p) {
    check_probability(p, "binary_entropy_bits");
    return -(plog2p(p) + plog2p(1.0 - p));
}

double bit_information(double p_e) {
    check_probability(p_e, "bit_information");
    if (p_e == 0.0 || p_e == 1.0) return 1.0;
    if (p_e == 0.5) return 0.0;
    // Evaluate on the folded argument so that I(p) == I(1 - p) bit for bit.
    const double q = std::min(p_e, 1.0 - p_e);
    return std::max(0.0, 1.0 + plog2p(q) + plog2p(1.0 - q));
}

double memory_entropy(double p0) {
    check_probability(p0, "memory_entropy");
    if (p0 == 0.0 || p0 == 1.0) return 0.0;
    const double q = std::min(p0, 1.0 - p0);
    return -(plnp(q) + plnp(1.0 - q));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
    // Pin the endpoints where the closed form loses a few ulps.
    if (successes == 0) ci.low = 0.0;
    if (successes == trials) ci.high = 1.0;
    ci.low = std::min(ci.low, p);
    ci.high = std::max(ci.high, p);
    return ci;
}

BitChannelStats make_channel_stats(std::size_t errors, std::size_t trials) {
    const Interval ci = wilson_interval(errors, trials);
    return {trials, errors, static_cast<double>(errors) / static_cast<double>(trials), ci.low, ci.high};
}

BitChannelStats estimate_error_prob(std::span<const int> sent, std::span<const int> received) {
    if (sent.size() != received.size()) throw std::invalid_argument("estimate_error_prob: length mismatch");
    if (sent.empty()) throw std::invalid_argument("estimate_error_prob: empty bit lists");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if ((sent[i] != 0 && sent[i] != 1) || (received[i] != 0 && received[i] != 1)) {
            throw std::invalid_argument("estimate_error_prob: bit values must be 0 or 1");
        }
        errors += sent[i] != received[i] ? 1 : 0;
    }
    return make_channel_stats(errors, sent.size());
}

InformationContent remaining_information(const BitChannelStats& stats) {
    const auto fold = [](double p) { return std::min(p, 1.0 - p); };
    // I is decreasing in the folded p on [0, 1/2].
    const double lo_p = stats.ci_low;
    const double hi_p = stats.ci_high;
    double folded_min = std::min(fold(lo_p), fold(hi_p));
    double folded_max = std::max(fold(lo_p), fold(hi_p));
    if (lo_p <= 0.5 && hi_p >= 0.5) folded_max = 0.5;
    return {bit_information(stats.p_e_hat), bit_information(folded_max), bit_information(folded_min)};
}

}  // namespace ite

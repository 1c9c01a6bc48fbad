#pragma once

#include <cmath>
#include <cstddef>

namespace ite {

/// Welford running mean/variance. Feed it in a fixed order to get bit-identical results.
class MeanAccumulator {
public:
    void add(double x) noexcept {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    [[nodiscard]] double variance() const noexcept {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }
    [[nodiscard]] double stddev() const noexcept { return std::sqrt(variance()); }
    /// Sample standard deviation over sqrt(n).
    [[nodiscard]] double standard_error() const noexcept {
        return count_ > 0 ? stddev() / std::sqrt(static_cast<double>(count_)) : 0.0;
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

inline Estimate to_estimate(const MeanAccumulator& acc) noexcept { return {acc.mean(), acc.standard_error()}; }

}  // namespace ite

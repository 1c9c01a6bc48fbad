#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ite {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
/// Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/**
 * Counter-based random stream.
 *
 * Draw number n of stream (seed, index) is a pure function of the triple: the
 * master seed is the Philox key, and the counter holds (n / 2, index). Streams
 * never share state, so any number of them can be handed to worker threads in
 * any order without changing what each one produces.
 *
 * Satisfies std::uniform_random_bit_generator. Not thread-safe; one owner at a time.
 */
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
        : master_seed_(master_seed), stream_index_(stream_index) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next_u64(); }

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal by inversion of the Gaussian CDF (one uniform per variate).
    double normal() noexcept;

    [[nodiscard]] std::uint64_t master_seed() const noexcept { return master_seed_; }
    [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }
    [[nodiscard]] std::uint64_t draw_count() const noexcept { return draws_; }

    /// Repositions the stream so the next draw is draw number `n`.
    void seek(std::uint64_t n) noexcept;

private:
    void refill() noexcept;

    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t draws_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    bool buffered_ = false;
};

inline RngStream make_stream(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return RngStream(master_seed, index);
}

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

/// Inverse of the standard normal CDF on (0, 1).
double normal_quantile(double p);

}  // namespace ite

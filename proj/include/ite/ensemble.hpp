#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace ite {

/// Raised when a per-trajectory task throws; names the stream that failed.
class EnsembleError : public std::runtime_error {
public:
    EnsembleError(std::uint64_t stream_index, const std::string& what, std::exception_ptr cause = nullptr)
        : std::runtime_error("trajectory with stream_index " + std::to_string(stream_index) + " failed: " + what),
          stream_index_(stream_index),
          cause_(std::move(cause)) {}

    [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }
    /// The exception thrown by the failing task.
    [[nodiscard]] std::exception_ptr cause() const noexcept { return cause_; }

private:
    std::uint64_t stream_index_;
    std::exception_ptr cause_;
};

/**
 * Runs task(first_stream + i) for i in [0, n) on `workers` threads and returns
 * the results indexed by i. The caller reduces the vector in index order, so the outcome
 * does not depend on the worker count or on completion order.
 *
 * The first failure stops the remaining work; the lowest failing index seen
 * is reported together with the task's exception message.
 */
template <class Task>
auto run_parallel_ensemble(std::size_t n, unsigned workers, Task&& task, std::uint64_t first_stream = 0)
    -> std::vector<std::invoke_result_t<Task&, std::uint64_t>> {
    using Result = std::invoke_result_t<Task&, std::uint64_t>;
    static_assert(std::is_default_constructible_v<Result>, "ensemble results must be default constructible");
    if (workers == 0) throw std::invalid_argument("worker_count must be at least 1");

    std::vector<Result> results(n);
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    struct Failure {
        std::uint64_t stream;
        std::string message;
        std::exception_ptr cause;
    };
    std::optional<Failure> failure;
    constexpr std::size_t kChunk = 256;

    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= n) return;
            const std::size_t end = std::min(n, begin + kChunk);
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    results[i] = task(first_stream + i);
                } catch (const std::exception& e) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure || failure->stream > first_stream + i) {
                        failure = Failure{first_stream + i, e.what(), std::current_exception()};
                    }
                    next.store(n);
                    return;
                }
            }
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) throw EnsembleError(failure->stream, failure->message, failure->cause);
    return results;
}

}  // namespace ite

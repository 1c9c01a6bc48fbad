#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "ite/capacitor.hpp"
#include "ite/ensemble.hpp"
#include "ite/rng.hpp"

using namespace ite;

TEST_CASE("results are indexed by stream for any worker count") {
    auto task = [](std::uint64_t s) {
        auto rng = make_stream(99, s);
        double acc = 0.0;
        for (int k = 0; k < 50; ++k) acc += rng.normal();
        return acc;
    };
    const auto one = run_parallel_ensemble(3000, 1, task);
    for (unsigned w : {2u, 4u, 8u, 64u}) CHECK(run_parallel_ensemble(3000, w, task) == one);

    const auto shifted = run_parallel_ensemble(10, 3, task, 2990);
    for (std::size_t i = 0; i < 10; ++i) CHECK(shifted[i] == one[2990 + i]);
}

TEST_CASE("edge sizes") {
    auto id = [](std::uint64_t s) { return s; };
    CHECK(run_parallel_ensemble(0, 4, id).empty());
    CHECK(run_parallel_ensemble(1, 8, id) == std::vector<std::uint64_t>{0});
    CHECK_THROWS_AS(run_parallel_ensemble(5, 0, id), std::invalid_argument);
}

TEST_CASE("a failing trajectory is reported with its stream index") {
    for (unsigned w : {1u, 4u}) {
        try {
            run_parallel_ensemble(1000, w, [](std::uint64_t s) -> int {
                if (s == 617) throw std::runtime_error("boom");
                return 0;
            });
            FAIL("expected EnsembleError");
        } catch (const EnsembleError& e) {
            CHECK(e.stream_index() == 617);
            CHECK(std::string(e.what()).find("617") != std::string::npos);
            CHECK(std::string(e.what()).find("boom") != std::string::npos);
            CHECK_THROWS_AS(std::rethrow_exception(e.cause()), std::runtime_error);
        }
    }
}

TEST_CASE("a single-trajectory experiment equals one hand-run stream") {
    ErasureExperimentConfig c;
    c.u0 = 1.3;
    c.durations = {0.7, 2.0};
    c.n_trajectories = 1;
    c.master_seed = 5;
    const auto reports = run_erasure_experiment(c);

    for (std::size_t d = 0; d < 2; ++d) {
        auto rng = make_stream(5, d);
        const int bit = rng.uniform() < 0.5 ? 0 : 1;
        WriteOptions o;
        o.dt = c.cell.tau() / 100.0;
        const auto w = write_bit(bit, 1.3, c.cell, o, rng);
        const auto e = erase(w.v_final, c.durations[d], c.cell, c.cell.tau() / 10.0, rng);
        CHECK(reports[d].bath_heat.value == e.bath_heat);
        CHECK(reports[d].write_bath_heat.value == w.bath_heat);
        CHECK(reports[d].channel.errors == (read_bit(e.v_final) != bit ? 1u : 0u));
    }
}

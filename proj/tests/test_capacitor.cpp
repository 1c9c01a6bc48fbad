#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ite/capacitor.hpp"
#include "ite/ensemble.hpp"

using namespace ite;

namespace {

WriteOptions opts(double dt) {
    WriteOptions o;
    o.dt = dt;
    return o;
}

}  // namespace

TEST_CASE("read-out convention") {
    CHECK(read_bit(0.3) == 1);
    CHECK(read_bit(-0.3) == 0);
    CHECK(read_bit(0.0) == 1);
    CHECK(read_bit(-0.0) == 1);
    CHECK_THROWS_AS(read_bit(std::nan("")), std::invalid_argument);
}

TEST_CASE("bath heat is minus the capacitor energy change") {
    const auto p = CellParams::reduced();
    CHECK(bath_heat(p, 2.0, 0.0) == 2.0);
    CHECK(bath_heat(p, 0.0, 2.0) == -2.0);
    CHECK(bath_heat(p, -1.0, 1.0) == 0.0);
}

TEST_CASE("closed-form erase dissipation and error probability") {
    const auto p = CellParams::reduced();
    CHECK(erase_dissipation_theory(0.0, p) == -0.5);
    CHECK(erase_dissipation_theory(0.5, p) == -0.375);
    CHECK(erase_dissipation_theory(1.0, p) == 0.0);
    CHECK(erase_dissipation_theory(2.0, p) == 1.5);
    // Phi(-exp(-1)/sqrt(1-exp(-2))), evaluated in 30-digit arithmetic.
    CHECK(partial_erase_error_prob(1.0, 1.0, p) == doctest::Approx(0.346191544083695913848869658761).epsilon(1e-13));
    CHECK(partial_erase_error_prob(1.0, 0.0, p) == 0.0);
    CHECK(partial_erase_error_prob(1.0, 20.0, p) == doctest::Approx(0.49999999917771865).epsilon(1e-12));
    CHECK_THROWS_AS(partial_erase_error_prob(0.0, 1.0, p), std::invalid_argument);
    CHECK_THROWS_AS(partial_erase_error_prob(1.0, -1.0, p), std::invalid_argument);
    CHECK_THROWS_AS(erase_dissipation_theory(-1.0, p), std::invalid_argument);
}

TEST_CASE("control cost per decision") {
    const auto p = CellParams::reduced();
    CHECK(control_cost_per_decision(p, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(control_cost_per_decision(p, 0.01) == doctest::Approx(std::log(100.0)).epsilon(1e-15));
    CHECK_THROWS_AS(control_cost_per_decision(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(control_cost_per_decision(p, 0.7), std::invalid_argument);
}

TEST_CASE("write lands exactly on the target") {
    const auto p = CellParams::reduced();
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = make_stream(31, i);
        const int bit = static_cast<int>(i % 2);
        const auto w = write_bit(bit, 0.7, p, opts(0.01), rng);
        CHECK(w.bit_written == bit);
        CHECK(w.v_final == (bit ? 0.7 : -0.7));
        CHECK(read_bit(w.v_final) == bit);
        CHECK(w.duration >= 0.0);
        CHECK(w.n_samples >= 1);
        CHECK(w.bath_heat == bath_heat(p, w.v_start, w.v_final));
        CHECK(w.control_cost_lower_bound >= std::log(2.0) - 1e-15);
    }
}

TEST_CASE("write argument checks and timeout") {
    const auto p = CellParams::reduced();
    auto rng = make_stream(32, 0);
    CHECK_THROWS_AS(write_bit(2, 1.0, p, opts(0.01), rng), std::invalid_argument);
    CHECK_THROWS_AS(write_bit(1, 0.0, p, opts(0.01), rng), std::invalid_argument);
    CHECK_THROWS_AS(write_bit(1, 1.0, p, opts(0.0), rng), std::invalid_argument);
    WriteOptions o = opts(0.01);
    o.max_duration = 0.5;
    CHECK_THROWS_AS(write_bit(1, 12.0, p, o, rng), TimeoutError);
}

TEST_CASE("mean write heat from the stationary start") {
    // <E(v_start)> = kT/2, E(v_final) = C u0^2 / 2, so <Q> = (kT - C u0^2) / 2.
    const auto p = CellParams::reduced();
    constexpr std::size_t n = 20000;
    const double u0 = 0.5;
    const auto heats = run_parallel_ensemble(n, 1, [&](std::uint64_t s) {
        auto rng = make_stream(33, s);
        return write_bit(static_cast<int>(s % 2), u0, p, opts(0.01), rng).bath_heat;
    });
    MeanAccumulator acc;
    for (double q : heats) acc.add(q);
    CHECK(std::abs(acc.mean() - 0.375) < 3.0 * acc.standard_error());
}

TEST_CASE("erase bookkeeping") {
    const auto p = CellParams::reduced();
    auto rng = make_stream(34, 0);
    const auto none = erase(1.3, 0.0, p, 0.1, rng);
    CHECK(none.v_final == 1.3);
    CHECK(none.bath_heat == 0.0);
    CHECK(rng.draw_count() == 0);

    const auto e = erase(1.3, 2.05, p, 0.1, rng);
    CHECK(e.duration == 2.05);
    CHECK(e.bath_heat == bath_heat(p, 1.3, e.v_final));
    CHECK_THROWS_AS(erase(1.0, -1.0, p, 0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(erase(1.0, 1.0, p, 0.0, rng), std::invalid_argument);
}

TEST_CASE("mean erase heat matches (C u0^2 - kT)/2") {
    const auto p = CellParams::reduced();
    constexpr std::size_t n = 20000;
    for (double u0 : {0.0, 0.5, 1.0, 2.0}) {
        MeanAccumulator acc;
        for (std::uint64_t i = 0; i < n; ++i) {
            auto rng = make_stream(35, i);
            acc.add(erase(i % 2 ? u0 : -u0, 20.0, p, 0.1, rng).bath_heat);
        }
        CHECK(std::abs(acc.mean() - erase_dissipation_theory(u0, p)) < 3.0 * acc.standard_error());
    }
}

TEST_CASE("erasure experiment") {
    ErasureExperimentConfig c;
    c.u0 = 1.0;
    c.durations = {0.0, 1.0, 20.0};
    c.n_trajectories = 20000;
    c.master_seed = 36;
    const auto reports = run_erasure_experiment(c);
    REQUIRE(reports.size() == 3);

    CHECK(reports[0].channel.errors == 0);
    CHECK(reports[0].remaining.bits == 1.0);
    CHECK(reports[0].bath_heat.value == 0.0);

    for (const auto& r : reports) {
        CHECK(r.n_trajectories == c.n_trajectories);
        CHECK(r.channel.ci_low <= r.p_e_theory + 1e-12);
        CHECK(r.p_e_theory <= r.channel.ci_high + 1e-12);
        CHECK(r.remaining.low <= r.remaining.bits);
        CHECK(r.remaining.bits <= r.remaining.high);
    }
    CHECK(reports[2].remaining.bits < 1e-3);
    CHECK(std::abs(reports[2].bath_heat.value) < 3.0 * reports[2].bath_heat.standard_error);
}

TEST_CASE("erasure experiment is independent of the worker count") {
    ErasureExperimentConfig c;
    c.durations = {0.5, 2.0};
    c.n_trajectories = 3000;
    c.workers = 1;
    const auto a = run_erasure_experiment(c);
    c.workers = 4;
    const auto b = run_erasure_experiment(c);
    for (std::size_t d = 0; d < a.size(); ++d) {
        CHECK(a[d].bath_heat.value == b[d].bath_heat.value);
        CHECK(a[d].channel.errors == b[d].channel.errors);
        CHECK(a[d].write_bath_heat.value == b[d].write_bath_heat.value);
    }
}

TEST_CASE("erasure experiment input checks") {
    ErasureExperimentConfig c;
    c.durations = {2.0, 1.0};
    CHECK_THROWS_AS(run_erasure_experiment(c), std::invalid_argument);
    c.durations = {-1.0};
    CHECK_THROWS_AS(run_erasure_experiment(c), std::invalid_argument);
    c.durations = {1.0};
    c.n_trajectories = 0;
    CHECK_THROWS_AS(run_erasure_experiment(c), std::invalid_argument);
    c.n_trajectories = 10;
    c.u0 = 0.0;
    CHECK_THROWS_AS(run_erasure_experiment(c), std::invalid_argument);
    c.u0 = 1.0;
    c.durations = {};
    CHECK(run_erasure_experiment(c).empty());
}

TEST_CASE("SI-unit energy ledger closes") {
    const auto p = CellParams::si(300.0, 1e6, 1e-12);
    const double u0 = 2.0 * p.sigma_st();
    WriteOptions o = opts(p.tau() / 100.0);
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto rng = make_stream(37, i);
        const auto w = write_bit(static_cast<int>(i % 2), u0, p, o, rng);
        const auto e = erase(w.v_final, 5.0 * p.tau(), p, p.tau() / 10.0, rng);
        const double total = w.bath_heat + e.bath_heat;
        const double expected = p.energy(w.v_start) - p.energy(e.v_final);
        const double scale = std::max({p.energy(w.v_start), p.energy(w.v_final), p.energy(e.v_final)});
        CHECK(std::abs(total - expected) <= 4.0 * std::numeric_limits<double>::epsilon() * scale);
    }
}

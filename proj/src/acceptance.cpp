#include "ite/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ite/bounds.hpp"
#include "ite/capacitor.hpp"
#include "ite/commands.hpp"
#include "ite/double_well.hpp"
#include "ite/ensemble.hpp"
#include "ite/info.hpp"
#include "ite/ou.hpp"

namespace ite::acceptance {

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Check {
    bool passed = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!detail.str().empty()) detail << "; ";
        detail << what << (ok ? "" : " [x]");
        passed = passed && ok;
    }
};

std::string num(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

bool within_se(double value, double target, double se, double k = 3.0) { return std::abs(value - target) <= k * se; }

bool rel_close(double value, double target, double tol) {
    return target == 0.0 ? std::abs(value) <= tol : std::abs(value - target) <= tol * std::abs(target);
}

// 1. Stationary variance of the simulated cell, relaxed from v = 0 for 20 tau.
void equipartition(Check& c, unsigned workers) {
    const CellParams p = CellParams::reduced();
    constexpr std::size_t n = 100000;
    const OuPropagator step(p, 0.1 * p.tau());
    const auto v = run_parallel_ensemble(n, workers, [&](std::uint64_t stream) {
        RngStream rng(kSeed, stream);
        double x = 0.0;
        for (int i = 0; i < 200; ++i) x = step(x, rng);
        return x;
    });
    MeanAccumulator acc;
    for (double x : v) acc.add(x);
    const double target = p.kT() / p.capacitance;
    const double rel = std::abs(acc.variance() - target) / target;
    c.expect(rel <= 0.015, "var/(kT/C) - 1 = " + num(rel) + " (tol 0.015)");
}

Estimate erase_heat(double u0_sigma, unsigned workers, std::uint64_t first_stream) {
    const CellParams p = CellParams::reduced();
    constexpr std::size_t n = 100000;
    const double u0 = u0_sigma * p.sigma_st();
    const auto q = run_parallel_ensemble(
        n, workers,
        [&](std::uint64_t stream) {
            RngStream rng(kSeed, stream);
            const double v0 = rng.uniform() < 0.5 ? -u0 : u0;
            return erase(v0, 20.0 * p.tau(), p, 0.1 * p.tau(), rng).bath_heat / p.kT();
        },
        first_stream);
    MeanAccumulator acc;
    for (double x : q) acc.add(x);
    return to_estimate(acc);
}

// 2. Mean erasure bath heat at u0 = sigma/2, sigma, 2 sigma.
void negative_dissipation(Check& c, unsigned workers) {
    const double targets[][2] = {{0.5, -0.375}, {1.0, 0.0}, {2.0, 1.5}};
    std::uint64_t offset = 0;
    for (const auto& [u, target] : targets) {
        const Estimate e = erase_heat(u, workers, offset);
        offset += 100000;
        c.expect(within_se(e.value, target, e.standard_error),
                 "u0=" + num(u) + "s: " + num(e.value) + "+-" + num(e.standard_error) + " kT vs " + num(target));
    }
}

// 3. Write bath heat and control cost.
void write_positivity(Check& c, unsigned workers) {
    const CellParams p = CellParams::reduced();
    constexpr std::size_t n = 100000;
    WriteOptions opt;
    opt.dt = p.tau() / 100.0;
    const double u0 = 0.5 * p.sigma_st();
    const auto records = run_parallel_ensemble(n, workers, [&](std::uint64_t stream) {
        RngStream rng(kSeed + 1, stream);
        return write_bit(rng.uniform() < 0.5 ? 0 : 1, u0, p, opt, rng);
    });
    MeanAccumulator heat;
    double min_cost = std::numeric_limits<double>::infinity();
    for (const auto& r : records) {
        heat.add(r.bath_heat / p.kT());
        min_cost = std::min(min_cost, r.control_cost_lower_bound / p.kT());
    }
    const double target = 0.5 * (p.kT() - p.capacitance * u0 * u0) / p.kT();
    c.expect(within_se(heat.mean(), target, heat.standard_error()),
             "write Q_env " + num(heat.mean()) + "+-" + num(heat.standard_error()) + " kT vs " + num(target));
    c.expect(min_cost >= std::numbers::ln2 && min_cost > 0.0, "min control cost " + num(min_cost) + " kT >= ln2");
}

// 4. Remaining information after partial and complete erasure at u0 = sigma.
void incomplete_erasure(Check& c, unsigned workers) {
    ErasureExperimentConfig e;
    e.u0 = e.cell.sigma_st();
    e.durations = {e.cell.tau(), 20.0 * e.cell.tau()};
    e.n_trajectories = 100000;
    e.master_seed = kSeed + 2;
    e.workers = workers;
    const auto reports = run_erasure_experiment(e);
    const auto& partial = reports[0];
    const double analytic = partial_erase_error_prob(e.u0, e.cell.tau(), e.cell);
    c.expect(std::abs(analytic - 0.3462) < 5e-5, "analytic p_e " + num(analytic));
    c.expect(partial.channel.ci_low <= analytic && analytic <= partial.channel.ci_high,
             "MC p_e " + num(partial.channel.p_e_hat) + " CI [" + num(partial.channel.ci_low) + ", " +
                 num(partial.channel.ci_high) + "]");
    c.expect(std::abs(partial.remaining.bits - 0.0694) <= 0.01, "I(tau) = " + num(partial.remaining.bits) + " bits");
    c.expect(reports[1].remaining.bits < 1e-3, "I(20 tau) = " + num(reports[1].remaining.bits) + " bits");
}

// 5. Passive erasure in the double well at E = 2 kT.
void passive_ite(Check& c, unsigned workers) {
    const auto p = DoubleWellParams::reduced(2.0);
    EnsembleOptions opt;
    opt.n_trajectories = 10000;
    opt.master_seed = kSeed + 3;
    opt.workers = workers;
    const auto s = relax_ensemble(p, 1, 50.0, opt);
    double worst = 0.0;
    for (const auto& u : s.mean_U) worst = std::max(worst, std::abs(u.value - s.mean_U.front().value) / p.kT());
    c.expect(std::abs(s.p1.back().value - 0.5) <= 0.02, "terminal p1 " + num(s.p1.back().value));
    c.expect(worst < 0.05, "max |<U>(t) - <U>(0)| = " + num(worst) + " kT");
}

// 6. Escape-time ratio between E = 3 kT and E = 2 kT at fixed well curvature.
void kramers_scaling(Check& c, unsigned workers) {
    EscapeOptions opt;
    opt.n_trajectories = 10000;
    opt.master_seed = kSeed + 4;
    opt.workers = workers;
    const Estimate t2 = measure_escape_time(DoubleWellParams::reduced_fixed_curvature(2.0, 16.0), opt);
    const Estimate t3 = measure_escape_time(DoubleWellParams::reduced_fixed_curvature(3.0, 16.0), opt);
    const double ratio = t3.value / t2.value;
    c.expect(std::abs(ratio - std::numbers::e) <= 0.3 * std::numbers::e,
             "t(3kT)/t(2kT) = " + num(ratio) + " (" + num(t3.value) + "/" + num(t2.value) + ")");
}

// 7. Ice cube versus the one-bit cooling limit.
void ice_cube(Check& c) {
    IceCubeModel m;
    m.volume_cm3 = 10.0;
    m.ambient_temperature = 300.0;
    const BoundComparison b = ice_cube_erasure_energy(m);
    const double oracle = 0.917 * 10.0 * 333.55 / (1.380649e-23 * 300.0);
    c.expect(rel_close(b.computed_cooling.kT, oracle, 0.05), "Q = " + num(b.computed_cooling.kT) + " kT");
    c.expect(std::abs(std::log10(b.computed_cooling.kT) - 24.0) < 0.5, "order 1e24");
    c.expect(b.violation_factor > 1e23, "violation factor " + num(b.violation_factor));
}

// 8. Closed forms.
void exact_formulas(Check& c) {
    const double ln2 = std::numbers::ln2;
    c.expect(rel_close(brillouin_min_dissipation(0.5, 300.0).kT, ln2, 1e-12), "brillouin(0.5) = kT ln2");
    c.expect(rel_close(bit_information(0.0), 1.0, 1e-12), "I(0) = 1");
    c.expect(std::abs(bit_information(0.5)) <= 1e-12, "I(0.5) = 0");
    c.expect(std::abs(memory_entropy(0.0)) <= 1e-12 && std::abs(memory_entropy(1.0)) <= 1e-12, "S(0) = S(1) = 0");
    c.expect(rel_close(anderson_bound(1.0, 300.0).kT, -ln2, 1e-12), "anderson(1 bit) = -kT ln2");
}

// 9. Byte-identical CSV for 1, 4 and 8 workers on every subcommand.
void determinism(Check& c) {
    const std::map<std::string, std::map<std::string, std::string>> small = {
        {"capacitor write", {{"n", "2000"}, {"u0_sigma", "0.5,1"}}},
        {"capacitor erase", {{"n", "2000"}}},
        {"capacitor mi-curve", {{"n", "600"}, {"durations_tau", "0,1,20"}}},
        {"doublewell relax", {{"n", "600"}, {"t_total", "5"}}},
        {"doublewell escape", {{"n", "600"}, {"barriers_kT", "1,2"}}},
        {"doublewell heated", {{"n", "600"}, {"t_total", "2"}}},
    };
    for (const auto& spec : command_table()) {
        if (spec.group == "verify") continue;
        std::string reference;
        bool same = true;
        bool has_workers = false;
        for (const auto& k : spec.keys) has_workers = has_workers || k.name == "workers";
        for (const char* w : {"1", "4", "8"}) {
            std::map<std::string, std::string> overrides;
            if (const auto it = small.find(spec.full_name()); it != small.end()) overrides = it->second;
            if (has_workers) overrides["workers"] = w;
            const auto out = run_command(spec, resolve_config(spec, Config{}, overrides));
            const std::string csv = out.table.to_string();
            if (reference.empty()) {
                reference = csv;
            } else {
                same = same && csv == reference;
            }
        }
        c.expect(same, spec.full_name());
    }
}

// 10. Per-trajectory ledger identity over random writes and erasures (SI units).
void ledger_identity(Check& c, unsigned workers) {
    const CellParams p = CellParams::si(300.0, 1e6, 1e-12);
    constexpr std::size_t n = 100000;
    WriteOptions opt;
    opt.dt = p.tau() / 100.0;
    const auto ok = run_parallel_ensemble(n, workers, [&](std::uint64_t stream) {
        RngStream rng(kSeed + 5, stream);
        const double u0 = (0.1 + 1.9 * rng.uniform()) * p.sigma_st();
        const int bit = rng.uniform() < 0.5 ? 0 : 1;
        const WriteRecord w = write_bit(bit, u0, p, opt, rng);
        const EraseRecord e = erase(w.v_final, 5.0 * rng.uniform() * p.tau(), p, 0.1 * p.tau(), rng);
        auto balanced = [&](double q, double v0, double v1) {
            const double delta = 0.5 * p.capacitance * v1 * v1 - 0.5 * p.capacitance * v0 * v0;
            const double scale = std::max(p.energy(v0), p.energy(v1));
            return std::abs(q + delta) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
        };
        return static_cast<int>(balanced(w.bath_heat, w.v_start, w.v_final) &&
                                balanced(e.bath_heat, e.v_start, e.v_final) && w.v_final == (bit ? u0 : -u0));
    });
    std::size_t bad = 0;
    for (int v : ok) bad += v ? 0 : 1;
    c.expect(bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " trajectories balanced");
}

}  // namespace

std::vector<CriterionResult> run_all(const Options& options, const std::function<void(const CriterionResult&)>& on_result) {
    const unsigned w = options.workers;
    struct Entry {
        int id;
        const char* name;
        double limit;
        std::function<void(Check&)> run;
    };
    const std::vector<Entry> entries = {
        {1, "equipartition of the cell voltage", 10.0, [&](Check& c) { equipartition(c, w); }},
        {2, "negative erasure dissipation", 60.0, [&](Check& c) { negative_dissipation(c, w); }},
        {3, "write positivity", 60.0, [&](Check& c) { write_positivity(c, w); }},
        {4, "incomplete-erasure information", 60.0, [&](Check& c) { incomplete_erasure(c, w); }},
        {5, "passive erasure in the double well", 180.0, [&](Check& c) { passive_ite(c, w); }},
        {6, "escape-time scaling", 120.0, [&](Check& c) { kramers_scaling(c, w); }},
        {7, "ice-cube cooling violation", 0.0, [](Check& c) { ice_cube(c); }},
        {8, "closed-form values", 1.0, [](Check& c) { exact_formulas(c); }},
        {9, "worker-count determinism", 0.0, [](Check& c) { determinism(c); }},
        {10, "ledger identity", 0.0, [&](Check& c) { ledger_identity(c, w); }},
    };

    std::vector<CriterionResult> results;
    for (const auto& e : entries) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            e.run(check);
        } catch (const std::exception& ex) {
            check.expect(false, std::string("exception: ") + ex.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        CriterionResult r{e.id, e.name, check.passed, check.detail.str(), seconds, e.limit};
        if (e.limit > 0.0 && seconds > e.limit) {
            r.passed = false;
            r.detail += "; runtime " + num(seconds) + " s over limit " + num(e.limit) + " s";
        }
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " (" << num(r.seconds) << " s): " << r.detail;
    return s.str();
}

std::string format_table(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) out += format_line(r) + "\n";
    return out;
}

}  // namespace ite::acceptance

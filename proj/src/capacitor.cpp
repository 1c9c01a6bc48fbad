#include "ite/capacitor.hpp"

#include <cmath>
#include <string>

#include "ite/ensemble.hpp"
#include "ite/ou.hpp"

namespace ite {

double control_cost_per_decision(const CellParams& p, double p_e_measurement) {
    if (!(p_e_measurement > 0.0 && p_e_measurement <= 0.5)) {
        throw std::invalid_argument("measurement error probability must lie in (0, 0.5]");
    }
    return p.kT() * std::log(1.0 / p_e_measurement);
}

WriteRecord write_bit(int bit, double u0, const CellParams& p, const WriteOptions& options, RngStream& rng) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("write_bit: bit must be 0 or 1");
    if (!(u0 > 0.0) || !std::isfinite(u0)) throw std::invalid_argument("write_bit: u0 must be positive");
    const double per_decision = control_cost_per_decision(p, options.p_e_measurement);
    const OuPropagator step(p, options.dt);
    const double limit = options.max_duration > 0.0 ? options.max_duration : 1e4 * p.tau();
    const double target = bit == 1 ? u0 : -u0;

    WriteRecord rec;
    rec.bit_written = bit;
    rec.u0 = u0;
    rec.v_start = ou_sample_stationary(p, rng);
    rec.n_samples = 1;

    double v = rec.v_start;
    double t = 0.0;
    if (v != target) {
        for (;;) {
            const double next = step(v, rng);
            ++rec.n_samples;
            const double before = v - target;
            const double after = next - target;
            if (before * after <= 0.0) {
                t += options.dt * before / (before - after);
                break;
            }
            v = next;
            t += options.dt;
            if (t > limit) {
                throw TimeoutError("write_bit: no first passage to " + std::to_string(target) + " within " +
                                   std::to_string(limit) + " s");
            }
        }
    }
    rec.duration = t;
    rec.v_final = target;
    rec.bath_heat = bath_heat(p, rec.v_start, rec.v_final);
    rec.control_cost_lower_bound = static_cast<double>(rec.n_samples) * per_decision;
    return rec;
}

int read_bit(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("read_bit: voltage must be finite");
    return v >= 0.0 ? 1 : 0;
}

EraseRecord erase(double v0, double duration, const CellParams& p, double dt, RngStream& rng) {
    if (!std::isfinite(v0)) throw std::invalid_argument("erase: v0 must be finite");
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw std::invalid_argument("erase: duration must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("erase: dt must be positive");
    p.validate();

    EraseRecord rec{v0, v0, duration, 0.0};
    if (duration == 0.0) return rec;

    // Only the endpoint matters for the ledger; the transition is exact, so
    // the path is advanced without storing it.
    const OuPropagator step(p, dt);
    const auto full_steps = static_cast<std::size_t>(std::floor(duration / dt * (1.0 + 1e-12)));
    double v = v0;
    for (std::size_t i = 0; i < full_steps; ++i) v = step(v, rng);
    const double rest = duration - static_cast<double>(full_steps) * dt;
    if (rest > 1e-12 * duration) v = OuPropagator(p, rest)(v, rng);

    rec.v_final = v;
    rec.bath_heat = bath_heat(p, v0, v);
    return rec;
}

double erase_dissipation_theory(double u0, const CellParams& p) {
    if (!(u0 >= 0.0)) throw std::invalid_argument("erase_dissipation_theory: u0 must be >= 0");
    return 0.5 * (p.capacitance * u0 * u0 - p.kT());
}

double partial_erase_error_prob(double u0, double t, const CellParams& p) {
    if (!(u0 > 0.0)) throw std::invalid_argument("partial_erase_error_prob: u0 must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("partial_erase_error_prob: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (std::isinf(t)) return 0.5;
    const double x = t / p.tau();
    const double mu = std::exp(-x);
    const double s = p.sigma_st() * std::sqrt(-std::expm1(-2.0 * x));
    return normal_cdf(-u0 * mu / s);
}

namespace {

struct TrialOutcome {
    int sent = 0;
    int received = 0;
    double write_heat = 0.0;
    double erase_heat = 0.0;
};

}  // namespace

std::vector<ErasureReport> run_erasure_experiment(const ErasureExperimentConfig& config) {
    const CellParams& p = config.cell;
    p.validate();
    if (!(config.u0 > 0.0)) throw std::invalid_argument("run_erasure_experiment: u0 must be positive");
    if (config.n_trajectories == 0) throw std::invalid_argument("run_erasure_experiment: need at least one trajectory");
    for (std::size_t i = 0; i < config.durations.size(); ++i) {
        if (!(config.durations[i] >= 0.0)) throw std::invalid_argument("durations must be >= 0");
        if (i > 0 && config.durations[i] < config.durations[i - 1]) {
            throw std::invalid_argument("durations must be sorted ascending");
        }
    }

    WriteOptions wopt;
    wopt.dt = config.write_dt > 0.0 ? config.write_dt : p.tau() / 100.0;
    wopt.max_duration = config.max_write_duration;
    wopt.p_e_measurement = config.p_e_measurement;
    const double erase_dt = config.erase_dt > 0.0 ? config.erase_dt : p.tau() / 10.0;

    std::vector<ErasureReport> reports;
    reports.reserve(config.durations.size());
    for (std::size_t d = 0; d < config.durations.size(); ++d) {
        const double duration = config.durations[d];
        const auto outcomes = run_parallel_ensemble(
            config.n_trajectories, config.workers,
            [&](std::uint64_t stream) {
                RngStream rng(config.master_seed, stream);
                TrialOutcome out;
                out.sent = rng.uniform() < 0.5 ? 0 : 1;
                const WriteRecord w = write_bit(out.sent, config.u0, p, wopt, rng);
                const EraseRecord e = erase(w.v_final, duration, p, erase_dt, rng);
                out.received = read_bit(e.v_final);
                out.write_heat = w.bath_heat;
                out.erase_heat = e.bath_heat;
                return out;
            },
            static_cast<std::uint64_t>(d) * config.n_trajectories);

        MeanAccumulator erase_heat;
        MeanAccumulator write_heat;
        std::size_t errors = 0;
        for (const auto& o : outcomes) {
            erase_heat.add(o.erase_heat);
            write_heat.add(o.write_heat);
            errors += o.sent != o.received ? 1 : 0;
        }

        ErasureReport r;
        r.duration = duration;
        r.n_trajectories = config.n_trajectories;
        r.bath_heat = to_estimate(erase_heat);
        r.write_bath_heat = to_estimate(write_heat);
        r.theory_bath_heat = erase_dissipation_theory(config.u0, p);
        r.channel = make_channel_stats(errors, config.n_trajectories);
        r.p_e_theory = partial_erase_error_prob(config.u0, duration, p);
        r.remaining = remaining_information(r.channel);
        reports.push_back(r);
    }
    return reports;
}

}  // namespace ite

#include "ite/double_well.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ite/ensemble.hpp"

namespace ite {

DoubleWellParams DoubleWellParams::reduced_fixed_curvature(double barrier_kT, double curvature, double gamma) {
    if (!(curvature > 0.0)) throw std::invalid_argument("curvature must be positive");
    return reduced(barrier_kT, std::sqrt(8.0 * barrier_kT / curvature), gamma);
}

void DoubleWellParams::validate() const {
    if (!(barrier_height > 0.0) || !(well_position > 0.0) || !(damping > 0.0) || !(temperature > 0.0) ||
        !(boltzmann > 0.0) || !std::isfinite(barrier_height) || !std::isfinite(well_position) ||
        !std::isfinite(damping) || !std::isfinite(temperature)) {
        throw std::invalid_argument("DoubleWellParams: barrier, well position, damping and temperature must be positive");
    }
}

namespace {

void check_dt(const DoubleWellParams& p, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("em_step: dt must be positive");
    if (dt > p.stability_dt() * (1.0 + 1e-12)) {
        throw std::invalid_argument("em_step: dt " + std::to_string(dt) + " exceeds stability bound " +
                                    std::to_string(p.stability_dt()));
    }
}

void check_side(int side) {
    if (side != 0 && side != 1) throw std::invalid_argument("side must be 0 or 1");
}

double resolve_dt(const DoubleWellParams& p, double dt) {
    const double chosen = dt > 0.0 ? dt : 0.5 * p.stability_dt();
    check_dt(p, chosen);
    return chosen;
}

struct Stepper {
    double drift_scale;  // dt / gamma
    double noise;        // sqrt(2 kT dt / gamma)
    const DoubleWellParams* p;

    Stepper(const DoubleWellParams& params, double dt)
        : drift_scale(dt / params.damping), noise(std::sqrt(2.0 * params.kT() * dt / params.damping)), p(&params) {}

    double operator()(double x, double z) const noexcept { return x - p->gradient(x) * drift_scale + noise * z; }
};

}  // namespace

double em_step(double x, double dt, const DoubleWellParams& p, RngStream& rng) {
    p.validate();
    check_dt(p, dt);
    if (!std::isfinite(x)) throw std::invalid_argument("em_step: x must be finite");
    return Stepper(p, dt)(x, rng.normal());
}

BoltzmannSampler::BoltzmannSampler(const DoubleWellParams& p, std::size_t cells) {
    p.validate();
    if (cells < 2) throw std::invalid_argument("BoltzmannSampler: need at least two cells");
    // Beyond U = E + 45 kT the weight is below e^-45 relative to the minima.
    const double reach = p.well_position * std::sqrt(1.0 + std::sqrt((p.barrier_height + 45.0 * p.kT()) / p.barrier_height));
    const double h = 2.0 * reach / static_cast<double>(cells);
    nodes_.resize(cells + 1);
    cdf_.resize(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) nodes_[i] = -reach + h * static_cast<double>(i);
    nodes_[cells / 2] = cells % 2 == 0 ? 0.0 : nodes_[cells / 2];

    auto weight = [&](double x) { return std::exp(-p.potential(x) / p.kT()); };
    cdf_[0] = 0.0;
    double w_prev = weight(nodes_[0]);
    for (std::size_t i = 1; i <= cells; ++i) {
        const double w = weight(nodes_[i]);
        cdf_[i] = cdf_[i - 1] + 0.5 * (w + w_prev) * (nodes_[i] - nodes_[i - 1]);
        w_prev = w;
    }
    const double total = cdf_.back();
    for (double& c : cdf_) c /= total;
}

double BoltzmannSampler::sample(RngStream& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), 1, cdf_.size() - 1);
    const std::size_t lo = hi - 1;
    const double span = cdf_[hi] - cdf_[lo];
    const double frac = span > 0.0 ? (u - cdf_[lo]) / span : 0.5;
    return nodes_[lo] + frac * (nodes_[hi] - nodes_[lo]);
}

double BoltzmannSampler::sample_well(int side, RngStream& rng) const {
    check_side(side);
    const double sign = side == 1 ? 1.0 : -1.0;
    for (;;) {
        const double x = sign * sample(rng);
        if (side_of(x) == side) return x;
    }
}

double sample_well(const DoubleWellParams& p, int side, RngStream& rng) {
    return BoltzmannSampler(p).sample_well(side, rng);
}

std::vector<std::uint64_t> log_time_grid(double t_total, double dt, int points_per_decade) {
    if (!(t_total > 0.0) || !(dt > 0.0)) throw std::invalid_argument("log_time_grid: t_total and dt must be positive");
    if (points_per_decade < 1) throw std::invalid_argument("log_time_grid: need at least one point per decade");
    const auto last = static_cast<std::uint64_t>(std::ceil(t_total / dt * (1.0 - 1e-12)));
    std::vector<std::uint64_t> steps{0};
    const double decades = std::log10(static_cast<double>(last));
    const auto n = static_cast<int>(std::ceil(decades * points_per_decade));
    for (int j = 0; j <= n; ++j) {
        const double t_steps = std::pow(10.0, decades * (n == 0 ? 1.0 : static_cast<double>(j) / n));
        const auto k = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(t_steps)), 1, last);
        if (k > steps.back()) steps.push_back(k);
    }
    if (steps.back() != last) steps.push_back(last);
    return steps;
}

namespace {

struct RelaxTrajectory {
    std::vector<double> positions;  // at the grid steps
};

HeatedErasure simulate_relaxation(const DoubleWellParams& ambient, double evolve_temperature, int side,
                                  double t_total, const EnsembleOptions& options) {
    ambient.validate();
    check_side(side);
    if (!(t_total > 0.0)) throw std::invalid_argument("t_total must be positive");
    if (options.n_trajectories < 100) throw std::invalid_argument("relaxation ensembles need at least 100 trajectories");
    const DoubleWellParams hot = ambient.at_temperature(evolve_temperature);
    const double dt = resolve_dt(hot, options.dt);
    const auto grid = log_time_grid(t_total, dt);
    const BoltzmannSampler sampler(ambient);
    const Stepper step(hot, dt);
    const double sign = side == 1 ? 1.0 : -1.0;

    const auto runs = run_parallel_ensemble(options.n_trajectories, options.workers, [&](std::uint64_t stream) {
        RngStream rng(options.master_seed, stream);
        // Evolve in the side-1 frame and mirror: the dynamics are odd in x, so this
        // is the side-0 trajectory driven by the negated noise.
        double y = sampler.sample_well(1, rng);
        RelaxTrajectory out;
        out.positions.reserve(grid.size());
        out.positions.push_back(sign * y);
        std::uint64_t k = 0;
        for (std::size_t g = 1; g < grid.size(); ++g) {
            for (; k < grid[g]; ++k) y = step(y, rng.normal());
            out.positions.push_back(sign * y);
        }
        return out;
    });

    HeatedErasure result;
    RelaxationSeries& series = result.series;
    series.times.reserve(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        series.times.push_back(static_cast<double>(grid[g]) * dt);
        std::size_t right = 0;
        MeanAccumulator u;
        for (const auto& r : runs) {
            right += side_of(r.positions[g]) == 1 ? 1 : 0;
            u.add(ambient.potential(r.positions[g]));
        }
        // Binomial proportion; the standard error matches the sample-std/sqrt(n) convention.
        const double n = static_cast<double>(runs.size());
        const double p1 = static_cast<double>(right) / n;
        series.p1.push_back({p1, std::sqrt(p1 * (1.0 - p1) / (n - 1.0))});
        series.mean_U.push_back(to_estimate(u));
    }
    MeanAccumulator absorbed;
    for (const auto& r : runs) absorbed.add(ambient.potential(r.positions.back()) - ambient.potential(r.positions.front()));
    result.absorbed_energy = to_estimate(absorbed);
    return result;
}

}  // namespace

RelaxationSeries relax_ensemble(const DoubleWellParams& p, int side, double t_total, const EnsembleOptions& options) {
    return simulate_relaxation(p, p.temperature, side, t_total, options).series;
}

HeatedErasure heated_erase(const DoubleWellParams& p, double hot_temperature, int side, double t_total,
                           const EnsembleOptions& options) {
    if (!(hot_temperature >= p.temperature)) {
        throw std::invalid_argument("heated_erase: hot temperature must not be below the ambient temperature");
    }
    return simulate_relaxation(p, hot_temperature, side, t_total, options);
}

double kramers_escape_time_estimate(const DoubleWellParams& p) {
    const double well_curvature = 8.0 * p.barrier_height / (p.well_position * p.well_position);
    const double top_curvature = 4.0 * p.barrier_height / (p.well_position * p.well_position);
    const double rate = std::sqrt(well_curvature * top_curvature) / (2.0 * std::numbers::pi * p.damping) *
                        std::exp(-p.barrier_height / p.kT());
    // Reaching the barrier top takes about half the well-to-well time.
    return 0.5 / rate;
}

Estimate measure_escape_time(const DoubleWellParams& p, const EscapeOptions& options) {
    p.validate();
    if (options.n_trajectories == 0) throw std::invalid_argument("measure_escape_time: need at least one trajectory");
    const double dt = resolve_dt(p, options.dt);
    const double expected_steps = kramers_escape_time_estimate(p) / dt + 1.0;
    if (expected_steps * static_cast<double>(options.n_trajectories) > options.max_total_steps) {
        throw InfeasibleError("measure_escape_time: barrier " + std::to_string(p.barrier_height / p.kT()) +
                              " kT needs about " + std::to_string(expected_steps) + " steps per trajectory, over budget");
    }
    const auto per_trajectory_cap = static_cast<std::uint64_t>(std::max(1e5, 50.0 * expected_steps));
    const Stepper step(p, dt);

    std::vector<double> times;
    try {
        times = run_parallel_ensemble(options.n_trajectories, options.workers, [&](std::uint64_t stream) {
            RngStream rng(options.master_seed, stream);
            double x = p.well_position;
            for (std::uint64_t k = 0; k < per_trajectory_cap; ++k) {
                const double next = step(x, rng.normal());
                if (next < 0.0) return (static_cast<double>(k) + x / (x - next)) * dt;
                x = next;
            }
            throw InfeasibleError("no barrier crossing within " + std::to_string(per_trajectory_cap) + " steps");
        });
    } catch (const EnsembleError& e) {
        throw InfeasibleError(std::string("measure_escape_time: ") + e.what());
    }

    MeanAccumulator acc;
    for (double t : times) acc.add(t);
    return to_estimate(acc);
}

}  // namespace ite

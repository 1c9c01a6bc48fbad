#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ite/cell.hpp"
#include "ite/rng.hpp"
#include "ite/stats.hpp"

namespace ite {

/// A run cannot finish within its step budget (barrier too high for direct simulation).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Symmetric bistable bit, U(x) = E ((x/x0)^2 - 1)^2, overdamped with friction gamma.
 * Minima U(+-x0) = 0, barrier U(0) = E. The right well (x >= 0) holds bit 1.
 */
struct DoubleWellParams {
    double barrier_height;
    double well_position;
    double damping;
    double temperature;
    double boltzmann = kBoltzmann;

    /// Reduced units: kT = 1, energies in kT.
    static DoubleWellParams reduced(double barrier_kT, double x0 = 1.0, double gamma = 1.0) {
        DoubleWellParams p{barrier_kT, x0, gamma, 1.0, 1.0};
        p.validate();
        return p;
    }

    /// Reduced units with the well curvature U''(+-x0) = 8E/x0^2 held at `curvature`
    /// (so x0 = sqrt(8E/curvature)); the Kramers prefactor is then independent of E.
    static DoubleWellParams reduced_fixed_curvature(double barrier_kT, double curvature, double gamma = 1.0);

    void validate() const;

    [[nodiscard]] double kT() const noexcept { return boltzmann * temperature; }
    [[nodiscard]] double potential(double x) const noexcept {
        const double r = x / well_position;
        const double w = r * r - 1.0;
        return barrier_height * w * w;
    }
    /// dU/dx; an odd function of x.
    [[nodiscard]] double gradient(double x) const noexcept {
        const double r = x / well_position;
        return 4.0 * barrier_height / well_position * r * (r * r - 1.0);
    }
    /// Largest admissible Euler-Maruyama step: 0.1 * gamma x0^2 / (8E).
    [[nodiscard]] double stability_dt() const noexcept {
        return 0.1 * damping * well_position * well_position / (8.0 * barrier_height);
    }
    [[nodiscard]] DoubleWellParams at_temperature(double t) const {
        DoubleWellParams q = *this;
        q.temperature = t;
        q.validate();
        return q;
    }
};

/// Residence side of position x; the x == 0 tie belongs to side 1.
inline int side_of(double x) noexcept { return x >= 0.0 ? 1 : 0; }

/// x + (-U'(x)/gamma) dt + sqrt(2 kT dt / gamma) Z. Throws if dt exceeds stability_dt().
double em_step(double x, double dt, const DoubleWellParams& p, RngStream& rng);

/**
 * Samples the Boltzmann law exp(-U/kT) by inverse CDF on a fine tabulated grid,
 * and the one-well conditional law by rejecting draws from the wrong side.
 */
class BoltzmannSampler {
public:
    explicit BoltzmannSampler(const DoubleWellParams& p, std::size_t cells = 1 << 16);

    double sample(RngStream& rng) const;

    /// Conditional equilibrium inside one well. For side 0 the proposal is
    /// mirrored, so sample_well(0) == -sample_well(1) on the same stream.
    double sample_well(int side, RngStream& rng) const;

private:
    std::vector<double> nodes_;
    std::vector<double> cdf_;
};

/// Convenience wrapper; builds the sampler table on every call.
double sample_well(const DoubleWellParams& p, int side, RngStream& rng);

struct EnsembleOptions {
    std::size_t n_trajectories = 10000;
    double dt = 0.0;  // 0 selects half of the stability bound
    std::uint64_t master_seed = 42;
    unsigned workers = 1;
};

struct RelaxationSeries {
    std::vector<double> times;
    std::vector<Estimate> p1;      // fraction of trajectories with x >= 0
    std::vector<Estimate> mean_U;  // in joules (or reduced energy units)
};

/// Step indices 0 = k_0 < k_1 < ... <= ceil(t_total/dt), 20 per decade between dt and t_total.
std::vector<std::uint64_t> log_time_grid(double t_total, double dt, int points_per_decade = 20);

/**
 * Starts every trajectory in conditional equilibrium inside `side` and lets it
 * relax at the ambient temperature, recording p1 and <U> on a logarithmic grid.
 */
RelaxationSeries relax_ensemble(const DoubleWellParams& p, int side, double t_total, const EnsembleOptions& options);

/// Mean first time to cross x = 0 starting from +x0.
struct EscapeOptions {
    std::size_t n_trajectories = 4000;
    double dt = 0.0;  // 0 selects half of the stability bound
    std::uint64_t master_seed = 42;
    unsigned workers = 1;
    double max_total_steps = 1e9;
};

/// Overdamped Kramers estimate of the mean time from the well bottom to the barrier top.
double kramers_escape_time_estimate(const DoubleWellParams& p);

/// Throws InfeasibleError when the expected cost exceeds max_total_steps or a trajectory overruns.
Estimate measure_escape_time(const DoubleWellParams& p, const EscapeOptions& options);

struct HeatedErasure {
    RelaxationSeries series;
    Estimate absorbed_energy;  // <U(t_end) - U(0)>
};

/// Same as relax_ensemble but evolving at hot_temperature >= p.temperature; initial states are
/// equilibrated at the ambient temperature.
HeatedErasure heated_erase(const DoubleWellParams& p, double hot_temperature, int side, double t_total,
                           const EnsembleOptions& options);

}  // namespace ite

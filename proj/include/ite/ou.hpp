#pragma once

#include <cstdint>
#include <vector>

#include "ite/cell.hpp"
#include "ite/rng.hpp"

namespace ite {

/// Sampled realization of a scalar state variable (capacitor voltage or particle position).
struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::uint64_t stream_index = 0;
};

/**
 * Exact one-step transition of the RC-cell Ornstein-Uhlenbeck voltage:
 * v' = v*mu + sigma_st*sqrt(1 - mu^2)*Z with mu = exp(-dt/tau).
 * No discretization error for any dt > 0.
 */
double ou_step(double v, double dt, const CellParams& p, RngStream& rng);

/// Draw from the stationary law N(0, kT/C).
double ou_sample_stationary(const CellParams& p, RngStream& rng);

/// Precomputed transition coefficients for repeated stepping with one dt.
class OuPropagator {
public:
    OuPropagator(const CellParams& p, double dt);

    double operator()(double v, RngStream& rng) const noexcept { return v * decay_ + spread_ * rng.normal(); }

    [[nodiscard]] double decay() const noexcept { return decay_; }
    [[nodiscard]] double spread() const noexcept { return spread_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }

private:
    double dt_;
    double decay_;
    double spread_;
};

/// ceil(t_total/dt) + 1 samples starting at v0. The last step is shortened to land on t_total.
Trajectory simulate_ou_path(double v0, double t_total, double dt, const CellParams& p, RngStream& rng);

}  // namespace ite

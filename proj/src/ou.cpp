#include "ite/ou.hpp"

#include <cmath>
#include <stdexcept>

namespace ite {

namespace {

void check_dt(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
}

}  // namespace

OuPropagator::OuPropagator(const CellParams& p, double dt) : dt_(dt) {
    p.validate();
    check_dt(dt);
    decay_ = std::exp(-dt / p.tau());
    // 1 - mu^2 via expm1 keeps precision when dt << tau.
    spread_ = p.sigma_st() * std::sqrt(-std::expm1(-2.0 * dt / p.tau()));
}

double ou_step(double v, double dt, const CellParams& p, RngStream& rng) {
    if (!std::isfinite(v)) throw std::invalid_argument("ou_step: voltage must be finite");
    return OuPropagator(p, dt)(v, rng);
}

double ou_sample_stationary(const CellParams& p, RngStream& rng) {
    p.validate();
    return p.sigma_st() * rng.normal();
}

Trajectory simulate_ou_path(double v0, double t_total, double dt, const CellParams& p, RngStream& rng) {
    if (!(t_total > 0.0) || !std::isfinite(t_total)) throw std::invalid_argument("simulate_ou_path: t_total must be positive");
    if (!std::isfinite(v0)) throw std::invalid_argument("simulate_ou_path: v0 must be finite");
    const OuPropagator full(p, dt);

    // Tolerate representation error so that t_total = k*dt gives exactly k steps.
    const auto steps = static_cast<std::size_t>(std::ceil(t_total / dt * (1.0 - 1e-12)));
    Trajectory path;
    path.stream_index = rng.stream_index();
    path.times.reserve(steps + 1);
    path.values.reserve(steps + 1);
    path.times.push_back(0.0);
    path.values.push_back(v0);

    double v = v0;
    for (std::size_t i = 1; i <= steps; ++i) {
        if (i < steps) {
            v = full(v, rng);
            path.times.push_back(static_cast<double>(i) * dt);
        } else {
            const double last = t_total - static_cast<double>(steps - 1) * dt;
            v = (last == dt) ? full(v, rng) : OuPropagator(p, last)(v, rng);
            path.times.push_back(t_total);
        }
        path.values.push_back(v);
    }
    return path;
}

}  // namespace ite

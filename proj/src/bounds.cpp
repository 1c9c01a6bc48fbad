#include "ite/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ite/cell.hpp"
#include "ite/info.hpp"

namespace ite {

namespace {

void check_temperature(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("temperature must be positive");
}

}  // namespace

Energy energy_from_joule(double joule, double temperature) {
    check_temperature(temperature);
    return {joule, joule / (kBoltzmann * temperature), temperature};
}

Energy energy_from_kT(double multiple, double temperature) {
    check_temperature(temperature);
    return {multiple * kBoltzmann * temperature, multiple, temperature};
}

Energy brillouin_min_dissipation(double p_e, double temperature) {
    if (!(p_e > 0.0 && p_e <= 0.5)) throw std::invalid_argument("brillouin_min_dissipation: p_e must lie in (0, 0.5]");
    return energy_from_kT(-std::log(p_e), temperature);
}

Energy anderson_bound(double delta_S_bits, double temperature) {
    if (!(delta_S_bits >= 0.0) || !std::isfinite(delta_S_bits)) {
        throw std::invalid_argument("anderson_bound: entropy change must be >= 0");
    }
    return energy_from_kT(-std::numbers::ln2 * delta_S_bits, temperature);
}

double ice_cube_cooling_joule(const IceCubeModel& m) {
    if (!(m.volume_cm3 > 0.0)) throw std::invalid_argument("ice cube volume must be positive");
    if (!(m.ice_density > 0.0) || !(m.latent_heat_fusion > 0.0)) {
        throw std::invalid_argument("ice density and latent heat must be positive");
    }
    const double mass = m.ice_density * m.volume_cm3;
    double q = mass * m.latent_heat_fusion;
    if (m.include_sensible_heat) {
        if (!(m.ice_initial_temperature > 0.0) || m.ice_initial_temperature > kWaterFreezingPoint) {
            throw std::invalid_argument("initial ice temperature must lie in (0, 273.15] K");
        }
        if (!(m.specific_heat_ice >= 0.0) || !(m.specific_heat_water >= 0.0)) {
            throw std::invalid_argument("specific heats must be >= 0");
        }
        q += mass * m.specific_heat_ice * (kWaterFreezingPoint - m.ice_initial_temperature);
        q += mass * m.specific_heat_water * (m.ambient_temperature - kWaterFreezingPoint);
    }
    return q;
}

BoundComparison ice_cube_erasure_energy(const IceCubeModel& m) {
    check_temperature(m.ambient_temperature);
    if (m.ambient_temperature <= kWaterFreezingPoint) {
        throw NoErasureError("ambient temperature " + std::to_string(m.ambient_temperature) +
                             " K is not above freezing; the cube cannot melt");
    }
    BoundComparison out;
    out.computed_cooling = energy_from_joule(ice_cube_cooling_joule(m), m.ambient_temperature);
    out.anderson_limit = anderson_bound(1.0, m.ambient_temperature);
    out.violation_factor = out.computed_cooling.kT / std::abs(out.anderson_limit.kT);
    return out;
}

std::vector<EntropyAuditEntry> memory_entropy_audit(std::span<const MemoryState> trace) {
    std::vector<EntropyAuditEntry> out;
    out.reserve(trace.size());
    for (const MemoryState& s : trace) {
        const double nats = memory_entropy(1.0 - s.p1);
        out.push_back({s.p1, nats, nats_to_bits(nats), s.p1 == 0.0 || s.p1 == 1.0});
    }
    return out;
}

}  // namespace ite

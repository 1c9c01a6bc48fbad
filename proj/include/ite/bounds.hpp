#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace ite {

/// An energy in joules together with its multiple of k T at the stated temperature.
struct Energy {
    double joule = 0.0;
    double kT = 0.0;
    double temperature = 0.0;
};

Energy energy_from_joule(double joule, double temperature);
Energy energy_from_kT(double multiple, double temperature);

/// Minimum dissipation of a bit-value change with error probability p_e: kT ln(1/p_e).
/// Accepts 0 < p_e <= 0.5.
Energy brillouin_min_dissipation(double p_e, double temperature);

/// Most negative dissipation permitted by E_diss >= -kT ln2 * dS for an entropy change of dS bits.
Energy anderson_bound(double delta_S_bits, double temperature);

/// Sub-freezing ambient: melting does not proceed, so there is no erasure.
class NoErasureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kWaterFreezingPoint = 273.15;  // K

/**
 * Ice-cube tray memory: a frozen cube is bit 1, a water cube at ambient is the
 * erased state. Erasing melts the cube with heat drawn from the environment.
 * Material constants are configurable; defaults are textbook values.
 */
struct IceCubeModel {
    double volume_cm3 = 10.0;
    double ambient_temperature = 300.0;  // K
    double ice_density = 0.917;           // g/cm^3
    double latent_heat_fusion = 333.55;   // J/g
    bool include_sensible_heat = false;
    double ice_initial_temperature = 255.15;  // K, freezer
    double specific_heat_ice = 2.1;            // J/(g K)
    double specific_heat_water = 4.18;         // J/(g K)
};

struct BoundComparison {
    Energy computed_cooling;   // heat drawn from the environment, positive
    Energy anderson_limit;     // anderson_bound(1 bit), negative
    double violation_factor = 0.0;  // computed_cooling / |anderson_limit|
};

/// Heat absorbed from the environment when one cube melts (latent heat, optional sensible heat).
double ice_cube_cooling_joule(const IceCubeModel& model);

/// Throws NoErasureError at or below freezing, std::invalid_argument for bad constants.
BoundComparison ice_cube_erasure_energy(const IceCubeModel& model);

/// Probability of bit value 1 at one step of a protocol trace.
struct MemoryState {
    double p1 = 0.0;
};

struct EntropyAuditEntry {
    double p1 = 0.0;
    double entropy_nats = 0.0;
    double entropy_bits = 0.0;
    bool deterministic = false;
};

/// Memory entropy at each step of a trace. Deterministic states (p1 in {0,1}) give exactly zero;
/// the thermalized state p1 = 0.5 gives 1 bit.
std::vector<EntropyAuditEntry> memory_entropy_audit(std::span<const MemoryState> trace);

}  // namespace ite

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ite/cell.hpp"
#include "ite/info.hpp"
#include "ite/rng.hpp"
#include "ite/stats.hpp"

namespace ite {

/// First passage did not happen within the configured guard.
class TimeoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WriteOptions {
    double dt = 0.0;             // required, > 0; experiments use dt <= tau/100
    double max_duration = 0.0;   // 0 selects 1e4 * tau
    double p_e_measurement = 0.5;  // error probability of each measurement decision
};

/// Outcome of one measurement-triggered write.
struct WriteRecord {
    int bit_written = 0;
    double u0 = 0.0;
    double duration = 0.0;  // crossing time, linearly interpolated inside the last step
    double v_start = 0.0;
    double v_final = 0.0;   // exactly +u0 or -u0
    std::uint64_t n_samples = 0;
    double bath_heat = 0.0;  // heat delivered to the resistor/environment
    double control_cost_lower_bound = 0.0;
};

struct EraseRecord {
    double v_start = 0.0;
    double v_final = 0.0;
    double duration = 0.0;
    double bath_heat = 0.0;
};

/// Bath heat over a work-free connected interval: minus the change of capacitor energy.
inline double bath_heat(const CellParams& p, double v_start, double v_final) noexcept {
    return -(p.energy(v_final) - p.energy(v_start));
}

/// Per-decision control cost kT ln(1/p_e_measurement).
double control_cost_per_decision(const CellParams& p, double p_e_measurement);

/**
 * Connects the resistor to a thermalized cell and watches the voltage until it
 * first reaches +u0 (bit 1) or -u0 (bit 0), then disconnects. The starting
 * voltage is a fresh stationary sample. A crossing is declared when two
 * consecutive samples straddle the target, and the stored voltage is set to
 * the target exactly.
 *
 * Throws std::invalid_argument for u0 <= 0, bad bit or dt; TimeoutError when
 * max_duration elapses first.
 */
WriteRecord write_bit(int bit, double u0, const CellParams& p, const WriteOptions& options, RngStream& rng);

/// Sign read-out: 1 for v >= 0, 0 for v < 0. The v == 0 tie reads as 1.
int read_bit(double v);

/// Reconnects the resistor (no measurement) and lets the cell thermalize for `duration`.
EraseRecord erase(double v0, double duration, const CellParams& p, double dt, RngStream& rng);

/// Mean bath heat of erasing a cell holding +-u0: (C u0^2 - kT) / 2.
double erase_dissipation_theory(double u0, const CellParams& p);

/// Probability that the sign read after thermalizing for t differs from the written sign:
/// Phi(-u0 mu / s) with mu = exp(-t/tau), s = sigma_st sqrt(1 - mu^2).
double partial_erase_error_prob(double u0, double t, const CellParams& p);

struct ErasureExperimentConfig {
    CellParams cell = CellParams::reduced();
    double u0 = 1.0;                     // volts
    std::vector<double> durations;       // seconds, ascending
    double write_dt = 0.0;               // 0 selects tau/100
    double erase_dt = 0.0;               // 0 selects tau/10
    double max_write_duration = 0.0;     // 0 selects 1e4 * tau
    double p_e_measurement = 0.5;
    std::size_t n_trajectories = 10000;
    std::uint64_t master_seed = 42;
    unsigned workers = 1;
};

/// One duration of an erasure experiment.
struct ErasureReport {
    double duration = 0.0;
    std::size_t n_trajectories = 0;
    Estimate bath_heat;               // erase step only
    double theory_bath_heat = 0.0;    // erase_dissipation_theory(u0)
    Estimate write_bath_heat;
    BitChannelStats channel;
    double p_e_theory = 0.0;          // partial_erase_error_prob(u0, duration)
    InformationContent remaining;
};

/**
 * For each duration: write uniformly random bits, erase for that duration,
 * read back, and collect error rate, remaining information and bath heat.
 * Trajectory i of duration d uses stream d * n_trajectories + i.
 */
std::vector<ErasureReport> run_erasure_experiment(const ErasureExperimentConfig& config);

}  // namespace ite

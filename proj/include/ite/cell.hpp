#pragma once

#include <cmath>
#include <stdexcept>

namespace ite {

/// Boltzmann constant, J/K (exact SI value).
inline constexpr double kBoltzmann = 1.380649e-23;

/**
 * Physical parameters of a parallel-RC capacitor memory cell.
 *
 * `boltzmann` is the unit of entropy in use: kBoltzmann for SI runs, 1 for
 * reduced runs where kT = 1 and C = 1, hence sigma_st = 1 and tau = R.
 */
struct CellParams {
    double temperature;
    double resistance;
    double capacitance;
    double boltzmann = kBoltzmann;

    static CellParams si(double temperature_K, double resistance_ohm, double capacitance_F) {
        CellParams p{temperature_K, resistance_ohm, capacitance_F, kBoltzmann};
        p.validate();
        return p;
    }

    static CellParams reduced(double tau = 1.0) {
        CellParams p{1.0, tau, 1.0, 1.0};
        p.validate();
        return p;
    }

    void validate() const {
        if (!(temperature > 0.0) || !(resistance > 0.0) || !(capacitance > 0.0) || !(boltzmann > 0.0) ||
            !std::isfinite(temperature) || !std::isfinite(resistance) || !std::isfinite(capacitance)) {
            throw std::invalid_argument("CellParams: temperature, resistance and capacitance must be positive");
        }
    }

    [[nodiscard]] double tau() const noexcept { return resistance * capacitance; }
    [[nodiscard]] double kT() const noexcept { return boltzmann * temperature; }
    /// RMS Johnson noise voltage sqrt(kT/C).
    [[nodiscard]] double sigma_st() const noexcept { return std::sqrt(kT() / capacitance); }
    [[nodiscard]] double energy(double voltage) const noexcept { return 0.5 * capacitance * voltage * voltage; }
};

}  // namespace ite

#pragma once

// Test-only reference computations. Nothing here calls into the library's
// sampling or integration code.

#include <cmath>
#include <functional>
#include <vector>

namespace ite::test {

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 4000) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

/// Quartic double well E((x/x0)^2 - 1)^2 in units where kT = 1.
inline double quartic(double x, double barrier, double x0) {
    const double w = (x / x0) * (x / x0) - 1.0;
    return barrier * w * w;
}

/// <U> under exp(-U/kT) restricted to x > 0 (kT = 1).
inline double conditional_mean_energy(double barrier, double x0, double kT = 1.0) {
    const double upper = 4.0 * x0;
    auto w = [&](double x) { return std::exp(-quartic(x, barrier, x0) / kT); };
    const double z = simpson(w, 0.0, upper);
    return simpson([&](double x) { return quartic(x, barrier, x0) * w(x); }, 0.0, upper) / z;
}

/// Probability mass of exp(-U) (kT = 1) in [a, b] relative to [0, inf).
inline double folded_boltzmann_mass(double a, double b, double barrier, double x0) {
    auto w = [&](double x) { return std::exp(-quartic(x, barrier, x0)); };
    return simpson(w, a, b, 200) / simpson(w, 0.0, 4.0 * x0);
}

/**
 * Exact mean first-passage time from x0 to the barrier top at 0 for overdamped
 * motion with D = kT/gamma (kT = gamma = 1), reflecting at +infinity:
 *   T = int_0^x0 dy e^{U(y)} int_y^inf dz e^{-U(z)}.
 */
inline double mean_first_passage_to_top(double barrier, double x0) {
    const double upper = 4.0 * x0;
    constexpr int n = 4000;
    const double h = upper / n;
    // tail[i] = int_{i h}^{upper} e^{-U}, accumulated with the trapezoid rule.
    std::vector<double> tail(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        const double a = i * h;
        tail[i] = tail[i + 1] + 0.5 * h * (std::exp(-quartic(a, barrier, x0)) + std::exp(-quartic(a + h, barrier, x0)));
    }
    const int m = static_cast<int>(std::lround(x0 / h));
    double t = 0.0;
    for (int i = 0; i < m; ++i) {
        const double a = i * h;
        t += 0.5 * h * (std::exp(quartic(a, barrier, x0)) * tail[i] + std::exp(quartic(a + h, barrier, x0)) * tail[i + 1]);
    }
    return t;
}

}  // namespace ite::test

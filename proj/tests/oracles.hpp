#pragma once

// Reference values computed without the library: closed forms, an erfc from
// its Taylor series and continued fraction, and the classical heat series.

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// int_0^inf exp(-s t^a / a) t^p t^(a-1) dt = a^(p/a) Gamma(1 + p/a) / s^(1 + p/a)
inline double power_transform(double p, double a, double s) {
    const double q = p / a;
    return std::pow(a, q) * std::tgamma(1.0 + q) / std::pow(s, 1.0 + q);
}

/// erfc(z) for z >= 0.
inline double erfc(double z) {
    if (z < 2.0) {
        // erf(z) = (2/sqrt(pi)) e^(-z^2) sum 2^n z^(2n+1) / (1*3*...*(2n+1)), all terms positive
        double term = z, sum = z;
        for (int n = 1; n < 200; ++n) {
            term *= 2.0 * z * z / (2.0 * n + 1.0);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return 1.0 - 2.0 / std::sqrt(kPi) * std::exp(-z * z) * sum;
    }
    // erfc(z) = e^(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))), evaluated backwards
    double tail = z;
    for (int n = 120; n >= 1; --n) tail = z + 0.5 * n / tail;
    return std::exp(-z * z) / (std::sqrt(kPi) * tail);
}

/// Classical u_t = kappa u_xx on [0, a], u(0) = U, u_x(a) = 0, u(x, 0) = 0, at
/// time tau, summed over the first `terms` odd modes.
inline double heat_mixed(double x, double tau, double kappa, double a, double U, int terms) {
    double sum = 0.0;
    for (int n = 0; n < terms; ++n) {
        const double m = 2.0 * n + 1.0;
        sum += std::sin(m * kPi * x / (2.0 * a)) / m * std::exp(-kappa * m * m * kPi * kPi * tau / (4.0 * a * a));
    }
    return U - 4.0 * U / kPi * sum;
}

}  // namespace oracle

#pragma once

// Inverse conformable transform. Every route evaluates the classical inverse
// of F at u = t^alpha / alpha:
//   - pair table lookup for the closed-form families,
//   - trapezoidal summation along the Bromwich line Re(s) = c,
//   - residue summation over the poles of a strictly proper rational F.

#include <optional>
#include <vector>

#include "confract/transform.hpp"

namespace confract {

struct Pole {
    Complex location;
    int multiplicity = 1;
    /// residues[j] multiplies 1/(s - location)^(j+1).
    std::vector<Complex> residues;
};

struct PoleSet {
    std::vector<Pole> poles;

    /// sum_k sum_j residues[j] / (s - z_k)^(j+1)
    Complex evaluate(Complex s) const;
};

struct BromwichSpec {
    /// Abscissa of the line; default region + 1.5 / u.
    std::optional<double> c;
    /// Half-length of the imaginary segment. When neither omega_max nor
    /// n_nodes is set, the sum is averaged over two truncations near
    /// omega_max u = 4000 placed at zeros of cos(omega u).
    std::optional<double> omega_max;
    /// Node count over [-omega_max, omega_max]; default spaces the nodes
    /// pi / (10 u) apart, which pushes the aliased copies of f 20 u away.
    std::optional<int> n_nodes;

    void validate() const;
};

struct BromwichResult {
    double value = 0.0;
    double imaginary_part = 0.0;
    double c = 0.0;
    double omega_max = 0.0;
    int n_nodes = 0;
};

/// Real part of (1/2pi) int e^((c+iw)u) F(c+iw) dw by the trapezoid rule.
/// Throws ContourError when the discarded imaginary part exceeds
/// 1e-8 |result| (plus a round-off floor).
BromwichResult invert_bromwich_detailed(const FrequencyExpression& F, FractionalOrder alpha, double t,
                                        const BromwichSpec& spec = {});

double invert_bromwich(const FrequencyExpression& F, FractionalOrder alpha, double t, const BromwichSpec& spec = {});

/// Poles and principal-part coefficients of a strictly proper rational F.
/// Roots closer than 1e-4 of the root scale are merged into one pole of
/// higher multiplicity; the decomposition must reproduce F at seven
/// pseudo-random points to 1e-9 or IllConditionedPolesError is thrown.
PoleSet partial_fractions(const FrequencyExpression& F);

/// sum over poles of e^(z u) sum_j residues[j] u^j / j!, u = t^alpha / alpha.
double invert_residues(const PoleSet& poles, FractionalOrder alpha, double t);

enum class InversionMethod { pair_table, bromwich };

/// Closed-form or contour inverse evaluated at u = t^alpha / alpha. The pair
/// table accepts constant multiples of c/s^(k+1), c/(s - lambda),
/// c/(s^2 + lambda^2) and c s/(s^2 + lambda^2).
double invert_via_classical(const FrequencyExpression& F, FractionalOrder alpha, double t, InversionMethod method);

}  // namespace confract

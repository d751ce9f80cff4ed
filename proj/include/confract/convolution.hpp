#pragma once

// Fractional convolution
//
//     (f *_alpha g)(t) = int_0^t f(p) g((t^alpha - p^alpha)^(1/alpha)) p^(alpha-1) dp,
//
// evaluated as the classical convolution int_0^u f(phi^-1(y)) g(phi^-1(u - y)) dy
// with u = t^alpha / alpha, and the weighted norms of L^n_alpha.

#include <optional>
#include <string>

#include "confract/transform.hpp"

namespace confract {

double conv_alpha(const TimeFunction& f, const TimeFunction& g, FractionalOrder alpha, double t,
                  const QuadratureSpec& quad = {});

/// t -> (f *_alpha g)(t) as a TimeFunction. A growth certificate is attached
/// when both factors carry one.
TimeFunction convolution_function(const TimeFunction& f, const TimeFunction& g, FractionalOrder alpha,
                                  const QuadratureSpec& quad = {});

struct WeightedNormSpec {
    double n = 1.0;
    FractionalOrder alpha{1.0};
    /// Truncation in t; empty picks it from decay of |f|^n.
    std::optional<double> t_max;

    void validate() const;
};

struct NormResult {
    double value = 0.0;
    double t_max = 0.0;
    std::optional<double> tail_bound;  // needs a decaying growth certificate
};

/// (int_0^t_max |f|^n t^(alpha-1) dt)^(1/n), integrated in u.
NormResult weighted_norm_detailed(const TimeFunction& f, const WeightedNormSpec& spec, const QuadratureSpec& quad = {});
double weighted_norm(const TimeFunction& f, const WeightedNormSpec& spec, const QuadratureSpec& quad = {});

enum class ConvolutionLaw { commutativity, associativity, distributivity, scalar };

std::string to_string(ConvolutionLaw law);

/// Both sides of one algebraic law at time t. Associativity nests the inner
/// convolution at 128 nodes; the node budget is recorded in the note.
ComparisonReport check_convolution_algebra(ConvolutionLaw law, const TimeFunction& f, const TimeFunction& g,
                                           const TimeFunction& h, double c, FractionalOrder alpha, double t,
                                           const QuadratureSpec& quad = {});

/// lhs = L{f} L{g}, rhs = L{f *_alpha g}.
ComparisonReport check_convolution_theorem(const TimeFunction& f, const TimeFunction& g, FractionalOrder alpha,
                                           Complex s, const QuadratureSpec& quad = {});

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs (1 + 1e-6) - lhs
    bool pass = false;
};

/// ||f *_alpha g||_n <= ||f||_1 ||g||_n over [0, t_max].
InequalityReport check_young(const TimeFunction& f, const TimeFunction& g, double n, FractionalOrder alpha,
                             std::optional<double> t_max = std::nullopt, const QuadratureSpec& quad = {});

}  // namespace confract

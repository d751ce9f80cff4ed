#pragma once

// Quadrature kernels shared by every module. All integrals in this library are
// taken in a substituted variable in which the integrand is bounded, so the
// default scheme is composite Gauss-Legendre on panels graded geometrically
// toward both ends of each segment. Integrable algebraic endpoint behaviour
// (x^g with g > -1) is resolved by the grading; interior kinks must be passed
// as breakpoints.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "confract/errors.hpp"

namespace confract {

enum class QuadratureScheme { transformed_gauss, adaptive_simpson };

struct QuadratureSpec {
    /// Truncation of an improper integral, in the integration variable. Empty
    /// means the caller picks it from decay information.
    std::optional<double> t_max;
    int n_nodes = 512;
    QuadratureScheme scheme = QuadratureScheme::transformed_gauss;
    /// Absolute tolerance for the adaptive scheme.
    double tolerance = 1e-12;
    /// Interior breakpoints in the integration variable.
    std::vector<double> breaks;

    void validate() const {
        if (t_max && !(*t_max > 0.0))
            throw DomainError("QuadratureSpec: t_max must be positive");
        if (n_nodes < 8)
            throw DomainError("QuadratureSpec: n_nodes must be at least 8, got " + std::to_string(n_nodes));
        if (!(tolerance > 0.0))
            throw DomainError("QuadratureSpec: tolerance must be positive");
    }

    QuadratureSpec with_t_max(double t) const {
        QuadratureSpec copy = *this;
        copy.t_max = t;
        return copy;
    }
    QuadratureSpec with_nodes(int n) const {
        QuadratureSpec copy = *this;
        copy.n_nodes = n;
        return copy;
    }
    QuadratureSpec with_breaks(std::vector<double> b) const {
        QuadratureSpec copy = *this;
        copy.breaks = std::move(b);
        return copy;
    }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Golub-Welsch rule of the given order (2..64), cached after first use.
const GaussRule& gauss_legendre(int order);

namespace detail {

inline constexpr double kGradingRatio = 0.15;

/// Panel breakpoints on [a, b], graded geometrically toward both ends.
inline std::vector<double> graded_breakpoints(double a, double b, int levels, double max_panel) {
    std::vector<double> pts;
    const double mid = 0.5 * (a + b);
    const double half = mid - a;
    pts.push_back(a);
    for (int k = levels - 1; k >= 1; --k) pts.push_back(a + half * std::pow(kGradingRatio, k));
    pts.push_back(mid);
    for (int k = 1; k <= levels - 1; ++k) pts.push_back(b - half * std::pow(kGradingRatio, k));
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    if (!std::isfinite(max_panel)) return pts;
    std::vector<double> refined;
    refined.push_back(pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double w = pts[i] - pts[i - 1];
        const auto pieces = static_cast<int>(std::ceil(w / max_panel));
        for (int j = 1; j < pieces; ++j) refined.push_back(pts[i - 1] + w * j / pieces);
        refined.push_back(pts[i]);
    }
    return refined;
}

template <class Scalar, class Fn>
Scalar graded_gauss(Fn& g, double a, double b, int n_nodes, double max_panel) {
    const int order = n_nodes >= 64 ? 16 : 8;
    const int levels = std::max(2, n_nodes / (2 * order));
    const GaussRule& rule = gauss_legendre(order);
    const std::vector<double> pts = graded_breakpoints(a, b, levels, max_panel);

    Scalar total{0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double lo = pts[i - 1];
        const double hi = pts[i];
        if (!(hi > lo)) continue;
        const double c = 0.5 * (lo + hi);
        const double r = 0.5 * (hi - lo);
        Scalar panel{0.0};
        for (int k = 0; k < order; ++k) panel += rule.weights[k] * static_cast<Scalar>(g(c + r * rule.nodes[k]));
        total += r * panel;
    }
    return total;
}

template <class Scalar, class Fn>
struct SimpsonState {
    Fn& g;
    double tol;
    int max_depth;
    double worst = 0.0;
    bool failed = false;

    Scalar recurse(double a, double b, Scalar fa, Scalar fm, Scalar fb, Scalar whole, double eps, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const Scalar flm = static_cast<Scalar>(g(lm));
        const Scalar frm = static_cast<Scalar>(g(rm));
        const Scalar left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const Scalar right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const Scalar delta = left + right - whole;
        const double err = std::abs(delta) / 15.0;
        if (err <= eps || depth >= max_depth || !(b - a > 1e-15 * (1.0 + std::abs(a)))) {
            if (err > eps) {
                failed = true;
                worst = std::max(worst, err);
            }
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
    }
};

template <class Scalar, class Fn>
Scalar adaptive_simpson_segment(Fn& g, double a, double b, double tol, double& residual) {
    SimpsonState<Scalar, Fn> state{g, tol, 48};
    // Start from a uniform partition so narrow features are not skipped.
    constexpr int kStart = 16;
    Scalar total{0.0};
    const double h = (b - a) / kStart;
    Scalar f_prev = static_cast<Scalar>(g(a));
    for (int i = 0; i < kStart; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == kStart) ? b : lo + h;
        const double m = 0.5 * (lo + hi);
        const Scalar fm = static_cast<Scalar>(g(m));
        const Scalar fh = static_cast<Scalar>(g(hi));
        const Scalar whole = (hi - lo) / 6.0 * (f_prev + 4.0 * fm + fh);
        total += state.recurse(lo, hi, f_prev, fm, fh, whole, tol / kStart, 0);
        f_prev = fh;
    }
    if (state.failed) residual = std::max(residual, state.worst);
    return total;
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. Throws AccuracyError carrying
/// the worst local error estimate when the depth limit is hit above tolerance.
template <class Scalar = double, class Fn>
Scalar adaptive_simpson(Fn&& g, double a, double b, double tol) {
    double residual = 0.0;
    const Scalar value = detail::adaptive_simpson_segment<Scalar>(g, a, b, tol, residual);
    if (residual > 0.0)
        throw AccuracyError("adaptive Simpson did not converge on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]",
                            residual);
    return value;
}

/// Integral of g over [a, b] under the given spec. Breakpoints in spec.breaks
/// strictly inside (a, b) split the range. max_panel caps panel width for
/// oscillatory integrands.
template <class Scalar = double, class Fn>
Scalar integrate(Fn&& g, double a, double b, const QuadratureSpec& spec,
                 double max_panel = std::numeric_limits<double>::infinity()) {
    if (a == b) return Scalar{0.0};
    if (b < a) return -integrate<Scalar>(g, b, a, spec, max_panel);

    std::vector<double> cuts{a};
    for (double x : spec.breaks)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Scalar total{0.0};
    double residual = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (spec.scheme == QuadratureScheme::adaptive_simpson) {
            const double share = spec.tolerance * (cuts[i] - cuts[i - 1]) / (b - a);
            total += detail::adaptive_simpson_segment<Scalar>(g, cuts[i - 1], cuts[i], share, residual);
        } else {
            total += detail::graded_gauss<Scalar>(g, cuts[i - 1], cuts[i], spec.n_nodes, max_panel);
        }
    }
    if (residual > 0.0) throw AccuracyError("adaptive Simpson did not reach tolerance", residual);
    return total;
}

}  // namespace confract

#include "confract/calculus.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <limits>
#include <memory>
#include <mutex>
#include <vector>

namespace confract {

namespace {

GaussRule golub_welsch(int order) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

// Relative step per nesting level for n nested central differences.
double nested_relative_step(int n) {
    switch (n) {
        case 1: return 1e-5;
        case 2: return 1e-4;
        case 3: return 5e-4;
        default: return 2e-3;
    }
}

double central_difference(const TimeFunction& f, double t, double h) {
    return (f.checked(t + h) - f.checked(t - h)) / (2.0 * h);
}

double central_difference4(const TimeFunction& f, double t, double h) {
    return (8.0 * (f.checked(t + h) - f.checked(t - h)) - (f.checked(t + 2.0 * h) - f.checked(t - 2.0 * h))) /
           (12.0 * h);
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 2 || order > 64) throw DomainError("Gauss-Legendre order must be in [2, 64]");
    static std::array<std::unique_ptr<GaussRule>, 65> cache;
    static std::array<std::once_flag, 65> flags;
    std::call_once(flags[order], [order] { cache[order] = std::make_unique<GaussRule>(golub_welsch(order)); });
    return *cache[order];
}

LimitEstimate extrapolate_limit(double v0, double v1, double v2) {
    const double d0 = v1 - v0;
    const double d1 = v2 - v1;
    const double scale = std::max({std::abs(v0), std::abs(v1), std::abs(v2), 1e-300});
    if (std::abs(d1) <= 1e-14 * scale) return {v2, std::abs(d1)};
    if (std::abs(d1) > std::abs(d0) * (1.0 + 1e-9))
        throw AccuracyError("limit estimate diverges: samples " + std::to_string(v0) + ", " + std::to_string(v1) +
                                ", " + std::to_string(v2),
                            std::abs(d1));
    const double denom = d1 - d0;
    if (denom == 0.0) return {v2, std::abs(d1)};
    const double limit = v2 - d1 * d1 / denom;
    return {limit, std::abs(limit - v2)};
}

double default_fd_step(double t) { return nested_relative_step(1) * t; }

LimitEstimate conformable_derivative_at_zero(const TimeFunction& f, FractionalOrder alpha, std::optional<double> h) {
    const double base = h.value_or(1e-6);
    if (!(base > 0.0)) throw DomainError("conformable_derivative: step must be positive");
    std::array<double, 3> samples{};
    for (int k = 0; k < 3; ++k) {
        const double tk = base / static_cast<double>(1 << k);
        const double slope = central_difference4(f, tk, 0.01 * tk);
        samples[k] = std::pow(tk, 1.0 - alpha.value()) * slope;
    }
    // Samples that already agree to round-off carry no rate information.
    const auto [lo, hi] = std::minmax({samples[0], samples[1], samples[2]});
    if (hi - lo <= 1e-10 * std::max(std::abs(hi), std::abs(lo))) return {samples[2], hi - lo};
    return extrapolate_limit(samples[0], samples[1], samples[2]);
}

double conformable_derivative(const TimeFunction& f, FractionalOrder alpha, double t, std::optional<double> h) {
    if (!(t >= 0.0)) throw DomainError("conformable_derivative: t must be non-negative");
    if (t == 0.0) return conformable_derivative_at_zero(f, alpha, h).value;
    if (!h) return nth_conformable_derivative(f, alpha, 1, t);
    double step = h.value_or(default_fd_step(t));
    if (!(step > 0.0)) throw DomainError("conformable_derivative: step must be positive");
    step = std::min(step, 0.5 * t);
    const double slope = central_difference(f, t, step);
    if (alpha.value() == 1.0) return slope;
    return std::pow(t, 1.0 - alpha.value()) * slope;
}

double conformable_integral(const TimeFunction& f, FractionalOrder beta, double t, const QuadratureSpec& quad) {
    if (!(t >= 0.0)) throw DomainError("conformable_integral: t must be non-negative, got " + std::to_string(t));
    quad.validate();
    if (t == 0.0) return 0.0;
    const double upper = beta.to_u(t);
    auto integrand = [&](double v) { return f.checked(beta.from_u(v)); };
    QuadratureSpec inner = quad;
    inner.breaks.clear();
    return integrate<double>(integrand, 0.0, upper, inner);
}

namespace {

// Nested central differences in t with a step proportional to t. Exact in the limit for power laws.
double nested_in_t(const TimeFunction& f, FractionalOrder beta, int n, double t, double rel, std::optional<double> h) {
    std::function<double(int, double)> level = [&](int k, double x) -> double {
        if (k == 0) return f.checked(x);
        const double step = std::min(h.value_or(rel * x), 0.5 * x);
        const double slope = (level(k - 1, x + step) - level(k - 1, x - step)) / (2.0 * step);
        return std::pow(x, 1.0 - beta.value()) * slope;
    };
    return level(n, t);
}

// n-th derivative along v = t^beta / beta with a step that does not shrink near v = 0.
double stencil_in_v(const TimeFunction& f, FractionalOrder beta, int n, double v, double step) {
    auto g = [&](double w) { return f.checked(beta.from_u(w)); };
    // Central stencils on half steps, second order.
    static const std::array<std::vector<double>, 4> central{{{-1.0, 1.0},
                                                            {1.0, -2.0, 1.0},
                                                            {-1.0, 3.0, -3.0, 1.0},
                                                            {1.0, -4.0, 6.0, -4.0, 1.0}}};
    // Forward stencils, second order, for points too close to v = 0.
    static const std::array<std::vector<double>, 4> forward{{{-1.5, 2.0, -0.5},
                                                            {2.0, -5.0, 4.0, -1.0},
                                                            {-2.5, 9.0, -12.0, 7.0, -1.5},
                                                            {3.0, -14.0, 26.0, -24.0, 11.0, -2.0}}};
    double sum = 0.0;
    if (v - 0.5 * n * step > 0.0) {
        const auto& c = central[n - 1];
        for (int k = 0; k <= n; ++k) sum += c[k] * g(v + (k - 0.5 * n) * step);
    } else {
        const auto& c = forward[n - 1];
        for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * g(v + static_cast<double>(k) * step);
    }
    return sum / std::pow(step, n);
}

}  // namespace

double nth_conformable_derivative(const TimeFunction& f, FractionalOrder beta, int n, double t,
                                  std::optional<double> h) {
    if (n < 1) throw DomainError("nth_conformable_derivative: n must be positive");
    if (n > 4) throw DomainError("nth_conformable_derivative: orders above 4 are unsupported, got " + std::to_string(n));
    if (!(t > 0.0)) throw DomainError("nth_conformable_derivative: t must be positive");
    if (h && !(*h > 0.0)) throw DomainError("nth_conformable_derivative: step must be positive");
    const double rel = nested_relative_step(n);
    if (h) return nested_in_t(f, beta, n, t, rel, h);
    // Relative steps in t suit power laws but lose everything to round-off near t = 0 for functions
    // smooth in v; fixed steps in v do the opposite. Keep whichever is more stable under doubling the step.
    // Each estimate is charged its truncation change plus a round-off bound.
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double size = std::abs(f.checked(t));
    const double in_t = nested_in_t(f, beta, n, t, rel, std::nullopt);
    const double in_t_coarse = nested_in_t(f, beta, n, t, 2.0 * rel, std::nullopt);
    const double t_noise = eps * size * std::pow(std::pow(t, -beta.value()) / rel, n);
    const double v = beta.to_u(t);
    const double step = rel * std::max(v, 1.0);
    const double in_v = stencil_in_v(f, beta, n, v, step);
    const double in_v_coarse = stencil_in_v(f, beta, n, v, 2.0 * step);
    const double v_noise = eps * size * std::pow(2.0, n + 2) / std::pow(step, n);
    const double t_err = std::abs(in_t - in_t_coarse) + t_noise;
    const double v_err = std::abs(in_v - in_v_coarse) + v_noise;
    return t_err <= v_err ? in_t : in_v;
}

TimeFunction conformable_derivative_function(TimeFunction f, FractionalOrder beta, int n) {
    return TimeFunction([f = std::move(f), beta, n](double t) {
        if (t == 0.0) {
            if (n != 1) throw DomainError("iterated conformable derivative at t = 0 is not supported");
            return conformable_derivative_at_zero(f, beta).value;
        }
        return n == 1 ? conformable_derivative(f, beta, t) : nth_conformable_derivative(f, beta, n, t);
    });
}

}  // namespace confract

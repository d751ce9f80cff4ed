#pragma once

// Core domain types and numeric conformable differentiation / integration.
//
// For t > 0 and differentiable f the conformable derivative of order alpha is
// T_alpha f(t) = t^(1-alpha) f'(t). Everything downstream works in the
// substituted time u = t^alpha / alpha, in which T_alpha is d/du.

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "confract/errors.hpp"
#include "confract/quadrature.hpp"

namespace confract {

/// Order alpha in (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
    }
    double value() const noexcept { return alpha_; }
    operator double() const noexcept { return alpha_; }

    /// u = t^alpha / alpha
    double to_u(double t) const { return std::pow(t, alpha_) / alpha_; }
    /// t = (alpha u)^(1/alpha)
    double from_u(double u) const { return std::pow(alpha_ * u, 1.0 / alpha_); }

private:
    double alpha_;
};

/// Certificate |f(t)| <= M exp(a t^alpha / alpha).
struct GrowthBound {
    double M = 1.0;
    double a = 0.0;
};

/// A real function of time on [0, inf). Evaluators must be reentrant.
class TimeFunction {
public:
    using Evaluator = std::function<double(double)>;

    TimeFunction() : eval_([](double) { return 0.0; }) {}
    explicit TimeFunction(Evaluator eval, std::optional<std::string> source = std::nullopt,
                          std::optional<GrowthBound> growth = std::nullopt)
        : eval_(std::move(eval)), source_(std::move(source)), growth_(growth) {}

    double operator()(double t) const { return eval_(t); }

    /// Evaluate and reject non-finite values.
    double checked(double t) const {
        const double v = eval_(t);
        if (!std::isfinite(v))
            throw EvaluationError("non-finite function value at t = " + std::to_string(t), t);
        return v;
    }

    const std::optional<std::string>& source() const noexcept { return source_; }
    const std::optional<GrowthBound>& growth_bound() const noexcept { return growth_; }

    TimeFunction with_growth(GrowthBound g) const {
        TimeFunction copy = *this;
        copy.growth_ = g;
        return copy;
    }

    static TimeFunction constant(double c) {
        return TimeFunction([c](double) { return c; }, std::to_string(c), GrowthBound{std::abs(c) + 1e-300, 0.0});
    }

private:
    Evaluator eval_;
    std::optional<std::string> source_;
    std::optional<GrowthBound> growth_;
};

/// phi_a(t) = (t - a)^alpha / alpha and its inverse.
class SubstitutionMap {
public:
    SubstitutionMap(FractionalOrder alpha, double a = 0.0) : alpha_(alpha), a_(a) {
        if (!(a >= 0.0)) throw DomainError("substitution map: left endpoint must be non-negative");
    }
    double forward(double t) const {
        if (t < a_) throw DomainError("substitution map: t below left endpoint");
        return std::pow(t - a_, alpha_.value()) / alpha_.value();
    }
    double inverse(double u) const {
        if (u < 0.0) throw DomainError("substitution map: negative u");
        return a_ + std::pow(alpha_.value() * u, 1.0 / alpha_.value());
    }
    FractionalOrder order() const noexcept { return alpha_; }
    double left_endpoint() const noexcept { return a_; }

private:
    FractionalOrder alpha_;
    double a_;
};

/// Result of a limit estimate from geometrically shrinking samples.
struct LimitEstimate {
    double value;
    double error;
};

/// Limit of a sequence v0, v1, v2, ... sampled at geometrically shrinking
/// arguments. The convergence rate is estimated from the samples (Aitken
/// form of Richardson extrapolation), so a leading error of any power of
/// the argument is eliminated. Throws AccuracyError when the differences grow.
LimitEstimate extrapolate_limit(double v0, double v1, double v2);

/// Default finite-difference step for a first derivative at t > 0.
double default_fd_step(double t);

/// T_alpha f(t). For t > 0 uses a central difference with step h (clamped to
/// t / 2); at t = 0 extrapolates t^(1-alpha) f'(t) from t = h, h/2, h/4.
double conformable_derivative(const TimeFunction& f, FractionalOrder alpha, double t,
                              std::optional<double> h = std::nullopt);

/// Same as conformable_derivative at t = 0, with the extrapolation error.
LimitEstimate conformable_derivative_at_zero(const TimeFunction& f, FractionalOrder alpha,
                                             std::optional<double> h = std::nullopt);

/// g(t) = integral_0^t f(p) p^(beta - 1) dp, integrated in v = p^beta / beta.
double conformable_integral(const TimeFunction& f, FractionalOrder beta, double t,
                            const QuadratureSpec& quad = {});

/// (T_beta)^n f(t) by finite differences, n <= 4. A given h fixes the nested step in t.
double nth_conformable_derivative(const TimeFunction& f, FractionalOrder beta, int n, double t,
                                  std::optional<double> h = std::nullopt);

/// The TimeFunction t -> T_beta f(t) (or its n-th iterate).
TimeFunction conformable_derivative_function(TimeFunction f, FractionalOrder beta, int n = 1);

}  // namespace confract

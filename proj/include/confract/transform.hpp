#pragma once

// Forward conformable Laplace transform
//
//     L_alpha{f}(s) = int_0^inf exp(-s t^alpha / alpha) f(t) t^(alpha - 1) dt
//                   = int_0^inf exp(-s u) f((alpha u)^(1/alpha)) du,
//
// always evaluated in the second form, plus numeric checkers for the
// transform identities (shift/scaling rules, derivative and integral rules,
// initial and final value limits).

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "confract/calculus.hpp"
#include "confract/polynomial.hpp"

namespace confract {

using Complex = std::complex<double>;

/// A frequency-domain value F(s), optionally with an exact rational form.
class FrequencyExpression {
public:
    using Evaluator = std::function<Complex(Complex)>;

    /// Black-box F declared valid for Re(s) > region.
    static FrequencyExpression blackbox(Evaluator eval, double region);
    /// numerator / denominator; region is the largest real part of a pole.
    static FrequencyExpression rational(RealPolynomial numerator, RealPolynomial denominator);

    Complex operator()(Complex s) const { return eval_(s); }
    bool is_rational() const noexcept { return rational_; }
    const RealPolynomial& numerator() const;
    const RealPolynomial& denominator() const;
    double region() const noexcept { return region_; }

private:
    FrequencyExpression() = default;

    Evaluator eval_;
    bool rational_ = false;
    RealPolynomial num_;
    RealPolynomial den_;
    double region_ = 0.0;
};

/// Two independently computed sides of an identity.
struct ComparisonReport {
    std::string name;
    Complex lhs;
    Complex rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    /// Magnitude of the largest term combined into either side; relative
    /// errors are taken against max(|lhs|, |rhs|, scale).
    double scale = 0.0;
    std::string note;

    bool agrees(double rel_tol) const { return rel_err <= rel_tol; }
};

ComparisonReport make_report(std::string name, Complex lhs, Complex rhs, double scale = 0.0);

struct ForwardResult {
    Complex value;
    double u_max = 0.0;                 // truncation point in u
    std::optional<double> tail_bound;   // only with a growth certificate
};

/// Forward transform with truncation details.
ForwardResult forward_transform_detailed(const TimeFunction& f, FractionalOrder alpha, Complex s,
                                         const QuadratureSpec& quad = {});

Complex forward_transform(const TimeFunction& f, FractionalOrder alpha, Complex s, const QuadratureSpec& quad = {});

// --- closed-form pair table ------------------------------------------------

enum class PairFamily { constant, exp_eigen, sin_eigen, cos_eigen, power_alpha };

struct PairTableEntry {
    PairFamily family;
    double parameter = 0.0;  // lambda, or k for power_alpha
    TimeFunction time_form;
    FrequencyExpression freq_form;
    std::string time_text;
    std::string freq_text;
};

/// Closed-form pair for a family. Time forms are written in u = t^alpha/alpha:
/// 1 <-> 1/s, e^(lambda u) <-> 1/(s - lambda), sin(lambda u) <-> lambda/(s^2 + lambda^2),
/// cos(lambda u) <-> s/(s^2 + lambda^2), u^k <-> k!/s^(k+1).
PairTableEntry pair_lookup(PairFamily family, double parameter, FractionalOrder alpha);

PairFamily parse_pair_family(const std::string& name);
std::string to_string(PairFamily family);

// --- property checks ---------------------------------------------------------

enum class PropertyId { linearity, scaling, first_shift, second_shift, mul_t_alpha, div_t_alpha };

struct PropertyCheck {
    PropertyId id;
    double a = 0.0;                      // scaling factor or shift
    std::optional<TimeFunction> other;   // second function for linearity
    double c1 = 1.0;
    double c2 = 1.0;
};

std::string to_string(PropertyId id);

ComparisonReport check_property(const PropertyCheck& property, const TimeFunction& f, FractionalOrder alpha,
                                Complex s, const QuadratureSpec& quad = {});

// --- derivative and integral rules -------------------------------------------

/// coefficient * s^s_power * L{t^t_power f}
struct RuleTerm {
    double coefficient;
    int s_power;
    double t_power;
};

/// coefficient * s^s_power * [exp(-s u) t^t_power (T_beta)^derivative f(t)] from 0 to inf
struct RuleBoundary {
    double coefficient;
    int s_power;
    double t_power;
    int derivative;
};

struct DerivativeRule {
    std::vector<RuleTerm> terms;
    std::vector<RuleBoundary> boundaries;
};

/// Expansion of L{(T_beta)^n f} obtained by integrating by parts n times:
/// L{t^m T_beta h} = [exp(-s u) t^(alpha-beta+m) h] + s L{t^(alpha-beta+m) h}
///                   + (beta - alpha - m) L{t^(m-beta) h}.
DerivativeRule expand_derivative_rule(int n, FractionalOrder alpha, FractionalOrder beta);

/// Value of one boundary bracket; the lower limit is extrapolated from
/// samples at geometrically shrinking u.
Complex evaluate_boundary(const RuleBoundary& b, const TimeFunction& f, FractionalOrder alpha,
                          FractionalOrder beta, Complex s, double u_upper, bool decays_at_infinity);

ComparisonReport derivative_transform_check(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta,
                                            Complex s, const QuadratureSpec& quad = {});

ComparisonReport nth_derivative_transform_check(const TimeFunction& f, FractionalOrder alpha,
                                                FractionalOrder beta, int n, Complex s,
                                                const QuadratureSpec& quad = {});

/// The n-th derivative rule with binomial coefficients
/// s^n L{t^(n(alpha-beta)) f} + sum_k C(n,k) (beta-alpha)^k s^(n-k) L{t^((n-k)(alpha-beta)-k beta) f}
/// plus the boundary brackets of expand_derivative_rule. It coincides with
/// the integration-by-parts expansion only when alpha == beta or n == 1.
Complex binomial_derivative_rule(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta, int n,
                                 Complex s, const QuadratureSpec& quad = {});

/// L{g} for g(t) = int_0^t f(p) p^(beta-1) dp against (1/s) L{t^(beta-alpha) f}.
/// The note records the value with the exponent alpha - beta for comparison.
ComparisonReport integral_transform_check(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta,
                                          Complex s, const QuadratureSpec& quad = {});

// --- limit theorems ----------------------------------------------------------

/// lim_{s -> inf} s F(s).
double initial_value(const FrequencyExpression& F);
/// lim_{s -> 0+} s F(s). Rational F must have all poles in Re(s) < 0 apart
/// from at most a simple pole at the origin.
double final_value(const FrequencyExpression& F);

// --- existence -----------------------------------------------------------------

struct ExistenceProbe {
    Complex at_u0;
    Complex at_2u0;
    bool converges;
};

/// Compares truncated transforms at u0 and 2 u0.
ExistenceProbe probe_existence(const TimeFunction& f, FractionalOrder alpha, Complex s, double u0,
                               const QuadratureSpec& quad = {});

}  // namespace confract

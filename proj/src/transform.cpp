#include "confract/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace confract {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

std::optional<GrowthBound> shifted_growth(const TimeFunction& f, double extra_rate) {
    if (!f.growth_bound()) return std::nullopt;
    return GrowthBound{f.growth_bound()->M, f.growth_bound()->a + extra_rate};
}

/// t -> t^p f(t); the growth certificate is dropped because t^p is unbounded.
TimeFunction times_power(const TimeFunction& f, double p) {
    if (p == 0.0) return f;
    return TimeFunction([f, p](double t) { return std::pow(t, p) * f(t); });
}

}  // namespace

// --- FrequencyExpression -------------------------------------------------------

FrequencyExpression FrequencyExpression::blackbox(Evaluator eval, double region) {
    FrequencyExpression F;
    F.eval_ = std::move(eval);
    F.region_ = region;
    return F;
}

FrequencyExpression FrequencyExpression::rational(RealPolynomial numerator, RealPolynomial denominator) {
    if (denominator.is_zero()) throw DomainError("rational frequency expression: zero denominator");
    FrequencyExpression F;
    F.rational_ = true;
    F.num_ = std::move(numerator);
    F.den_ = std::move(denominator);
    F.eval_ = [num = F.num_, den = F.den_](Complex s) { return num(s) / den(s); };
    double region = -kInf;
    for (const Complex& z : polynomial_roots(F.den_)) region = std::max(region, z.real());
    F.region_ = std::isfinite(region) ? region : 0.0;
    return F;
}

const RealPolynomial& FrequencyExpression::numerator() const {
    if (!rational_) throw DomainError("frequency expression has no rational form");
    return num_;
}

const RealPolynomial& FrequencyExpression::denominator() const {
    if (!rational_) throw DomainError("frequency expression has no rational form");
    return den_;
}

ComparisonReport make_report(std::string name, Complex lhs, Complex rhs, double scale) {
    ComparisonReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.scale = scale;
    r.abs_err = std::abs(lhs - rhs);
    const double denom = std::max({std::abs(lhs), std::abs(rhs), scale});
    r.rel_err = denom > 0.0 ? r.abs_err / denom : r.abs_err;
    return r;
}

// --- forward transform --------------------------------------------------------

ForwardResult forward_transform_detailed(const TimeFunction& f, FractionalOrder alpha, Complex s,
                                         const QuadratureSpec& quad) {
    quad.validate();
    const auto& growth = f.growth_bound();
    const double a = growth ? growth->a : 0.0;
    if (growth && !(s.real() > a)) {
        std::ostringstream msg;
        msg << "transform diverges: Re(s) = " << s.real() << " is not right of the growth abscissa " << a;
        throw DivergenceError(msg.str());
    }
    if (!growth && !(s.real() > 0.0))
        throw DivergenceError("transform requires Re(s) > 0 without a growth certificate");

    auto integrand = [&](double u) { return std::exp(-s * u) * f.checked(alpha.from_u(u)); };

    const double sigma = s.real() - a;
    const double M = growth ? std::max(growth->M, 1.0) : 1.0;
    double u_max;
    if (quad.t_max) {
        u_max = *quad.t_max;
    } else {
        u_max = (32.3 + std::log(M) + std::max(0.0, -std::log(sigma))) / sigma;
        if (!growth) {
            // Without a certificate, stretch the window until the integrand has decayed.
            double ref = 0.0;
            for (double frac : {1e-3, 1e-2, 0.1, 0.5}) ref = std::max(ref, std::abs(integrand(frac * u_max)));
            auto tail = [&](double u) {
                return std::max(std::abs(integrand(u)), std::abs(integrand(0.9 * u))) / s.real();
            };
            while (tail(u_max) > 1e-15 * std::max(ref, 1e-300) && u_max < 1e7) u_max *= 1.5;
        }
    }

    ForwardResult result;
    result.u_max = u_max;
    result.value = integrate<Complex>(integrand, 0.0, u_max, quad, 12.0 / std::abs(s));
    if (growth) result.tail_bound = growth->M * std::exp(-sigma * u_max) / sigma;
    return result;
}

Complex forward_transform(const TimeFunction& f, FractionalOrder alpha, Complex s, const QuadratureSpec& quad) {
    return forward_transform_detailed(f, alpha, s, quad).value;
}

// --- pair table ---------------------------------------------------------------

PairTableEntry pair_lookup(PairFamily family, double p, FractionalOrder alpha) {
    auto u_of = [alpha](double t) { return alpha.to_u(t); };
    std::ostringstream lam;
    lam.precision(17);
    lam << p;
    switch (family) {
        case PairFamily::constant:
            return {family, 0.0, TimeFunction([](double) { return 1.0; }, "1", GrowthBound{1.0, 0.0}),
                    FrequencyExpression::rational({1.0}, {0.0, 1.0}), "1", "1/s"};
        case PairFamily::exp_eigen:
            return {family, p,
                    TimeFunction([u_of, p](double t) { return std::exp(p * u_of(t)); }, "exp(" + lam.str() + "*u)",
                                 GrowthBound{1.0, p}),
                    FrequencyExpression::rational({1.0}, {-p, 1.0}), "exp(" + lam.str() + "*u)",
                    "1/(s-" + lam.str() + ")"};
        case PairFamily::sin_eigen:
            return {family, p,
                    TimeFunction([u_of, p](double t) { return std::sin(p * u_of(t)); }, "sin(" + lam.str() + "*u)",
                                 GrowthBound{1.0, 0.0}),
                    FrequencyExpression::rational({p}, {p * p, 0.0, 1.0}), "sin(" + lam.str() + "*u)",
                    lam.str() + "/(s^2+" + lam.str() + "^2)"};
        case PairFamily::cos_eigen:
            return {family, p,
                    TimeFunction([u_of, p](double t) { return std::cos(p * u_of(t)); }, "cos(" + lam.str() + "*u)",
                                 GrowthBound{1.0, 0.0}),
                    FrequencyExpression::rational({0.0, 1.0}, {p * p, 0.0, 1.0}), "cos(" + lam.str() + "*u)",
                    "s/(s^2+" + lam.str() + "^2)"};
        case PairFamily::power_alpha: {
            const int k = static_cast<int>(std::lround(p));
            if (k < 0 || std::abs(k - p) > 0) throw LookupError("power_alpha needs a non-negative integer k");
            // u^k <= (k / (e eps))^k exp(eps u) with eps = 0.1
            const double M = k == 0 ? 1.0 : std::pow(k / (std::exp(1.0) * 0.1), k);
            RealPolynomial den = RealPolynomial::monomial(k + 1);
            return {family, p,
                    TimeFunction([u_of, k](double t) { return std::pow(u_of(t), k); }, "u^" + std::to_string(k),
                                 GrowthBound{M, k == 0 ? 0.0 : 0.1}),
                    FrequencyExpression::rational(RealPolynomial::constant(factorial(k)), den),
                    "u^" + std::to_string(k), std::to_string(static_cast<long long>(factorial(k))) + "/s^" +
                                                  std::to_string(k + 1)};
        }
    }
    throw LookupError("unknown pair family");
}

PairFamily parse_pair_family(const std::string& name) {
    if (name == "const" || name == "constant") return PairFamily::constant;
    if (name == "exp_eigen" || name == "exp") return PairFamily::exp_eigen;
    if (name == "sin_eigen" || name == "sin") return PairFamily::sin_eigen;
    if (name == "cos_eigen" || name == "cos") return PairFamily::cos_eigen;
    if (name == "power_alpha" || name == "power") return PairFamily::power_alpha;
    throw LookupError("unknown pair family '" + name + "' (known: const, exp_eigen, sin_eigen, cos_eigen, power_alpha)");
}

std::string to_string(PairFamily family) {
    switch (family) {
        case PairFamily::constant: return "const";
        case PairFamily::exp_eigen: return "exp_eigen";
        case PairFamily::sin_eigen: return "sin_eigen";
        case PairFamily::cos_eigen: return "cos_eigen";
        case PairFamily::power_alpha: return "power_alpha";
    }
    return "?";
}

// --- property checks ----------------------------------------------------------

std::string to_string(PropertyId id) {
    switch (id) {
        case PropertyId::linearity: return "linearity";
        case PropertyId::scaling: return "scaling";
        case PropertyId::first_shift: return "first_shift";
        case PropertyId::second_shift: return "second_shift";
        case PropertyId::mul_t_alpha: return "mul_t_alpha";
        case PropertyId::div_t_alpha: return "div_t_alpha";
    }
    return "?";
}

ComparisonReport check_property(const PropertyCheck& prop, const TimeFunction& f, FractionalOrder alpha, Complex s,
                                const QuadratureSpec& quad) {
    const double al = alpha.value();
    auto L = [&](const TimeFunction& h, Complex z, const QuadratureSpec& q) { return forward_transform(h, alpha, z, q); };
    const std::string name = to_string(prop.id);

    switch (prop.id) {
        case PropertyId::linearity: {
            if (!prop.other) throw DomainError("linearity check needs a second function");
            const TimeFunction g = *prop.other;
            std::optional<GrowthBound> growth;
            if (f.growth_bound() && g.growth_bound())
                growth = GrowthBound{std::abs(prop.c1) * f.growth_bound()->M + std::abs(prop.c2) * g.growth_bound()->M,
                                     std::max(f.growth_bound()->a, g.growth_bound()->a)};
            const TimeFunction combo([f, g, c1 = prop.c1, c2 = prop.c2](double t) { return c1 * f(t) + c2 * g(t); },
                                     std::nullopt, growth);
            const Complex lf = prop.c1 * L(f, s, quad);
            const Complex lg = prop.c2 * L(g, s, quad);
            return make_report(name, L(combo, s, quad), lf + lg, std::abs(lf) + std::abs(lg));
        }
        case PropertyId::scaling: {
            const double a = prop.a;
            if (!(a > 0.0)) throw DomainError("scaling check needs a > 0");
            const double ka = std::pow(a, al);
            std::optional<GrowthBound> growth;
            if (f.growth_bound()) growth = GrowthBound{f.growth_bound()->M, f.growth_bound()->a * ka};
            const TimeFunction fa([f, a](double t) { return f(a * t); }, std::nullopt, growth);
            return make_report(name, L(fa, s, quad), L(f, s / ka, quad) / ka);
        }
        case PropertyId::first_shift: {
            const double a = prop.a;
            const TimeFunction shifted([f, a, alpha](double t) { return std::exp(a * alpha.to_u(t)) * f(t); },
                                       std::nullopt, shifted_growth(f, a));
            return make_report(name, L(shifted, s, quad), L(f, s - a, quad));
        }
        case PropertyId::second_shift: {
            const double a = prop.a;
            if (!(a >= 0.0)) throw DomainError("second shift needs a >= 0");
            const double ua = alpha.to_u(a);
            const ForwardResult base = forward_transform_detailed(f, alpha, s, quad);
            const TimeFunction delayed(
                [f, a, al](double t) {
                    if (t <= a) return 0.0;
                    return f(std::pow(std::pow(t, al) - std::pow(a, al), 1.0 / al));
                },
                std::nullopt, f.growth_bound());
            QuadratureSpec q = quad.with_t_max(ua + base.u_max);
            q.breaks.push_back(ua);
            const Complex lhs = L(delayed, s, q);
            return make_report(name, lhs, std::exp(-s * ua) * base.value);
        }
        case PropertyId::mul_t_alpha: {
            const TimeFunction weighted([f, al](double t) { return std::pow(t, al) * f(t); });
            const ForwardResult base = forward_transform_detailed(f, alpha, s, quad);
            const QuadratureSpec fixed = quad.with_t_max(base.u_max);
            Complex slope;
            std::string how;
            if (s.imag() == 0.0) {
                constexpr double h = 1e-20;
                slope = L(f, Complex(s.real(), h), fixed).imag() / h;
                how = "complex-step derivative, h = 1e-20";
            } else {
                const double h = 1e-6 * std::abs(s);
                slope = (L(f, s + h, fixed) - L(f, s - h, fixed)) / (2.0 * h);
                how = "central-difference derivative, h = 1e-6 |s|";
            }
            ComparisonReport r = make_report(name, L(weighted, s, quad), -al * slope);
            r.note = how;
            return r;
        }
        case PropertyId::div_t_alpha: {
            const TimeFunction divided([f, al](double t) { return f(t) / std::pow(t, al); });
            // int_s^inf F(sigma) d sigma along sigma = s + c (1/w - 1), w in (0, 1].
            const double c = s.real();
            if (!(c > 0.0)) throw DomainError("division rule check needs Re(s) > 0");
            QuadratureSpec outer = quad;
            outer.t_max.reset();
            outer.breaks.clear();
            QuadratureSpec inner = outer;
            auto integrand = [&](double w) {
                const Complex sigma = s + c * (1.0 / w - 1.0);
                return L(f, sigma, inner) * (c / (w * w));
            };
            const Complex tail = integrate<Complex>(integrand, 0.0, 1.0, outer);
            ComparisonReport r = make_report(name, L(divided, s, quad), tail / al);
            r.note = "frequency integral over sigma = s + Re(s)(1/w - 1)";
            return r;
        }
    }
    throw DomainError("unknown property");
}

// --- derivative rule ----------------------------------------------------------

namespace {

void expand_into(double m, int j, double coef, int s_power, double alpha, double beta, DerivativeRule& out) {
    if (coef == 0.0) return;
    if (j == 0) {
        out.terms.push_back({coef, s_power, m});
        return;
    }
    out.boundaries.push_back({coef, s_power, alpha - beta + m, j - 1});
    expand_into(alpha - beta + m, j - 1, coef, s_power + 1, alpha, beta, out);
    expand_into(m - beta, j - 1, coef * (beta - alpha - m), s_power, alpha, beta, out);
}

bool same_power(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }

}  // namespace

DerivativeRule expand_derivative_rule(int n, FractionalOrder alpha, FractionalOrder beta) {
    if (n < 1 || n > 4) throw DomainError("derivative rule order must be in [1, 4]");
    DerivativeRule raw;
    expand_into(0.0, n, 1.0, 0, alpha.value(), beta.value(), raw);

    DerivativeRule merged;
    for (const RuleTerm& t : raw.terms) {
        auto it = std::find_if(merged.terms.begin(), merged.terms.end(), [&](const RuleTerm& o) {
            return o.s_power == t.s_power && same_power(o.t_power, t.t_power);
        });
        if (it == merged.terms.end())
            merged.terms.push_back(t);
        else
            it->coefficient += t.coefficient;
    }
    std::erase_if(merged.terms, [](const RuleTerm& t) { return std::abs(t.coefficient) < 1e-15; });
    for (const RuleBoundary& b : raw.boundaries) {
        auto it = std::find_if(merged.boundaries.begin(), merged.boundaries.end(), [&](const RuleBoundary& o) {
            return o.s_power == b.s_power && o.derivative == b.derivative && same_power(o.t_power, b.t_power);
        });
        if (it == merged.boundaries.end())
            merged.boundaries.push_back(b);
        else
            it->coefficient += b.coefficient;
    }
    std::erase_if(merged.boundaries, [](const RuleBoundary& b) { return std::abs(b.coefficient) < 1e-15; });
    return merged;
}

Complex evaluate_boundary(const RuleBoundary& b, const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta,
                          Complex s, double u_upper, bool decays_at_infinity) {
    const TimeFunction h = b.derivative == 0 ? f : conformable_derivative_function(f, beta, b.derivative);
    auto bracket = [&](double u) {
        const double t = alpha.from_u(u);
        return std::exp(-s * u) * std::pow(t, b.t_power) * h.checked(t);
    };

    // Lower limit: samples at u = 1e-3 ... 1e-7, two rounds of rate-estimating extrapolation.
    std::array<Complex, 5> v;
    for (int k = 0; k < 5; ++k) v[k] = bracket(1e-3 * std::pow(10.0, -k));
    auto limit_of = [](auto take, const std::array<Complex, 5>& seq) {
        try {
            std::array<double, 3> first;
            for (int i = 0; i < 3; ++i) first[i] = extrapolate_limit(take(seq[i]), take(seq[i + 1]), take(seq[i + 2])).value;
            const double scale = std::max({std::abs(first[0]), std::abs(first[2]), 1e-300});
            if (std::abs(first[2] - first[1]) <= 1e-10 * scale) return first[2];
            return extrapolate_limit(first[0], first[1], first[2]).value;
        } catch (const AccuracyError& e) {
            throw BoundaryTermError("boundary term at t -> 0+ does not converge", e.residual());
        }
    };
    const Complex lower(limit_of([](Complex z) { return z.real(); }, v), limit_of([](Complex z) { return z.imag(); }, v));
    const Complex upper = decays_at_infinity ? Complex(0.0) : bracket(u_upper);
    return b.coefficient * std::pow(s, b.s_power) * (upper - lower);
}

namespace {

struct RuleEvaluation {
    Complex value{0.0};
    double scale = 0.0;
    double u_upper = 0.0;
    std::string note;
};

RuleEvaluation evaluate_rule(const DerivativeRule& rule, const TimeFunction& f, FractionalOrder alpha,
                             FractionalOrder beta, Complex s, const QuadratureSpec& quad) {
    RuleEvaluation out;
    std::ostringstream note;
    note.precision(10);
    for (const RuleTerm& t : rule.terms) {
        const ForwardResult r = forward_transform_detailed(times_power(f, t.t_power), alpha, s, quad);
        const Complex term = t.coefficient * std::pow(s, t.s_power) * r.value;
        out.value += term;
        out.scale = std::max(out.scale, std::abs(term));
        out.u_upper = std::max(out.u_upper, r.u_max);
    }
    const bool decays = f.growth_bound() && s.real() > f.growth_bound()->a;
    for (const RuleBoundary& b : rule.boundaries) {
        const Complex term = evaluate_boundary(b, f, alpha, beta, s, out.u_upper, decays);
        out.value += term;
        out.scale = std::max(out.scale, std::abs(term));
        note << "[t^" << b.t_power << " T^" << b.derivative << " f] x " << b.coefficient << " s^" << b.s_power
             << " = " << term.real() << "; ";
    }
    out.note = note.str();
    return out;
}

}  // namespace

ComparisonReport derivative_transform_check(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta,
                                            Complex s, const QuadratureSpec& quad) {
    return nth_derivative_transform_check(f, alpha, beta, 1, s, quad);
}

ComparisonReport nth_derivative_transform_check(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta,
                                                int n, Complex s, const QuadratureSpec& quad) {
    if (n != 1 && n != 2) throw DomainError("derivative rule check supports n = 1 or 2");
    const TimeFunction derived = conformable_derivative_function(f, beta, n);
    const Complex lhs = forward_transform(derived, alpha, s, quad);
    const RuleEvaluation rhs = evaluate_rule(expand_derivative_rule(n, alpha, beta), f, alpha, beta, s, quad);
    ComparisonReport r = make_report(n == 1 ? "derivative_rule" : "derivative_rule_n2", lhs, rhs.value, rhs.scale);
    r.note = rhs.note;
    return r;
}

Complex binomial_derivative_rule(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta, int n, Complex s,
                                 const QuadratureSpec& quad) {
    const double a = alpha.value(), b = beta.value();
    DerivativeRule rule;
    rule.terms.push_back({1.0, n, n * (a - b)});
    double binom = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        rule.terms.push_back({binom * std::pow(b - a, k), n - k, (n - k) * (a - b) - k * b});
    }
    std::erase_if(rule.terms, [](const RuleTerm& t) { return std::abs(t.coefficient) < 1e-15; });
    rule.boundaries = expand_derivative_rule(n, alpha, beta).boundaries;
    return evaluate_rule(rule, f, alpha, beta, s, quad).value;
}

ComparisonReport integral_transform_check(const TimeFunction& f, FractionalOrder alpha, FractionalOrder beta, Complex s,
                                          const QuadratureSpec& quad) {
    QuadratureSpec inner = quad;
    inner.t_max.reset();
    inner.breaks.clear();
    inner.n_nodes = std::min(quad.n_nodes, 256);
    const TimeFunction g([f, beta, inner](double t) { return conformable_integral(f, beta, t, inner); });
    const Complex lhs = forward_transform(g, alpha, s, quad);
    // dg/du = t^(beta - alpha) f(t), so one integration by parts gives the weight t^(beta - alpha).
    const double gap = beta.value() - alpha.value();
    const Complex rhs = forward_transform(times_power(f, gap), alpha, s, quad) / s;
    ComparisonReport r = make_report("integral_rule", lhs, rhs);
    if (gap != 0.0) {
        const Complex swapped = forward_transform(times_power(f, -gap), alpha, s, quad) / s;
        std::ostringstream note;
        note.precision(12);
        note << "with weight t^(alpha - beta) instead: " << swapped.real();
        r.note = note.str();
    }
    return r;
}

// --- limit theorems ----------------------------------------------------------

double initial_value(const FrequencyExpression& F) {
    if (F.is_rational()) {
        const RealPolynomial& N = F.numerator();
        const RealPolynomial& D = F.denominator();
        if (N.is_zero()) return 0.0;
        if (N.degree() >= D.degree())
            throw TheoremInapplicableError("initial value: s F(s) is unbounded as s -> inf (F not strictly proper)");
        if (N.degree() == D.degree() - 1) return N.leading() / D.leading();
        return 0.0;
    }
    auto sF = [&](double s) { return (s * F(Complex(s, 0.0))).real(); };
    return extrapolate_limit(sF(1e4), sF(1e5), sF(1e6)).value;
}

double final_value(const FrequencyExpression& F) {
    if (F.is_rational()) {
        const RealPolynomial& N = F.numerator();
        const RealPolynomial& D = F.denominator();
        const double scale = D.coeffs().cwiseAbs().maxCoeff();
        int at_origin = 0;
        for (const Complex& z : polynomial_roots(D)) {
            if (std::abs(z) <= 1e-12 * std::max(1.0, scale)) {
                ++at_origin;
            } else if (z.real() >= 0.0) {
                throw TheoremInapplicableError("final value: pole in the closed right half-plane");
            }
        }
        if (at_origin > 1) throw TheoremInapplicableError("final value: pole of order > 1 at the origin");
        if (at_origin == 0) return 0.0;
        // D = s Q, so lim s N / D = N(0) / Q(0) = N(0) / D'(0).
        return N(0.0) / D.derivative()(0.0);
    }
    auto sF = [&](double s) { return (s * F(Complex(s, 0.0))).real(); };
    return extrapolate_limit(sF(1e-4), sF(1e-5), sF(1e-6)).value;
}

ExistenceProbe probe_existence(const TimeFunction& f, FractionalOrder alpha, Complex s, double u0,
                               const QuadratureSpec& quad) {
    if (!(u0 > 0.0)) throw DomainError("existence probe needs u0 > 0");
    ExistenceProbe p;
    p.at_u0 = forward_transform(f, alpha, s, quad.with_t_max(u0));
    p.at_2u0 = forward_transform(f, alpha, s, quad.with_t_max(2.0 * u0));
    const bool finite = std::isfinite(std::abs(p.at_u0)) && std::isfinite(std::abs(p.at_2u0));
    p.converges = finite && std::abs(p.at_2u0 - p.at_u0) <= 1e-8 * std::max(std::abs(p.at_u0), 1e-300);
    return p;
}

}  // namespace confract

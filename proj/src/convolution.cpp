#include "confract/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace confract {

namespace {

constexpr int kNestedNodes = 128;

// Smallest u at which |f|^n has decayed below 1e-17 of its sampled size.
double decay_horizon(const TimeFunction& f, FractionalOrder alpha, double n) {
    if (f.growth_bound() && f.growth_bound()->a < 0.0) {
        const double rate = -n * f.growth_bound()->a;
        const double M = std::max(f.growth_bound()->M, 1.0);
        return (39.0 + n * std::log(M) + std::max(0.0, -std::log(rate))) / rate;
    }
    auto mag = [&](double u) { return std::pow(std::abs(f.checked(alpha.from_u(u))), n); };
    double ref = 0.0;
    for (double u : {1e-3, 0.1, 1.0, 4.0}) ref = std::max(ref, mag(u));
    if (ref == 0.0) return 8.0;
    double u = 8.0;
    while (std::max(mag(u), mag(0.9 * u)) > 1e-17 * ref) {
        u *= 1.5;
        if (u > 1e6) throw DomainError("weighted norm is infinite: |f|^n does not decay");
    }
    return u;
}

}  // namespace

double conv_alpha(const TimeFunction& f, const TimeFunction& g, FractionalOrder alpha, double t,
                  const QuadratureSpec& quad) {
    if (!(t >= 0.0)) throw DomainError("convolution needs t >= 0");
    if (t == 0.0) return 0.0;
    const double u = alpha.to_u(t);
    auto integrand = [&](double y) { return f.checked(alpha.from_u(y)) * g.checked(alpha.from_u(u - y)); };
    QuadratureSpec q = quad;
    q.t_max.reset();
    std::erase_if(q.breaks, [u](double b) { return !(b > 0.0 && b < u); });
    return integrate<double>(integrand, 0.0, u, q);
}

TimeFunction convolution_function(const TimeFunction& f, const TimeFunction& g, FractionalOrder alpha,
                                  const QuadratureSpec& quad) {
    std::optional<GrowthBound> growth;
    if (f.growth_bound() && g.growth_bound()) {
        // int_0^u e^(a1 y + a2 (u - y)) dy <= u e^(max(a1, a2) u) <= e^(eps u) / (e eps) e^(max u)
        constexpr double eps = 0.05;
        growth = GrowthBound{f.growth_bound()->M * g.growth_bound()->M / (std::exp(1.0) * eps),
                             std::max(f.growth_bound()->a, g.growth_bound()->a) + eps};
    }
    return TimeFunction([f, g, alpha, quad](double t) { return conv_alpha(f, g, alpha, t, quad); }, std::nullopt,
                        growth);
}

void WeightedNormSpec::validate() const {
    if (!(n >= 1.0)) throw DomainError("weighted norm exponent must be >= 1");
    if (t_max && !(*t_max > 0.0)) throw DomainError("weighted norm t_max must be positive");
}

NormResult weighted_norm_detailed(const TimeFunction& f, const WeightedNormSpec& spec, const QuadratureSpec& quad) {
    spec.validate();
    const FractionalOrder alpha = spec.alpha;
    const double u_max = spec.t_max ? alpha.to_u(*spec.t_max) : decay_horizon(f, alpha, spec.n);
    auto integrand = [&](double u) { return std::pow(std::abs(f.checked(alpha.from_u(u))), spec.n); };
    QuadratureSpec q = quad;
    q.t_max.reset();
    q.breaks.clear();
    const double integral = integrate<double>(integrand, 0.0, u_max, q);
    if (!std::isfinite(integral)) throw DomainError("weighted norm is infinite");

    NormResult out;
    out.value = std::pow(integral, 1.0 / spec.n);
    out.t_max = alpha.from_u(u_max);
    if (f.growth_bound() && f.growth_bound()->a < 0.0) {
        const double rate = -spec.n * f.growth_bound()->a;
        out.tail_bound = std::pow(f.growth_bound()->M, spec.n) * std::exp(-rate * u_max) / rate;
    }
    return out;
}

double weighted_norm(const TimeFunction& f, const WeightedNormSpec& spec, const QuadratureSpec& quad) {
    return weighted_norm_detailed(f, spec, quad).value;
}

std::string to_string(ConvolutionLaw law) {
    switch (law) {
        case ConvolutionLaw::commutativity: return "commutativity";
        case ConvolutionLaw::associativity: return "associativity";
        case ConvolutionLaw::distributivity: return "distributivity";
        case ConvolutionLaw::scalar: return "scalar";
    }
    return "?";
}

ComparisonReport check_convolution_algebra(ConvolutionLaw law, const TimeFunction& f, const TimeFunction& g,
                                           const TimeFunction& h, double c, FractionalOrder alpha, double t,
                                           const QuadratureSpec& quad) {
    auto conv = [&](const TimeFunction& a, const TimeFunction& b) { return conv_alpha(a, b, alpha, t, quad); };
    const std::string name = to_string(law);
    switch (law) {
        case ConvolutionLaw::commutativity:
            return make_report(name, conv(f, g), conv(g, f));
        case ConvolutionLaw::associativity: {
            const QuadratureSpec inner = quad.with_nodes(std::min(quad.n_nodes, kNestedNodes));
            const TimeFunction fg = convolution_function(f, g, alpha, inner);
            const TimeFunction gh = convolution_function(g, h, alpha, inner);
            ComparisonReport r = make_report(name, conv(fg, h), conv(f, gh));
            std::ostringstream note;
            note << "outer " << quad.n_nodes << " nodes x inner " << inner.n_nodes << " nodes";
            r.note = note.str();
            return r;
        }
        case ConvolutionLaw::distributivity: {
            const TimeFunction sum([g, h](double x) { return g(x) + h(x); });
            const double fg = conv(f, g);
            const double fh = conv(f, h);
            return make_report(name, conv(f, sum), fg + fh, std::abs(fg) + std::abs(fh));
        }
        case ConvolutionLaw::scalar: {
            const TimeFunction cf([f, c](double x) { return c * f(x); });
            return make_report(name, conv(cf, g), c * conv(f, g));
        }
    }
    throw DomainError("unknown convolution law");
}

ComparisonReport check_convolution_theorem(const TimeFunction& f, const TimeFunction& g, FractionalOrder alpha,
                                           Complex s, const QuadratureSpec& quad) {
    const Complex lf = forward_transform(f, alpha, s, quad);
    const Complex lg = forward_transform(g, alpha, s, quad);
    QuadratureSpec inner = quad;
    inner.t_max.reset();
    inner.breaks.clear();
    const Complex rhs = forward_transform(convolution_function(f, g, alpha, inner), alpha, s, quad);
    return make_report("convolution_theorem", lf * lg, rhs);
}

InequalityReport check_young(const TimeFunction& f, const TimeFunction& g, double n, FractionalOrder alpha,
                             std::optional<double> t_max, const QuadratureSpec& quad) {
    if (!(n >= 1.0)) throw DomainError("Young inequality needs n >= 1");
    const double T =
        t_max.value_or(alpha.from_u(std::max(decay_horizon(f, alpha, 1.0), decay_horizon(g, alpha, n))));
    QuadratureSpec inner = quad;
    inner.t_max.reset();
    inner.breaks.clear();
    const TimeFunction fg([&f, &g, alpha, inner](double t) { return conv_alpha(f, g, alpha, t, inner); });

    InequalityReport r;
    r.lhs = weighted_norm(fg, {n, alpha, T}, quad);
    r.rhs = weighted_norm(f, {1.0, alpha, T}, quad) * weighted_norm(g, {n, alpha, T}, quad);
    r.slack = r.rhs * (1.0 + 1e-6) - r.lhs;
    r.pass = r.slack >= 0.0;
    return r;
}

}  // namespace confract

#include "confract/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace confract {

namespace {

constexpr double kPi = std::numbers::pi;

double coefficient_scale(const RealPolynomial& p) { return p.coeffs().cwiseAbs().maxCoeff(); }

}  // namespace

Complex PoleSet::evaluate(Complex s) const {
    Complex total{0.0};
    for (const Pole& p : poles) {
        const Complex inv = 1.0 / (s - p.location);
        Complex power = inv;
        for (const Complex& r : p.residues) {
            total += r * power;
            power *= inv;
        }
    }
    return total;
}

void BromwichSpec::validate() const {
    if (omega_max && !(*omega_max > 0.0)) throw DomainError("Bromwich omega_max must be positive");
    if (n_nodes && *n_nodes < 64) throw DomainError("Bromwich n_nodes must be at least 64");
}

BromwichResult invert_bromwich_detailed(const FrequencyExpression& F, FractionalOrder alpha, double t,
                                        const BromwichSpec& spec) {
    spec.validate();
    if (!(t > 0.0)) throw DomainError("Bromwich inversion needs t > 0");
    const double u = alpha.to_u(t);
    const double sigma0 = F.region();

    BromwichResult out;
    out.c = spec.c.value_or(sigma0 + 1.5 / u);
    if (!(out.c > sigma0)) {
        std::ostringstream msg;
        msg << "Bromwich line Re(s) = " << out.c << " is not right of the singularities (" << sigma0 << ")";
        throw DomainError(msg.str());
    }
    // Default: nodes pi / (10 u) apart, so the aliased copies of f sit 20 u away, and the
    // sum is averaged over two truncations with omega_max u = 2 pi K + pi/2 and + 3 pi/2.
    // Both truncations sit at zeros of cos(omega u), cancelling the 1/s tail of F, and
    // the average cancels the 1/s^2 tail.
    const bool averaged = !spec.omega_max && !spec.n_nodes;
    double h;
    long half_nodes;  // nodes run over n = -half_nodes .. half_nodes
    long inner = 0;
    if (averaged) {
        const long periods = static_cast<long>(std::ceil((4000.0 - 0.5 * kPi) / (2.0 * kPi)));
        h = kPi / (10.0 * u);
        inner = 20 * periods + 5;
        half_nodes = inner + 10;
        out.omega_max = half_nodes * h;
    } else {
        out.omega_max = spec.omega_max.value_or((2.0 * kPi * 637 + 0.5 * kPi) / u);
        const long intervals = spec.n_nodes ? *spec.n_nodes - 1 : static_cast<long>(std::ceil(20.0 * out.omega_max * u / kPi));
        half_nodes = std::max(1L, intervals / 2);
        h = out.omega_max / half_nodes;
    }
    out.n_nodes = static_cast<int>(2 * half_nodes + 1);

    auto weight = [&](long n) {
        const long a = std::abs(n);
        if (!averaged) return a == half_nodes ? 0.5 : 1.0;
        auto one = [a](long edge) { return a < edge ? 1.0 : (a == edge ? 0.5 : 0.0); };
        return 0.5 * (one(inner) + one(half_nodes));
    };
    Complex total{0.0};
    double magnitude = 0.0;
    for (long n = -half_nodes; n <= half_nodes; ++n) {
        const Complex s(out.c, n * h);
        const Complex term = weight(n) * std::exp(s * u) * F(s);
        total += term;
        magnitude += std::abs(term);
    }
    const double norm = h / (2.0 * kPi);
    out.value = norm * total.real();
    out.imaginary_part = norm * total.imag();
    if (!std::isfinite(out.value))
        throw AccuracyError("Bromwich sum is not finite", std::numeric_limits<double>::infinity());
    if (std::abs(out.imaginary_part) > 1e-8 * std::abs(out.value) + 1e-14 * norm * magnitude) {
        std::ostringstream msg;
        msg << "Bromwich sum left imaginary part " << out.imaginary_part << " against value " << out.value
            << "; increase omega_max or move c";
        throw ContourError(msg.str(), out.imaginary_part);
    }
    return out;
}

double invert_bromwich(const FrequencyExpression& F, FractionalOrder alpha, double t, const BromwichSpec& spec) {
    return invert_bromwich_detailed(F, alpha, t, spec).value;
}

PoleSet partial_fractions(const FrequencyExpression& F) {
    if (!F.is_rational()) throw DomainError("partial fractions need a rational F");
    const RealPolynomial& N = F.numerator();
    const RealPolynomial& D = F.denominator();
    if (D.degree() < 1 || (!N.is_zero() && N.degree() >= D.degree()))
        throw DomainError("partial fractions need a strictly proper rational F");

    const std::vector<Complex> roots = polynomial_roots(D);
    double scale = 1.0;
    for (const Complex& z : roots) scale = std::max(scale, std::abs(z));

    // Merge clustered roots into poles of higher multiplicity.
    std::vector<std::vector<Complex>> clusters;
    for (const Complex& z : roots) {
        auto it = std::find_if(clusters.begin(), clusters.end(),
                               [&](const std::vector<Complex>& c) { return std::abs(c.front() - z) < 1e-4 * scale; });
        if (it == clusters.end())
            clusters.push_back({z});
        else
            it->push_back(z);
    }

    const ComplexPolynomial Dc = D.cast<Complex>();
    const ComplexPolynomial Nc = N.cast<Complex>();
    PoleSet out;
    for (const auto& cluster : clusters) {
        const int m = static_cast<int>(cluster.size());
        Complex z{0.0};
        for (const Complex& r : cluster) z += r;
        z /= static_cast<double>(m);
        if (m > 1) {
            // The (m-1)-th derivative has a simple root at an m-fold root of D.
            ComplexPolynomial d = Dc;
            for (int k = 0; k < m - 1; ++k) d = d.derivative();
            const ComplexPolynomial dd = d.derivative();
            for (int it = 0; it < 3; ++it) {
                const Complex slope = dd(z);
                if (std::abs(slope) == 0.0) break;
                z -= d(z) / slope;
            }
        }
        if (std::abs(z.imag()) <= 1e-12 * scale) z = Complex(z.real(), 0.0);

        ComplexPolynomial Q = Dc;
        for (int k = 0; k < m; ++k) {
            Complex rem;
            Q = Q.deflate(z, &rem);
        }
        const auto a = Nc.taylor_at(z);
        const auto b = Q.taylor_at(z);
        if (std::abs(b[0]) == 0.0) throw IllConditionedPolesError("pole multiplicity could not be resolved");
        auto coeff = [](const auto& v, int k) { return k < v.size() ? v[k] : Complex(0.0); };
        std::vector<Complex> c(m);
        for (int k = 0; k < m; ++k) {
            Complex acc = coeff(a, k);
            for (int i = 1; i <= k; ++i) acc -= coeff(b, i) * c[k - i];
            c[k] = acc / b[0];
        }
        Pole p;
        p.location = z;
        p.multiplicity = m;
        for (int j = 0; j < m; ++j) p.residues.push_back(c[m - 1 - j]);
        out.poles.push_back(std::move(p));
    }

    // Reconstruction check at fixed pseudo-random points away from the poles.
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    for (int k = 0; k < 7; ++k) {
        const Complex s(2.0 * scale * pick(rng) + 0.5 * scale, 2.0 * scale * pick(rng));
        const Complex exact = F(s);
        const Complex rebuilt = out.evaluate(s);
        const double err = std::abs(exact - rebuilt);
        if (!(err <= 1e-9 * std::max(std::abs(exact), 1e-300) + 1e-13 * coefficient_scale(N) / coefficient_scale(D))) {
            std::ostringstream msg;
            msg << "partial fraction reconstruction misses F by " << err << " at s = " << s
                << "; poles too close to separate or merge";
            throw IllConditionedPolesError(msg.str());
        }
    }
    return out;
}

double invert_residues(const PoleSet& poles, FractionalOrder alpha, double t) {
    if (!(t >= 0.0)) throw DomainError("residue inversion needs t >= 0");
    const double u = alpha.to_u(t);
    Complex total{0.0};
    double magnitude = 0.0;
    for (const Pole& p : poles.poles) {
        if (static_cast<int>(p.residues.size()) != p.multiplicity)
            throw InconsistentPolesError("residue list length differs from pole multiplicity");
        Complex poly{0.0};
        double power = 1.0;  // u^j / j!
        for (std::size_t j = 0; j < p.residues.size(); ++j) {
            poly += p.residues[j] * power;
            power *= u / static_cast<double>(j + 1);
        }
        const Complex term = std::exp(p.location * u) * poly;
        total += term;
        magnitude += std::abs(term);
    }
    if (std::abs(total.imag()) > 1e-12 * magnitude) {
        std::ostringstream msg;
        msg << "residue sum has imaginary part " << total.imag() << "; poles are not conjugate-symmetric";
        throw InconsistentPolesError(msg.str());
    }
    return total.real();
}

double invert_via_classical(const FrequencyExpression& F, FractionalOrder alpha, double t, InversionMethod method) {
    if (!(t >= 0.0)) throw DomainError("inversion needs t >= 0");
    const double u = alpha.to_u(t);
    if (method == InversionMethod::bromwich) return invert_bromwich(F, FractionalOrder(1.0), u);

    if (!F.is_rational()) throw LookupError("pair table lookup needs a rational F");
    const RealPolynomial& N = F.numerator();
    const RealPolynomial& D = F.denominator();
    const double lead = D.leading();
    const double scale = coefficient_scale(D) / std::abs(lead);
    auto zero = [&](double v) { return std::abs(v) <= 1e-14 * scale; };
    auto d = [&](int k) { return D[k] / lead; };
    const int n = D.degree();

    if (N.degree() == 0) {
        const double c = N[0] / lead;
        bool monomial = true;
        for (int k = 0; k < n; ++k) monomial = monomial && zero(d(k));
        if (n >= 1 && monomial) {
            double term = c;
            for (int j = 1; j < n; ++j) term *= u / j;
            return term;  // c u^(n-1) / (n-1)!
        }
        if (n == 1) return c * std::exp(-d(0) * u);
        if (n == 2 && zero(d(1)) && d(0) > 0.0) {
            const double lambda = std::sqrt(d(0));
            return c / lambda * std::sin(lambda * u);
        }
    } else if (N.degree() == 1 && zero(N[0] / lead) && n == 2 && zero(d(1)) && d(0) > 0.0) {
        return N[1] / lead * std::cos(std::sqrt(d(0)) * u);
    }
    throw LookupError("no pair table entry matches this F (known: c/s^(k+1), c/(s-l), c/(s^2+l^2), c s/(s^2+l^2))");
}

}  // namespace confract

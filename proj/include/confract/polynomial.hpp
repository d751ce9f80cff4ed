#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <vector>

namespace confract {

/// Dense polynomial with ascending coefficients c0 + c1 s + ... .
template <class Scalar>
class Polynomial {
public:
    using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Polynomial() : c_(Coeffs::Zero(1)) {}
    explicit Polynomial(Coeffs c) : c_(std::move(c)) {
        if (c_.size() == 0) c_ = Coeffs::Zero(1);
        trim();
    }
    Polynomial(std::initializer_list<Scalar> c) : Polynomial(Coeffs(Eigen::Map<const Coeffs>(c.begin(), c.size()))) {}

    static Polynomial constant(Scalar v) { return Polynomial(Coeffs::Constant(1, v)); }
    static Polynomial monomial(int degree, Scalar coeff = Scalar(1)) {
        Coeffs c = Coeffs::Zero(degree + 1);
        c[degree] = coeff;
        return Polynomial(c);
    }

    const Coeffs& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == Scalar(0); }
    Scalar leading() const { return c_[c_.size() - 1]; }
    Scalar operator[](int k) const { return k <= degree() ? c_[k] : Scalar(0); }

    template <class T>
    auto operator()(const T& s) const {
        using R = decltype(Scalar() * s);
        R acc = R(c_[c_.size() - 1]);
        for (Eigen::Index k = c_.size() - 2; k >= 0; --k) acc = acc * s + R(c_[k]);
        return acc;
    }

    Polynomial derivative() const {
        if (degree() == 0) return Polynomial();
        Coeffs d(degree());
        for (int k = 1; k <= degree(); ++k) d[k - 1] = Scalar(k) * c_[k];
        return Polynomial(d);
    }

    /// Quotient of division by (s - z); the remainder p(z) goes to *remainder.
    Polynomial deflate(Scalar z, Scalar* remainder = nullptr) const {
        if (degree() == 0) {
            if (remainder) *remainder = c_[0];
            return Polynomial();
        }
        Coeffs q(degree());
        Scalar carry = c_[degree()];
        for (int k = degree() - 1; k >= 0; --k) {
            q[k] = carry;
            carry = c_[k] + carry * z;
        }
        if (remainder) *remainder = carry;
        return Polynomial(q);
    }

    /// Taylor coefficients about z: p(s) = sum a_k (s - z)^k.
    Coeffs taylor_at(Scalar z) const {
        Coeffs out(degree() + 1);
        Polynomial p = *this;
        for (int k = 0; k <= degree(); ++k) {
            Scalar r;
            p = p.deflate(z, &r);
            out[k] = r;
        }
        return out;
    }

    template <class Other>
    Polynomial<Other> cast() const {
        return Polynomial<Other>(c_.template cast<Other>());
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        const int n = std::max(a.degree(), b.degree()) + 1;
        Coeffs c = Coeffs::Zero(n);
        c.head(a.c_.size()) += a.c_;
        c.head(b.c_.size()) += b.c_;
        return Polynomial(c);
    }
    friend Polynomial operator-(const Polynomial& a) { return Polynomial(Coeffs(-a.c_)); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Coeffs c = Coeffs::Zero(a.degree() + b.degree() + 1);
        for (int i = 0; i <= a.degree(); ++i)
            for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(c);
    }
    friend Polynomial operator*(Scalar k, const Polynomial& a) { return Polynomial(Coeffs(k * a.c_)); }

private:
    void trim() {
        Eigen::Index n = c_.size();
        while (n > 1 && c_[n - 1] == Scalar(0)) --n;
        if (n != c_.size()) c_.conservativeResize(n);
    }

    Coeffs c_;
};

using RealPolynomial = Polynomial<double>;
using ComplexPolynomial = Polynomial<std::complex<double>>;

/// All complex roots with multiplicity. Degrees up to 2 are solved in closed
/// form; higher degrees use companion-matrix eigenvalues followed by one
/// Newton polish per root.
std::vector<std::complex<double>> polynomial_roots(const RealPolynomial& p);

}  // namespace confract

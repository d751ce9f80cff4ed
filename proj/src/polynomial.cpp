#include "confract/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include "confract/errors.hpp"

namespace confract {

std::vector<std::complex<double>> polynomial_roots(const RealPolynomial& p) {
    using cd = std::complex<double>;
    const int n = p.degree();
    if (n < 1) return {};
    if (p.is_zero()) throw DomainError("roots of the zero polynomial are undefined");

    if (n == 1) return {cd(-p[0] / p[1], 0.0)};
    if (n == 2) {
        const double a = p[2], b = p[1], c = p[0];
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            // Stable form: avoid cancellation in -b +- sqrt(disc).
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            if (q == 0.0) return {cd(0.0), cd(0.0)};
            return {cd(q / a), cd(c / q)};
        }
        const double re = -b / (2.0 * a);
        const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
        return {cd(re, im), cd(re, -im)};
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = p.leading();
    for (int k = 0; k < n; ++k) companion(k, n - 1) = -p[k] / lead;
    for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw AccuracyError("companion eigenvalue iteration failed", 0.0);

    const ComplexPolynomial pc = p.cast<cd>();
    const ComplexPolynomial dp = pc.derivative();
    std::vector<cd> roots;
    roots.reserve(n);
    for (int k = 0; k < n; ++k) {
        cd z = solver.eigenvalues()[k];
        const cd slope = dp(z);
        if (std::abs(slope) > 0.0) {
            const cd step = pc(z) / slope;
            // One polish step; skip it when it would move the root far (multiple roots).
            if (std::abs(step) < 1e-3 * (1.0 + std::abs(z))) z -= step;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace confract

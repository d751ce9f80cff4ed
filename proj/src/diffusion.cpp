#include "confract/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace confract {

namespace {

constexpr double kPi = std::numbers::pi;

void require_increasing(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw DomainError(std::string(name) + " grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw DomainError(std::string(name) + " grid has a non-finite entry");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError(std::string(name) + " grid must be strictly increasing");
    }
}

}  // namespace

std::string to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::first_order: return "first-order";
        case ProblemKind::semi_infinite: return "semi-infinite";
        case ProblemKind::finite_mixed: return "finite-mixed";
        case ProblemKind::dirichlet_sine: return "dirichlet-sine";
    }
    return "?";
}

ProblemKind parse_problem_kind(const std::string& name) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '_', '-');
    for (ProblemKind k : {ProblemKind::first_order, ProblemKind::semi_infinite, ProblemKind::finite_mixed,
                          ProblemKind::dirichlet_sine})
        if (to_string(k) == key) return k;
    throw DomainError("unknown problem '" + name +
                      "' (known: first-order, semi-infinite, finite-mixed, dirichlet-sine)");
}

void DiffusionProblem::validate() const {
    if (!(kappa > 0.0)) throw DomainError("diffusivity kappa must be positive");
    if (kind == ProblemKind::finite_mixed && !(a_len > 0.0)) throw DomainError("domain length must be positive");
    if (kind == ProblemKind::finite_mixed && !std::isfinite(U)) throw DomainError("boundary level must be finite");
    if (kind == ProblemKind::semi_infinite && !boundary_f)
        throw DomainError("semi-infinite problem needs a boundary function f(t)");
}

double DiffusionProblem::x_upper() const {
    switch (kind) {
        case ProblemKind::finite_mixed: return a_len;
        case ProblemKind::dirichlet_sine: return kPi;
        default: return std::numeric_limits<double>::infinity();
    }
}

void SeriesSpec::validate() const {
    if (n_terms < 1) throw DomainError("series needs at least one term");
    if (!fixed_terms && !(tail_tol > 0.0)) throw DomainError("series tail tolerance must be positive");
}

void SpaceTimeField::validate() const {
    require_increasing(x_grid, "x");
    require_increasing(t_grid, "t");
    if (values.rows() != static_cast<Eigen::Index>(x_grid.size()) ||
        values.cols() != static_cast<Eigen::Index>(t_grid.size()))
        throw DomainError("field values do not match the grid dimensions");
    if (!values.allFinite()) throw DomainError("field contains non-finite values");
}

double solve_first_order(double x, double t, FractionalOrder alpha) {
    if (!(x >= 0.0 && t >= 0.0)) throw DomainError("first-order problem needs x >= 0 and t >= 0");
    return x * -std::expm1(-alpha.to_u(t));
}

double semi_infinite_kernel(double x, double t, FractionalOrder alpha, double kappa) {
    if (!(x > 0.0 && t > 0.0)) throw DomainError("kernel needs x > 0 and t > 0");
    if (!(kappa > 0.0)) throw DomainError("kernel needs kappa > 0");
    const double u = alpha.to_u(t);
    return x / (2.0 * std::sqrt(kPi * kappa)) * std::pow(u, -1.5) * std::exp(-x * x / (4.0 * kappa * u));
}

namespace {

double semi_infinite_convolution(double x, double u, FractionalOrder alpha, double kappa, const TimeFunction& f,
                                 const QuadratureSpec& quad) {
    const double c = x / (2.0 * std::sqrt(kPi * kappa));
    auto kernel = [&](double v) {
        if (!(v > 0.0)) return 0.0;
        const double e = x * x / (4.0 * kappa * v);
        if (e > 745.0) return 0.0;
        return c * std::pow(v, -1.5) * std::exp(-e);
    };
    auto integrand = [&](double y) { return f.checked(alpha.from_u(y)) * kernel(u - y); };
    QuadratureSpec q = quad;
    q.t_max.reset();
    q.breaks = {0.9 * u};
    return integrate<double>(integrand, 0.0, u, q);
}

double semi_infinite_similarity(double x, double u, FractionalOrder alpha, double kappa, const TimeFunction& f,
                                const QuadratureSpec& quad) {
    const double lambda0 = std::exp(std::log(x) - std::log(2.0) - 0.5 * (std::log(kappa) + std::log(u)));
    if (lambda0 > 27.0) return 0.0;  // erfc(27) < 1e-318
    const double w = x * x / (4.0 * kappa);
    auto integrand = [&](double lambda) {
        const double arg = u - w / (lambda * lambda);
        return f.checked(alpha.from_u(std::max(arg, 0.0))) * std::exp(-lambda * lambda);
    };
    QuadratureSpec q = quad;
    q.t_max.reset();
    q.breaks.clear();
    return 2.0 / std::sqrt(kPi) * integrate<double>(integrand, lambda0, lambda0 + 7.0, q);
}

}  // namespace

double solve_semi_infinite(double x, double t, FractionalOrder alpha, double kappa, const TimeFunction& f,
                           SemiInfiniteRoute route, const QuadratureSpec& quad) {
    if (!(x >= 0.0 && t >= 0.0)) throw DomainError("semi-infinite problem needs x >= 0 and t >= 0");
    if (!(kappa > 0.0)) throw DomainError("semi-infinite problem needs kappa > 0");
    if (x == 0.0) return f.checked(t);
    if (t == 0.0) return 0.0;
    const double u = alpha.to_u(t);
    switch (route) {
        case SemiInfiniteRoute::convolution: return semi_infinite_convolution(x, u, alpha, kappa, f, quad);
        case SemiInfiniteRoute::similarity: return semi_infinite_similarity(x, u, alpha, kappa, f, quad);
        case SemiInfiniteRoute::checked: {
            const double a = semi_infinite_convolution(x, u, alpha, kappa, f, quad);
            const double b = semi_infinite_similarity(x, u, alpha, kappa, f, quad);
            const double gap = std::abs(a - b);
            if (gap > 1e-4 * std::max({std::abs(a), std::abs(b), 1e-300})) {
                std::ostringstream msg;
                msg.precision(12);
                msg << "semi-infinite routes disagree at x = " << x << ", t = " << t << ": convolution " << a
                    << ", similarity " << b;
                throw VerificationError(msg.str());
            }
            return b;
        }
    }
    throw DomainError("unknown route");
}

SeriesResult solve_finite_mixed_detailed(double x, double t, FractionalOrder alpha, double kappa, double a_len,
                                         double U, const SeriesSpec& series) {
    series.validate();
    if (!(kappa > 0.0 && a_len > 0.0)) throw DomainError("finite problem needs kappa > 0 and a > 0");
    if (!(x >= 0.0 && x <= a_len)) throw DomainError("x must lie in [0, a]");
    if (!(t >= 0.0)) throw DomainError("t must be non-negative");
    SeriesResult out;
    if (t == 0.0) {
        out.value = x == 0.0 ? U : 0.0;
        return out;
    }
    const double u = alpha.to_u(t);
    double sum = 0.0;
    for (int n = 1; n <= series.n_terms; ++n) {
        const double m = 2.0 * n - 1.0;
        const double k = m * kPi / (2.0 * a_len);
        const double bound = 4.0 / (kPi * m) * std::exp(-kappa * k * k * u);
        sum += bound * std::sin(k * x);
        out.terms_used = n;
        out.last_term = bound;
        if (!series.fixed_terms) {
            const double mn = m + 2.0;
            const double kn = mn * kPi / (2.0 * a_len);
            if (4.0 / (kPi * mn) * std::exp(-kappa * kn * kn * u) < series.tail_tol) break;
            if (n == series.n_terms) out.truncated = true;
        }
    }
    out.value = U * (1.0 - sum);
    return out;
}

double solve_finite_mixed(double x, double t, FractionalOrder alpha, double kappa, double a_len, double U,
                          const SeriesSpec& series) {
    return solve_finite_mixed_detailed(x, t, alpha, kappa, a_len, U, series).value;
}

double solve_dirichlet_sine(double x, double t, FractionalOrder alpha, double kappa) {
    if (!(x >= 0.0 && x <= kPi)) throw DomainError("x must lie in [0, pi]");
    if (!(t >= 0.0)) throw DomainError("t must be non-negative");
    if (x == 0.0 || x == kPi) return 0.0;
    return std::sin(x) * std::exp(-kappa * alpha.to_u(t));
}

double evaluate_solution(const DiffusionProblem& p, double x, double t, const SeriesSpec& series,
                         const QuadratureSpec& quad) {
    switch (p.kind) {
        case ProblemKind::first_order: return solve_first_order(x, t, p.alpha);
        case ProblemKind::semi_infinite:
            return solve_semi_infinite(x, t, p.alpha, p.kappa, *p.boundary_f, SemiInfiniteRoute::similarity, quad);
        case ProblemKind::finite_mixed: return solve_finite_mixed(x, t, p.alpha, p.kappa, p.a_len, p.U, series);
        case ProblemKind::dirichlet_sine: return solve_dirichlet_sine(x, t, p.alpha, p.kappa);
    }
    throw DomainError("unknown problem");
}

SpaceTimeField evaluate_field(const DiffusionProblem& problem, const std::vector<double>& x_grid,
                              const std::vector<double>& t_grid, const SeriesSpec& series,
                              const QuadratureSpec& quad) {
    problem.validate();
    require_increasing(x_grid, "x");
    require_increasing(t_grid, "t");
    if (x_grid.front() < 0.0 || x_grid.back() > problem.x_upper())
        throw DomainError("x grid leaves the domain of the " + to_string(problem.kind) + " problem");
    if (t_grid.front() < 0.0) throw DomainError("t grid must be non-negative");

    SpaceTimeField field;
    field.x_grid = x_grid;
    field.t_grid = t_grid;
    field.problem = problem;
    field.values.resize(static_cast<Eigen::Index>(x_grid.size()), static_cast<Eigen::Index>(t_grid.size()));
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        for (std::size_t j = 0; j < t_grid.size(); ++j)
            field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                evaluate_solution(problem, x_grid[i], t_grid[j], series, quad);
    return field;
}

}  // namespace confract

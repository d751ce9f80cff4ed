#pragma once

// Closed-form solutions of the four conformable-time model problems. Each is
// the classical solution written in the substituted time u = t^alpha / alpha.
//
//   first_order     T_alpha u + x u_x = x,        u(x, 0) = 0, u(0, t) = 0
//   semi_infinite   T_alpha u = kappa u_xx, x > 0, u(x, 0) = 0, u(0, t) = f(t)
//   finite_mixed    T_alpha u = kappa u_xx on [0, a], u(0, t) = U, u_x(a, t) = 0, u(x, 0) = 0
//   dirichlet_sine  T_alpha u = kappa u_xx on [0, pi], u = 0 at both ends, u(x, 0) = sin x

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "confract/convolution.hpp"

namespace confract {

enum class ProblemKind { first_order, semi_infinite, finite_mixed, dirichlet_sine };

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(const std::string& name);

struct DiffusionProblem {
    ProblemKind kind = ProblemKind::dirichlet_sine;
    FractionalOrder alpha{1.0};
    double kappa = 1.0;
    double a_len = 1.0;                     // finite_mixed
    double U = 1.0;                         // finite_mixed
    std::optional<TimeFunction> boundary_f; // semi_infinite

    void validate() const;
    /// Spatial domain [0, x_upper]; infinite for the half-line problems.
    double x_upper() const;
};

struct SeriesSpec {
    int n_terms = 200;
    double tail_tol = 1e-12;
    /// Sum exactly n_terms terms and ignore tail_tol.
    bool fixed_terms = false;

    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    double last_term = 0.0;  // bound on the magnitude of the last summed term
    bool truncated = false;  // n_terms ran out before the tail bound fell below tail_tol
};

/// Sampled u(x, t); values(i, j) = u(x_grid[i], t_grid[j]).
struct SpaceTimeField {
    std::vector<double> x_grid;
    std::vector<double> t_grid;
    Eigen::MatrixXd values;
    DiffusionProblem problem;

    void validate() const;
};

double solve_first_order(double x, double t, FractionalOrder alpha);

/// x / (2 sqrt(pi kappa)) u^(-3/2) exp(-x^2 / (4 kappa u)), u = t^alpha / alpha.
double semi_infinite_kernel(double x, double t, FractionalOrder alpha, double kappa);

enum class SemiInfiniteRoute { convolution, similarity, checked };

/// convolution: (f *_alpha kernel)(t), split at 0.9 u.
/// similarity: (2/sqrt(pi)) int_{lambda0}^inf f(phi^-1(u - x^2/(4 kappa lambda^2))) e^(-lambda^2) d lambda,
///             lambda0 = x / (2 sqrt(kappa u)).
/// checked: both, raising VerificationError when they differ by more than 1e-4 relative.
double solve_semi_infinite(double x, double t, FractionalOrder alpha, double kappa, const TimeFunction& f,
                           SemiInfiniteRoute route, const QuadratureSpec& quad = {});

/// U [1 - (4/pi) sum 1/(2n-1) sin(k_n x) exp(-kappa k_n^2 u)], k_n = (2n-1) pi / (2a).
SeriesResult solve_finite_mixed_detailed(double x, double t, FractionalOrder alpha, double kappa, double a_len,
                                         double U, const SeriesSpec& series = {});
double solve_finite_mixed(double x, double t, FractionalOrder alpha, double kappa, double a_len, double U,
                          const SeriesSpec& series = {});

double solve_dirichlet_sine(double x, double t, FractionalOrder alpha, double kappa = 1.0);

/// Pointwise closed form of the problem.
double evaluate_solution(const DiffusionProblem& problem, double x, double t, const SeriesSpec& series = {},
                         const QuadratureSpec& quad = {});

SpaceTimeField evaluate_field(const DiffusionProblem& problem, const std::vector<double>& x_grid,
                              const std::vector<double>& t_grid, const SeriesSpec& series = {},
                              const QuadratureSpec& quad = {});

}  // namespace confract

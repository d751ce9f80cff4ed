#pragma once

// Finite-difference reference solvers for the conformable-time model
// problems. They share no code with the closed forms in diffusion.hpp.
//
// tau_substituted: T_alpha u = u_tau with tau = t^alpha / alpha, so the classical
//   heat equation is stepped in tau by Crank-Nicolson and the tau nodes are
//   relabelled t = (alpha tau)^(1/alpha). The first four steps use extrapolated
//   backward Euler substeps, which damp the non-smooth initial data.
// direct_graded: u_t = kappa t^(alpha-1) u_xx stepped explicitly on
//   t_k = T (k/K)^(1/alpha), coefficient taken at the step midpoint.

#include <functional>
#include <optional>
#include <vector>

#include "confract/diffusion.hpp"

namespace confract {

enum class TimeMapping { direct_graded, tau_substituted };

struct FDGrid {
    int x_nodes = 201;
    int t_steps = 400;
    double t_end = 1.0;
    TimeMapping mapping = TimeMapping::tau_substituted;
    /// Times at which the field is recorded (linear interpolation between
    /// steps). Empty records every step.
    std::vector<double> output_times;

    void validate() const;
};

struct FDReport {
    SpaceTimeField field;
    /// Largest kappa t^(alpha-1) dt / dx^2 (diffusion) or max(x) dtau / dx
    /// (transport) over all steps; empty for the implicit scheme.
    std::optional<double> stability_number;
    /// Bound minus stability_number.
    std::optional<double> stability_margin;
    std::optional<double> max_abs_err;
    /// Step times, in t, actually taken.
    std::vector<double> step_times;
};

/// finite_mixed or dirichlet_sine. Throws StabilityError when the explicit
/// bound kappa t^(alpha-1) dt / dx^2 <= 1/2 fails.
FDReport fd_solve_diffusion(const DiffusionProblem& problem, const FDGrid& grid);

/// u_tau + x u_x = x on [0, x_max] with u(0, t) = 0, u(x, 0) = 0, first-order
/// upwind in x and explicit in tau. Throws StabilityError when max(x) dtau / dx > 1.
FDReport fd_solve_first_order(FractionalOrder alpha, double x_max, const FDGrid& grid);

/// Fills report.max_abs_err with max |field - reference| over the field grid.
void attach_reference(FDReport& report, const std::function<double(double, double)>& reference);

/// Probe points for residual_check.
struct ProbeGrid {
    std::vector<double> x;
    std::vector<double> t;
};

/// max over probes of |governing operator applied to u|:
///   T_alpha u - kappa u_xx (diffusion problems) or T_alpha u + x u_x - x (first_order),
/// with T_alpha from the numeric conformable derivative and 4th-order central
/// differences (h = 1e-3) in x.
double residual_check(const std::function<double(double, double)>& u, const DiffusionProblem& problem,
                      const ProbeGrid& probes);

}  // namespace confract

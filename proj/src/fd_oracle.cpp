#include "confract/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace confract {

namespace {

using Vec = Eigen::VectorXd;

/// Thomas elimination for a tridiagonal system; sub[0] and sup[n-1] are unused.
Vec solve_tridiagonal(const Vec& sub, const Vec& diag, const Vec& sup, const Vec& rhs) {
    const Eigen::Index n = diag.size();
    Vec c(n), d(n), x(n);
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (Eigen::Index i = 1; i < n; ++i) {
        const double m = diag[i] - sub[i] * c[i - 1];
        c[i] = i + 1 < n ? sup[i] / m : 0.0;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    x[n - 1] = d[n - 1];
    for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

struct Setup {
    double length;
    double dx;
    bool neumann_right;  // u_x(L) = 0 via a ghost node, else u(L) = 0
    double left_value;
    Vec initial;
};

Setup make_setup(const DiffusionProblem& p, int nx) {
    Setup s;
    if (p.kind == ProblemKind::finite_mixed) {
        s.length = p.a_len;
        s.neumann_right = true;
        s.left_value = p.U;
    } else if (p.kind == ProblemKind::dirichlet_sine) {
        s.length = std::numbers::pi;
        s.neumann_right = false;
        s.left_value = 0.0;
    } else {
        throw DomainError("finite-difference diffusion solver handles finite-mixed and dirichlet-sine only");
    }
    s.dx = s.length / (nx - 1);
    s.initial = Vec::Zero(nx);
    for (int i = 0; i < nx; ++i) {
        if (p.kind == ProblemKind::dirichlet_sine) {
            s.initial[i] = (i == 0 || i == nx - 1) ? 0.0 : std::sin(i * s.dx);
        }
    }
    if (p.kind == ProblemKind::finite_mixed) s.initial[0] = p.U;
    return s;
}

/// (delta^2 v)_i / dx^2 with the boundary treatment of the setup; zero at a Dirichlet node.
Vec laplacian(const Setup& s, const Vec& v) {
    const Eigen::Index n = v.size();
    Vec out = Vec::Zero(n);
    for (Eigen::Index i = 1; i + 1 < n; ++i) out[i] = v[i - 1] - 2.0 * v[i] + v[i + 1];
    if (s.neumann_right) out[n - 1] = 2.0 * (v[n - 2] - v[n - 1]);
    return out / (s.dx * s.dx);
}

/// Records states at requested output times by linear interpolation.
class Recorder {
public:
    Recorder(std::vector<double> outputs, Eigen::Index nx) : outputs_(std::move(outputs)), nx_(nx) {}

    void start(double t, const Vec& v) {
        if (outputs_.empty()) {
            times_.push_back(t);
            columns_.push_back(v);
        } else {
            while (next_ < outputs_.size() && outputs_[next_] <= t) push(outputs_[next_++], v);
        }
        prev_t_ = t;
        prev_ = v;
    }

    void step(double t, const Vec& v) {
        if (outputs_.empty()) {
            times_.push_back(t);
            columns_.push_back(v);
        } else {
            while (next_ < outputs_.size() && outputs_[next_] <= t) {
                const double target = outputs_[next_++];
                const double w = t > prev_t_ ? (target - prev_t_) / (t - prev_t_) : 1.0;
                push(target, (1.0 - w) * prev_ + w * v);
            }
        }
        prev_t_ = t;
        prev_ = v;
    }

    SpaceTimeField finish(std::vector<double> x_grid, const DiffusionProblem& problem) {
        if (!outputs_.empty() && next_ < outputs_.size())
            throw DomainError("requested output time beyond the end of the run");
        SpaceTimeField f;
        f.x_grid = std::move(x_grid);
        f.t_grid = times_;
        f.problem = problem;
        f.values.resize(nx_, static_cast<Eigen::Index>(columns_.size()));
        for (std::size_t j = 0; j < columns_.size(); ++j) f.values.col(static_cast<Eigen::Index>(j)) = columns_[j];
        return f;
    }

private:
    void push(double t, const Vec& v) {
        times_.push_back(t);
        columns_.push_back(v);
    }

    std::vector<double> outputs_;
    Eigen::Index nx_;
    std::size_t next_ = 0;
    double prev_t_ = 0.0;
    Vec prev_;
    std::vector<double> times_;
    std::vector<Vec> columns_;
};

std::vector<double> x_nodes(double length, int nx) {
    std::vector<double> x(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) x[static_cast<std::size_t>(i)] = length * i / (nx - 1);
    x.back() = length;
    return x;
}

/// One theta-scheme step in tau of size dtau (theta = 1 backward Euler, 1/2 Crank-Nicolson).
Vec theta_step(const Setup& s, const Vec& v, double kappa, double dtau, double theta) {
    const Eigen::Index n = v.size();
    const double r = kappa * dtau / (s.dx * s.dx);
    const Vec explicit_part = v + (1.0 - theta) * kappa * dtau * laplacian(s, v);
    Vec sub = Vec::Zero(n), diag = Vec::Ones(n), sup = Vec::Zero(n), rhs = explicit_part;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        sub[i] = -theta * r;
        diag[i] = 1.0 + 2.0 * theta * r;
        sup[i] = -theta * r;
    }
    rhs[0] = s.left_value;
    if (s.neumann_right) {
        sub[n - 1] = -2.0 * theta * r;
        diag[n - 1] = 1.0 + 2.0 * theta * r;
    } else {
        rhs[n - 1] = 0.0;
    }
    return solve_tridiagonal(sub, diag, sup, rhs);
}

}  // namespace

void FDGrid::validate() const {
    if (x_nodes < 3) throw DomainError("finite-difference grid needs at least 3 x nodes");
    if (t_steps < 1) throw DomainError("finite-difference grid needs at least 1 time step");
    if (!(t_end > 0.0)) throw DomainError("finite-difference end time must be positive");
    for (std::size_t i = 0; i < output_times.size(); ++i) {
        if (!(output_times[i] >= 0.0 && output_times[i] <= t_end * (1.0 + 1e-12)))
            throw DomainError("output times must lie in [0, t_end]");
        if (i > 0 && !(output_times[i] > output_times[i - 1]))
            throw DomainError("output times must be strictly increasing");
    }
}

FDReport fd_solve_diffusion(const DiffusionProblem& problem, const FDGrid& grid) {
    problem.validate();
    grid.validate();
    const Setup setup = make_setup(problem, grid.x_nodes);
    const double alpha = problem.alpha.value();
    const int K = grid.t_steps;
    Recorder rec(grid.output_times, grid.x_nodes);
    FDReport report;

    Vec v = setup.initial;
    rec.start(0.0, v);
    report.step_times.push_back(0.0);

    if (grid.mapping == TimeMapping::tau_substituted) {
        const double tau_end = std::pow(grid.t_end, alpha) / alpha;
        const double dtau = tau_end / K;
        // Startup over the first four steps: backward Euler at dtau/16 and dtau/32,
        // combined by Richardson extrapolation; Crank-Nicolson afterwards.
        Vec coarse = v, fine = v;
        for (int k = 1; k <= K; ++k) {
            if (k <= 4) {
                for (int j = 0; j < 16; ++j) coarse = theta_step(setup, coarse, problem.kappa, dtau / 16.0, 1.0);
                for (int j = 0; j < 32; ++j) fine = theta_step(setup, fine, problem.kappa, dtau / 32.0, 1.0);
                v = 2.0 * fine - coarse;
            } else {
                v = theta_step(setup, v, problem.kappa, dtau, 0.5);
            }
            const double t = k == K ? grid.t_end : std::pow(alpha * k * dtau, 1.0 / alpha);
            rec.step(t, v);
            report.step_times.push_back(t);
        }
    } else {
        double worst = 0.0;
        double t_prev = 0.0;
        for (int k = 1; k <= K; ++k) {
            const double t = k == K ? grid.t_end : grid.t_end * std::pow(static_cast<double>(k) / K, 1.0 / alpha);
            const double dt = t - t_prev;
            const double mid = 0.5 * (t + t_prev);
            const double mu = problem.kappa * std::pow(mid, alpha - 1.0) * dt / (setup.dx * setup.dx);
            if (mu > 0.5) {
                std::ostringstream msg;
                msg << "explicit step " << k << " violates kappa t^(alpha-1) dt / dx^2 <= 1/2 (value " << mu
                    << "); increase t_steps";
                throw StabilityError(msg.str(), static_cast<std::size_t>(k));
            }
            worst = std::max(worst, mu);
            v += problem.kappa * std::pow(mid, alpha - 1.0) * dt * laplacian(setup, v);
            v[0] = setup.left_value;
            if (!setup.neumann_right) v[v.size() - 1] = 0.0;
            rec.step(t, v);
            report.step_times.push_back(t);
            t_prev = t;
        }
        report.stability_number = worst;
        report.stability_margin = 0.5 - worst;
    }
    report.field = rec.finish(x_nodes(setup.length, grid.x_nodes), problem);
    return report;
}

FDReport fd_solve_first_order(FractionalOrder alpha, double x_max, const FDGrid& grid) {
    grid.validate();
    if (!(x_max > 0.0)) throw DomainError("transport domain needs x_max > 0");
    const int nx = grid.x_nodes;
    const double dx = x_max / (nx - 1);
    const double tau_end = alpha.to_u(grid.t_end);
    const double dtau = tau_end / grid.t_steps;
    const double cfl = x_max * dtau / dx;
    if (cfl > 1.0) {
        std::ostringstream msg;
        msg << "upwind transport step violates max(x) dtau / dx <= 1 (value " << cfl << "); increase t_steps";
        throw StabilityError(msg.str(), 1);
    }

    DiffusionProblem problem;
    problem.kind = ProblemKind::first_order;
    problem.alpha = alpha;
    const std::vector<double> xs = x_nodes(x_max, nx);
    Recorder rec(grid.output_times, nx);
    FDReport report;
    Vec v = Vec::Zero(nx);
    rec.start(0.0, v);
    report.step_times.push_back(0.0);
    for (int k = 1; k <= grid.t_steps; ++k) {
        Vec next(nx);
        next[0] = 0.0;
        for (int i = 1; i < nx; ++i) {
            const double x = xs[static_cast<std::size_t>(i)];
            next[i] = v[i] - dtau * x * (v[i] - v[i - 1]) / dx + dtau * x;
        }
        v = next;
        const double t = k == grid.t_steps ? grid.t_end : alpha.from_u(k * dtau);
        rec.step(t, v);
        report.step_times.push_back(t);
    }
    report.stability_number = cfl;
    report.stability_margin = 1.0 - cfl;
    report.field = rec.finish(xs, problem);
    return report;
}

void attach_reference(FDReport& report, const std::function<double(double, double)>& reference) {
    const SpaceTimeField& f = report.field;
    double worst = 0.0;
    for (std::size_t i = 0; i < f.x_grid.size(); ++i)
        for (std::size_t j = 0; j < f.t_grid.size(); ++j)
            worst = std::max(worst, std::abs(f.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                             reference(f.x_grid[i], f.t_grid[j])));
    report.max_abs_err = worst;
}

double residual_check(const std::function<double(double, double)>& u, const DiffusionProblem& problem,
                      const ProbeGrid& probes) {
    constexpr double h = 1e-3;
    double worst = 0.0;
    for (double x : probes.x) {
        for (double t : probes.t) {
            if (!(t > 0.0)) throw DomainError("residual probes need t > 0");
            const TimeFunction in_time([&u, x](double s) { return u(x, s); });
            const double dt_alpha = conformable_derivative(in_time, problem.alpha, t);
            const double um2 = u(x - 2 * h, t), um1 = u(x - h, t), u0 = u(x, t), up1 = u(x + h, t),
                         up2 = u(x + 2 * h, t);
            double r;
            if (problem.kind == ProblemKind::first_order) {
                const double ux = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
                r = dt_alpha + x * ux - x;
            } else {
                const double uxx = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
                r = dt_alpha - problem.kappa * uxx;
            }
            if (!std::isfinite(r)) {
                std::ostringstream msg;
                msg << "non-finite residual at x = " << x << ", t = " << t;
                throw EvaluationError(msg.str(), t);
            }
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

}  // namespace confract

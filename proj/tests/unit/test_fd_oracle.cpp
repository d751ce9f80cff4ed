#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "confract/fd_oracle.hpp"

using namespace confract;

TEST_CASE("implicit scheme on the sine problem") {
    DiffusionProblem p;
    p.kind = ProblemKind::dirichlet_sine;
    p.alpha = FractionalOrder(0.5);
    FDGrid grid;
    grid.output_times = {0.25, 0.5, 1.0};
    FDReport r = fd_solve_diffusion(p, grid);
    // sin(x) exp(-u), u = 2 sqrt(t)
    attach_reference(r, [](double x, double t) { return std::sin(x) * std::exp(-2.0 * std::sqrt(t)); });
    CHECK(*r.max_abs_err < 1e-4);
    CHECK_FALSE(r.stability_number);
    CHECK(r.field.t_grid.size() == 3);
}

TEST_CASE("implicit scheme on the mixed problem against the classical series") {
    DiffusionProblem p;
    p.kind = ProblemKind::finite_mixed;
    p.alpha = FractionalOrder(1.0);
    p.U = 2.0;
    FDGrid grid;
    grid.output_times = {0.05, 0.2, 1.0};
    FDReport r = fd_solve_diffusion(p, grid);
    attach_reference(r, [](double x, double t) { return oracle::heat_mixed(x, t, 1.0, 1.0, 2.0, 400); });
    CHECK(*r.max_abs_err < 2e-3);
}

TEST_CASE("explicit graded scheme") {
    DiffusionProblem p;
    p.kind = ProblemKind::finite_mixed;
    p.alpha = FractionalOrder(0.5);
    FDGrid grid;
    grid.x_nodes = 41;
    grid.mapping = TimeMapping::direct_graded;
    grid.output_times = {0.1, 0.5, 1.0};
    const double dx = 1.0 / 40.0;
    grid.t_steps = static_cast<int>(std::ceil(2.0 / (0.5 * dx * dx) * 1.05));
    FDReport r = fd_solve_diffusion(p, grid);
    REQUIRE(r.stability_number);
    CHECK(*r.stability_number <= 0.5);
    CHECK(*r.stability_margin >= 0.0);
    attach_reference(r, [](double x, double t) { return oracle::heat_mixed(x, 2.0 * std::sqrt(t), 1.0, 1.0, 1.0, 400); });
    CHECK(*r.max_abs_err < 5e-3);

    grid.t_steps = 100;
    CHECK_THROWS_AS(fd_solve_diffusion(p, grid), StabilityError);
}

TEST_CASE("upwind transport") {
    const FractionalOrder a(0.5);
    FDGrid grid;
    grid.x_nodes = 201;
    grid.t_steps = 400;
    grid.output_times = {0.5, 1.0};
    FDReport r = fd_solve_first_order(a, 1.0, grid);
    attach_reference(r, [](double x, double t) { return x * (1.0 - std::exp(-2.0 * std::sqrt(t))); });
    CHECK(*r.max_abs_err < 5e-3);
    CHECK(*r.stability_number <= 1.0);
    grid.t_steps = 100;
    CHECK_THROWS_AS(fd_solve_first_order(a, 1.0, grid), StabilityError);
}

TEST_CASE("grid validation") {
    FDGrid grid;
    grid.x_nodes = 2;
    CHECK_THROWS_AS(grid.validate(), DomainError);
    grid.x_nodes = 11;
    grid.output_times = {0.5, 0.2};
    CHECK_THROWS_AS(grid.validate(), DomainError);
}

TEST_CASE("residual check") {
    DiffusionProblem p;
    p.kind = ProblemKind::dirichlet_sine;
    p.alpha = FractionalOrder(0.7);
    const ProbeGrid probes{{0.5, 1.5, 2.5}, {0.3, 1.0}};
    const double good = residual_check(
        [](double x, double t) { return std::sin(x) * std::exp(-std::pow(t, 0.7) / 0.7); }, p, probes);
    CHECK(good < 1e-6);
    // wrong time scale: exp(-t) instead of exp(-u)
    const double bad = residual_check([](double x, double t) { return std::sin(x) * std::exp(-t); }, p, probes);
    CHECK(bad > 1e-2);

    p.kind = ProblemKind::first_order;
    const double transport = residual_check(
        [](double x, double t) { return x * (1.0 - std::exp(-std::pow(t, 0.7) / 0.7)); }, p, probes);
    CHECK(transport < 1e-6);
}

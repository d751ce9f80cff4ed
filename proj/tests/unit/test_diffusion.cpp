#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "confract/diffusion.hpp"

using namespace confract;

TEST_CASE("problem kinds") {
    CHECK(parse_problem_kind("finite_mixed") == ProblemKind::finite_mixed);
    CHECK(to_string(ProblemKind::dirichlet_sine) == "dirichlet-sine");
    CHECK_THROWS_AS(parse_problem_kind("wave"), DomainError);
    DiffusionProblem p;
    p.kind = ProblemKind::semi_infinite;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.boundary_f = TimeFunction::constant(1.0);
    p.kappa = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("first-order problem") {
    const FractionalOrder a(0.5);
    CHECK(solve_first_order(2.0, 1.0, a) == doctest::Approx(2.0 * (1.0 - std::exp(-2.0))));
    CHECK(solve_first_order(0.0, 1.0, a) == 0.0);
    CHECK(solve_first_order(1.0, 0.0, a) == 0.0);
    CHECK_THROWS_AS(solve_first_order(-1.0, 1.0, a), DomainError);
}

TEST_CASE("semi-infinite problem with constant boundary is erfc") {
    const TimeFunction one = TimeFunction::constant(1.0);
    for (double alpha : {0.4, 0.8, 1.0})
        for (double kappa : {0.5, 2.0})
            for (double x : {1e-3, 0.2, 1.0, 3.0})
                for (double t : {0.1, 1.0, 3.0}) {
                    const FractionalOrder a(alpha);
                    const double z = x * std::sqrt(alpha) / (2.0 * std::sqrt(kappa * std::pow(t, alpha)));
                    const double ref = oracle::erfc(z);
                    CHECK(std::abs(solve_semi_infinite(x, t, a, kappa, one, SemiInfiniteRoute::similarity) - ref) <
                          1e-9);
                    CHECK(std::abs(solve_semi_infinite(x, t, a, kappa, one, SemiInfiniteRoute::convolution) - ref) <
                          1e-6);
                }
}

TEST_CASE("semi-infinite routes agree for a decaying boundary") {
    const FractionalOrder a(0.6);
    const TimeFunction f([a](double t) { return std::exp(-a.to_u(t)); });
    for (double x : {0.05, 0.5, 2.0})
        for (double t : {0.2, 1.0, 4.0}) {
            const double c = solve_semi_infinite(x, t, a, 1.0, f, SemiInfiniteRoute::convolution);
            const double s = solve_semi_infinite(x, t, a, 1.0, f, SemiInfiniteRoute::similarity);
            CHECK(std::abs(c - s) <= 1e-6 * std::max(std::abs(s), 1e-3));
            CHECK(solve_semi_infinite(x, t, a, 1.0, f, SemiInfiniteRoute::checked) == doctest::Approx(s));
        }
    CHECK(solve_semi_infinite(0.0, 1.0, a, 1.0, f, SemiInfiniteRoute::similarity) == doctest::Approx(f(1.0)));
    CHECK(std::abs(solve_semi_infinite(1e-7, 1.0, a, 1.0, f, SemiInfiniteRoute::similarity) - f(1.0)) < 1e-6);
    CHECK(std::abs(solve_semi_infinite(0.5, 1e-6, a, 1.0, f, SemiInfiniteRoute::similarity)) < 1e-6);
}

TEST_CASE("semi-infinite kernel") {
    const FractionalOrder a(1.0);
    // x / (2 sqrt(pi)) t^(-3/2) e^(-x^2 / 4t)
    CHECK(semi_infinite_kernel(1.0, 1.0, a, 1.0) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(oracle::kPi)) * std::exp(-0.25)));
    CHECK_THROWS_AS(semi_infinite_kernel(0.0, 1.0, a, 1.0), DomainError);
}

TEST_CASE("finite mixed problem") {
    SUBCASE("classical limit with the same truncation") {
        const FractionalOrder one(1.0);
        SeriesSpec spec;
        spec.n_terms = 40;
        spec.fixed_terms = true;
        for (double x : {0.0, 0.25, 0.5, 1.0})
            for (double t : {0.01, 0.1, 1.0}) {
                const double ref = oracle::heat_mixed(x, t, 1.3, 1.0, 2.0, 40);
                CHECK(std::abs(solve_finite_mixed(x, t, one, 1.3, 1.0, 2.0, spec) - ref) < 1e-12);
            }
    }
    SUBCASE("boundary values") {
        const FractionalOrder a(0.5);
        for (double t : {0.0, 0.01, 1.0}) CHECK(solve_finite_mixed(0.0, t, a, 1.0, 1.0, 3.0) == 3.0);
        CHECK(solve_finite_mixed(0.5, 0.0, a, 1.0, 1.0, 3.0) == 0.0);
        CHECK(solve_finite_mixed(0.5, 50.0, a, 1.0, 1.0, 3.0) == doctest::Approx(3.0).epsilon(1e-6));
    }
    SUBCASE("tail-bound stopping") {
        const FractionalOrder a(0.7);
        const SeriesResult r = solve_finite_mixed_detailed(0.3, 1.0, a, 1.0, 1.0, 1.0);
        CHECK(r.terms_used < 10);
        CHECK_FALSE(r.truncated);
        SeriesSpec small;
        small.n_terms = 2;
        CHECK(solve_finite_mixed_detailed(0.3, 1e-4, a, 1.0, 1.0, 1.0, small).truncated);
    }
    CHECK_THROWS_AS(solve_finite_mixed(1.5, 1.0, FractionalOrder(1.0), 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("dirichlet sine problem and alpha collapse") {
    const FractionalOrder a(0.5);
    CHECK(solve_dirichlet_sine(oracle::kPi / 2.0, 1.0, a) == doctest::Approx(std::exp(-2.0)));
    CHECK(solve_dirichlet_sine(oracle::kPi, 1.0, a) == 0.0);
    for (double alpha : {0.4, 0.7}) {
        const FractionalOrder f(alpha);
        for (double x : {0.3, 1.1, 2.9})
            for (double t : {0.2, 1.0, 2.5}) {
                const double collapsed = solve_dirichlet_sine(x, f.to_u(t), FractionalOrder(1.0));
                CHECK(std::abs(solve_dirichlet_sine(x, t, f) - collapsed) < 1e-12);
                const double mixed = solve_finite_mixed(x / 3.0, f.to_u(t), FractionalOrder(1.0), 1.0, 1.0, 1.0);
                CHECK(std::abs(solve_finite_mixed(x / 3.0, t, f, 1.0, 1.0, 1.0) - mixed) < 1e-12);
            }
    }
}

TEST_CASE("field evaluation") {
    DiffusionProblem p;
    p.kind = ProblemKind::dirichlet_sine;
    p.alpha = FractionalOrder(0.5);
    const SpaceTimeField f = evaluate_field(p, {0.0, oracle::kPi / 2.0, oracle::kPi}, {0.0, 1.0});
    CHECK(f.values.rows() == 3);
    CHECK(f.values(1, 1) == doctest::Approx(std::exp(-2.0)));
    CHECK(f.values(1, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(evaluate_field(p, {0.0, 4.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(evaluate_field(p, {1.0, 0.5}, {1.0}), DomainError);
}

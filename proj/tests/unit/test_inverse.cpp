#include <doctest.h>

#include <cmath>
#include <numbers>

#include "confract/inverse.hpp"

using namespace confract;

namespace {

FrequencyExpression ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    return FrequencyExpression::rational(RealPolynomial(num), RealPolynomial(den));
}

}  // namespace

TEST_CASE("partial fractions of simple poles") {
    const PoleSet p = partial_fractions(ratio({1.0}, {0.0, 1.0, 1.0}));  // 1/(s(s+1))
    REQUIRE(p.poles.size() == 2);
    for (const Pole& pole : p.poles) {
        CHECK(pole.multiplicity == 1);
        const double expected = std::abs(pole.location) < 0.5 ? 1.0 : -1.0;
        CHECK(pole.residues[0].real() == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(std::abs(p.evaluate(Complex(2.0, 1.0)) - 1.0 / (Complex(2.0, 1.0) * Complex(3.0, 1.0))) < 1e-13);
}

TEST_CASE("partial fractions merge a repeated pole") {
    const PoleSet p = partial_fractions(ratio({1.0}, {8.0, 12.0, 6.0, 1.0}));  // 1/(s+2)^3
    REQUIRE(p.poles.size() == 1);
    CHECK(p.poles[0].multiplicity == 3);
    CHECK(p.poles[0].location.real() == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(std::abs(p.poles[0].residues[2] - 1.0) < 1e-9);
    CHECK(std::abs(p.poles[0].residues[0]) < 1e-9);
}

TEST_CASE("partial fractions reject improper input") {
    CHECK_THROWS_AS(partial_fractions(ratio({0.0, 1.0}, {1.0, 1.0})), DomainError);
}

TEST_CASE("residue inversion matches closed forms") {
    struct Case {
        FrequencyExpression F;
        double (*f)(double);
    };
    const Case cases[] = {
        {ratio({1.0}, {1.0, 1.0}), [](double u) { return std::exp(-u); }},
        {ratio({1.0}, {0.0, 1.0, 1.0}), [](double u) { return 1.0 - std::exp(-u); }},
        {ratio({1.0}, {1.0, 0.0, 1.0}), [](double u) { return std::sin(u); }},
        {ratio({0.0, 1.0}, {4.0, 0.0, 1.0}), [](double u) { return std::cos(2.0 * u); }},
        {ratio({1.0}, {4.0, 4.0, 1.0}), [](double u) { return u * std::exp(-2.0 * u); }},
        {ratio({1.0}, {0.0, 0.0, 1.0}), [](double u) { return u; }},
    };
    for (const Case& c : cases) {
        const PoleSet poles = partial_fractions(c.F);
        for (double alpha : {0.3, 0.7, 1.0})
            for (double t : {0.0, 0.1, 1.0, 5.0}) {
                const FractionalOrder a(alpha);
                CHECK(invert_residues(poles, a, t) == doctest::Approx(c.f(a.to_u(t))).epsilon(1e-10));
            }
    }
}

TEST_CASE("Bromwich inversion agrees with residues") {
    const FrequencyExpression corpus[] = {ratio({1.0}, {1.0, 1.0}), ratio({1.0}, {0.0, 1.0, 1.0}),
                                          ratio({1.0}, {1.0, 0.0, 1.0}), ratio({1.0}, {-1.5, 1.0}),
                                          ratio({1.0}, {0.0, 1.0})};
    for (const FrequencyExpression& F : corpus) {
        const PoleSet poles = partial_fractions(F);
        for (double alpha : {0.3, 1.0})
            for (double t : {0.1, 1.0, 5.0}) {
                const FractionalOrder a(alpha);
                const double exact = invert_residues(poles, a, t);
                CHECK(std::abs(invert_bromwich(F, a, t) - exact) <= 1e-7 * std::max(1.0, std::abs(exact)));
            }
    }
}

TEST_CASE("Bromwich inversion of a non-rational transform") {
    // 1/sqrt(s) <-> 1/sqrt(pi u); the s^(-1/2) tail converges more slowly than rational tails.
    const FrequencyExpression F = FrequencyExpression::blackbox([](Complex s) { return 1.0 / std::sqrt(s); }, 0.0);
    const FractionalOrder a(1.0);
    CHECK(invert_bromwich(F, a, 2.0) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi * 2.0)).epsilon(1e-5));
}

TEST_CASE("Bromwich spec validation") {
    BromwichSpec spec;
    spec.n_nodes = 1;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    CHECK_THROWS_AS(invert_bromwich(ratio({1.0}, {1.0, 1.0}), FractionalOrder(1.0), 0.0), DomainError);
}

TEST_CASE("pair table inversion") {
    const FractionalOrder a(0.5);
    const double u = a.to_u(1.0);
    CHECK(invert_via_classical(ratio({3.0}, {2.0, 1.0}), a, 1.0, InversionMethod::pair_table) ==
          doctest::Approx(3.0 * std::exp(-2.0 * u)));
    CHECK(invert_via_classical(ratio({2.0}, {0.0, 0.0, 0.0, 1.0}), a, 1.0, InversionMethod::pair_table) ==
          doctest::Approx(u * u));
    CHECK(invert_via_classical(ratio({0.0, 1.0}, {9.0, 0.0, 1.0}), a, 1.0, InversionMethod::pair_table) ==
          doctest::Approx(std::cos(3.0 * u)));
    CHECK_THROWS_AS(
        invert_via_classical(ratio({1.0}, {2.0, 3.0, 1.0}), a, 1.0, InversionMethod::pair_table), LookupError);
    CHECK(invert_via_classical(ratio({1.0}, {2.0, 3.0, 1.0}), a, 1.0, InversionMethod::bromwich) ==
          doctest::Approx(std::exp(-u) - std::exp(-2.0 * u)).epsilon(1e-7));
}

TEST_CASE("nearly coincident poles are reported") {
    // (s+1)^12 (s+1.001)^3 cannot be separated or merged reliably
    RealPolynomial d = RealPolynomial::constant(1.0);
    for (int i = 0; i < 12; ++i) d = d * RealPolynomial({1.0, 1.0});
    for (int i = 0; i < 3; ++i) d = d * RealPolynomial({1.001, 1.0});
    CHECK_THROWS_AS(partial_fractions(FrequencyExpression::rational(RealPolynomial::constant(1.0), d)),
                    IllConditionedPolesError);
}

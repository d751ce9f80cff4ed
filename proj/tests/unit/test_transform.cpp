#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "confract/transform.hpp"

using namespace confract;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("forward transform of powers matches the Gamma closed form") {
    for (double alpha : {0.3, 0.5, 0.8, 1.0})
        for (double p : {0.0, 0.5, 2.0})
            for (double s : {0.7, 2.0, 9.0}) {
                const TimeFunction f([p](double t) { return std::pow(t, p); });
                const Complex F = forward_transform(f, FractionalOrder(alpha), s);
                CHECK(rel(F, oracle::power_transform(p, alpha, s)) < 1e-9);
            }
}

TEST_CASE("forward transform worked values") {
    CHECK(forward_transform(TimeFunction::constant(1.0), FractionalOrder(0.3), 2.0).real() ==
          doctest::Approx(0.5).epsilon(1e-10));
    const FractionalOrder a(0.5);
    const TimeFunction e([a](double t) { return std::exp(-a.to_u(t)); });
    CHECK(forward_transform(e, a, 1.0).real() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("forward transform at complex s") {
    // L{e^(-u)}(s) = 1/(s+1)
    const FractionalOrder a(0.7);
    const TimeFunction e([a](double t) { return std::exp(-a.to_u(t)); }, std::nullopt, GrowthBound{1.0, -1.0});
    const Complex s(1.0, 3.0);
    CHECK(rel(forward_transform(e, a, s), 1.0 / (s + 1.0)) < 1e-9);
}

TEST_CASE("divergence is reported") {
    const FractionalOrder a(0.5);
    const TimeFunction g([a](double t) { return std::exp(2.0 * a.to_u(t)); }, std::nullopt, GrowthBound{1.0, 2.0});
    CHECK_THROWS_AS(forward_transform(g, a, 1.5), DivergenceError);
    CHECK_THROWS_AS(forward_transform(TimeFunction::constant(1.0), a, -1.0), DivergenceError);
}

TEST_CASE("pair table") {
    const FractionalOrder a(0.6);
    const double s = 3.0;
    const PairTableEntry c = pair_lookup(PairFamily::constant, 0.0, a);
    CHECK(c.freq_form(s).real() == doctest::Approx(1.0 / s));
    const PairTableEntry e = pair_lookup(PairFamily::exp_eigen, -2.0, a);
    CHECK(e.freq_form(s).real() == doctest::Approx(1.0 / (s + 2.0)));
    const PairTableEntry sn = pair_lookup(PairFamily::sin_eigen, 2.0, a);
    CHECK(sn.freq_form(s).real() == doctest::Approx(2.0 / (s * s + 4.0)));
    const PairTableEntry cs = pair_lookup(PairFamily::cos_eigen, 2.0, a);
    CHECK(cs.freq_form(s).real() == doctest::Approx(s / (s * s + 4.0)));
    const PairTableEntry pw = pair_lookup(PairFamily::power_alpha, 3.0, a);
    CHECK(pw.freq_form(s).real() == doctest::Approx(6.0 / std::pow(s, 4)));
    for (const PairTableEntry* p : {&c, &e, &sn, &cs, &pw})
        CHECK(rel(forward_transform(p->time_form, a, s), p->freq_form(s)) < 1e-9);
    CHECK_THROWS_AS(pair_lookup(PairFamily::power_alpha, 1.5, a), LookupError);
    CHECK(parse_pair_family("exp") == PairFamily::exp_eigen);
    CHECK_THROWS_AS(parse_pair_family("gamma"), LookupError);
}

TEST_CASE("transform properties") {
    const FractionalOrder a(0.5);
    const TimeFunction f([a](double t) { const double u = a.to_u(t); return u * std::exp(-u); }, std::nullopt,
                         GrowthBound{1.0, -0.5});
    const TimeFunction g([a](double t) { return std::cos(a.to_u(t)); }, std::nullopt, GrowthBound{1.0, 0.0});
    for (PropertyId id : {PropertyId::linearity, PropertyId::scaling, PropertyId::first_shift,
                          PropertyId::second_shift, PropertyId::mul_t_alpha, PropertyId::div_t_alpha}) {
        PropertyCheck pc;
        pc.id = id;
        pc.other = g;
        pc.c1 = 2.0;
        pc.c2 = -0.5;
        pc.a = id == PropertyId::first_shift ? 0.3 : 1.4;
        const ComparisonReport r = check_property(pc, f, a, 2.0);
        INFO(r.name << " lhs " << r.lhs << " rhs " << r.rhs);
        CHECK(r.rel_err < 1e-8);
    }
}

TEST_CASE("scaling rule against closed forms") {
    // f(a t) for f = t^2: L{a^2 t^2} = a^2 L{t^2}
    const FractionalOrder al(0.7);
    PropertyCheck pc;
    pc.id = PropertyId::scaling;
    pc.a = 2.0;
    const TimeFunction f([](double t) { return t * t; });
    const ComparisonReport r = check_property(pc, f, al, 1.5);
    CHECK(r.lhs.real() == doctest::Approx(4.0 * oracle::power_transform(2.0, 0.7, 1.5)).epsilon(1e-9));
}

TEST_CASE("derivative rule with equal orders is sF - f(0)") {
    const FractionalOrder a(0.7);
    const TimeFunction e([a](double t) { return std::exp(-a.to_u(t)); }, std::nullopt, GrowthBound{1.0, -1.0});
    const ComparisonReport r = derivative_transform_check(e, a, a, 3.0);
    // T_a e^(-u) = -e^(-u) so L = -1/(s+1)
    CHECK(r.lhs.real() == doctest::Approx(-0.25).epsilon(1e-9));
    CHECK(r.rel_err < 1e-8);
}

TEST_CASE("derivative rule for unequal orders") {
    // T_b t^2 = 2 t^(2-b), so L{T_b t^2} = 2 L{t^(2-b)}
    const FractionalOrder a(0.6), b(0.9);
    const TimeFunction f([](double t) { return t * t; });
    const ComparisonReport r = derivative_transform_check(f, a, b, 2.0);
    CHECK(r.lhs.real() == doctest::Approx(2.0 * oracle::power_transform(1.1, 0.6, 2.0)).epsilon(1e-7));
    CHECK(r.rel_err < 1e-8);
}

TEST_CASE("second derivative rule") {
    // (T_b)^2 t^2 = 2 (2-b) t^(2-2b)
    const FractionalOrder a(0.6), b(0.9);
    const TimeFunction f([](double t) { return t * t; });
    const ComparisonReport r = nth_derivative_transform_check(f, a, b, 2, 2.0);
    const double exact = 2.0 * 1.1 * oracle::power_transform(0.2, 0.6, 2.0);
    CHECK(r.lhs.real() == doctest::Approx(exact).epsilon(1e-6));
    CHECK(r.rhs.real() == doctest::Approx(exact).epsilon(1e-6));
    // The binomial form only matches for equal orders.
    CHECK(std::abs(binomial_derivative_rule(f, a, b, 2, 2.0) - exact) / exact > 0.1);
    const FractionalOrder c(0.7);
    const TimeFunction e([c](double t) { return std::exp(c.to_u(t)); }, std::nullopt, GrowthBound{1.0, 1.0});
    CHECK(binomial_derivative_rule(e, c, c, 2, 3.0).real() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(nth_derivative_transform_check(e, c, c, 2, 3.0).lhs.real() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("expanded derivative rule structure") {
    const DerivativeRule r = expand_derivative_rule(1, FractionalOrder(0.5), FractionalOrder(0.5));
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].s_power == 1);
    CHECK(r.terms[0].coefficient == doctest::Approx(1.0));
    CHECK_THROWS_AS(expand_derivative_rule(0, FractionalOrder(0.5), FractionalOrder(0.5)), DomainError);
}

TEST_CASE("integral rule") {
    // g = int_0^t p^2 p^(b-1) dp = t^(2+b)/(2+b)
    const FractionalOrder a(0.5), b(0.8);
    const TimeFunction f([](double t) { return t * t; });
    const ComparisonReport r = integral_transform_check(f, a, b, 1.5);
    const double exact = oracle::power_transform(2.8, 0.5, 1.5) / 2.8;
    CHECK(r.lhs.real() == doctest::Approx(exact).epsilon(1e-8));
    CHECK(r.rel_err < 1e-8);

    // e^(-t), value computed independently: 0.151119
    const TimeFunction e([](double t) { return std::exp(-t); });
    const ComparisonReport q = integral_transform_check(e, a, b, 1.5);
    CHECK(q.lhs.real() == doctest::Approx(0.151119).epsilon(1e-5));
    CHECK(q.rel_err < 1e-8);
}

TEST_CASE("initial and final value limits") {
    const FrequencyExpression F1 = FrequencyExpression::rational({1.0}, {1.0, 1.0});
    const FrequencyExpression F2 = FrequencyExpression::rational({1.0}, {0.0, 1.0, 1.0});
    CHECK(initial_value(F1) == doctest::Approx(1.0));
    CHECK(final_value(F1) == doctest::Approx(0.0));
    CHECK(initial_value(F2) == doctest::Approx(0.0));
    CHECK(final_value(F2) == doctest::Approx(1.0));
    const FrequencyExpression unstable = FrequencyExpression::rational({1.0}, {-1.0, 1.0});
    CHECK_THROWS_AS(final_value(unstable), TheoremInapplicableError);
    const FrequencyExpression improper = FrequencyExpression::rational({0.0, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(initial_value(improper), TheoremInapplicableError);
    const FrequencyExpression bb =
        FrequencyExpression::blackbox([](Complex s) { return 1.0 / (s * (s + 1.0)); }, 0.0);
    CHECK(final_value(bb) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(initial_value(bb)) < 1e-6);
}

TEST_CASE("existence boundary for e^(t^beta)") {
    const FractionalOrder a(0.5);
    for (double beta : {0.4, 0.6}) {
        const TimeFunction f([beta](double t) { return std::exp(std::pow(t, beta)); });
        CHECK(probe_existence(f, a, 1.0, 200.0).converges == (beta <= 0.5));
    }
}

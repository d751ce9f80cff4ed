#include <doctest.h>

#include <cmath>

#include "confract/convolution.hpp"

using namespace confract;

namespace {

TimeFunction decay(FractionalOrder a, double rate) {
    return TimeFunction([a, rate](double t) { return std::exp(-rate * a.to_u(t)); }, std::nullopt,
                        GrowthBound{1.0, -rate});
}

}  // namespace

TEST_CASE("convolution closed forms") {
    const FractionalOrder a(0.5);
    const TimeFunction one = TimeFunction::constant(1.0);
    // 1 * 1 = u, 1 * e^(-u) = 1 - e^(-u), e^(-u) * e^(-2u) = e^(-u) - e^(-2u)
    for (double t : {0.3, 1.0, 4.0}) {
        const double u = a.to_u(t);
        CHECK(conv_alpha(one, one, a, t) == doctest::Approx(u).epsilon(1e-12));
        CHECK(conv_alpha(one, decay(a, 1.0), a, t) == doctest::Approx(1.0 - std::exp(-u)).epsilon(1e-12));
        CHECK(conv_alpha(decay(a, 1.0), decay(a, 2.0), a, t) ==
              doctest::Approx(std::exp(-u) - std::exp(-2.0 * u)).epsilon(1e-11));
    }
    // t = 2 at alpha = 0.5 gives u = 2 sqrt(2); 2 * 2 = 4u
    const TimeFunction two = TimeFunction::constant(2.0);
    CHECK(conv_alpha(two, two, a, 1.0) == doctest::Approx(4.0 * a.to_u(1.0)));
    CHECK(conv_alpha(one, one, a, 0.0) == 0.0);
}

TEST_CASE("convolution function carries a certificate") {
    const FractionalOrder a(0.7);
    const TimeFunction c = convolution_function(decay(a, 1.0), decay(a, 2.0), a);
    REQUIRE(c.growth_bound());
    CHECK(c.growth_bound()->a < 0.0);
    const double u = a.to_u(1.0);
    CHECK(c(1.0) == doctest::Approx(std::exp(-u) - std::exp(-2.0 * u)).epsilon(1e-11));
}

TEST_CASE("weighted norms") {
    const FractionalOrder a(0.5);
    WeightedNormSpec one{1.0, a, std::nullopt};
    CHECK(weighted_norm(decay(a, 1.0), one) == doctest::Approx(1.0).epsilon(1e-10));
    WeightedNormSpec two{2.0, a, 100.0};
    CHECK(weighted_norm(decay(a, 1.0), two) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    const NormResult r = weighted_norm_detailed(decay(a, 1.0), one);
    REQUIRE(r.tail_bound);
    CHECK(*r.tail_bound < 1e-12);
    WeightedNormSpec bad{0.5, a, std::nullopt};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(weighted_norm(TimeFunction([](double) { return 1.0; }), one), DomainError);
}

TEST_CASE("algebraic laws") {
    const FractionalOrder a(0.6);
    const TimeFunction f = decay(a, 1.0);
    const TimeFunction g([a](double t) { return std::cos(2.0 * a.to_u(t)); });
    const TimeFunction h([a](double t) { return a.to_u(t); });
    for (ConvolutionLaw law : {ConvolutionLaw::commutativity, ConvolutionLaw::associativity,
                               ConvolutionLaw::distributivity, ConvolutionLaw::scalar}) {
        const ComparisonReport r = check_convolution_algebra(law, f, g, h, -1.7, a, 1.3);
        INFO(to_string(law) << " " << r.lhs << " " << r.rhs);
        CHECK(r.rel_err < (law == ConvolutionLaw::associativity ? 1e-5 : 1e-10));
    }
}

TEST_CASE("convolution theorem") {
    const FractionalOrder a(0.4);
    const ComparisonReport r = check_convolution_theorem(decay(a, 1.0), decay(a, 0.5), a, 2.0);
    CHECK(r.lhs.real() == doctest::Approx(1.0 / (3.0 * 2.5)).epsilon(1e-10));
    CHECK(r.rel_err < 1e-8);
}

TEST_CASE("Young inequality") {
    const FractionalOrder a(0.8);
    const InequalityReport r1 = check_young(decay(a, 1.0), decay(a, 2.0), 1.0, a);
    CHECK(r1.pass);
    // ||e^(-u) * e^(-2u)||_1 = 1/2, ||e^(-u)||_1 ||e^(-2u)||_1 = 1/2
    CHECK(r1.lhs == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(r1.rhs == doctest::Approx(0.5).epsilon(1e-8));
    const InequalityReport r2 = check_young(decay(a, 3.0), decay(a, 0.5), 2.0, a);
    CHECK(r2.pass);
    CHECK(r2.lhs < r2.rhs);
}

#include <doctest.h>

#include <cmath>

#include "confract/expression.hpp"

using namespace confract;

namespace {

double eval(const char* text, double t = 0.0, double alpha = 1.0) {
    return evaluate_time(parse_expression(text), t, FractionalOrder(alpha));
}

std::size_t error_offset(const char* text, ExpressionDomain d = ExpressionDomain::time) {
    try {
        parse_expression(text, d);
    } catch (const ParseError& e) {
        return e.offset();
    }
    return 0;
}

}  // namespace

TEST_CASE("precedence and associativity") {
    CHECK(eval("1 + 2 * 3") == 7.0);
    CHECK(eval("(1 + 2) * 3") == 9.0);
    CHECK(eval("2 ^ 3 ^ 2") == 512.0);
    CHECK(eval("-2 ^ 2") == 4.0);
    CHECK(eval("2 ^ -1") == 0.5);
    CHECK(eval("8 / 4 / 2") == 1.0);
    CHECK(eval("1 - 2 - 3") == -4.0);
    CHECK(eval("--3") == 3.0);
    CHECK(eval("  1.5e2 +\t.5 ") == 150.5);
}

TEST_CASE("variables and functions") {
    CHECK(eval("t", 2.0) == 2.0);
    CHECK(eval("u", 4.0, 0.5) == doctest::Approx(4.0));
    CHECK(eval("1 - exp(-u)", 1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(eval("sin(t)*exp(-u)", 1.0, 0.5) == doctest::Approx(std::sin(1.0) * std::exp(-2.0)));
    CHECK(eval("sqrt(cos(0))") == 1.0);
}

TEST_CASE("tree shape") {
    const ExpressionAst ast = parse_expression("sin(t)*exp(-u)");
    CHECK(ast.kind == NodeKind::mul);
    REQUIRE(ast.children.size() == 2);
    CHECK(ast.children[0].kind == NodeKind::sin);
    CHECK(ast.children[1].kind == NodeKind::exp);
    CHECK(ast.children[1].children[0].kind == NodeKind::neg);
    CHECK(to_string(parse_expression("1 - exp(-u)")) == "(1 - exp((-u)))");
}

TEST_CASE("syntax errors carry 1-based offsets and expected tokens") {
    try {
        parse_expression("exp(-u");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 7);
        REQUIRE(e.expected().size() == 1);
        CHECK(e.expected()[0] == ")");
    }
    CHECK(error_offset("1 +") == 4);
    CHECK(error_offset("1 + * 2") == 5);
    CHECK(error_offset("(1") == 3);
    CHECK(error_offset("1 2") == 3);
    CHECK(error_offset("exp 2") == 5);
    CHECK(error_offset("") == 1);
}

TEST_CASE("unknown identifiers list the vocabulary") {
    try {
        parse_expression("2*x");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
        const std::string msg = e.what();
        CHECK(msg.find("'x'") != std::string::npos);
        CHECK(msg.find("sqrt") != std::string::npos);
    }
    CHECK(error_offset("s + 1") == 1);
    CHECK(error_offset("t + 1", ExpressionDomain::frequency) == 1);
    CHECK(error_offset("log(t)") == 1);
}

TEST_CASE("length limit") {
    const std::string longer(kMaxExpressionLength + 1, '1');
    CHECK_THROWS_AS(parse_expression(longer), DomainError);
    std::string limit = "1";
    while (limit.size() + 2 <= kMaxExpressionLength) limit += "+1";
    limit.resize(kMaxExpressionLength, ' ');
    CHECK(eval(limit.c_str()) == static_cast<double>((kMaxExpressionLength + 1) / 2));
    CHECK(error_offset("1e999 + 1") == 1);
}

TEST_CASE("evaluation errors are located") {
    const TimeFunction f = parse_time_function("1/t", FractionalOrder(1.0));
    try {
        f(0.0);
        FAIL("no error");
    } catch (const EvaluationError& e) {
        CHECK(e.where() == 0.0);
        CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
    }
    CHECK(f.source().value() == "1/t");
}

TEST_CASE("rational forms") {
    const FrequencyExpression F = to_rational(parse_expression("1/(s*(s+1))", ExpressionDomain::frequency));
    CHECK(F.is_rational());
    CHECK(F.denominator().degree() == 2);
    CHECK(std::abs(F(2.0) - 1.0 / 6.0) < 1e-15);
    const FrequencyExpression G = to_rational(parse_expression("(s+2)^2/(s^3 - 1) - 1/s", ExpressionDomain::frequency));
    const Complex z(0.5, 2.0);
    CHECK(std::abs(G(z) - ((z + 2.0) * (z + 2.0) / (z * z * z - 1.0) - 1.0 / z)) < 1e-13);
    CHECK_THROWS_AS(to_rational(parse_expression("exp(-s)/s", ExpressionDomain::frequency)), DomainError);
    CHECK_THROWS_AS(to_rational(parse_expression("s^0.5", ExpressionDomain::frequency)), DomainError);
    const ExpressionAst bb = parse_expression("exp(-s)/s", ExpressionDomain::frequency);
    CHECK(std::abs(evaluate_frequency(bb, 1.0) - std::exp(-1.0)) < 1e-15);
}

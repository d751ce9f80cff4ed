#pragma once

// Expression language for time functions and rational frequency functions.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := unary ('^' factor)?
//   unary  := '-' unary | atom
//   atom   := number | variable | func '(' expr ')' | '(' expr ')'
//   func   := 'exp' | 'sin' | 'cos' | 'sqrt'
//
// Time expressions use the variables t and u (u = t^alpha / alpha); frequency
// expressions use s. Unary minus binds tighter than '^', so -2^2 is 4.
// Offsets in errors are 1-based byte positions; end of input is size + 1.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "confract/transform.hpp"

namespace confract {

enum class NodeKind { constant, var_t, var_u, var_s, add, sub, mul, div, pow, neg, exp, sin, cos, sqrt };

enum class ExpressionDomain { time, frequency };

struct ExpressionAst {
    NodeKind kind = NodeKind::constant;
    double value = 0.0;                  // constant
    std::size_t offset = 0;              // 1-based position of the node's token
    std::vector<ExpressionAst> children;
};

inline constexpr std::size_t kMaxExpressionLength = 4096;

/// Throws ParseError on a syntax error or unknown identifier, DomainError on
/// input longer than kMaxExpressionLength.
ExpressionAst parse_expression(std::string_view text, ExpressionDomain domain = ExpressionDomain::time);

/// Fully parenthesized rendering, for diagnostics.
std::string to_string(const ExpressionAst& ast);

/// Value at t >= 0. Non-finite intermediate results raise EvaluationError
/// naming the offending node's offset.
double evaluate_time(const ExpressionAst& ast, double t, FractionalOrder alpha);

Complex evaluate_frequency(const ExpressionAst& ast, Complex s);

TimeFunction to_time_function(const ExpressionAst& ast, FractionalOrder alpha, std::string source);

/// Parse and wrap in one step.
TimeFunction parse_time_function(std::string_view text, FractionalOrder alpha);

/// Numerator and denominator of a frequency expression built from s,
/// constants, + - * / and non-negative integer powers. Anything else throws
/// DomainError.
FrequencyExpression to_rational(const ExpressionAst& ast);

}  // namespace confract

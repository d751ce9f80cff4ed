#include "confract/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace confract {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
}

class Parser {
public:
    Parser(std::string_view text, ExpressionDomain domain) : text_(text), domain_(domain) {}

    ExpressionAst parse() {
        ExpressionAst root = expr();
        skip_space();
        if (pos_ < text_.size()) fail({"operator", "end of input"});
        return root;
    }

private:
    std::vector<std::string> variables() const {
        return domain_ == ExpressionDomain::time ? std::vector<std::string>{"t", "u"} : std::vector<std::string>{"s"};
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::ostringstream msg;
        msg << "syntax error at offset " << pos_ + 1 << ": expected " << join(expected);
        if (pos_ < text_.size()) msg << ", found '" << text_[pos_] << "'";
        else msg << ", found end of input";
        throw ParseError(msg.str(), pos_ + 1, std::move(expected));
    }

    ExpressionAst binary(NodeKind kind, std::size_t offset, ExpressionAst lhs, ExpressionAst rhs) {
        ExpressionAst n;
        n.kind = kind;
        n.offset = offset;
        n.children.push_back(std::move(lhs));
        n.children.push_back(std::move(rhs));
        return n;
    }

    ExpressionAst expr() {
        ExpressionAst lhs = term();
        while (true) {
            skip_space();
            const std::size_t at = pos_ + 1;
            if (accept('+')) lhs = binary(NodeKind::add, at, std::move(lhs), term());
            else if (accept('-')) lhs = binary(NodeKind::sub, at, std::move(lhs), term());
            else return lhs;
        }
    }

    ExpressionAst term() {
        ExpressionAst lhs = factor();
        while (true) {
            skip_space();
            const std::size_t at = pos_ + 1;
            if (accept('*')) lhs = binary(NodeKind::mul, at, std::move(lhs), factor());
            else if (accept('/')) lhs = binary(NodeKind::div, at, std::move(lhs), factor());
            else return lhs;
        }
    }

    ExpressionAst factor() {
        ExpressionAst base = unary();
        skip_space();
        const std::size_t at = pos_ + 1;
        if (accept('^')) return binary(NodeKind::pow, at, std::move(base), factor());
        return base;
    }

    ExpressionAst unary() {
        skip_space();
        const std::size_t at = pos_ + 1;
        if (accept('-')) {
            ExpressionAst n;
            n.kind = NodeKind::neg;
            n.offset = at;
            n.children.push_back(unary());
            return n;
        }
        return atom();
    }

    ExpressionAst atom() {
        skip_space();
        std::vector<std::string> expected{"number"};
        for (const auto& v : variables()) expected.push_back(v);
        expected.insert(expected.end(), {"function", "("});
        if (pos_ >= text_.size()) fail(expected);

        const std::size_t at = pos_ + 1;
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            ExpressionAst inner = expr();
            if (!accept(')')) fail({")"});
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            ExpressionAst n;
            n.offset = at;
            if (domain_ == ExpressionDomain::time && name == "t") n.kind = NodeKind::var_t;
            else if (domain_ == ExpressionDomain::time && name == "u") n.kind = NodeKind::var_u;
            else if (domain_ == ExpressionDomain::frequency && name == "s") n.kind = NodeKind::var_s;
            else {
                static const std::pair<const char*, NodeKind> funcs[] = {
                    {"exp", NodeKind::exp}, {"sin", NodeKind::sin}, {"cos", NodeKind::cos}, {"sqrt", NodeKind::sqrt}};
                bool found = false;
                for (const auto& [fname, kind] : funcs)
                    if (name == fname) {
                        n.kind = kind;
                        found = true;
                    }
                if (!found) {
                    std::vector<std::string> vocab = variables();
                    vocab.insert(vocab.end(), {"exp", "sin", "cos", "sqrt"});
                    throw ParseError("unknown identifier '" + name + "' at offset " + std::to_string(at) +
                                         "; known: " + join(vocab),
                                     at, vocab);
                }
                if (!accept('(')) fail({"("});
                n.children.push_back(expr());
                if (!accept(')')) fail({")"});
            }
            return n;
        }
        fail(expected);
    }

    ExpressionAst number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t from = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return pos_ - from;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail({"number"});
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = mark;
        }
        ExpressionAst node;
        node.kind = NodeKind::constant;
        node.offset = start + 1;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, node.value);
        if (ec == std::errc::result_out_of_range)
            throw ParseError("number out of range at offset " + std::to_string(start + 1), start + 1, {"number"});
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"number"});
        }
        return node;
    }

    std::string_view text_;
    ExpressionDomain domain_;
    std::size_t pos_ = 0;
};

const char* op_symbol(NodeKind k) {
    switch (k) {
        case NodeKind::add: return "+";
        case NodeKind::sub: return "-";
        case NodeKind::mul: return "*";
        case NodeKind::div: return "/";
        case NodeKind::pow: return "^";
        case NodeKind::exp: return "exp";
        case NodeKind::sin: return "sin";
        case NodeKind::cos: return "cos";
        case NodeKind::sqrt: return "sqrt";
        default: return "?";
    }
}

double located(double v, const ExpressionAst& node, double t) {
    if (!std::isfinite(v))
        throw EvaluationError("non-finite value from '" + std::string(op_symbol(node.kind)) + "' at offset " +
                                  std::to_string(node.offset) + " (t = " + std::to_string(t) + ")",
                              t);
    return v;
}

struct Ratio {
    RealPolynomial num;
    RealPolynomial den;
};

Ratio rational_of(const ExpressionAst& n) {
    auto child = [&](std::size_t i) { return rational_of(n.children[i]); };
    switch (n.kind) {
        case NodeKind::constant: return {RealPolynomial::constant(n.value), RealPolynomial::constant(1.0)};
        case NodeKind::var_s: return {RealPolynomial::monomial(1), RealPolynomial::constant(1.0)};
        case NodeKind::neg: {
            Ratio r = child(0);
            return {-r.num, r.den};
        }
        case NodeKind::add:
        case NodeKind::sub: {
            const Ratio a = child(0), b = child(1);
            if (a.den.coeffs() == b.den.coeffs()) {
                return {n.kind == NodeKind::add ? a.num + b.num : a.num - b.num, a.den};
            }
            const RealPolynomial l = a.num * b.den, r = b.num * a.den;
            return {n.kind == NodeKind::add ? l + r : l - r, a.den * b.den};
        }
        case NodeKind::mul: {
            const Ratio a = child(0), b = child(1);
            return {a.num * b.num, a.den * b.den};
        }
        case NodeKind::div: {
            const Ratio a = child(0), b = child(1);
            if (b.num.is_zero()) throw DomainError("division by zero at offset " + std::to_string(n.offset));
            return {a.num * b.den, a.den * b.num};
        }
        case NodeKind::pow: {
            const ExpressionAst& e = n.children[1];
            if (e.kind != NodeKind::constant || e.value < 0.0 || e.value != std::floor(e.value) || e.value > 64.0)
                throw DomainError("rational form needs a non-negative integer exponent at offset " +
                                  std::to_string(e.offset));
            const Ratio b = child(0);
            Ratio out{RealPolynomial::constant(1.0), RealPolynomial::constant(1.0)};
            for (int k = 0; k < static_cast<int>(e.value); ++k) out = {out.num * b.num, out.den * b.den};
            return out;
        }
        default:
            throw DomainError("'" + std::string(op_symbol(n.kind)) + "' at offset " + std::to_string(n.offset) +
                              " has no rational form");
    }
}

}  // namespace

ExpressionAst parse_expression(std::string_view text, ExpressionDomain domain) {
    if (text.size() > kMaxExpressionLength)
        throw DomainError("expression longer than " + std::to_string(kMaxExpressionLength) + " characters");
    return Parser(text, domain).parse();
}

std::string to_string(const ExpressionAst& n) {
    switch (n.kind) {
        case NodeKind::constant: {
            std::ostringstream s;
            s.precision(17);
            s << n.value;
            return s.str();
        }
        case NodeKind::var_t: return "t";
        case NodeKind::var_u: return "u";
        case NodeKind::var_s: return "s";
        case NodeKind::neg: return "(-" + to_string(n.children[0]) + ")";
        case NodeKind::exp:
        case NodeKind::sin:
        case NodeKind::cos:
        case NodeKind::sqrt: return std::string(op_symbol(n.kind)) + "(" + to_string(n.children[0]) + ")";
        default:
            return "(" + to_string(n.children[0]) + " " + op_symbol(n.kind) + " " + to_string(n.children[1]) + ")";
    }
}

double evaluate_time(const ExpressionAst& n, double t, FractionalOrder alpha) {
    auto arg = [&](std::size_t i) { return evaluate_time(n.children[i], t, alpha); };
    switch (n.kind) {
        case NodeKind::constant: return n.value;
        case NodeKind::var_t: return t;
        case NodeKind::var_u: return alpha.to_u(t);
        case NodeKind::var_s: throw DomainError("variable s in a time expression");
        case NodeKind::neg: return -arg(0);
        case NodeKind::add: return arg(0) + arg(1);
        case NodeKind::sub: return arg(0) - arg(1);
        case NodeKind::mul: return arg(0) * arg(1);
        case NodeKind::div: return located(arg(0) / arg(1), n, t);
        case NodeKind::pow: return located(std::pow(arg(0), arg(1)), n, t);
        case NodeKind::exp: return located(std::exp(arg(0)), n, t);
        case NodeKind::sin: return std::sin(arg(0));
        case NodeKind::cos: return std::cos(arg(0));
        case NodeKind::sqrt: return located(std::sqrt(arg(0)), n, t);
    }
    throw DomainError("malformed expression");
}

Complex evaluate_frequency(const ExpressionAst& n, Complex s) {
    auto arg = [&](std::size_t i) { return evaluate_frequency(n.children[i], s); };
    switch (n.kind) {
        case NodeKind::constant: return n.value;
        case NodeKind::var_s: return s;
        case NodeKind::var_t:
        case NodeKind::var_u: throw DomainError("time variable in a frequency expression");
        case NodeKind::neg: return -arg(0);
        case NodeKind::add: return arg(0) + arg(1);
        case NodeKind::sub: return arg(0) - arg(1);
        case NodeKind::mul: return arg(0) * arg(1);
        case NodeKind::div: return arg(0) / arg(1);
        case NodeKind::pow: {
            const ExpressionAst& e = n.children[1];
            if (e.kind == NodeKind::constant && e.value == std::floor(e.value) && std::abs(e.value) <= 64.0) {
                Complex base = arg(0), acc = 1.0;
                for (int k = 0; k < static_cast<int>(std::abs(e.value)); ++k) acc *= base;
                return e.value < 0.0 ? 1.0 / acc : acc;
            }
            return std::pow(arg(0), arg(1));
        }
        case NodeKind::exp: return std::exp(arg(0));
        case NodeKind::sin: return std::sin(arg(0));
        case NodeKind::cos: return std::cos(arg(0));
        case NodeKind::sqrt: return std::sqrt(arg(0));
    }
    throw DomainError("malformed expression");
}

TimeFunction to_time_function(const ExpressionAst& ast, FractionalOrder alpha, std::string source) {
    auto shared = std::make_shared<const ExpressionAst>(ast);
    return TimeFunction([shared, alpha](double t) { return evaluate_time(*shared, t, alpha); }, std::move(source));
}

TimeFunction parse_time_function(std::string_view text, FractionalOrder alpha) {
    return to_time_function(parse_expression(text, ExpressionDomain::time), alpha, std::string(text));
}

FrequencyExpression to_rational(const ExpressionAst& ast) {
    Ratio r = rational_of(ast);
    if (r.den.is_zero()) throw DomainError("rational form has a zero denominator");
    return FrequencyExpression::rational(r.num, r.den);
}

}  // namespace confract

#include "holderem/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "holderem/errors.hpp"

namespace holderem {

struct Expr::Node {
    Kind kind;
    double value = 0.0;
    Function fn = Function::sin;
    std::optional<Expr> a;
    std::optional<Expr> b;

    Node(Kind k, double v = 0.0, Function f = Function::sin, std::optional<Expr> lhs = std::nullopt,
         std::optional<Expr> rhs = std::nullopt)
        : kind(k), value(v), fn(f), a(std::move(lhs)), b(std::move(rhs)) {}
};

namespace {

constexpr std::array<std::pair<std::string_view, Expr::Function>, 8> kFunctions{{
    {"sin", Expr::Function::sin},
    {"cos", Expr::Function::cos},
    {"tan", Expr::Function::tan},
    {"exp", Expr::Function::exp},
    {"log", Expr::Function::log},
    {"abs", Expr::Function::abs},
    {"sqrt", Expr::Function::sqrt},
    {"arctan", Expr::Function::arctan},
}};

std::optional<Expr::Function> lookup_function(std::string_view name) {
    for (const auto& [n, fn] : kFunctions) {
        if (n == name) return fn;
    }
    return std::nullopt;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::logic_error("number formatting failed");
    return std::string(buf.data(), ptr);
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok type;
    std::size_t offset;
    std::string_view text;
    double value = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::end, start, {}};
        const char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number(start);
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            return {Tok::ident, start, src_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (ch) {
        case '+': return {Tok::plus, start, src_.substr(start, 1)};
        case '-': return {Tok::minus, start, src_.substr(start, 1)};
        case '*': return {Tok::star, start, src_.substr(start, 1)};
        case '/': return {Tok::slash, start, src_.substr(start, 1)};
        case '^': return {Tok::caret, start, src_.substr(start, 1)};
        case '(': return {Tok::lparen, start, src_.substr(start, 1)};
        case ')': return {Tok::rparen, start, src_.substr(start, 1)};
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", start);
    }

private:
    // digits [ '.' digits ] [ (e|E) [+|-] digits ], or '.' digits [...]
    Token number(std::size_t start) {
        std::size_t int_digits = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++int_digits;
        std::size_t frac_digits = 0;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++frac_digits;
        }
        if (int_digits + frac_digits == 0) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            std::size_t exp_digits = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++exp_digits;
            if (exp_digits == 0) throw ParseError("malformed exponent", pos_);
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc::result_out_of_range) throw ParseError("number out of range", start);
        if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError("malformed number", start);
        return {Tok::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    Expr parse_all() {
        Expr e = expr();
        if (cur_.type != Tok::end) unexpected();
        return e;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void unexpected() const {
        if (cur_.type == Tok::end) throw ParseError("unexpected end of input", cur_.offset);
        throw ParseError("unexpected token '" + std::string(cur_.text) + "'", cur_.offset);
    }

    void expect(Tok type, const char* what) {
        if (cur_.type != type) {
            if (cur_.type == Tok::end) throw ParseError(std::string("expected ") + what + ", found end of input", cur_.offset);
            throw ParseError(std::string("expected ") + what + ", found '" + std::string(cur_.text) + "'", cur_.offset);
        }
        advance();
    }

    Expr expr() {
        Expr lhs = term();
        while (cur_.type == Tok::plus || cur_.type == Tok::minus) {
            const auto kind = cur_.type == Tok::plus ? Expr::Kind::add : Expr::Kind::subtract;
            advance();
            lhs = Expr::binary(kind, std::move(lhs), term());
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = factor();
        while (cur_.type == Tok::star || cur_.type == Tok::slash) {
            const auto kind = cur_.type == Tok::star ? Expr::Kind::multiply : Expr::Kind::divide;
            advance();
            lhs = Expr::binary(kind, std::move(lhs), factor());
        }
        return lhs;
    }

    Expr factor() {
        Expr base = unary();
        if (cur_.type == Tok::caret) {
            advance();
            return Expr::binary(Expr::Kind::power, std::move(base), factor());
        }
        return base;
    }

    Expr unary() {
        if (cur_.type == Tok::minus) {
            advance();
            return Expr::negate(unary());
        }
        return atom();
    }

    Expr atom() {
        switch (cur_.type) {
        case Tok::number: {
            const double v = cur_.value;
            advance();
            return Expr::number(v);
        }
        case Tok::ident: {
            const Token id = cur_;
            if (id.text == "x") {
                advance();
                return Expr::variable();
            }
            const auto fn = lookup_function(id.text);
            if (!fn) throw ParseError("unknown identifier '" + std::string(id.text) + "'", id.offset);
            advance();
            expect(Tok::lparen, "'(' after function name");
            Expr arg = expr();
            expect(Tok::rparen, "')'");
            return Expr::call(*fn, std::move(arg));
        }
        case Tok::lparen: {
            advance();
            Expr inner = expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        default:
            unexpected();
        }
    }

    Lexer lexer_;
    Token cur_{Tok::end, 0, {}};
};

double apply(Expr::Function fn, double v) {
    switch (fn) {
    case Expr::Function::sin: return std::sin(v);
    case Expr::Function::cos: return std::cos(v);
    case Expr::Function::tan: return std::tan(v);
    case Expr::Function::exp: return std::exp(v);
    case Expr::Function::log: return std::log(v);
    case Expr::Function::abs: return std::abs(v);
    case Expr::Function::sqrt: return std::sqrt(v);
    case Expr::Function::arctan: return std::atan(v);
    }
    return std::nan("");
}

} // namespace

std::string_view function_name(Expr::Function fn) noexcept {
    for (const auto& [n, f] : kFunctions) {
        if (f == fn) return n;
    }
    return "?";
}

Expr Expr::number(double value) {
    return Expr(std::make_shared<const Node>(Kind::number, value));
}

Expr Expr::variable() { return Expr(std::make_shared<const Node>(Kind::variable)); }

Expr Expr::negate(Expr operand) {
    return Expr(std::make_shared<const Node>(Kind::negate, 0.0, Function::sin, std::move(operand)));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
    switch (kind) {
    case Kind::add:
    case Kind::subtract:
    case Kind::multiply:
    case Kind::divide:
    case Kind::power: break;
    default: throw InvalidArgument("Expr::binary needs a binary operator kind");
    }
    return Expr(std::make_shared<const Node>(kind, 0.0, Function::sin, std::move(lhs), std::move(rhs)));
}

Expr Expr::call(Function fn, Expr argument) {
    return Expr(std::make_shared<const Node>(Kind::call, 0.0, fn, std::move(argument)));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::number_value() const noexcept { return node_->value; }
Expr::Function Expr::function() const noexcept { return node_->fn; }

const Expr& Expr::lhs() const {
    if (!node_->a) throw InvalidArgument("expression node has no operand");
    return *node_->a;
}

const Expr& Expr::rhs() const {
    if (!node_->b) throw InvalidArgument("expression node has no right operand");
    return *node_->b;
}

double Expr::evaluate(double x) const {
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::variable: return x;
    case Kind::negate: return -n.a->evaluate(x);
    case Kind::add: return n.a->evaluate(x) + n.b->evaluate(x);
    case Kind::subtract: return n.a->evaluate(x) - n.b->evaluate(x);
    case Kind::multiply: return n.a->evaluate(x) * n.b->evaluate(x);
    case Kind::divide: return n.a->evaluate(x) / n.b->evaluate(x);
    case Kind::power: return std::pow(n.a->evaluate(x), n.b->evaluate(x));
    case Kind::call: return apply(n.fn, n.a->evaluate(x));
    }
    return std::nan("");
}

std::string Expr::to_string() const {
    const Node& n = *node_;
    auto bin = [&](const char* name) {
        return std::string(name) + "(" + n.a->to_string() + ", " + n.b->to_string() + ")";
    };
    switch (n.kind) {
    case Kind::number: return format_number(n.value);
    case Kind::variable: return "x";
    case Kind::negate: return "Neg(" + n.a->to_string() + ")";
    case Kind::add: return bin("Add");
    case Kind::subtract: return bin("Sub");
    case Kind::multiply: return bin("Mul");
    case Kind::divide: return bin("Div");
    case Kind::power: return bin("Pow");
    case Kind::call: return std::string(function_name(n.fn)) + "(" + n.a->to_string() + ")";
    }
    return "?";
}

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

double eval(const Expr& e, double x) {
    const double v = e.evaluate(x);
    if (!std::isfinite(v)) {
        throw EvalError("expression " + e.to_string() + " is not finite at x = " + format_number(x));
    }
    return v;
}

} // namespace holderem

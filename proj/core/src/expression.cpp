#include "catlab/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "catlab/error.hpp"

namespace catlab {

struct Expr::Node {
    enum class Kind { Number, Pi, Variable, Negate, Binary };
    Kind kind;
    double value = 0.0;
    std::string name;
    char op = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr node(Node::Kind kind, double value = 0.0, std::string name = {}, char op = 0, NodePtr lhs = nullptr,
             NodePtr rhs = nullptr) {
    return std::make_shared<const Node>(Node{kind, value, std::move(name), op, std::move(lhs), std::move(rhs)});
}

}  // namespace

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [k, v] : init) set(k, v);
}

Bindings& Bindings::set(std::string_view name, double value) {
    for (auto& [k, v] : entries_) {
        if (k == name) {
            v = value;
            return *this;
        }
    }
    entries_.emplace_back(std::string(name), value);
    return *this;
}

std::optional<double> Bindings::get(std::string_view name) const {
    for (const auto& [k, v] : entries_) {
        if (k == name) return v;
    }
    return std::nullopt;
}

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

NodePtr make_number(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("expression literal must be finite");
    if (std::signbit(v)) {
        auto inner = node(Node::Kind::Number, -v);
        return node(Node::Kind::Negate, 0.0, {}, 0, inner, nullptr);
    }
    return node(Node::Kind::Number, v);
}

bool equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case Node::Kind::Number: return a->value == b->value;
        case Node::Kind::Pi: return true;
        case Node::Kind::Variable: return a->name == b->name;
        case Node::Kind::Negate: return equal(a->lhs, b->lhs);
        case Node::Kind::Binary: return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

bool is_atom(const Node& n) {
    return n.kind == Node::Kind::Number || n.kind == Node::Kind::Pi || n.kind == Node::Kind::Variable;
}

void format_into(const Node& n, std::string& out, bool top) {
    switch (n.kind) {
        case Node::Kind::Number: out += format_number(n.value); return;
        case Node::Kind::Pi: out += "pi"; return;
        case Node::Kind::Variable: out += n.name; return;
        case Node::Kind::Negate:
            out += '-';
            if (is_atom(*n.lhs)) {
                format_into(*n.lhs, out, false);
            } else {
                out += '(';
                format_into(*n.lhs, out, true);
                out += ')';
            }
            return;
        case Node::Kind::Binary:
            if (!top) out += '(';
            format_into(*n.lhs, out, false);
            out += n.op;
            format_into(*n.rhs, out, false);
            if (!top) out += ')';
            return;
    }
}

double eval(const Node& n, const Bindings& b) {
    switch (n.kind) {
        case Node::Kind::Number: return n.value;
        case Node::Kind::Pi: return std::numbers::pi;
        case Node::Kind::Variable: {
            const auto v = b.get(n.name);
            if (!v) throw ParseError(ParseError::Kind::UnboundVariable, 0, 0, "unbound variable '" + n.name + "'");
            return *v;
        }
        case Node::Kind::Negate: return -eval(*n.lhs, b);
        case Node::Kind::Binary: {
            const double l = eval(*n.lhs, b);
            const double r = eval(*n.rhs, b);
            switch (n.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                default: return l / r;
            }
        }
    }
    return 0.0;
}

void collect_vars(const Node& n, std::vector<std::string>& out) {
    if (n.kind == Node::Kind::Variable) {
        if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
    }
    if (n.lhs) collect_vars(*n.lhs, out);
    if (n.rhs) collect_vars(*n.rhs, out);
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

}  // namespace

// Recursive descent:  expr := term (('+'|'-') term)* ;  term := unary (('*'|'/') unary)* ;
//                     unary := ('-'|'+') unary | primary ;  primary := number | ident | '(' expr ')'
class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t line, std::size_t column)
        : text_(text), line_(line), column_(column) {}

    Expr run() {
        skip_space();
        if (at_end()) fail(ParseError::Kind::Syntax, "expected expression");
        NodePtr n = expr();
        skip_space();
        if (!at_end()) fail(ParseError::Kind::Syntax, std::string("unexpected '") + text_[pos_] + "'");
        return Expr(std::move(n));
    }

private:
    [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg, std::size_t at) const {
        throw ParseError(kind, line_, column_ + at, msg);
    }
    [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const { fail(kind, msg, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            skip_space();
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            NodePtr rhs = term();
            lhs = node(Node::Kind::Binary, 0.0, {}, c, lhs, rhs);
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            skip_space();
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            NodePtr rhs = unary();
            lhs = node(Node::Kind::Binary, 0.0, {}, c, lhs, rhs);
        }
    }

    NodePtr unary() {
        skip_space();
        if (peek() == '-') {
            ++pos_;
            NodePtr operand = unary();
            return node(Node::Kind::Negate, 0.0, {}, 0, operand, nullptr);
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return primary();
    }

    NodePtr primary() {
        skip_space();
        if (at_end()) fail(ParseError::Kind::Syntax, "unexpected end of expression");
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            skip_space();
            if (peek() != ')') fail(ParseError::Kind::Syntax, "expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
            const std::string_view ident = text_.substr(start, pos_ - start);
            if (iequals(ident, "pi")) return node(Node::Kind::Pi);
            return node(Node::Kind::Variable, 0.0, std::string(ident));
        }
        fail(ParseError::Kind::Syntax, std::string("unexpected '") + c + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto is_digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
        while (!at_end() && (is_digit(peek()) || peek() == '.')) ++pos_;
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && is_digit(text_[p])) {
                pos_ = p;
                while (!at_end() && is_digit(peek())) ++pos_;
            }
        }
        // Trailing junk glued to the literal (e.g. "1.2.3", "3x") belongs to the token.
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '_')) {
            ++pos_;
        }
        const std::string_view token = text_.substr(start, pos_ - start);
        double value = 0.0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(value)) {
            fail(ParseError::Kind::MalformedNumber, "malformed number '" + std::string(token) + "'", start);
        }
        return node(Node::Kind::Number, value);
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t column_;
    std::size_t pos_ = 0;
};

Expr::Expr(double value) : node_(make_number(value)) {}

Expr Expr::pi() { return Expr(node(Node::Kind::Pi)); }

Expr Expr::variable(std::string name) {
    return Expr(node(Node::Kind::Variable, 0.0, std::move(name)));
}

Expr Expr::negate(Expr operand) {
    return Expr(node(Node::Kind::Negate, 0.0, {}, 0, operand.node_, nullptr));
}

Expr Expr::binary(char op, Expr lhs, Expr rhs) {
    if (op != '+' && op != '-' && op != '*' && op != '/') throw InvalidArgument("unknown operator");
    return Expr(node(Node::Kind::Binary, 0.0, {}, op, lhs.node_, rhs.node_));
}

Expr Expr::parse(std::string_view text) { return ExprParser(text, 1, 1).run(); }

Expr parse_expression(std::string_view text, std::size_t line, std::size_t column) {
    return ExprParser(text, line, column).run();
}

double Expr::evaluate(const Bindings& bindings) const { return eval(*node_, bindings); }

bool Expr::is_constant() const { return variables().empty(); }

std::vector<std::string> Expr::variables() const {
    std::vector<std::string> out;
    collect_vars(*node_, out);
    return out;
}

std::string Expr::format() const {
    std::string out;
    format_into(*node_, out, true);
    return out;
}

bool operator==(const Expr& a, const Expr& b) { return equal(a.node_, b.node_); }

}  // namespace catlab

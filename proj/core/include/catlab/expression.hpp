#pragma once

// Arithmetic expressions used for instruction parameters: numbers, `pi`,
// named variables, + - * /, unary minus and parentheses.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catlab {

/// Variable values supplied at execution time (e.g. theta, phi).
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<std::string, double>> init);

    Bindings& set(std::string_view name, double value);
    std::optional<double> get(std::string_view name) const;
    const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

class Expr {
public:
    /// Numeric literal.
    Expr(double value);  // NOLINT(google-explicit-constructor)

    static Expr pi();
    static Expr variable(std::string name);
    static Expr negate(Expr operand);
    static Expr binary(char op, Expr lhs, Expr rhs);

    /// Throws ParseError (line 1, column relative to `text`) on failure.
    static Expr parse(std::string_view text);

    /// Throws ParseError(UnboundVariable) when a variable has no binding.
    double evaluate(const Bindings& bindings = {}) const;

    bool is_constant() const;
    std::vector<std::string> variables() const;

    /// Canonical text; Expr::parse(format()) reproduces the same tree.
    std::string format() const;

    friend bool operator==(const Expr& a, const Expr& b);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
    friend class ExprParser;
};

/// Parses an expression embedded at `column` (1-based) of `line` so errors point into the source.
Expr parse_expression(std::string_view text, std::size_t line, std::size_t column);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace catlab

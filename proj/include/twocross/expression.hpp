#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace twocross {

/// Parse failure; `offset` is the byte position in the input text.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

/// Evaluation failure (division by zero, sqrt of a negative value).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Immutable arithmetic expression over x1, x2, x3.
///
/// Grammar: + - * /, integer power ^, unary minus, sqrt(), decimal and
/// rational (p/q) literals. Precedence: ^  >  unary -  >  * /  >  + -.
class Expression {
public:
    Expression() = default;

    double eval(double x1, double x2, double x3) const;

    /// Minimal-parenthesis rendering; parse(pretty()) reproduces the AST.
    std::string pretty() const;

    /// True when the expression contains no variable.
    bool is_constant() const;

    struct Node;
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    const std::shared_ptr<const Node>& root() const { return root_; }

private:
    std::shared_ptr<const Node> root_;
};

/// Parse `text`; identifiers other than x1/x2/x3 and keys of `params` are
/// errors. Parameter values are substituted as numeric literals.
Expression parse_expression(const std::string& text,
                            const std::map<std::string, double>& params = {});

Expression make_constant(double value);

}  // namespace twocross

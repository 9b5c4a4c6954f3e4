#ifndef WARPFLOW_EXPR_HPP
#define WARPFLOW_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace warpflow {

/// Parse error for initial-data expressions.
class ExprError : public std::invalid_argument {
public:
    explicit ExprError(const std::string& what) : std::invalid_argument(what) {}
};

/// Arithmetic expression over +,-,*,/,^ with cos, sin, exp, numeric
/// literals, pi, and the variables theta (sphere) or x,y (torus).
class Expr {
public:
    static Expr parse(const std::string& text);

    double eval_theta(double theta) const;
    double eval_xy(double x, double y) const;

    /// Variables referenced by the expression ("theta", "x", "y").
    const std::vector<std::string>& variables() const { return vars_; }

    struct Node; // AST; opaque outside the parser

private:
    std::shared_ptr<const Node> root_;
    std::vector<std::string> vars_;
    double eval(double theta, double x, double y) const;
};

} // namespace warpflow

#endif

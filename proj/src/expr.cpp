#include "warpflow/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace warpflow {

enum class NodeOp { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Cos, Sin, Exp };

struct Expr::Node {
    NodeOp op;
    double value = 0.0; // Number
    int var = 0;        // 0 theta, 1 x, 2 y
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    std::vector<std::string> vars;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError("expression error at position " + std::to_string(pos) + ": " + msg);
    }

    using NodePtr = std::shared_ptr<const Expr::Node>;

    static NodePtr make(NodeOp op, NodePtr l = nullptr, NodePtr r = nullptr) {
        auto n = std::make_shared<Expr::Node>();
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr parse_expr() {
        NodePtr node = parse_term();
        while (true) {
            if (eat('+'))
                node = make(NodeOp::Add, node, parse_term());
            else if (eat('-'))
                node = make(NodeOp::Sub, node, parse_term());
            else
                return node;
        }
    }

    NodePtr parse_term() {
        NodePtr node = parse_unary();
        while (true) {
            if (eat('*'))
                node = make(NodeOp::Mul, node, parse_unary());
            else if (eat('/'))
                node = make(NodeOp::Div, node, parse_unary());
            else
                return node;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) return make(NodeOp::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^')) return make(NodeOp::Pow, base, parse_unary()); // right associative
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        const char c = text[pos];
        if (std::isdigit((unsigned char)c) || c == '.') return parse_number();
        if (std::isalpha((unsigned char)c)) return parse_ident();
        if (eat('(')) {
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(text.substr(pos), &used);
        } catch (const std::exception&) {
            fail("bad number");
        }
        pos += used;
        auto n = std::make_shared<Expr::Node>();
        n->op = NodeOp::Number;
        n->value = v;
        return n;
    }

    NodePtr parse_ident() {
        std::size_t end = pos;
        while (end < text.size() && (std::isalnum((unsigned char)text[end]) || text[end] == '_'))
            ++end;
        const std::string name = text.substr(pos, end - pos);
        pos = end;
        if (name == "pi") {
            auto n = std::make_shared<Expr::Node>();
            n->op = NodeOp::Number;
            n->value = M_PI;
            return n;
        }
        if (name == "cos" || name == "sin" || name == "exp") {
            if (!eat('(')) fail(name + " needs parentheses");
            NodePtr arg = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return make(name == "cos" ? NodeOp::Cos : name == "sin" ? NodeOp::Sin : NodeOp::Exp,
                        arg);
        }
        int var = -1;
        if (name == "theta") var = 0;
        else if (name == "x") var = 1;
        else if (name == "y") var = 2;
        if (var < 0) fail("unknown identifier '" + name + "'");
        if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
        auto n = std::make_shared<Expr::Node>();
        n->op = NodeOp::Var;
        n->var = var;
        return n;
    }
};

double eval_node(const Expr::Node& n, double theta, double x, double y) {
    switch (n.op) {
        case NodeOp::Number: return n.value;
        case NodeOp::Var: return n.var == 0 ? theta : (n.var == 1 ? x : y);
        case NodeOp::Add: return eval_node(*n.lhs, theta, x, y) + eval_node(*n.rhs, theta, x, y);
        case NodeOp::Sub: return eval_node(*n.lhs, theta, x, y) - eval_node(*n.rhs, theta, x, y);
        case NodeOp::Mul: return eval_node(*n.lhs, theta, x, y) * eval_node(*n.rhs, theta, x, y);
        case NodeOp::Div: return eval_node(*n.lhs, theta, x, y) / eval_node(*n.rhs, theta, x, y);
        case NodeOp::Pow:
            return std::pow(eval_node(*n.lhs, theta, x, y), eval_node(*n.rhs, theta, x, y));
        case NodeOp::Neg: return -eval_node(*n.lhs, theta, x, y);
        case NodeOp::Cos: return std::cos(eval_node(*n.lhs, theta, x, y));
        case NodeOp::Sin: return std::sin(eval_node(*n.lhs, theta, x, y));
        case NodeOp::Exp: return std::exp(eval_node(*n.lhs, theta, x, y));
    }
    return 0.0;
}

} // namespace

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    Expr e;
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    e.vars_ = std::move(p.vars);
    return e;
}

double Expr::eval(double theta, double x, double y) const {
    return eval_node(*root_, theta, x, y);
}

double Expr::eval_theta(double theta) const { return eval(theta, 0.0, 0.0); }

double Expr::eval_xy(double x, double y) const { return eval(0.0, x, y); }

} // namespace warpflow

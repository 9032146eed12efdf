#include "specfp/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "specfp/errors.hpp"

namespace specfp {

namespace expr_detail {

enum class Op { Const, Var, Sin, Cos, Tanh, Exp, Abs, Neg, Add, Sub, Mul, Div, Pow };

struct Node {
    Op op;
    double value = 0.0;  // Const
    int var = 0;         // Var
    int exponent = 0;    // Pow
    std::shared_ptr<const Node> lhs, rhs;
};

using NodePtr = std::shared_ptr<const Node>;

double eval_node(const Node& n, std::span<const double> coords) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return coords[static_cast<std::size_t>(n.var)];
        case Op::Sin: return std::sin(eval_node(*n.lhs, coords));
        case Op::Cos: return std::cos(eval_node(*n.lhs, coords));
        case Op::Tanh: return std::tanh(eval_node(*n.lhs, coords));
        case Op::Exp: return std::exp(eval_node(*n.lhs, coords));
        case Op::Abs: return std::fabs(eval_node(*n.lhs, coords));
        case Op::Neg: return -eval_node(*n.lhs, coords);
        case Op::Add: return eval_node(*n.lhs, coords) + eval_node(*n.rhs, coords);
        case Op::Sub: return eval_node(*n.lhs, coords) - eval_node(*n.rhs, coords);
        case Op::Mul: return eval_node(*n.lhs, coords) * eval_node(*n.rhs, coords);
        case Op::Div: {
            const double denom = eval_node(*n.rhs, coords);
            if (denom == 0.0) throw Error("division by zero while evaluating expression");
            return eval_node(*n.lhs, coords) / denom;
        }
        case Op::Pow: {
            const double base = eval_node(*n.lhs, coords);
            return std::pow(base, n.exponent);
        }
    }
    return 0.0;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, int num_vars) : text_(text), num_vars_(num_vars) {}

    NodePtr parse() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ExprError("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int num_vars_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (accept('+'))
                e = make(Op::Add, e, parse_term());
            else if (accept('-'))
                e = make(Op::Sub, e, parse_term());
            else
                return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (accept('*'))
                e = make(Op::Mul, e, parse_unary());
            else if (accept('/'))
                e = make(Op::Div, e, parse_unary());
            else
                return e;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make(Op::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            bool negative = false;
            if (pos_ < text_.size() && text_[pos_] == '-') {
                negative = true;
                ++pos_;
            }
            std::size_t digits = 0;
            long value = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                value = value * 10 + (text_[pos_] - '0');
                ++digits;
                ++pos_;
            }
            if (digits == 0) throw ExprError("expected integer exponent after '^'", at);
            auto n = std::make_shared<Node>();
            n->op = Op::Pow;
            n->lhs = base;
            n->exponent = static_cast<int>(negative ? -value : value);
            return n;
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ExprError("unexpected end of input", pos_);
        const char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!accept(')')) throw ExprError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw ExprError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ExprError("malformed number", start);
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<Node>();
        n->op = Op::Const;
        n->value = v;
        return n;
    }

    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (peek() == '(') {
            Op op;
            if (name == "sin")
                op = Op::Sin;
            else if (name == "cos")
                op = Op::Cos;
            else if (name == "tanh")
                op = Op::Tanh;
            else if (name == "exp")
                op = Op::Exp;
            else if (name == "abs")
                op = Op::Abs;
            else if (name == "neg")
                op = Op::Neg;
            else
                throw ExprError("unknown function '" + std::string(name) + "'", start);
            ++pos_;  // '('
            NodePtr arg = parse_expr();
            if (!accept(')')) throw ExprError("expected ')' closing function argument", pos_);
            return make(op, arg);
        }

        int var = -1;
        if (name == "x" || name == "x1")
            var = 0;
        else if (name == "x2")
            var = 1;
        else if (name == "x3")
            var = 2;
        if (var < 0 || var >= num_vars_)
            throw ExprError("unknown variable '" + std::string(name) + "'", start);
        auto n = std::make_shared<Node>();
        n->op = Op::Var;
        n->var = var;
        return n;
    }
};

}  // namespace
}  // namespace expr_detail

double Expr::eval(std::span<const double> coords) const {
    if (!root_) return 0.0;
    return expr_detail::eval_node(*root_, coords);
}

Expr parse_expr(std::string_view text, int num_vars) {
    expr_detail::Parser parser(text, num_vars);
    Expr e;
    e.root_ = parser.parse();
    e.source_ = std::string(text);
    return e;
}

}  // namespace specfp

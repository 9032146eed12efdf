#ifndef SPECFP_EXPR_HPP
#define SPECFP_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace specfp {

namespace expr_detail {
struct Node;
}

/// Parsed arithmetic expression over spatial variables. Grammar:
///   expr   := term { ('+'|'-') term }
///   term   := unary { ('*'|'/') unary }
///   unary  := '-' unary | power
///   power  := atom [ '^' integer ]
///   atom   := number | variable | function '(' expr ')' | '(' expr ')'
/// Functions: sin cos tanh exp abs neg. Variables: x (alias of x1), x1..x3,
/// restricted to the dimension passed at parse time.
class Expr {
public:
    Expr() = default;  // evaluates to 0

    double eval(std::span<const double> coords) const;
    bool is_zero() const { return root_ == nullptr; }
    const std::string& source() const { return source_; }

private:
    friend Expr parse_expr(std::string_view, int);
    std::shared_ptr<const expr_detail::Node> root_;
    std::string source_;
};

/// Parses `text` over variables x1..x{num_vars}. Throws ExprError with the
/// offending position on malformed input or unknown identifiers.
Expr parse_expr(std::string_view text, int num_vars);

}  // namespace specfp

#endif

#ifndef NCCLARK_EXPR_HPP
#define NCCLARK_EXPR_HPP

#include <memory>
#include <string>

#include "ncclark/types.hpp"

namespace ncclark {

enum class ExprOp { Const, Var, Add, Mul, Neg, Inv };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprOp op;
    cplx value{0.0, 0.0}; // Const
    int index = 0;        // Var, 1-based
    ExprPtr lhs, rhs;     // rhs unused for Neg/Inv
};

ExprPtr make_const(cplx c);
ExprPtr make_var(int j);
ExprPtr make_add(ExprPtr l, ExprPtr r);
ExprPtr make_mul(ExprPtr l, ExprPtr r);
ExprPtr make_neg(ExprPtr e);
ExprPtr make_inv(ExprPtr e);

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := ['-'] ( number ['i'] [('+'|'-') number 'i'] | 'i' | 'z'INT | 'x' | 'y'
//             | '(' expr ')' | 'inv(' expr ')' ) ('^-1' | '^{-1}')*
// x and y are aliases of z1 and z2 when d = 2.  Juxtaposition multiplies.
ExprPtr parse(const std::string& text, int d);

// Fully parenthesized form; parse(to_string(e), d) reproduces e exactly.
std::string to_string(const ExprPtr& e);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);
int max_var(const ExprPtr& e);

Mat eval_expr(const ExprPtr& e, const MatrixTuple& z);
bool regular_at_zero(const ExprPtr& e);

} // namespace ncclark

#endif

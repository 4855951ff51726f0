#include "ncclark/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>

#include <fmt/format.h>

#include "ncclark/errors.hpp"
#include "ncclark/linalg.hpp"

namespace ncclark {

ExprPtr make_const(cplx c)
{
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Const;
    e->value = c;
    return e;
}

ExprPtr make_var(int j)
{
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Var;
    e->index = j;
    return e;
}

ExprPtr make_add(ExprPtr l, ExprPtr r)
{
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Add;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr make_mul(ExprPtr l, ExprPtr r)
{
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Mul;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr make_neg(ExprPtr x)
{
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Neg;
    e->lhs = std::move(x);
    return e;
}

ExprPtr make_inv(ExprPtr x)
{
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Inv;
    e->lhs = std::move(x);
    return e;
}

namespace {

std::string normalize(const std::string& s)
{
    // U+2212 MINUS SIGN -> '-'
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
            static_cast<unsigned char>(s[i + 1]) == 0x88 &&
            static_cast<unsigned char>(s[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

class Parser {
public:
    Parser(std::string text, int d) : s_(normalize(text)), d_(d) {}

    ExprPtr run()
    {
        ExprPtr e = expr();
        ws();
        if (p_ != s_.size())
            throw SyntaxError(fmt::format("unexpected '{}'", s_[p_]), p_);
        return e;
    }

private:
    std::string s_;
    int d_;
    std::size_t p_ = 0;

    void ws()
    {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_])))
            ++p_;
    }

    char peek() const { return p_ < s_.size() ? s_[p_] : '\0'; }
    char peek_at(std::size_t k) const { return p_ + k < s_.size() ? s_[p_ + k] : '\0'; }

    bool starts_with(const char* lit) const { return s_.compare(p_, std::strlen(lit), lit) == 0; }

    bool is_digit_start(char c) const
    {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    bool starts_factor()
    {
        ws();
        char c = peek();
        return c == '(' || c == 'z' || c == 'x' || c == 'y' || c == 'i' || is_digit_start(c);
    }

    ExprPtr expr()
    {
        ExprPtr e = term();
        for (;;) {
            ws();
            char c = peek();
            if (c == '+') {
                ++p_;
                e = make_add(e, term());
            } else if (c == '-') {
                ++p_;
                e = make_add(e, make_neg(term()));
            } else {
                return e;
            }
        }
    }

    ExprPtr term()
    {
        ExprPtr e = factor();
        for (;;) {
            ws();
            if (peek() == '*') {
                ++p_;
                e = make_mul(e, factor());
            } else if (starts_factor()) {
                e = make_mul(e, factor());
            } else {
                return e;
            }
        }
    }

    double number()
    {
        const char* begin = s_.c_str() + p_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin)
            throw SyntaxError("expected a number", p_);
        p_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    bool imag_suffix()
    {
        // 'i' as a literal suffix, not the start of "inv("
        if (peek() == 'i' && !(peek_at(1) == 'n' && peek_at(2) == 'v'))
            return true;
        return false;
    }

    ExprPtr literal(double sign)
    {
        double re = sign * number();
        double im = 0.0;
        if (imag_suffix()) {
            ++p_;
            std::swap(re, im);
            return make_const({re, im});
        }
        // optional "+bi" / "-bi" tail
        std::size_t save = p_;
        ws();
        char c = peek();
        if (c == '+' || c == '-') {
            ++p_;
            ws();
            if (is_digit_start(peek())) {
                double b = number();
                if (imag_suffix()) {
                    ++p_;
                    im = (c == '-') ? -b : b;
                    return make_const({re, im});
                }
            }
        }
        p_ = save;
        return make_const({re, im});
    }

    ExprPtr postfix(ExprPtr e)
    {
        for (;;) {
            ws();
            if (starts_with("^-1")) {
                p_ += 3;
                e = make_inv(e);
            } else if (starts_with("^{-1}")) {
                p_ += 5;
                e = make_inv(e);
            } else if (peek() == '^') {
                throw SyntaxError("only the exponent -1 is supported", p_);
            } else {
                return e;
            }
        }
    }

    ExprPtr factor()
    {
        ws();
        char c = peek();
        if (c == '\0')
            throw SyntaxError("unexpected end of input", p_);
        if (c == '-') {
            ++p_;
            ws();
            if (is_digit_start(peek()))
                return postfix(literal(-1.0));
            return make_neg(factor());
        }
        ExprPtr e;
        if (c == '(') {
            ++p_;
            e = expr();
            ws();
            if (peek() != ')')
                throw SyntaxError("expected ')'", p_);
            ++p_;
        } else if (starts_with("inv")) {
            p_ += 3;
            ws();
            if (peek() != '(')
                throw SyntaxError("expected '(' after inv", p_);
            ++p_;
            e = expr();
            ws();
            if (peek() != ')')
                throw SyntaxError("expected ')'", p_);
            ++p_;
            e = make_inv(e);
        } else if (c == 'z') {
            std::size_t at = p_;
            ++p_;
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("expected variable index after 'z'", p_);
            int k = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                k = 10 * k + (peek() - '0');
                ++p_;
                if (k > 1000000)
                    throw SyntaxError("variable index too large", at);
            }
            if (k < 1 || k > d_)
                throw ArityError(fmt::format("variable z{} at position {} exceeds arity {}", k, at,
                                             d_));
            e = make_var(k);
        } else if (c == 'x' || c == 'y') {
            if (d_ != 2)
                throw ArityError(fmt::format("alias '{}' at position {} needs d = 2", c, p_));
            ++p_;
            e = make_var(c == 'x' ? 1 : 2);
        } else if (c == 'i') {
            ++p_;
            e = make_const({0.0, 1.0});
        } else if (is_digit_start(c)) {
            e = literal(1.0);
        } else {
            throw SyntaxError(fmt::format("unexpected '{}'", c), p_);
        }
        return postfix(e);
    }
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

} // namespace

ExprPtr parse(const std::string& text, int d)
{
    if (d < 1)
        throw ArityError("parse: arity must be at least 1");
    return Parser(text, d).run();
}

std::string to_string(const ExprPtr& e)
{
    switch (e->op) {
    case ExprOp::Const: {
        double re = e->value.real(), im = e->value.imag();
        if (im == 0.0)
            return num(re);
        if (re == 0.0)
            return num(im) + "i";
        return fmt::format("({}{}{}i)", num(re), im < 0 ? "-" : "+", num(std::abs(im)));
    }
    case ExprOp::Var:
        return fmt::format("z{}", e->index);
    case ExprOp::Add:
        return "(" + to_string(e->lhs) + " + " + to_string(e->rhs) + ")";
    case ExprOp::Mul:
        return "(" + to_string(e->lhs) + " * " + to_string(e->rhs) + ")";
    case ExprOp::Neg:
        return "-(" + to_string(e->lhs) + ")";
    case ExprOp::Inv:
        return "inv(" + to_string(e->lhs) + ")";
    }
    return {};
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b)
{
    if (a->op != b->op)
        return false;
    switch (a->op) {
    case ExprOp::Const:
        return a->value == b->value;
    case ExprOp::Var:
        return a->index == b->index;
    case ExprOp::Add:
    case ExprOp::Mul:
        return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    case ExprOp::Neg:
    case ExprOp::Inv:
        return structurally_equal(a->lhs, b->lhs);
    }
    return false;
}

int max_var(const ExprPtr& e)
{
    switch (e->op) {
    case ExprOp::Const:
        return 0;
    case ExprOp::Var:
        return e->index;
    case ExprOp::Add:
    case ExprOp::Mul:
        return std::max(max_var(e->lhs), max_var(e->rhs));
    case ExprOp::Neg:
    case ExprOp::Inv:
        return max_var(e->lhs);
    }
    return 0;
}

Mat eval_expr(const ExprPtr& e, const MatrixTuple& z)
{
    const int n = z.n();
    switch (e->op) {
    case ExprOp::Const:
        return e->value * identity(n);
    case ExprOp::Var:
        if (e->index < 1 || e->index > z.d())
            throw ArityError(fmt::format("z{} needs arity >= {}, point has {}", e->index,
                                         e->index, z.d()));
        return z[e->index - 1];
    case ExprOp::Add:
        return eval_expr(e->lhs, z) + eval_expr(e->rhs, z);
    case ExprOp::Mul:
        return eval_expr(e->lhs, z) * eval_expr(e->rhs, z);
    case ExprOp::Neg:
        return -eval_expr(e->lhs, z);
    case ExprOp::Inv: {
        Mat m = eval_expr(e->lhs, z);
        double c = cond_estimate(m);
        if (!(c <= kSingularCond))
            throw DomainError(fmt::format("{} is singular at this point (condition estimate "
                                          "{:.3g})",
                                          to_string(e), c),
                              c);
        return Eigen::PartialPivLU<Mat>(m).inverse();
    }
    }
    return {};
}

bool regular_at_zero(const ExprPtr& e)
{
    try {
        eval_expr(e, MatrixTuple::zeros(std::max(1, max_var(e)), 1));
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

} // namespace ncclark

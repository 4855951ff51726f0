#include "ncclark/realization.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ncclark {

cplx PowerSeries::at(const Word& w) const
{
    auto it = coef.find(w);
    return it == coef.end() ? cplx{0.0, 0.0} : it->second;
}

void check_consistent(const FMRealization& f)
{
    const int m = f.m();
    if (f.A.d() < 1)
        throw ArityError("realization: empty state tuple");
    if (static_cast<int>(f.B.size()) != f.d())
        throw ArityError(fmt::format("realization: {} input vectors for arity {}", f.B.size(),
                                     f.d()));
    for (const auto& b : f.B)
        if (b.size() != m)
            throw ArityError("realization: input vector length differs from state dimension");
    if (f.C.size() != m)
        throw ArityError("realization: output row length differs from state dimension");
}

FMRealization fm_constant(int d, cplx c)
{
    FMRealization f;
    f.A = MatrixTuple::zeros(d, 0);
    f.B.assign(d, Vec::Zero(0));
    f.C = RowVec::Zero(0);
    f.D = c;
    f.minimal = true;
    return f;
}

FMRealization fm_variable(int d, int j)
{
    if (j < 1 || j > d)
        throw ArityError(fmt::format("variable z{} out of range for arity {}", j, d));
    FMRealization f;
    f.A = MatrixTuple::zeros(d, 1);
    f.B.assign(d, Vec::Zero(1));
    f.B[j - 1](0) = 1.0;
    f.C = RowVec::Ones(1);
    f.D = 0.0;
    f.minimal = true;
    return f;
}

Mat transfer_eval(const FMRealization& f, const MatrixTuple& z)
{
    check_consistent(f);
    if (z.d() != f.d())
        throw ArityError(fmt::format("transfer_eval: arity {} vs point arity {}", f.d(), z.d()));
    const int n = z.n();
    const int m = f.m();
    Mat out = f.D * identity(n);
    if (m == 0)
        return out;
    Mat rhs = Mat::Zero(static_cast<Eigen::Index>(m) * n, n);
    for (int j = 0; j < f.d(); ++j)
        rhs += kron(f.B[j], z[j]);
    Mat x = pencil_solve(f.A, z, rhs);
    out += kron(f.C, identity(n)) * x;
    return out;
}

Mat descriptor_eval(const Descriptor& r, const MatrixTuple& z)
{
    const int m = r.A.n();
    if (r.b.size() != m || r.c.size() != m)
        throw ArityError("descriptor: vector sizes differ from state dimension");
    if (z.d() != r.A.d())
        throw ArityError("descriptor_eval: arity mismatch");
    const int n = z.n();
    Mat x = pencil_solve(r.A, z, kron(r.c, identity(n)));
    return kron(Mat(r.b.adjoint()), identity(n)) * x;
}

Descriptor descriptor_from_fm(const FMRealization& f)
{
    check_consistent(f);
    const int m = f.m();
    std::vector<Mat> a;
    for (int j = 0; j < f.d(); ++j) {
        Mat aj = Mat::Zero(m + 1, m + 1);
        aj.block(1, 0, m, 1) = f.B[j];
        aj.block(1, 1, m, m) = f.A[j];
        a.push_back(aj);
    }
    Descriptor r;
    r.A = MatrixTuple(a);
    r.c = Vec::Zero(m + 1);
    r.c(0) = 1.0;
    r.b = Vec(m + 1);
    r.b(0) = std::conj(f.D);
    r.b.tail(m) = f.C.adjoint();
    return r;
}

namespace {

double data_scale(const FMRealization& f)
{
    double s = 1.0;
    for (const auto& a : f.A.mats())
        s = std::max(s, op_norm(a));
    for (const auto& b : f.B)
        s = std::max(s, b.norm());
    s = std::max(s, f.C.norm());
    return s;
}

// Orthonormal closure of span(start) under the operators.
Mat krylov_closure(const std::vector<Mat>& ops, const Mat& start, double abstol)
{
    Mat q = orth(start, kRankTol, abstol);
    if (q.cols() == 0)
        return q;
    for (;;) {
        Mat big(q.rows(), q.cols() * (1 + static_cast<Eigen::Index>(ops.size())));
        big.leftCols(q.cols()) = q;
        for (std::size_t j = 0; j < ops.size(); ++j)
            big.middleCols((j + 1) * q.cols(), q.cols()) = ops[j] * q;
        Mat nq = orth(big, kRankTol, abstol);
        if (nq.cols() == q.cols())
            return nq;
        q = nq;
    }
}

FMRealization restrict_states(const FMRealization& f, const Mat& q)
{
    FMRealization g;
    g.A = compress(f.A, q);
    if (q.cols() == 0)
        g.A = MatrixTuple::zeros(f.d(), 0);
    for (const auto& b : f.B)
        g.B.push_back(q.adjoint() * b);
    g.C = f.C * q;
    g.D = f.D;
    return g;
}

} // namespace

FMRealization fm_from_descriptor(const Descriptor& r)
{
    const int m = r.A.n();
    if (r.b.size() != m || r.c.size() != m)
        throw ArityError("descriptor: vector sizes differ from state dimension");
    FMRealization f;
    f.A = r.A;
    for (int k = 0; k < r.A.d(); ++k)
        f.B.push_back(r.A[k] * r.c);
    f.C = r.b.adjoint();
    f.D = r.b.dot(r.c);
    if (m == 0)
        return f;
    Mat start(m, r.A.d());
    for (int k = 0; k < r.A.d(); ++k)
        start.col(k) = f.B[k];
    Mat q = krylov_closure(r.A.mats(), start, 1e-14 * data_scale(f));
    return restrict_states(f, q);
}

FMRealization fm_add(const FMRealization& f, const FMRealization& g)
{
    check_consistent(f);
    check_consistent(g);
    if (f.d() != g.d())
        throw ArityError("fm_add: arity mismatch");
    const int m1 = f.m(), m2 = g.m();
    FMRealization h;
    h.A = direct_sum(f.A, g.A);
    for (int j = 0; j < f.d(); ++j) {
        Vec b(m1 + m2);
        b << f.B[j], g.B[j];
        h.B.push_back(b);
    }
    h.C = RowVec(m1 + m2);
    h.C << f.C, g.C;
    h.D = f.D + g.D;
    return h;
}

FMRealization fm_scale(const FMRealization& f, cplx s)
{
    FMRealization h = f;
    h.C *= s;
    h.D *= s;
    h.minimal = f.minimal && s != cplx(0.0, 0.0);
    return h;
}

FMRealization fm_mul(const FMRealization& f, const FMRealization& g)
{
    check_consistent(f);
    check_consistent(g);
    if (f.d() != g.d())
        throw ArityError("fm_mul: arity mismatch");
    const int m1 = f.m(), m2 = g.m();
    const int m = m1 + m2;
    std::vector<Mat> a;
    FMRealization h;
    for (int j = 0; j < f.d(); ++j) {
        Mat aj = Mat::Zero(m, m);
        aj.topLeftCorner(m1, m1) = f.A[j];
        aj.topRightCorner(m1, m2) = f.B[j] * g.C;
        aj.bottomRightCorner(m2, m2) = g.A[j];
        a.push_back(aj);
        Vec b(m);
        b << f.B[j] * g.D, g.B[j];
        h.B.push_back(b);
    }
    h.A = MatrixTuple(a);
    h.C = RowVec(m);
    h.C << f.C, f.D * g.C;
    h.D = f.D * g.D;
    return h;
}

FMRealization fm_inv(const FMRealization& f)
{
    check_consistent(f);
    if (std::abs(f.D) < 1e-14)
        throw RegularityError("fm_inv: constant term is zero, the inverse is not regular at 0");
    const cplx di = 1.0 / f.D;
    FMRealization h;
    std::vector<Mat> a;
    for (int j = 0; j < f.d(); ++j) {
        a.push_back(f.A[j] - di * f.B[j] * f.C);
        h.B.push_back(di * f.B[j]);
    }
    h.A = MatrixTuple(a);
    h.C = -di * f.C;
    h.D = di;
    h.minimal = f.minimal;
    return h;
}

namespace {

FMRealization compile(const ExprPtr& e, int d)
{
    switch (e->op) {
    case ExprOp::Const:
        return fm_constant(d, e->value);
    case ExprOp::Var:
        return fm_variable(d, e->index);
    case ExprOp::Add:
        return minimize(fm_add(compile(e->lhs, d), compile(e->rhs, d)));
    case ExprOp::Mul:
        return minimize(fm_mul(compile(e->lhs, d), compile(e->rhs, d)));
    case ExprOp::Neg:
        return fm_scale(compile(e->lhs, d), -1.0);
    case ExprOp::Inv: {
        FMRealization inner = compile(e->lhs, d);
        if (std::abs(inner.D) < 1e-14)
            throw RegularityError(fmt::format("{} is not regular at 0", to_string(e)));
        return fm_inv(inner);
    }
    }
    throw Error("Error", "compile: unknown node");
}

} // namespace

FMRealization expr_to_fm(const ExprPtr& e, int d)
{
    if (max_var(e) > d)
        throw ArityError(fmt::format("expression uses z{} but arity is {}", max_var(e), d));
    return minimize(compile(e, d));
}

FMRealization minimize(const FMRealization& f)
{
    check_consistent(f);
    const int m = f.m();
    const int d = f.d();
    if (m == 0) {
        FMRealization g = f;
        g.minimal = true;
        return g;
    }
    const double floor = 1e-12 * data_scale(f);

    // controllable part
    Mat start(m, d);
    for (int j = 0; j < d; ++j)
        start.col(j) = f.B[j];
    Mat q = krylov_closure(f.A.mats(), start, floor);
    FMRealization g = restrict_states(f, q);

    // observable part
    if (g.m() > 0) {
        std::vector<Mat> adj;
        for (const auto& a : g.A.mats())
            adj.push_back(a.adjoint());
        Mat p = krylov_closure(adj, Mat(g.C.adjoint()), floor);
        g = restrict_states(g, p);
    }
    g.minimal = true;
    return g;
}

PowerSeries coefficients(const FMRealization& f, int maxdeg)
{
    check_consistent(f);
    PowerSeries s;
    s.d = f.d();
    s.maxdeg = maxdeg;
    if (maxdeg < 0)
        return s;
    s.coef[Word{}] = f.D;
    if (maxdeg == 0)
        return s;
    // rows[w] = C A^w, grown one letter at a time on the right
    std::vector<std::pair<Word, RowVec>> level{{Word{}, f.C}};
    for (int k = 1; k <= maxdeg; ++k) {
        std::vector<std::pair<Word, RowVec>> next;
        for (const auto& [w, row] : level) {
            for (int j = 1; j <= f.d(); ++j) {
                Word wj = w;
                wj.push_back(j);
                s.coef[wj] = f.m() == 0 ? cplx{0.0, 0.0} : (row * f.B[j - 1])(0);
                if (k < maxdeg)
                    next.emplace_back(wj, f.m() == 0 ? row : RowVec(row * f.A[j - 1]));
            }
        }
        level = std::move(next);
    }
    return s;
}

std::vector<double> graded_norms(const FMRealization& f, int maxdeg)
{
    check_consistent(f);
    std::vector<double> out;
    if (maxdeg < 0)
        return out;
    out.push_back(std::norm(f.D));
    const int m = f.m();
    if (m == 0) {
        out.resize(maxdeg + 1, 0.0);
        return out;
    }
    // M_k = sum_{|w| = k} (A^w)^* C^* C A^w
    Mat mk = f.C.adjoint() * f.C;
    for (int k = 1; k <= maxdeg; ++k) {
        double s = 0.0;
        for (int j = 0; j < f.d(); ++j)
            s += std::real((f.B[j].adjoint() * mk * f.B[j])(0));
        out.push_back(std::max(0.0, s));
        mk = cp_apply_adjoint(f.A, mk);
    }
    return out;
}

bool fm_equal(const FMRealization& f, const FMRealization& g, double tol)
{
    FMRealization a = minimize(f), b = minimize(g);
    if (a.d() != b.d())
        return false;
    if (a.m() != b.m())
        return false;
    // the difference vanishes iff D = 0 and C = 0 on its reachable span,
    // which holds every A^w B_j; no squared norms, so no cancellation floor
    FMRealization diff = fm_add(a, fm_scale(b, -1.0));
    double scale = std::max({1.0, data_scale(a), data_scale(b), std::abs(a.D), std::abs(b.D)});
    if (std::abs(diff.D) > tol * scale)
        return false;
    if (diff.m() == 0)
        return true;
    Mat start(diff.m(), diff.d());
    for (int j = 0; j < diff.d(); ++j)
        start.col(j) = diff.B[j];
    Mat q = krylov_closure(diff.A.mats(), start, 1e-12 * data_scale(diff));
    return q.cols() == 0 || (diff.C * q).norm() <= tol * scale;
}

Membership fock_membership(const FMRealization& f, double tol)
{
    FMRealization g = minimize(f);
    Membership r;
    r.min_dim = g.m();
    r.spr = joint_spectral_radius(g.A);
    r.member = r.spr < 1.0 - tol;
    if (r.spr > 0.0)
        r.radius = 1.0 / r.spr;
    return r;
}

cplx char_poly_via_pencil(const FMRealization& f, const MatrixTuple& z, cplx lambda)
{
    check_consistent(f);
    if (lambda == cplx(0.0, 0.0))
        throw PreconditionError("char_poly_via_pencil: lambda must be nonzero");
    std::vector<Mat> al;
    for (int k = 0; k < f.d(); ++k)
        al.push_back(f.A[k] + f.B[k] * f.C / lambda);
    MatrixTuple a_l = f.m() == 0 ? MatrixTuple::zeros(f.d(), 0) : MatrixTuple(al);
    Mat l0 = pencil(f.A, z);
    double c = cond_estimate(l0);
    if (!(c <= kSingularCond))
        throw DomainError(fmt::format("pencil is singular (condition estimate {:.3g})", c), c);
    cplx num = det(pencil(a_l, z));
    cplx den = det(l0);
    return std::pow(lambda, z.n()) * num / den;
}

cplx char_poly_direct(const FMRealization& f, const MatrixTuple& z, cplx lambda)
{
    Mat r = transfer_eval(f, z);
    return det((lambda + f.D) * identity(z.n()) - r);
}

Descriptor transpose_realization(const Descriptor& r)
{
    return {transpose_tuple(r.A), r.c.conjugate(), r.b.conjugate()};
}

FMRealization fm_transpose(const FMRealization& f)
{
    FMRealization g = fm_from_descriptor(transpose_realization(descriptor_from_fm(f)));
    return g;
}

Mat szego_kernel_apply(const MatrixTuple& z, const MatrixTuple& w, const Mat& p)
{
    if (z.d() != w.d())
        throw ArityError("szego_kernel_apply: arity mismatch");
    if (p.rows() != z.n() || p.cols() != w.n())
        throw ArityError("szego_kernel_apply: P has the wrong shape");
    if (!is_strict_row_contraction(z) || !is_strict_row_contraction(w))
        throw PreconditionError("szego_kernel_apply: arguments must be strict row contractions");
    const int n = z.n(), q = w.n();
    Mat op = Mat::Identity(static_cast<Eigen::Index>(n) * q, static_cast<Eigen::Index>(n) * q);
    for (int j = 0; j < z.d(); ++j)
        op -= kron(w[j].conjugate(), z[j]);
    Vec k = solve_checked(op, vec(p), "Stein operator");
    return unvec(k, n, q);
}

// spr within roundoff of 1 counts as 1
constexpr double kSprMargin = 1e-12;

Mat observability_gramian(const FMRealization& f)
{
    check_consistent(f);
    const int m = f.m();
    if (m == 0)
        return Mat::Zero(0, 0);
    double rho = joint_spectral_radius(f.A);
    if (!(rho < 1.0 - kSprMargin))
        throw PreconditionError(
            fmt::format("observability_gramian: spr(A) = {:.6g} is not below 1", rho));
    if (m * m > 4096)
        return observability_gramian_iterative(f);
    Mat op = Mat::Identity(m * m, m * m);
    for (const auto& a : f.A.mats())
        op -= kron(a.transpose(), a.adjoint());
    Mat cc = f.C.adjoint() * f.C;
    Mat w = unvec(solve_checked(op, vec(cc), "Gramian operator"), m, m);
    return 0.5 * (w + w.adjoint());
}

Mat observability_gramian_iterative(const FMRealization& f, double tol, int max_iter)
{
    check_consistent(f);
    const int m = f.m();
    if (m == 0)
        return Mat::Zero(0, 0);
    double rho = joint_spectral_radius(f.A);
    if (!(rho < 1.0 - kSprMargin))
        throw PreconditionError(
            fmt::format("observability_gramian: spr(A) = {:.6g} is not below 1", rho));
    Mat cc = f.C.adjoint() * f.C;
    Mat w = cc;
    for (int it = 0; it < max_iter; ++it) {
        Mat nw = cc + cp_apply_adjoint(f.A, w);
        double delta = op_norm(nw - w);
        w = nw;
        if (delta <= tol * std::max(1.0, op_norm(w)))
            return 0.5 * (w + w.adjoint());
    }
    throw IterationError("observability_gramian: fixed-point iteration did not converge");
}

double hardy_norm_sq(const FMRealization& f)
{
    FMRealization g = f;
    if (!(joint_spectral_radius(g.A) < 1.0))
        g = minimize(f);
    if (!(joint_spectral_radius(g.A) < 1.0))
        throw PreconditionError("hardy_norm_sq: not a Fock space element (spr >= 1)");
    Mat w = observability_gramian(g);
    double s = std::norm(g.D);
    for (const auto& b : g.B)
        if (b.size() > 0)
            s += std::real((b.adjoint() * w * b)(0));
    return s;
}

FMRealization rescale(const FMRealization& f, double r)
{
    if (!(r > 0.0))
        throw PreconditionError("rescale: r must be positive");
    FMRealization g = f;
    g.A = scale_tuple(f.A, r);
    for (auto& b : g.B)
        b *= r;
    return g;
}

} // namespace ncclark

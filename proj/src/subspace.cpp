#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ncclark/linalg.hpp"

namespace ncclark {

namespace {

double tuple_scale(const MatrixTuple& a)
{
    double s = 1.0;
    for (const auto& m : a.mats())
        s = std::max(s, op_norm(m));
    return s;
}

// Orthonormal basis of span(q) + span(m) grown by Krylov steps under `ops`,
// starting from the columns of m.
Mat krylov(const std::vector<Mat>& ops, const Mat& start, double reltol)
{
    Mat q = orth(start, reltol);
    if (q.cols() == 0)
        return q;
    for (;;) {
        Mat big(q.rows(), q.cols() * (1 + static_cast<Eigen::Index>(ops.size())));
        big.leftCols(q.cols()) = q;
        for (std::size_t j = 0; j < ops.size(); ++j)
            big.middleCols((j + 1) * q.cols(), q.cols()) = ops[j] * q;
        Mat nq = orth(big, reltol);
        if (nq.cols() == q.cols())
            return nq;
        q = nq;
    }
}

} // namespace

Mat algebra_basis(const MatrixTuple& a, double tol)
{
    const int n = a.n();
    const double thresh = tol * tuple_scale(a);
    std::vector<Vec> basis;
    Vec e = vec(identity(n));
    basis.push_back(e / e.norm());
    for (std::size_t head = 0; head < basis.size(); ++head) {
        Mat x = unvec(basis[head], n, n);
        for (const auto& g : a.mats()) {
            Vec v = vec(g * x);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis)
                    v -= b * b.dot(v);
            double nv = v.norm();
            if (nv > thresh)
                basis.push_back(v / nv);
            if (static_cast<int>(basis.size()) == n * n)
                break;
        }
        if (static_cast<int>(basis.size()) == n * n)
            break;
    }
    Mat out(n * n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        out.col(i) = basis[i];
    return out;
}

bool is_irreducible(const MatrixTuple& a, double tol)
{
    const int n = a.n();
    if (n == 0)
        return false;
    if (n == 1)
        return true;
    return algebra_basis(a, tol).cols() == n * n;
}

cplx commutator_det(const Mat& a, const Mat& b) { return det(a * b - b * a); }

SubspaceBasis cyclic_subspace(const MatrixTuple& a, const Mat& v, double tol)
{
    return {krylov(a.mats(), v, tol)};
}

SubspaceBasis full_space(int n) { return {identity(n)}; }

SubspaceBasis kernel_basis(const Mat& m, double tol)
{
    return {null_space(m, tol * std::max(1.0, op_norm(m)))};
}

SubspaceBasis largest_invariant_in(const MatrixTuple& a, const SubspaceBasis& s0, double tol)
{
    const int n = a.n();
    Mat q = s0.cols;
    const double thresh = tol * tuple_scale(a);
    while (q.cols() > 0) {
        Mat p = identity(n) - q * q.adjoint();
        Mat stacked(static_cast<Eigen::Index>(n) * a.d(), q.cols());
        for (int j = 0; j < a.d(); ++j)
            stacked.middleRows(static_cast<Eigen::Index>(j) * n, n) = p * a[j] * q;
        Mat nsp = null_space(stacked, thresh);
        if (nsp.cols() == q.cols())
            break;
        q = q * nsp;
    }
    return {q};
}

namespace {

// A minimal invariant subspace inside the invariant subspace spanned by q.
Mat find_minimal(const MatrixTuple& a, Mat q, double tol, Rng& rng)
{
    for (int attempt = 0; attempt < 64; ++attempt) {
        const int k = static_cast<int>(q.cols());
        if (k <= 1)
            return q;
        MatrixTuple r = compress(a, q);
        Mat alg = algebra_basis(r, tol);
        if (alg.cols() == k * k)
            return q;
        Vec c = rng.vector(static_cast<int>(alg.cols()));
        Mat x = unvec(alg * c, k, k);
        Eigen::ComplexEigenSolver<Mat> es(x);
        Mat best;
        for (int i = 0; i < k; ++i) {
            Mat cyc = krylov(r.mats(), es.eigenvectors().col(i), 1e-8);
            if (cyc.cols() > 0 && cyc.cols() < k && (best.cols() == 0 || cyc.cols() < best.cols()))
                best = cyc;
        }
        if (best.cols() > 0)
            q = orth(q * best, kRankTol);
    }
    throw HeuristicError("minimal invariant subspace search did not converge");
}

} // namespace

std::vector<SubspaceBasis> minimal_invariant_decomposition(const MatrixTuple& a,
                                                           const SubspaceBasis& k,
                                                           double tol, std::uint64_t seed)
{
    Rng rng(seed);
    const int n = a.n();
    const double scale = tuple_scale(a);
    std::vector<SubspaceBasis> pieces;
    if (k.dim() == 0)
        return pieces;
    Mat chosen = Mat::Zero(n, 0);
    SubspaceBasis m = k;
    while (m.dim() > 0) {
        Mat w = find_minimal(a, m.cols, tol, rng);
        pieces.push_back({w});
        Mat nc(n, chosen.cols() + w.cols());
        nc << chosen, w;
        chosen = nc;
        Mat rest = (identity(n) - chosen * chosen.adjoint()) * k.cols;
        m = largest_invariant_in(a, {orth(rest, 1e-8, 1e-8)}, tol);
    }
    // a posteriori verification
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Mat& w = pieces[i].cols;
        Mat p = identity(n) - w * w.adjoint();
        for (int j = 0; j < a.d(); ++j) {
            double res = op_norm(p * a[j] * w);
            if (res > 1e-7 * scale)
                throw HeuristicError(
                    fmt::format("piece {} is not invariant (residual {:.3g})", i, res));
        }
        if (!is_irreducible(compress(a, w), tol))
            throw HeuristicError(fmt::format("piece {} is not minimal", i));
        for (std::size_t l = 0; l < i; ++l) {
            double ov = op_norm(pieces[l].cols.adjoint() * w);
            if (ov > 1e-7)
                throw HeuristicError(fmt::format("pieces {} and {} not orthogonal", l, i));
        }
    }
    return pieces;
}

namespace {

// Stacked Sylvester operator for S A_j - B_j S = 0.
Mat intertwiner_system(const std::vector<Mat>& as, const std::vector<Mat>& bs)
{
    const Eigen::Index n = as[0].rows();
    Mat m(static_cast<Eigen::Index>(as.size()) * n * n, n * n);
    Mat in = Mat::Identity(n, n);
    for (std::size_t j = 0; j < as.size(); ++j)
        m.middleRows(j * n * n, n * n) = kron(as[j].transpose(), in) - kron(in, bs[j]);
    return m;
}

} // namespace

std::optional<Mat> joint_similarity(const MatrixTuple& a, const MatrixTuple& b, double tol,
                                    std::uint64_t seed)
{
    if (a.d() != b.d())
        throw ArityError("joint_similarity: arity mismatch");
    if (a.n() != b.n())
        return std::nullopt;
    const int n = a.n();
    const double scale = std::max(tuple_scale(a), tuple_scale(b));
    Mat sys = intertwiner_system(a.mats(), b.mats());
    Mat nsp = null_space(sys, tol * scale);
    if (nsp.cols() == 0)
        return std::nullopt;
    Rng rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Vec c = rng.vector(static_cast<int>(nsp.cols()));
        Mat s = unvec(nsp * c, n, n);
        s /= op_norm(s);
        if (!(cond_estimate(s) < kSingularCond))
            continue;
        double res = 0.0;
        for (int j = 0; j < a.d(); ++j)
            res = std::max(res, op_norm(s * a[j] - b[j] * s));
        if (res <= 1e3 * tol * scale)
            return s;
    }
    return std::nullopt;
}

std::optional<Mat> joint_unitary_equivalence(const MatrixTuple& a, const MatrixTuple& b,
                                             double tol, UnitaryEquivalenceOptions opt)
{
    if (a.d() != b.d())
        throw ArityError("joint_unitary_equivalence: arity mismatch");
    if (a.n() != b.n())
        return std::nullopt;
    const int n = a.n();
    const int d = a.d();
    const double scale = std::max(tuple_scale(a), tuple_scale(b));
    std::vector<Mat> la, lb;
    for (int j = 0; j < d; ++j) {
        la.push_back(a[j]);
        lb.push_back(b[j]);
    }
    for (int j = 0; j < d; ++j) {
        la.push_back(a[j].adjoint());
        lb.push_back(b[j].adjoint());
    }

    // fast rejection through traces of *-words
    const int maxlen = opt.max_word_length > 0 ? opt.max_word_length : 2 * n * n;
    int exhaustive = std::min(opt.exhaustive_length, maxlen);
    while (exhaustive > 1 && std::pow(2.0 * d, exhaustive) > 20000.0)
        --exhaustive;
    auto trace_tol = [&](std::size_t len) {
        return 1e-6 * n * std::pow(scale, static_cast<double>(len));
    };
    for (int len = 1; len <= exhaustive; ++len) {
        for (const auto& w : words_of_length(2 * d, len)) {
            Mat pa = identity(n), pb = identity(n);
            for (int l : w) {
                pa = pa * la[l - 1];
                pb = pb * lb[l - 1];
            }
            if (std::abs(pa.trace() - pb.trace()) > trace_tol(w.size()))
                return std::nullopt;
        }
    }
    Rng rng(opt.seed);
    for (int s = 0; s < opt.random_words && exhaustive < maxlen; ++s) {
        int len = rng.integer(exhaustive + 1, maxlen);
        Mat pa = identity(n), pb = identity(n);
        for (int i = 0; i < len; ++i) {
            int l = rng.integer(0, 2 * d - 1);
            pa = pa * la[l];
            pb = pb * lb[l];
        }
        if (std::abs(pa.trace() - pb.trace()) > trace_tol(len))
            return std::nullopt;
    }

    // witness: intertwiner of the *-systems, made unitary by polar decomposition
    Mat sys = intertwiner_system(la, lb);
    Mat nsp = null_space(sys, tol * scale);
    if (nsp.cols() == 0)
        return std::nullopt;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Vec c = rng.vector(static_cast<int>(nsp.cols()));
        Mat s = unvec(nsp * c, n, n);
        if (!(cond_estimate(s) < kSingularCond))
            continue;
        Mat u = s * psd_inv_sqrt(s.adjoint() * s);
        double res = 0.0;
        for (int j = 0; j < d; ++j)
            res = std::max(res, op_norm(u * a[j] * u.adjoint() - b[j]));
        if (res <= 1e3 * tol * scale)
            return u;
    }
    return std::nullopt;
}

} // namespace ncclark

#include "ncclark/clark.hpp"

#include <cmath>

#include <fmt/format.h>

#include "ncclark/singularity.hpp"

namespace ncclark {

void check_seed(const ClarkSeed& s, double tol)
{
    if (s.T.d() < 1)
        throw ArityError("seed: empty tuple");
    if (s.x.size() != s.T.n())
        throw ArityError(fmt::format("seed: x has length {}, T acts on C^{}", s.x.size(),
                                     s.T.n()));
    if (!(s.x.norm() > 0.0))
        throw PreconditionError("seed: x must be nonzero");
    if (!is_row_contraction(s.T, tol))
        throw PreconditionError(
            fmt::format("seed: T is not a row contraction (row norm {:.12g})", row_norm(s.T)));
}

cplx seed_b0(const ClarkSeed& s)
{
    cplx g = s.x.squaredNorm() + cplx(0.0, s.t);
    return (g - 1.0) / (g + 1.0);
}

std::map<Word, cplx> moments(const ClarkSeed& s, const std::vector<Word>& words)
{
    check_seed(s);
    std::map<Word, cplx> out;
    for (const auto& w : words)
        out[w] = s.x.dot(word_eval(s.T, w) * s.x);
    return out;
}

Mat herglotz_eval(const ClarkSeed& s, const MatrixTuple& z)
{
    check_seed(s);
    Descriptor g{adjoint_tuple(s.T), s.x, s.x};
    const int n = z.n();
    return 2.0 * descriptor_eval(g, z) +
           (cplx(0.0, s.t) - s.x.squaredNorm()) * identity(n);
}

Mat cayley(const ClarkSeed& s, const MatrixTuple& z)
{
    Mat h = herglotz_eval(s, z);
    const int n = z.n();
    Mat hp = h + identity(n);
    // X (H + I) = H - I, solved through the transpose
    Mat xt = solve_checked(hp.transpose(), (h - identity(n)).transpose(), "H(Z) + I");
    return xt.transpose();
}

FMRealization minratreal_fm(const ClarkSeed& s, double tol)
{
    check_seed(s, tol);
    const int m = s.T.n();
    MatrixTuple ts = adjoint_tuple(s.T);
    if (cyclic_subspace(ts, s.x, tol).dim() != m)
        throw PreconditionError("minratreal: x is not cyclic for T^*");
    Mat start(m, s.T.d());
    for (int k = 0; k < s.T.d(); ++k)
        start.col(k) = ts[k] * s.x;
    Mat q = cyclic_subspace(ts, start, tol).cols;

    const cplx b0 = seed_b0(s);
    const cplx c = 1.0 - b0;
    Mat defect = identity(m) - c * s.x * s.x.adjoint();
    FMRealization f;
    std::vector<Mat> a;
    const int h0 = static_cast<int>(q.cols());
    for (int k = 0; k < s.T.d(); ++k) {
        a.push_back(q.adjoint() * ts[k] * defect * q);
        f.B.push_back(c * (q.adjoint() * ts[k] * s.x));
    }
    f.A = h0 == 0 ? MatrixTuple::zeros(s.T.d(), 0) : MatrixTuple(a);
    f.C = c * (s.x.adjoint() * q);
    f.D = b0;
    return minimize(f);
}

MatrixTuple clark_family(const ClarkSeed& s, cplx lambda, double tol)
{
    check_seed(s, tol);
    if (std::abs(seed_b0(s)) > tol)
        throw PreconditionError("clark_family: needs b(0) = 0, that is |x| = 1 and t = 0");
    const int m = s.T.n();
    Mat p = s.x * s.x.adjoint();
    Mat u = identity(m) - p + lambda * p;
    std::vector<Mat> out;
    for (const auto& tk : s.T.mats())
        out.push_back(lambda == cplx(1.0, 0.0) ? Mat(tk.adjoint()) : Mat(tk.adjoint() * u));
    return MatrixTuple(out);
}

MoebiusResult moebius_normalize(const FMRealization& f)
{
    check_consistent(f);
    const cplx w = f.D;
    if (!(std::abs(w) < 1.0))
        throw PreconditionError(
            fmt::format("moebius_normalize: |b(0)| = {:.6g} must be below 1", std::abs(w)));
    const int d = f.d();
    FMRealization num = fm_add(f, fm_constant(d, -w));
    FMRealization den = fm_add(fm_constant(d, 1.0), fm_scale(f, -std::conj(w)));
    FMRealization b0 = minimize(fm_mul(num, fm_inv(den)));
    return {b0, w};
}

CyclicityReport cyclicity_report(const ClarkSeed& s, double tol)
{
    check_seed(s, tol);
    const int m = s.T.n();
    CyclicityReport r;
    r.tstar_cyclic = cyclic_subspace(adjoint_tuple(s.T), s.x, tol).dim() == m;
    r.t_cyclic = cyclic_subspace(s.T, s.x, tol).dim() == m;
    if (is_row_coisometry(s.T, tol))
        r.v_cyclic = r.t_cyclic;
    return r;
}

ClassifyReport classify(const ClarkSeed& s, double tol)
{
    check_seed(s, tol);
    ClassifyReport r;
    r.cyclicity = cyclicity_report(s, tol);
    if (!r.cyclicity.tstar_cyclic)
        throw PreconditionError("classify: x is not cyclic for T^*");
    const int m = s.T.n();
    Mat defect = identity(m) - cp_apply(s.T, identity(m));
    defect = 0.5 * (defect + defect.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(defect);
    for (int i = 0; i < m; ++i)
        if (es.eigenvalues()(i) > tol)
            ++r.pure_rank;
    r.singular = is_row_coisometry(s.T, tol);
    CoisometricRestrictions cr = coisometric_restrictions(s.T, tol);
    r.ktilde_dim = cr.ktilde.dim();
    r.dilation_summands = static_cast<int>(cr.pieces.size());
    r.ac_part_present = r.pure_rank > 0;
    return r;
}

} // namespace ncclark

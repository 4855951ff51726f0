#include "ncclark/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace ncclark {

namespace {

constexpr double kEigenTol = 1e-8;

int defect_rank(const MatrixTuple& a, double tol)
{
    const int m = a.n();
    Mat defect = identity(m) - cp_apply(a, identity(m));
    defect = 0.5 * (defect + defect.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(defect);
    int r = 0;
    for (int i = 0; i < m; ++i)
        if (es.eigenvalues()(i) > tol)
            ++r;
    return r;
}

} // namespace

CoisometricRestrictions coisometric_restrictions(const MatrixTuple& a, double tol,
                                                 std::uint64_t seed)
{
    if (!is_row_contraction(a, tol))
        throw PreconditionError(fmt::format(
            "coisometric_restrictions: not a row contraction (row norm {:.12g})", row_norm(a)));
    const int m = a.n();
    MatrixTuple as = adjoint_tuple(a);
    Mat defect = identity(m) - cp_apply(a, identity(m));
    defect = 0.5 * (defect + defect.adjoint());
    SubspaceBasis ker = kernel_basis(defect, tol);
    CoisometricRestrictions out;
    out.ktilde = largest_invariant_in(as, ker, tol);
    if (out.ktilde.dim() == 0)
        return out;
    for (auto& piece : minimal_invariant_decomposition(as, out.ktilde, tol, seed)) {
        RestrictionPiece p;
        p.F = compress(a, piece.cols);
        Mat proj = identity(m) - piece.projector();
        for (int k = 0; k < a.d(); ++k)
            p.invariance_residual =
                std::max(p.invariance_residual, op_norm(proj * as[k] * piece.cols));
        const int k = piece.dim();
        p.coisometry_residual = op_norm(cp_apply(p.F, identity(k)) - identity(k));
        if (p.coisometry_residual > 1e3 * tol)
            throw HeuristicError(fmt::format(
                "restriction piece is not row co-isometric (residual {:.3g})",
                p.coisometry_residual));
        p.basis = std::move(piece);
        out.pieces.push_back(std::move(p));
    }
    return out;
}

MatrixTuple clark_point(const ClarkSeed& s, cplx zeta, double tol)
{
    return adjoint_tuple(clark_family(s, std::conj(zeta), tol));
}

EigencheckReport boundary_eigencheck(const FMRealization& b, const MatrixTuple& t, cplx zeta,
                                     double tol)
{
    EigencheckReport rep;
    rep.zeta = zeta;
    CoisometricRestrictions cr = coisometric_restrictions(t, tol);
    std::vector<MatrixTuple> evaluated;
    bool all_ok = true;
    for (const auto& piece : cr.pieces) {
        PieceEigen pe;
        pe.dim = piece.basis.dim();
        MatrixTuple xt = transpose_tuple(piece.F);
        pe.pencil_cond = b.m() == 0 ? 1.0 : cond_estimate(pencil(b.A, xt));
        try {
            Mat val = transfer_eval(b, xt);
            Eigen::ComplexEigenSolver<Mat> es(val);
            pe.eigenvalues = es.eigenvalues();
            int best = 0;
            pe.distance = std::numeric_limits<double>::infinity();
            for (int i = 0; i < pe.eigenvalues.size(); ++i) {
                double dist = std::abs(pe.eigenvalues(i) - zeta);
                if (dist < pe.distance) {
                    pe.distance = dist;
                    best = i;
                }
            }
            pe.eigenvector = es.eigenvectors().col(best).normalized();
            pe.evaluated = true;
            evaluated.push_back(piece.F);
            if (!(pe.distance < kEigenTol))
                all_ok = false;
        } catch (const DomainError& e) {
            pe.error = e.what();
        }
        rep.pieces.push_back(std::move(pe));
    }
    if (!evaluated.empty()) {
        MatrixTuple sum = evaluated[0];
        for (std::size_t i = 1; i < evaluated.size(); ++i)
            sum = direct_sum(sum, evaluated[i]);
        Mat val = transfer_eval(b, transpose_tuple(sum));
        Mat shifted = val - zeta * identity(sum.n());
        Eigen::JacobiSVD<Mat> svd(shifted);
        const auto& sv = svd.singularValues();
        double cut = 1e-7 * std::max(1.0, op_norm(val));
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) < cut)
                ++rep.geometric_multiplicity;
    }
    rep.holds = all_ok;
    return rep;
}

EigencheckReport boundary_eigencheck(const ClarkSeed& s, cplx zeta, double tol)
{
    FMRealization b = minratreal_fm(s, tol);
    return boundary_eigencheck(b, clark_point(s, zeta, tol), zeta, tol);
}

DetSplitting det_splitting(const ClarkSeed& s, cplx zeta, const MatrixTuple& z)
{
    MatrixTuple tl = clark_family(s, std::conj(zeta));
    MatrixTuple t0 = clark_family(s, 0.0);
    DetSplitting r;
    r.lhs = det(pencil(tl, z));
    Mat bz = cayley(s, z);
    r.rhs = det(pencil(t0, z)) * det(identity(z.n()) - std::conj(zeta) * bz);
    double den = std::max(std::abs(r.lhs), std::abs(r.rhs));
    r.rel_error = den > 0.0 ? std::abs(r.lhs - r.rhs) / den : 0.0;
    return r;
}

std::vector<double> default_r_grid()
{
    std::vector<double> g;
    for (int k = 1; k <= 20; ++k)
        g.push_back(1.0 - std::ldexp(1.0, -k));
    return g;
}

BoundaryLimit boundary_limit(const FMRealization& b, const MatrixTuple& a, const Vec& y,
                             const Vec& v, std::vector<double> r_grid, double tol)
{
    check_consistent(b);
    const int n = a.n();
    if (y.size() != n || v.size() != n)
        throw ArityError("boundary_limit: y and v must live on the space of A");
    if (!is_row_coisometry(a, 1e-9))
        throw PreconditionError("boundary_limit: A must be a row co-isometry");
    if (!(joint_spectral_radius(b.A) < 1.0))
        throw PreconditionError("boundary_limit: realization is not a Fock space element");
    if (std::abs(v.norm() - 1.0) > 1e-9)
        throw PreconditionError("boundary_limit: v must be a unit vector");
    // b^t(X) = b(X^t)^t
    auto bt = [&](const MatrixTuple& x) { return Mat(transfer_eval(b, transpose_tuple(x)).transpose()); };
    Mat bta = bt(a);
    cplx zeta = v.dot(bta * v);
    if ((bta * v - zeta * v).norm() > tol)
        throw PreconditionError(fmt::format(
            "boundary_limit: v is not an eigenvector of b^t(A) (residual {:.3g})",
            (bta * v - zeta * v).norm()));
    if (r_grid.empty())
        r_grid = default_r_grid();
    BoundaryLimit out;
    out.r_grid = r_grid;
    out.eigenvalue = zeta;
    Mat vv = v * v.adjoint();
    for (double r : r_grid) {
        MatrixTuple ra = scale_tuple(a, r);
        out.values.push_back(y.dot(transfer_eval(b, ra) * v));
        Mat btr = bt(ra);
        Mat p = vv - btr * vv * btr.adjoint();
        Mat k = szego_kernel_apply(ra, ra, p);
        double kn = std::real(y.dot(k * y));
        out.kernel_norm_sq.push_back(kn);
        out.kernel_norm_bound = std::max(out.kernel_norm_bound, kn);
    }
    if (out.values.size() >= 2)
        out.last_increment = std::abs(out.values.back() - out.values[out.values.size() - 2]);
    return out;
}

namespace {

// Matrix polynomial sum_k c[k] z^k.
using MatPoly = std::vector<Mat>;

MatPoly poly_mul(const MatPoly& p, const MatPoly& q)
{
    const Eigen::Index n = p[0].rows();
    MatPoly r(p.size() + q.size() - 1, Mat::Zero(n, n));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            r[i + j] += p[i] * q[j];
    return r;
}

} // namespace

TracePolyReport trace_perturbation_polys(const MatrixTuple& a, const Vec& x, int maxlen,
                                         double tol)
{
    if (x.size() != a.n())
        throw ArityError("trace_perturbation_polys: x has the wrong length");
    if (!is_irreducible(a, tol))
        throw PreconditionError("trace_perturbation_polys: tuple must be irreducible");
    const int n = a.n();
    Mat p = x * x.adjoint();
    std::vector<MatPoly> lin;
    TracePolyReport rep;
    double scale = 1.0;
    for (const auto& m : a.mats()) {
        lin.push_back({m, m * p});
        rep.defects.push_back(x.dot(m * x));
        scale = std::max(scale, op_norm(m) * std::max(1.0, p.norm()));
    }
    for (int len = 1; len <= maxlen; ++len) {
        for (const auto& w : words_of_length(a.d(), len)) {
            MatPoly acc{identity(n)};
            for (int l : w)
                acc = poly_mul(acc, lin[l - 1]);
            TracePoly tp;
            tp.bound = len / 2 - 1;
            for (std::size_t k = 1; k < acc.size(); ++k)
                tp.coeffs.push_back(acc[k].trace());
            const double cut = tol * std::pow(scale, len);
            for (int k = static_cast<int>(tp.coeffs.size()) - 1; k >= 0; --k)
                if (std::abs(tp.coeffs[k]) > cut) {
                    tp.degree = k;
                    break;
                }
            rep.polys[w] = std::move(tp);
        }
    }
    return rep;
}

namespace {

MatrixTuple perturbed(const MatrixTuple& a, const Mat& p, cplx z)
{
    std::vector<Mat> out;
    const int n = a.n();
    for (const auto& m : a.mats())
        out.push_back(m * (identity(n) + z * p));
    return MatrixTuple(out);
}

} // namespace

LocusReport similarity_locus(const MatrixTuple& a, const Vec& x, const std::vector<cplx>& samples,
                             double tol)
{
    if (x.size() != a.n())
        throw ArityError("similarity_locus: x has the wrong length");
    if (!(x.norm() > 0.0))
        throw PreconditionError("similarity_locus: x must be nonzero");
    if (!is_irreducible(a, tol))
        throw PreconditionError("similarity_locus: tuple must be irreducible");
    const int n = a.n();
    Mat p = x * x.adjoint();
    LocusReport rep;
    for (cplx z : samples) {
        if (std::abs(z) == 0.0)
            continue;
        ++rep.tested;
        if (joint_similarity(perturbed(a, p, z), a, tol))
            rep.similar_points.push_back(z);
    }
    rep.locus_size_estimate = static_cast<int>(rep.similar_points.size());
    const bool forced = (n == 2 && rep.locus_size_estimate > 0) ||
                        2 * rep.locus_size_estimate >= n * n;
    rep.all_similar_verdict = forced && rep.locus_size_estimate > 0;
    if (rep.all_similar_verdict) {
        // the corollaries say every z gives a similar tuple; probe extra points
        for (cplx z : {cplx(0.37, 0.0), cplx(-1.3, 0.4), cplx(2.1, -0.8)})
            if (!joint_similarity(perturbed(a, p, z), a, tol))
                rep.cross_validated = false;
        TracePolyReport tr = trace_perturbation_polys(a, x, std::min(n * n, 6), tol);
        for (const auto& [w, tp] : tr.polys)
            if (tp.degree > tp.bound)
                rep.degree_bound_consistent = false;
    }
    return rep;
}

MutualSingularity mutual_singularity(const ClarkSeed& s, cplx zeta, cplx xi, double tol)
{
    MatrixTuple tz = clark_point(s, zeta, tol);
    MatrixTuple tx = clark_point(s, xi, tol);
    CoisometricRestrictions cz = coisometric_restrictions(tz, tol);
    CoisometricRestrictions cx = coisometric_restrictions(tx, tol);
    MutualSingularity r;
    r.pieces_zeta = static_cast<int>(cz.pieces.size());
    r.pieces_xi = static_cast<int>(cx.pieces.size());
    r.pure_rank_zeta = defect_rank(tz, tol);
    r.pure_rank_xi = defect_rank(tx, tol);
    for (const auto& pz : cz.pieces) {
        for (const auto& px : cx.pieces) {
            if (pz.basis.dim() != px.basis.dim())
                continue;
            auto u = joint_unitary_equivalence(pz.F, px.F, tol);
            if (u) {
                r.mutually_singular = false;
                r.witness = *u;
                return r;
            }
        }
    }
    return r;
}

NcadReport ncad_report(const ClarkSeed& s, std::vector<cplx> points, double tol)
{
    check_seed(s, tol);
    NcadReport rep;
    rep.n = s.T.n();
    if (points.empty())
        for (int k = 0; k <= rep.n; ++k)
            points.push_back(std::polar(1.0, 0.4 + 2.0 * std::numbers::pi * k / (rep.n + 1)));
    rep.points = points;
    const int np = static_cast<int>(points.size());
    rep.singular.assign(np, std::vector<bool>(np, false));
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) {
            bool sg = mutual_singularity(s, points[i], points[j], tol).mutually_singular;
            rep.singular[i][j] = rep.singular[j][i] = sg;
        }
    for (int i = 0; i < np; ++i) {
        MatrixTuple tp = clark_point(s, points[i], tol);
        rep.irreducible.push_back(is_irreducible(tp, tol));
        rep.dilation_irreducible.push_back(coisometric_restrictions(tp, tol).pieces.size() == 1);
        bool all = true;
        for (int j = 0; j < np; ++j)
            if (j != i && !rep.singular[i][j])
                all = false;
        if (all && rep.singular_to_all < 0)
            rep.singular_to_all = i;
    }
    rep.clause_holds = rep.singular_to_all >= 0;

    FMRealization b = minratreal_fm(s, tol);
    try {
        rep.inner = inner_certificate(b, tol).inner;
    } catch (const PreconditionError&) {
        rep.inner = false;
    }
    for (const auto& bk : b.B)
        if (b.m() > 0 && std::abs((b.C * bk)(0)) > tol)
            rep.level_one_nonzero = true;
    bool some_irreducible = false;
    for (bool ir : rep.irreducible)
        some_irreducible = some_irreducible || ir;
    if (rep.inner && rep.level_one_nonzero && some_irreducible) {
        bool ok = true;
        for (int i = 0; i < np; ++i) {
            if (!rep.irreducible[i])
                continue;
            for (int j = 0; j < np; ++j)
                if (j != i && !rep.singular[i][j])
                    ok = false;
        }
        rep.irreducible_clause = ok;
    }
    return rep;
}

namespace {

cplx pair_commutator_det(const MatrixTuple& f, const std::optional<Mat>& q)
{
    if (f.d() != 2)
        throw ArityError("commutator_det: needs a pair (d = 2)");
    MatrixTuple g = q ? compress(f, *q) : f;
    return commutator_det(g[0], g[1]);
}

} // namespace

std::vector<cplx> commutator_det_poly(const std::function<MatrixTuple(cplx)>& family, int deg,
                                      const std::optional<Mat>& q)
{
    const int N = deg + 1;
    std::vector<cplx> vals, nodes;
    for (int k = 0; k < N; ++k) {
        nodes.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / N));
        vals.push_back(pair_commutator_det(family(nodes.back()), q));
    }
    std::vector<cplx> c(N, 0.0);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k)
            c[j] += vals[k] * std::pow(std::conj(nodes[k]), j);
        c[j] /= static_cast<double>(N);
    }
    return c;
}

std::vector<cplx> commutator_det_fit(const std::function<MatrixTuple(cplx)>& family, int deg,
                                     const std::vector<cplx>& samples,
                                     const std::optional<Mat>& q)
{
    const int N = static_cast<int>(samples.size());
    if (N < deg + 1)
        throw PreconditionError("commutator_det_fit: need at least deg + 1 samples");
    Mat v(N, deg + 1);
    Vec rhs(N);
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j <= deg; ++j)
            v(k, j) = std::pow(samples[k], j);
        rhs(k) = pair_commutator_det(family(samples[k]), q);
    }
    Vec c = v.colPivHouseholderQr().solve(rhs);
    return std::vector<cplx>(c.data(), c.data() + c.size());
}

} // namespace ncclark

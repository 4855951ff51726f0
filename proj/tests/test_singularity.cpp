#include <doctest.h>

#include "ncclark/examples.hpp"
#include "ncclark/singularity.hpp"
#include "support.hpp"

using namespace ncclark;
using namespace testsupport;

namespace {

void check_pieces(const MatrixTuple& a, const CoisometricRestrictions& cr)
{
    for (const RestrictionPiece& p : cr.pieces) {
        Mat q = p.basis.cols;
        Mat proj = identity(a.n()) - q * q.adjoint();
        for (int j = 0; j < a.d(); ++j)
            CHECK((proj * a[j].adjoint() * q).norm() < 1e-10);
        CHECK(dist(cp_apply(p.F, identity(p.basis.dim())), identity(p.basis.dim())) < 1e-10);
        CHECK(p.invariance_residual < 1e-10);
        CHECK(p.coisometry_residual < 1e-10);
    }
}

// tr A(z)^w sampled at k + 1 points, then interpolated
std::vector<cplx> trace_poly_oracle(const MatrixTuple& a, const Vec& x, const Word& w)
{
    const int deg = static_cast<int>(w.size());
    Mat v(deg + 1, deg + 1);
    Vec rhs(deg + 1);
    const Mat xx = x * x.adjoint();
    for (int i = 0; i <= deg; ++i) {
        cplx z = std::polar(1.0, 0.3 + 2.0 * std::numbers::pi * i / (deg + 1));
        MatrixTuple az = a;
        for (int j = 0; j < a.d(); ++j)
            az[j] = a[j] * (identity(a.n()) + z * xx);
        for (int k = 0; k <= deg; ++k)
            v(i, k) = std::pow(z, k);
        rhs(i) = word_eval(az, w).trace();
    }
    Vec c = v.fullPivLu().solve(rhs);
    // drop the constant, shift down by one
    return std::vector<cplx>(c.data() + 1, c.data() + c.size());
}

} // namespace

TEST_CASE("coisometric_restrictions")
{
    Rng rng(81);
    MatrixTuple pure = rng.row_contraction(2, 3, 0.7);
    CoisometricRestrictions p = coisometric_restrictions(pure);
    CHECK(p.ktilde.dim() == 0);
    CHECK(p.pieces.empty());

    MatrixTuple c = rng.row_coisometry(2, 3);
    REQUIRE(is_irreducible(c));
    CoisometricRestrictions full = coisometric_restrictions(c);
    CHECK(full.ktilde.dim() == 3);
    REQUIRE(full.pieces.size() == 1);
    CHECK(full.pieces[0].basis.dim() == 3);
    check_pieces(c, full);

    MatrixTuple t = clark_point(examples::four_dim(), -1.0);
    CoisometricRestrictions f4 = coisometric_restrictions(t);
    REQUIRE(f4.pieces.size() == 1);
    Vec v = (unit_vec(4, 1) + unit_vec(4, 3)).normalized();
    CHECK((f4.pieces[0].basis.projector() * v - v).norm() < 1e-10);
    check_pieces(t, f4);
}

TEST_CASE("restriction pieces are invariant co-isometries")
{
    Rng rng(82);
    for (int k = 0; k < 10; ++k) {
        // co-isometric block plus a strict block, mixed by a unitary
        MatrixTuple a = direct_sum(rng.row_coisometry(2, rng.integer(1, 2)), rng.row_contraction(2, 2, 0.5));
        a = similarity_transform(a, rng.unitary(a.n()));
        CoisometricRestrictions cr = coisometric_restrictions(a);
        CHECK(cr.ktilde.dim() >= 1);
        check_pieces(a, cr);
    }
}

TEST_CASE("clark_point")
{
    Rng rng(83);
    ClarkSeed s = examples::random_coisometric(rng, 2, 3);
    cplx z = rng.unit_circle();
    MatrixTuple t = clark_point(s, z);
    MatrixTuple fam = clark_family(s, std::conj(z));
    for (int j = 0; j < 2; ++j)
        CHECK(dist(t[j], fam[j].adjoint()) == 0.0);
}

TEST_CASE("boundary_eigencheck")
{
    ClarkSeed diag = examples::diagonal_pair();
    for (cplx z : circle(6, 0.35)) {
        EigencheckReport r = boundary_eigencheck(diag, z);
        CHECK(r.holds);
        for (const PieceEigen& p : r.pieces)
            if (p.evaluated)
                CHECK(p.distance < 1e-8);
    }

    for (cplx z : circle(4, 0.1)) {
        EigencheckReport r = boundary_eigencheck(fm_variable(1, 1), MatrixTuple({Mat::Constant(1, 1, z)}), z);
        CHECK(r.holds);
    }

    // two pieces at z = 1 give multiplicity at least two
    EigencheckReport two = boundary_eigencheck(diag, 1.0);
    CHECK(two.pieces.size() == 2);
    CHECK(two.geometric_multiplicity >= 2);
}

TEST_CASE("boundary eigenvalues on random co-isometric seeds")
{
    Rng rng(84);
    for (int k = 0; k < 10; ++k) {
        ClarkSeed s = examples::random_coisometric(rng, 2, rng.integer(1, 3));
        if (!cyclicity_report(s).tstar_cyclic)
            continue;
        cplx z = rng.unit_circle();
        EigencheckReport r = boundary_eigencheck(s, z);
        CHECK(r.holds);
        CHECK(r.geometric_multiplicity >= static_cast<int>(r.pieces.size()));
    }
}

TEST_CASE("det_splitting")
{
    Rng rng(85);
    ClarkSeed e1 = examples::shift_pair(unit_vec(2, 0));
    DetSplitting zero = det_splitting(e1, rng.unit_circle(), MatrixTuple::zeros(2, 2));
    CHECK(std::abs(zero.lhs - 1.0) < 1e-14);
    CHECK(std::abs(zero.rhs - 1.0) < 1e-14);

    // here T(l)^* = (l E21, E12) and T(0)^* is nilpotent, so by a Schur
    // complement both sides equal det(I - conj(zeta) Z2 Z1)
    for (int k = 0; k < 10; ++k) {
        cplx zeta = rng.unit_circle();
        MatrixTuple z = rng.row_contraction(2, 3, 0.9);
        DetSplitting d = det_splitting(e1, zeta, z);
        cplx expect = det(identity(3) - std::conj(zeta) * z[1] * z[0]);
        CHECK(d.rel_error < 1e-8);
        CHECK(std::abs(d.lhs - expect) < 1e-10);
        CHECK(std::abs(d.rhs - expect) < 1e-10);
    }

    // d = 1: T = u on C^1 and x = 1
    cplx u = rng.unit_circle(), zeta = rng.unit_circle(), z(0.3, -0.2);
    ClarkSeed one{MatrixTuple({Mat::Constant(1, 1, u)}), Vec::Ones(1), 0.0};
    DetSplitting d1 = det_splitting(one, zeta, MatrixTuple({Mat::Constant(1, 1, z)}));
    FMRealization b = minratreal_fm(one);
    cplx bz = transfer_eval(b, MatrixTuple({Mat::Constant(1, 1, z)}))(0, 0);
    CHECK(std::abs(d1.rhs - (1.0 - std::conj(zeta) * bz)) < 1e-13);
    CHECK(d1.rel_error < 1e-12);
}

TEST_CASE("det splitting on random draws")
{
    Rng rng(86);
    int done = 0;
    for (int k = 0; k < 50; ++k) {
        ClarkSeed s = examples::random_coisometric(rng, rng.integer(1, 3), rng.integer(1, 3));
        if (!cyclicity_report(s).tstar_cyclic)
            continue;
        DetSplitting d = det_splitting(s, rng.unit_circle(), rng.row_contraction(s.T.d(), rng.integer(1, 3), 0.95));
        CHECK(d.rel_error < 1e-8);
        ++done;
    }
    CHECK(done >= 40);
}

TEST_CASE("boundary_limit")
{
    // r = 0 in the grid: |y^* v|^2 (1 - |b(0)|^2)
    Rng rng(87);
    ClarkSeed e1 = examples::shift_pair(unit_vec(2, 0));
    FMRealization b = minratreal_fm(e1);
    MatrixTuple t = clark_point(e1, 1.0);
    Mat bt = transfer_eval(b, transpose_tuple(t)).transpose();
    Eigen::ComplexEigenSolver<Mat> es(bt);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k)
        if (std::abs(es.eigenvalues()(k) - 1.0) < std::abs(es.eigenvalues()(best) - 1.0))
            best = k;
    Vec v = es.eigenvectors().col(best).normalized();
    Vec y = rng.vector(2);
    BoundaryLimit r0 = boundary_limit(b, t, y, v, {0.0, 0.5});
    CHECK(std::abs(r0.kernel_norm_sq[0] - std::norm(y.dot(v))) < 1e-12);

    BoundaryLimit bl = boundary_limit(b, t, y, v);
    CHECK(bl.r_grid.size() == 20);
    CHECK(std::abs(bl.r_grid.back() - (1.0 - std::pow(2.0, -20))) < 1e-15);
    CHECK(bl.last_increment < 1e-4);
    CHECK(std::isfinite(bl.kernel_norm_bound));
    CHECK(bl.kernel_norm_bound < 10.0 * y.squaredNorm());

    FMRealization z = fm_variable(1, 1);
    MatrixTuple a({Mat::Ones(1, 1)});
    BoundaryLimit sc = boundary_limit(z, a, Vec::Ones(1), Vec::Ones(1));
    for (std::size_t k = 0; k < sc.r_grid.size(); ++k)
        CHECK(std::abs(sc.values[k] - sc.r_grid[k]) < 1e-14);
    CHECK(std::abs(sc.values.back() - 1.0) < 1e-5);

    Vec bad = unit_vec(2, 0);
    if ((bt * bad - bad.dot(bt * bad) * bad).norm() > 1e-6)
        CHECK_THROWS_AS(boundary_limit(b, t, y, bad), PreconditionError);
}

TEST_CASE("trace_perturbation_polys")
{
    Rng rng(88);
    // x = e1 and A_j with zero (1,1) entry: <A_j x, x> = 0
    MatrixTuple a = rng.tuple(2, 3);
    for (int j = 0; j < 2; ++j)
        a[j](0, 0) = 0.0;
    Vec x = unit_vec(3, 0);
    TracePolyReport r = trace_perturbation_polys(a, x, 3);
    for (cplx dfc : r.defects)
        CHECK(std::abs(dfc) < 1e-14);
    for (const auto& [w, p] : r.polys)
        if (w.size() <= 3)
            CHECK(p.degree <= 0);

    MatrixTuple g = rng.tuple(2, 3);
    Vec y = rng.unit_vector(3);
    TracePolyReport rg = trace_perturbation_polys(g, y, 4);
    for (int j = 1; j <= 2; ++j) {
        const TracePoly& p = rg.polys.at({j});
        REQUIRE(!p.coeffs.empty());
        CHECK(std::abs(p.coeffs[0] - y.dot(g[j - 1] * y)) < 1e-12);
        CHECK(p.degree == 0);
    }
    for (const auto& [w, p] : rg.polys) {
        std::vector<cplx> o = trace_poly_oracle(g, y, w);
        for (std::size_t k = 0; k < o.size(); ++k) {
            cplx mine = k < p.coeffs.size() ? p.coeffs[k] : 0.0;
            CHECK(std::abs(mine - o[k]) < 1e-9);
        }
        CHECK(p.bound == static_cast<int>(w.size()) / 2 - 1);
    }
}

TEST_CASE("similarity_locus")
{
    // the 2 x 2 family as perturbations of its point at -1
    ClarkSeed diag = examples::diagonal_pair();
    const cplx z0 = -1.0;
    MatrixTuple a = clark_family(diag, z0);
    std::vector<cplx> samples;
    for (cplx z : circle(10, 0.15))
        samples.push_back((z - z0) / z0);
    LocusReport lr = similarity_locus(a, diag.x, samples);
    CHECK(lr.similar_points.empty());
    CHECK(lr.cross_validated);
    CHECK(lr.degree_bound_consistent);

    // nonzero defect <A_j x, x>: no similar point at all
    Rng rng(89);
    MatrixTuple g = rng.tuple(2, 2);
    Vec x = rng.unit_vector(2);
    REQUIRE(std::abs(x.dot(g[0] * x)) > 1e-3);
    LocusReport lg = similarity_locus(g, x, circle(8, 0.5));
    CHECK(lg.similar_points.empty());
    CHECK_FALSE(lg.all_similar_verdict);

    CHECK_THROWS_AS(similarity_locus(MatrixTuple({unit_mat(2, 0, 0), unit_mat(2, 1, 1)}), x, circle(3, 0.0)),
                    PreconditionError);
}

TEST_CASE("mutual_singularity")
{
    ClarkSeed diag = examples::diagonal_pair();
    cplx z = std::polar(1.0, 0.8);
    CHECK_FALSE(mutual_singularity(diag, z, z).mutually_singular);
    auto pts = circle(3, 0.25);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            CHECK(mutual_singularity(diag, pts[i], pts[j]).mutually_singular);

    MutualSingularity same = mutual_singularity(diag, 1.0, 1.0);
    CHECK(same.pieces_zeta == 2);
    CHECK(same.pure_rank_zeta == 0);
}

TEST_CASE("ncad_report")
{
    ClarkSeed diag = examples::diagonal_pair();
    NcadReport r = ncad_report(diag, circle(3, 0.6));
    CHECK(r.n == 2);
    CHECK(r.clause_holds);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(r.singular[i][j] == (i != j));

    NcadReport f = ncad_report(examples::four_dim(), {1.0, -1.0, std::polar(1.0, 0.9)});
    CHECK(f.clause_holds);
    CHECK_FALSE(f.dilation_irreducible[0]);
    CHECK(f.dilation_irreducible[1]);
    CHECK(f.dilation_irreducible[2]);
    CHECK_FALSE(f.irreducible[0]);

    Rng rng(90);
    for (int k = 0; k < 5; ++k) {
        ClarkSeed s = examples::random_coisometric(rng, 2, rng.integer(2, 3));
        if (!cyclicity_report(s).tstar_cyclic)
            continue;
        NcadReport g = ncad_report(s);
        CHECK(static_cast<int>(g.points.size()) == g.n + 1);
        CHECK(g.clause_holds);
        CHECK(g.singular_to_all >= 0);
    }
}

TEST_CASE("commutator_det_poly")
{
    ClarkSeed diag = examples::diagonal_pair();
    auto c = commutator_det_poly([&](cplx z) { return clark_family(diag, z); }, 3);
    // direct determinant at a test point through the fitted polynomial
    cplx z(0.4, 1.3), val = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        val += c[k] * std::pow(z, static_cast<int>(k));
    MatrixTuple t = clark_family(diag, z);
    CHECK(std::abs(val - det(t[0] * t[1] - t[1] * t[0])) < 1e-12);

    Rng rng(91);
    Mat m = rng.matrix(2, 2);
    auto zero = commutator_det_poly([&](cplx w) { return MatrixTuple({w * m, m * m + w * identity(2)}); }, 3);
    for (cplx v : zero)
        CHECK(std::abs(v) < 1e-12);

    std::vector<cplx> samples{0.1, 0.5, cplx(0, 1), -0.7, cplx(1, 1), 2.0};
    auto fit = commutator_det_fit([&](cplx z) { return clark_family(diag, z); }, 3, samples);
    for (std::size_t k = 0; k < fit.size(); ++k)
        CHECK(std::abs(fit[k] - c[k]) < 1e-10);
}

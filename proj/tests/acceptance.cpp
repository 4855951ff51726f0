// Acceptance criteria.  One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ncclark/examples.hpp"
#include "ncclark/singularity.hpp"
#include "ncclark/sl_det.hpp"

using namespace ncclark;
namespace ex = ncclark::examples;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body)
{
    Outcome o;
    try {
        o = body();
    } catch (const Error& e) {
        o = {false, fmt::format("{}: {}", e.kind(), e.what())};
    }
    if (!o.pass)
        ++failures;
    fmt::print("[{}] {:2d} {}: {}\n", o.pass ? "PASS" : "FAIL", id, title, o.detail);
    std::fflush(stdout);
}

Vec unit(int n, int i)
{
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    return v;
}

std::vector<cplx> circle(int count, double offset)
{
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k)
        out.push_back(std::polar(1.0, offset + 2.0 * std::numbers::pi * k / count));
    return out;
}

double max_err(const FMRealization& f, const std::function<Mat(const MatrixTuple&)>& g, Rng& rng,
               int count, int n)
{
    double e = 0.0;
    for (int k = 0; k < count; ++k) {
        MatrixTuple z = rng.row_contraction(f.d(), n, rng.uniform(0.1, 0.99));
        e = std::max(e, op_norm(transfer_eval(f, z) - g(z)));
    }
    return e;
}

// random FM with A scaled to the requested spectral radius, then minimized
FMRealization random_fm(Rng& rng, int d, int m, double spr)
{
    FMRealization f;
    MatrixTuple a = rng.tuple(d, m);
    double s = joint_spectral_radius(a);
    f.A = scale_tuple(a, s > 0.0 ? spr / s : 1.0);
    for (int j = 0; j < d; ++j)
        f.B.push_back(rng.vector(m));
    f.C = rng.vector(m).transpose();
    f.D = rng.complex_normal();
    return minimize(f);
}

// sum over |w| = k of |r_w|^2 by pushing B B^* through X -> sum A X A^*
std::vector<double> level_sums(const FMRealization& f, int kmax)
{
    std::vector<double> s(kmax + 1, 0.0);
    s[0] = std::norm(f.D);
    if (f.m() == 0)
        return s;
    Mat y = Mat::Zero(f.m(), f.m());
    for (const auto& b : f.B)
        y += b * b.adjoint();
    for (int k = 1; k <= kmax; ++k) {
        s[k] = std::real((f.C * y * f.C.adjoint())(0, 0));
        Mat next = Mat::Zero(f.m(), f.m());
        for (int j = 0; j < f.d(); ++j)
            next += f.A[j] * y * f.A[j].adjoint();
        y = next;
    }
    return s;
}

double gram_defect(const FMRealization& f, int N)
{
    Mat g = truncated_gram(f, N);
    return (g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

} // namespace

int main()
{
    const double s2 = std::sqrt(2.0);

    criterion(1, "shift seed x = e1 gives Z2 Z1, x = e2 gives Z1 Z2", [&] {
        Rng rng(101);
        double e1 = max_err(minratreal_fm(ex::shift_pair(unit(2, 0))),
                            [](const MatrixTuple& z) { return Mat(z[1] * z[0]); }, rng, 20, 3);
        double e2 = max_err(minratreal_fm(ex::shift_pair(unit(2, 1))),
                            [](const MatrixTuple& z) { return Mat(z[0] * z[1]); }, rng, 20, 3);
        return Outcome{e1 < 1e-10 && e2 < 1e-10,
                       fmt::format("max abs error {:.2e} / {:.2e} (tol 1e-10)", e1, e2)};
    });

    criterion(2, "anti-commuting seeds: closed forms and inner", [&] {
        Rng rng(102);
        FMRealization f = minratreal_fm(ex::anticommuting(1.0 / s2, 1.0 / s2));
        FMRealization g = minratreal_fm(ex::anticommuting(0.0, 1.0));
        double ef = max_err(f, [](const MatrixTuple& z) {
            return Mat(0.5 * (z[0] + z[1]) * (z[0] - z[1]));
        }, rng, 20, 3);
        double eg = max_err(g, [s2](const MatrixTuple& z) {
            Mat p = (identity(z.n()) - z[0] / s2).inverse();
            return Mat(-0.5 * z[1] * p * z[1] - z[0] / s2);
        }, rng, 20, 3);
        bool in_f = inner_certificate(f).inner, in_g = inner_certificate(g).inner;
        return Outcome{ef < 1e-10 && eg < 1e-10 && in_f && in_g,
                       fmt::format("errors {:.2e} / {:.2e} (tol 1e-10), inner {} / {}", ef, eg, in_f, in_g)};
    });

    criterion(3, "shift seed x = (1,1)/sqrt 2: inner and Schur complement formula", [&] {
        Rng rng(103);
        FMRealization f = minratreal_fm(ex::shift_pair(Vec::Ones(2) / s2));
        InnerCertificate c = inner_certificate(f);
        double e = max_err(f, [](const MatrixTuple& z) {
            const Mat i = identity(z.n());
            Mat p = (i + z[0] / 2.0).inverse();
            Mat si = (i + z[1] / 2.0 - 0.25 * z[1] * p * z[0]).inverse();
            return Mat(0.5 * si * z[1] + p * (z[0] / 4.0) * si * z[1] + si * (z[1] / 4.0) * p * z[0] +
                       0.5 * p * z[0] + 0.125 * p * z[0] * si * z[1] * p * z[0]);
        }, rng, 10, 3);
        bool ok = c.inner && std::abs(c.h2 - 1.0) < 1e-10 && c.phi_norm < 1e-10 && e < 1e-8;
        return Outcome{ok, fmt::format("h2 - 1 = {:.2e}, |phi| = {:.2e}, formula error {:.2e} (tol 1e-8)",
                                       c.h2 - 1.0, c.phi_norm, e)};
    });

    criterion(4, "Clark family commutator determinants and traces", [&] {
        const ClarkSeed diag = ex::diagonal_pair(), four = ex::four_dim();
        Mat q = Mat::Zero(4, 3);
        q(1, 0) = q(2, 1) = q(3, 2) = 1.0;
        auto c2 = commutator_det_poly([&](cplx z) { return clark_family(diag, z); }, 4);
        auto c4 = commutator_det_poly([&](cplx w) { return clark_family(four, 4.0 * w + 1.0); }, 4, q);
        // z (z - 1)^2 / 4 and -2 w^2 (2w + 1) expanded by hand
        const std::vector<cplx> w2{0.0, 0.25, -0.5, 0.25, 0.0}, w4{0.0, 0.0, -2.0, -4.0, 0.0};
        double ec = 0.0;
        for (int k = 0; k <= 4; ++k)
            ec = std::max({ec, std::abs(c2[k] - w2[k]), std::abs(c4[k] - w4[k])});
        double et = 0.0;
        for (cplx z : circle(16, 0.05)) {
            et = std::max(et, std::abs(clark_family(diag, z)[0].trace() - (z + 1.0) / 2.0));
            et = std::max(et, std::abs(compress(clark_family(four, z), q)[0].trace() - (z - 1.0) / 2.0));
        }
        return Outcome{ec < 1e-12 && et < 1e-12,
                       fmt::format("coefficient error {:.2e}, trace error {:.2e} (tol 1e-12)", ec, et)};
    });

    criterion(5, "characteristic polynomial through the pencil", [&] {
        Rng rng(105);
        double worst = 0.0;
        int count = 0;
        while (count < 100) {
            int d = rng.integer(1, 3), m = rng.integer(1, 5), n = rng.integer(1, 4);
            FMRealization f = random_fm(rng, d, m, rng.uniform(0.2, 1.5));
            if (f.m() == 0)
                continue;
            ++count;
            MatrixTuple z = rng.row_contraction(d, n, 0.5 / std::max(1.0, joint_spectral_radius(f.A)));
            Mat r = transfer_eval(f, z);
            for (int k = 0; k < 5; ++k) {
                cplx l = std::polar(rng.uniform(0.3, 3.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
                cplx want = ((l + f.D) * identity(n) - r).determinant();
                cplx got = char_poly_via_pencil(f, z, l);
                worst = std::max(worst, std::abs(got - want) / std::max(std::abs(want), 1e-300));
            }
        }
        return Outcome{worst < 1e-8, fmt::format("100 instances x 5 lambda, max relative error {:.2e} (tol 1e-8)", worst)};
    });

    criterion(6, "boundary eigenvalues and geometric multiplicity", [&] {
        double worst = 0.0;
        int unevaluated = 0, checked = 0;
        for (const ClarkSeed& s : {ex::diagonal_pair(), ex::four_dim()}) {
            for (cplx z : circle(16, 0.15)) {
                EigencheckReport r = boundary_eigencheck(s, z);
                for (const auto& p : r.pieces) {
                    ++checked;
                    if (!p.evaluated)
                        ++unevaluated;
                    else
                        worst = std::max(worst, p.distance);
                }
            }
        }
        EigencheckReport two = boundary_eigencheck(ex::two_block(), 1.0);
        int np = static_cast<int>(two.pieces.size());
        bool gm = np >= 2 && two.geometric_multiplicity >= np;
        bool ok = worst < 1e-8 && unevaluated == 0 && checked > 0 && gm;
        return Outcome{ok, fmt::format("{} pieces, {} unevaluated, max distance {:.2e} (tol 1e-8); "
                                       "two-block: {} pieces, multiplicity {}",
                                       checked, unevaluated, worst, np, two.geometric_multiplicity)};
    });

    criterion(7, "determinant splitting", [&] {
        Rng rng(107);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            int d = rng.integer(1, 3), m = rng.integer(1, 4), n = rng.integer(1, 3);
            ClarkSeed s{rng.row_contraction(d, m, rng.uniform(0.5, 1.0)), rng.unit_vector(m), 0.0};
            cplx zeta = rng.unit_circle();
            MatrixTuple z = rng.row_contraction(d, n, rng.uniform(0.1, 0.95));
            // independent: det(I - Z (x) T(0)^*) det(I - conj(zeta) b(Z)) with b from the matrices
            std::vector<Mat> t0, tl;
            Mat pr = s.x * s.x.adjoint();
            for (int j = 0; j < d; ++j) {
                Mat ts = s.T[j].adjoint();
                t0.push_back(ts * (identity(m) - pr));
                tl.push_back(ts * (identity(m) - pr + std::conj(zeta) * pr));
            }
            DetSplitting r = det_splitting(s, zeta, z);
            cplx lhs = pencil(MatrixTuple(tl), z).determinant();
            cplx rhs0 = pencil(MatrixTuple(t0), z).determinant();
            double own = std::abs(lhs - r.lhs) / std::max(std::abs(lhs), 1e-300);
            double split = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), std::abs(r.rhs));
            double base = std::abs(rhs0 * (identity(n) - std::conj(zeta) * cayley(s, z)).determinant() - r.rhs) /
                          std::max(std::abs(r.rhs), 1e-300);
            worst = std::max({worst, own, split, base});
        }
        return Outcome{worst < 1e-8, fmt::format("50 draws, max relative error {:.2e} (tol 1e-8)", worst)};
    });

    criterion(8, "Fock membership agrees with coefficient decay", [&] {
        Rng rng(108);
        int disagree = 0, members = 0;
        double sep = 1.0;
        for (int k = 0; k < 50; ++k) {
            int d = rng.integer(1, 3), m = rng.integer(1, 5);
            double target = k % 2 == 0 ? rng.uniform(0.2, 0.8) : rng.uniform(1.2, 2.0);
            FMRealization f = random_fm(rng, d, m, target);
            Membership mb = fock_membership(f);
            auto s = level_sums(f, 20);
            bool decays = s[20] == 0.0 || (s[10] > 0.0 && std::pow(s[20] / s[10], 0.1) < 1.0);
            if (s[10] > 0.0 && s[20] > 0.0)
                sep = std::min(sep, std::abs(std::pow(s[20] / s[10], 0.1) - 1.0));
            members += mb.member;
            disagree += mb.member != decays;
        }
        return Outcome{disagree == 0,
                       fmt::format("50 fms ({} members), {} disagreements, min ratio gap {:.3f}", members, disagree, sep)};
    });

    criterion(9, "spectral radius: eigen method vs Beurling k = 200, similarity invariance", [&] {
        Rng rng(109);
        double gap = 0.0, sim = 0.0;
        int over = 0;
        for (int k = 0; k < 50; ++k) {
            int d = rng.integer(1, 3), n = rng.integer(1, 4);
            MatrixTuple a = rng.tuple(d, n);
            double e = joint_spectral_radius(a);
            double g = std::abs(e - beurling_iterate(a, 200));
            gap = std::max(gap, g);
            over += g >= 1e-3;
            Vec sv(n);
            for (int i = 0; i < n; ++i)
                sv(i) = std::exp(rng.uniform(-1.0, 1.0));
            Mat s = rng.unitary(n) * sv.asDiagonal() * rng.unitary(n);
            sim = std::max(sim, std::abs(joint_spectral_radius(similarity_transform(a, s)) - e));
        }
        return Outcome{gap < 1e-3 && sim < 1e-8,
                       fmt::format("max |eig - beurling| {:.2e} ({} of 50 at or above 1e-3), "
                                   "max similarity change {:.2e} (tol 1e-8)", gap, over, sim)};
    });

    criterion(10, "inner certificate vs truncated Gram and row co-isometry", [&] {
        Rng rng(110);
        int gram_mismatch = 0, inner_count = 0, tested = 0;
        double worst_in = 0.0, best_out = 1e300;
        for (int k = 0; k < 20; ++k) {
            int d = rng.integer(1, 3), m = rng.integer(1, 4);
            FMRealization f;
            if (k < 10) {
                f = minratreal_fm({rng.row_coisometry(d, m), rng.unit_vector(m) * rng.uniform(0.5, 2.0),
                                   rng.uniform(-1.0, 1.0)});
            } else {
                FMRealization b = minratreal_fm(ex::random_coisometric(rng, d, m));
                f = fm_scale(b, rng.uniform(0.3, 0.95));
                f.minimal = b.minimal;
            }
            bool cert = inner_certificate(f).inner;
            double gd = gram_defect(f, 4);
            bool gram = gd < 1e-9;
            if (cert)
                worst_in = std::max(worst_in, gd);
            else
                best_out = std::min(best_out, gd);
            gram_mismatch += cert != gram;
            inner_count += cert;
        }
        int coiso_mismatch = 0;
        for (int k = 0; k < 20; ++k) {
            int d = rng.integer(1, 3), m = rng.integer(1, 4);
            ClarkSeed s = k % 2 == 0
                              ? ClarkSeed{rng.row_coisometry(d, m), rng.unit_vector(m) * rng.uniform(0.5, 2.0),
                                          rng.uniform(-1.0, 1.0)}
                              : ClarkSeed{rng.row_contraction(d, m, rng.uniform(0.2, 0.9)),
                                          rng.unit_vector(m) * rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)};
            if (!cyclicity_report(s).tstar_cyclic)
                continue;
            ++tested;
            coiso_mismatch += inner_certificate(minratreal_fm(s)).inner != is_row_coisometry(s.T);
        }
        bool ok = gram_mismatch == 0 && coiso_mismatch == 0 && inner_count == 10 && tested == 20;
        return Outcome{ok, fmt::format("Gram battery: {} inner of 20, {} mismatches (inner defect <= {:.1e}, "
                                       "others >= {:.1e}); seeds: {} cyclic of 20, {} mismatches",
                                       inner_count, gram_mismatch, worst_in, best_out, tested, coiso_mismatch)};
    });

    criterion(11, "mutual singularity on the 2 x 2 family and the n + 1 point clause", [&] {
        const ClarkSeed diag = ex::diagonal_pair();
        auto pts = circle(8, 0.3);
        int pairs = 0, singular = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                ++pairs;
                singular += mutual_singularity(diag, pts[i], pts[j]).mutually_singular;
            }
        Rng rng(111);
        int clause = 0;
        for (int k = 0; k < 10; ++k) {
            int m = rng.integer(2, 4);
            clause += ncad_report(ex::random_coisometric(rng, 2, m)).clause_holds;
        }
        return Outcome{singular == pairs && clause == 10,
                       fmt::format("{}/{} pairs singular; clause holds on {}/10 seeds", singular, pairs, clause)};
    });

    criterion(12, "trace condition and constant determinant", [&] {
        FMRealization f = expr_to_fm(parse("(1-x*y)*inv(1-y*x)", 2), 2);
        auto pts = sl_samples(f, 20, 112);
        SlCheck c = sl_condition_check(f, pts, 6, 1e-9);
        DetProbe p = det_constancy_direct(f, pts);
        bool sl_ok = c.holds && c.max_residual < 1e-9 && p.evaluated == 60 && p.max_dev < 1e-10;

        FMRealization b = rescale(expr_to_fm(parse("(x*y-y*x)*inv(2-x*y-y*x)", 2), 2), 0.5);
        Rng rng(113);
        double hdev = 0.0;
        for (int k = 0; k < 60; ++k) {
            MatrixTuple z = rng.row_contraction(2, 2 + k % 3, rng.uniform(0.1, 0.95));
            Mat bz = transfer_eval(b, z), i = identity(z.n());
            hdev = std::max(hdev, std::abs(((i + bz) * (i - bz).inverse()).determinant() - 1.0));
        }
        bool h_ok = hdev < 1e-9;

        int controls_failing = 0;
        for (const char* text : {"2", "1 + x", "(1 - x*y)*inv(1 - 0.5*y*x)"}) {
            FMRealization g = expr_to_fm(parse(text, 2), 2);
            auto gp = sl_samples(g, 20, 114);
            SlCheck gc = sl_condition_check(g, gp, 6, 1e-9);
            DetProbe gd = det_constancy_direct(g, gp);
            controls_failing += !gc.holds && !(gd.max_dev < 1e-10);
        }
        return Outcome{sl_ok && h_ok && controls_failing == 3,
                       fmt::format("residual {:.2e} (tol 1e-9), |det - 1| {:.2e} (tol 1e-10), Herglotz "
                                   "|det - 1| {:.2e} (tol 1e-9), {}/3 controls fail both",
                                   c.max_residual, p.max_dev, hdev, controls_failing)};
    });

    criterion(13, "Herglotz positivity and contractive Cayley transform", [&] {
        Rng rng(113);
        double min_eig = 1e300, max_norm = 0.0;
        for (int k = 0; k < 200; ++k) {
            int d = rng.integer(1, 3), m = rng.integer(1, 4), n = rng.integer(1, 4);
            ClarkSeed s = k % 2 == 0 ? ex::random_contractive(rng, d, m)
                                     : ClarkSeed{rng.row_coisometry(d, m), rng.unit_vector(m) * rng.uniform(0.3, 2.0),
                                                 rng.uniform(-2.0, 2.0)};
            MatrixTuple z = rng.row_contraction(d, n, rng.uniform(0.05, 0.999));
            Mat h = herglotz_eval(s, z);
            Mat re = 0.5 * (h + h.adjoint());
            min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat>(re).eigenvalues().minCoeff());
            max_norm = std::max(max_norm, op_norm(cayley(s, z)));
        }
        return Outcome{min_eig >= -1e-10 && max_norm <= 1.0 + 1e-9,
                       fmt::format("min eigenvalue of Re H {:.3e} (>= -1e-10), max |b(Z)| {:.12f} (<= 1 + 1e-9)",
                                   min_eig, max_norm)};
    });

    criterion(14, "Moebius normalization", [&] {
        Rng rng(114);
        double worst = 0.0;
        int changed = 0, inner_count = 0;
        for (int k = 0; k < 20; ++k) {
            int d = rng.integer(1, 3), m = rng.integer(1, 4);
            ClarkSeed s = k % 2 == 0 ? ClarkSeed{rng.row_coisometry(d, m), rng.unit_vector(m) * rng.uniform(0.4, 2.0),
                                                 rng.uniform(-1.5, 1.5)}
                                     : ex::random_contractive(rng, d, m);
            FMRealization f = minratreal_fm(s);
            MoebiusResult r = moebius_normalize(f);
            FMRealization g = r.fm0.minimal ? r.fm0 : minimize(r.fm0);
            worst = std::max(worst, std::abs(g.D));
            bool a = inner_certificate(f).inner, b = inner_certificate(g).inner;
            inner_count += a;
            changed += a != b;
        }
        return Outcome{worst < 1e-10 && changed == 0,
                       fmt::format("max |b0(0)| {:.2e} (tol 1e-10), {} inner of 20, {} verdicts changed",
                                   worst, inner_count, changed)};
    });

    fmt::print("{} of 14 criteria failed\n", failures);
    return failures;
}

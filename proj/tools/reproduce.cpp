#include "reproduce.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "ncclark/examples.hpp"
#include "ncclark/singularity.hpp"
#include "ncclark/sl_det.hpp"

namespace ncclark::tools {

namespace {

using examples::anticommuting;
using examples::diagonal_pair;
using examples::four_dim;
using examples::shift_pair;

Vec e(int n, int i)
{
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    return v;
}

class Table {
public:
    void add(const std::string& name, const std::function<double()>& residual, double tol)
    {
        Json row{{"name", name}, {"tolerance", tol}};
        try {
            double r = residual();
            row["residual"] = r;
            row["pass"] = std::isfinite(r) && r <= tol;
        } catch (const Error& err) {
            row["residual"] = Json();
            row["pass"] = false;
            row["error"] = Json{{"kind", err.kind()}, {"message", err.what()}};
        }
        all_ = all_ && row["pass"].get<bool>();
        rows_.push_back(row);
    }
    // residual 0 when the predicate holds, 1 otherwise
    void check(const std::string& name, const std::function<bool()>& pred)
    {
        add(name, [&] { return pred() ? 0.0 : 1.0; }, 0.0);
    }
    Json json() const { return Json{{"checks", rows_}, {"all_pass", all_}}; }

private:
    Json rows_ = Json::array();
    bool all_ = true;
};

double max_transfer_error(const FMRealization& f, const std::function<Mat(const MatrixTuple&)>& g,
                          Rng& rng, int count, int n)
{
    double err = 0.0;
    for (int k = 0; k < count; ++k) {
        MatrixTuple z = rng.row_contraction(f.d(), n, 0.9);
        err = std::max(err, op_norm(transfer_eval(f, z) - g(z)));
    }
    return err;
}

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d)
{
    Mat m(a.rows() + c.rows(), a.cols() + b.cols());
    m << a, b, c, d;
    return m;
}

// the perturbed 2 x 2 pair written out entrywise
MatrixTuple diagonal_family_closed(cplx z)
{
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    a(0, 0) = (z + 1.0) / 2.0;
    a(0, 1) = (z - 1.0) / 2.0;
    b(1, 0) = (z - 1.0) / 2.0;
    b(1, 1) = (z + 1.0) / 2.0;
    return MatrixTuple({a, b});
}

MatrixTuple four_family_closed(cplx z)
{
    const cplx w = (z - 1.0) / 4.0;
    Mat a = Mat::Zero(4, 4), b = Mat::Zero(4, 4);
    for (int j = 0; j < 4; ++j) {
        a(1, j) = w;
        a(3, j) = w;
        b(1, j) = w;
        b(2, j) = w;
    }
    a(1, 0) += 1.0;
    a(3, 2) += 1.0;
    b(1, 1) += 1.0;
    b(2, 3) += 1.0;
    return MatrixTuple({a, b});
}

double coeff_error(const std::vector<cplx>& got, const std::vector<cplx>& want)
{
    double err = 0.0;
    for (std::size_t k = 0; k < std::max(got.size(), want.size()); ++k) {
        cplx g = k < got.size() ? got[k] : 0.0;
        cplx w = k < want.size() ? want[k] : 0.0;
        err = std::max(err, std::abs(g - w));
    }
    return err;
}

double subspace_gap(const SubspaceBasis& s, const Vec& v)
{
    Vec u = v.normalized();
    return (u - s.projector() * u).norm();
}

std::vector<cplx> circle_points(int count, double offset)
{
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k)
        out.push_back(std::polar(1.0, offset + 2.0 * std::numbers::pi * k / count));
    return out;
}

} // namespace

Json reproduce_examples(std::uint64_t seed)
{
    Rng rng(seed);
    Table t;
    const double s2 = std::sqrt(2.0);

    const ClarkSeed ex_e1 = shift_pair(e(2, 0));
    const ClarkSeed ex_e2 = shift_pair(e(2, 1));

    t.add("shift seed: pencil of T*(I - xx*) is [[I, -Z2], [0, I]] and inverts to [[I, Z2], [0, I]]",
          [&] {
              MatrixTuple a = clark_family(ex_e1, 0.0);
              MatrixTuple z = rng.row_contraction(2, 3, 0.9);
              Mat i3 = identity(3), o3 = Mat::Zero(3, 3);
              Mat p = pencil(a, z);
              Mat inv = inverse_checked(p, "pencil");
              return std::max(op_norm(p - block2(i3, -z[1], o3, i3)),
                              op_norm(inv - block2(i3, z[1], o3, i3)));
          },
          1e-12);
    t.add("shift seed: pencil solve of (0; Z1) gives (Z2 Z1; Z1)",
          [&] {
              MatrixTuple a = clark_family(ex_e1, 0.0);
              MatrixTuple z = rng.row_contraction(2, 3, 0.9);
              Mat rhs(6, 3);
              rhs << Mat::Zero(3, 3), z[0];
              Mat want(6, 3);
              want << z[1] * z[0], z[0];
              return op_norm(pencil_solve(a, z, rhs) - want);
          },
          1e-12);
    t.check("shift pair (E12, E21) is a row co-isometry", [&] { return is_row_coisometry(ex_e1.T); });
    t.check("shift pair is irreducible", [&] { return is_irreducible(ex_e1.T); });
    t.check("anti-commuting pair is irreducible",
            [&] { return is_irreducible(anticommuting(1.0, 0.0).T); });

    t.check("expression (1 - z1*z2)*inv(1 - z2*z1) parses",
            [&] { return parse("(1 - z1*z2)*inv(1 - z2*z1)", 2) != nullptr; });

    t.add("shift seed x = e1: transfer equals Z2 Z1",
          [&] {
              return max_transfer_error(minratreal_fm(ex_e1),
                                        [](const MatrixTuple& z) { return Mat(z[1] * z[0]); }, rng, 20, 3);
          },
          1e-10);
    t.add("shift seed x = e2: transfer equals Z1 Z2",
          [&] {
              return max_transfer_error(minratreal_fm(ex_e2),
                                        [](const MatrixTuple& z) { return Mat(z[0] * z[1]); }, rng, 20, 3);
          },
          1e-10);
    t.add("shift seed x = e1: only coefficient (2,1) is nonzero, and it is 1",
          [&] {
              PowerSeries c = coefficients(minratreal_fm(ex_e1), 4);
              double err = 0.0;
              for (const auto& [w, v] : c.coef)
                  err = std::max(err, std::abs(v - (w == Word{2, 1} ? 1.0 : 0.0)));
              return err;
          },
          1e-12);
    t.add("shift seed x = (1,1)/sqrt 2: Schur complement formula",
          [&] {
              FMRealization f = minratreal_fm(shift_pair(Vec::Ones(2) / s2));
              auto formula = [](const MatrixTuple& z) {
                  const Mat i = identity(z.n());
                  Mat p = inverse_checked(i + z[0] / 2.0, "I + Z1/2");
                  Mat s = i + z[1] / 2.0 - 0.25 * z[1] * p * z[0];
                  Mat si = inverse_checked(s, "Schur complement");
                  return Mat(0.5 * si * z[1] + p * (z[0] / 4.0) * si * z[1] +
                             si * (z[1] / 4.0) * p * z[0] + 0.5 * p * z[0] +
                             0.125 * p * z[0] * si * z[1] * p * z[0]);
              };
              return max_transfer_error(f, formula, rng, 10, 3);
          },
          1e-8);
    t.add("shift seed x = (1,1)/sqrt 2: inner certificate h2 = 1, |phi| = 0",
          [&] {
              InnerCertificate c = inner_certificate(minratreal_fm(shift_pair(Vec::Ones(2) / s2)));
              return std::max(std::abs(c.h2 - 1.0), c.phi_norm) + (c.inner ? 0.0 : 1.0);
          },
          1e-10);

    t.add("anti-commuting seed alpha = beta = 1/sqrt 2: transfer (Z1 + Z2)(Z1 - Z2)/2",
          [&] {
              return max_transfer_error(minratreal_fm(anticommuting(1.0 / s2, 1.0 / s2)),
                                        [](const MatrixTuple& z) {
                                            return Mat(0.5 * (z[0] + z[1]) * (z[0] - z[1]));
                                        },
                                        rng, 20, 3);
          },
          1e-10);
    t.add("anti-commuting seed alpha = beta = 1/sqrt 2: degree-2 coefficients (1/2, -1/2, 1/2, -1/2)",
          [&] {
              PowerSeries c = coefficients(minratreal_fm(anticommuting(1.0 / s2, 1.0 / s2)), 4);
              std::map<Word, cplx> want{{{1, 1}, 0.5}, {{1, 2}, -0.5}, {{2, 1}, 0.5}, {{2, 2}, -0.5}};
              double err = 0.0;
              for (const auto& [w, v] : c.coef) {
                  auto it = want.find(w);
                  err = std::max(err, std::abs(v - (it == want.end() ? cplx(0.0) : it->second)));
              }
              return err;
          },
          1e-12);
    t.add("anti-commuting seed alpha = 0, beta = 1: transfer -Z2 (I - Z1/sqrt 2)^-1 Z2 / 2 - Z1/sqrt 2",
          [&] {
              return max_transfer_error(
                  minratreal_fm(anticommuting(0.0, 1.0)),
                  [s2](const MatrixTuple& z) {
                      Mat p = inverse_checked(identity(z.n()) - z[0] / s2, "I - Z1/sqrt 2");
                      return Mat(-0.5 * z[1] * p * z[1] - z[0] / s2);
                  },
                  rng, 20, 3);
          },
          1e-10);
    t.check("Z2 Z1 is inner", [&] { return inner_certificate(minratreal_fm(ex_e1)).inner; });
    t.check("-Z2 (I - Z1/sqrt 2)^-1 Z2 / 2 - Z1/sqrt 2 is inner",
            [&] { return inner_certificate(minratreal_fm(anticommuting(0.0, 1.0))).inner; });
    t.check("both anti-commuting seeds give inner multipliers", [&] {
        return inner_certificate(minratreal_fm(anticommuting(1.0 / s2, 1.0 / s2))).inner &&
               inner_certificate(minratreal_fm(anticommuting(0.0, 1.0))).inner;
    });

    t.add("descriptor (T*, x, x) at Z = 0 equals |x|^2",
          [&] {
              ClarkSeed s = examples::random_contractive(rng, 2, 3);
              Descriptor r{adjoint_tuple(s.T), s.x, s.x};
              Mat g = descriptor_eval(r, MatrixTuple::zeros(2, 2));
              return op_norm(g - s.x.squaredNorm() * identity(2));
          },
          1e-12);
    t.add("b(0) = (|x|^2 + it - 1)/(|x|^2 + it + 1)",
          [&] {
              double err = 0.0;
              for (int k = 0; k < 5; ++k) {
                  ClarkSeed s = examples::random_contractive(rng, 2, 3);
                  cplx q = s.x.squaredNorm() + cplx(0.0, s.t);
                  err = std::max(err, op_norm(cayley(s, MatrixTuple::zeros(2, 2)) -
                                              (q - 1.0) / (q + 1.0) * identity(2)));
              }
              return err;
          },
          1e-12);

    t.add("(1 - xy)(1 - yx)^-1 has determinant 1",
          [&] {
              FMRealization f = expr_to_fm(parse("(1-x*y)*inv(1-y*x)", 2), 2);
              DetProbe p = det_constancy_direct(f, sl_samples(f, 20, seed));
              return p.evaluated > 0 ? p.max_dev : 1.0;
          },
          1e-10);
    t.add("(1 - xy)(1 - yx)^-1 passes the trace condition to level 6",
          [&] {
              FMRealization f = expr_to_fm(parse("(1-x*y)*inv(1-y*x)", 2), 2);
              SlCheck c = sl_condition_check(f, sl_samples(f, 20, seed), 6, 1e-9);
              return c.holds ? c.max_residual : 1.0;
          },
          1e-9);
    t.add("Herglotz of rescaled (xy - yx)(2 - xy - yx)^-1 has determinant 1",
          [&] {
              FMRealization b = rescale(expr_to_fm(parse("(x*y-y*x)*inv(2-x*y-y*x)", 2), 2), 0.5);
              FMRealization one = fm_constant(2, 1.0);
              FMRealization h = minimize(fm_mul(fm_add(one, b), fm_inv(fm_add(one, fm_scale(b, -1.0)))));
              DetProbe p = det_constancy_direct(h, sl_samples(h, 20, seed));
              return p.evaluated > 0 ? p.max_dev : 1.0;
          },
          1e-9);

    const ClarkSeed diag = diagonal_pair();
    const ClarkSeed four = four_dim();
    t.add("2 x 2 family written out entrywise",
          [&] {
              double err = 0.0;
              for (cplx z : circle_points(7, 0.3)) {
                  MatrixTuple f = clark_family(diag, z);
                  MatrixTuple g = diagonal_family_closed(z);
                  for (int k = 0; k < 2; ++k)
                      err = std::max(err, op_norm(f[k] - g[k]));
              }
              return err;
          },
          1e-13);
    t.add("4 x 4 family written out entrywise with w = (z - 1)/4",
          [&] {
              double err = 0.0;
              for (cplx z : circle_points(7, 0.3)) {
                  MatrixTuple f = clark_family(four, z);
                  MatrixTuple g = four_family_closed(z);
                  for (int k = 0; k < 2; ++k)
                      err = std::max(err, op_norm(f[k] - g[k]));
              }
              return err;
          },
          1e-13);
    t.check("4 x 4 seed: x is cyclic for T* and for T", [&] {
        CyclicityReport c = cyclicity_report(four);
        return c.tstar_cyclic && c.t_cyclic;
    });
    t.check("irreducible pair: every nonzero x is cyclic", [&] {
        bool ok = true;
        for (int k = 0; k < 5; ++k) {
            ClarkSeed s = anticommuting(rng.complex_normal(), rng.complex_normal());
            s.x.normalize();
            CyclicityReport c = cyclicity_report(s);
            ok = ok && c.tstar_cyclic && c.t_cyclic && c.v_cyclic.value_or(false);
        }
        return ok;
    });
    t.check("shift seed x = e1 is singular with one dilation summand", [&] {
        ClassifyReport r = classify(ex_e1);
        return r.singular && r.dilation_summands == 1;
    });
    t.add("4 x 4 at z = -1: invariant kernel part contains e2 + e4, one summand",
          [&] {
              ClarkSeed s{clark_point(four, -1.0), four.x, 0.0};
              ClassifyReport r = classify(s);
              CoisometricRestrictions cr = coisometric_restrictions(s.T);
              double gap = subspace_gap(cr.ktilde, e(4, 1) + e(4, 3));
              return gap + (r.dilation_summands == 1 ? 0.0 : 1.0) + (r.ktilde_dim >= 1 ? 0.0 : 1.0);
          },
          1e-9);
    t.add("4 x 4 at z = -1: single minimal piece spanned by e2 + e4",
          [&] {
              CoisometricRestrictions cr = coisometric_restrictions(clark_point(four, -1.0));
              if (cr.pieces.size() != 1 || cr.pieces[0].basis.dim() != 1)
                  return 1.0;
              return subspace_gap(cr.pieces[0].basis, e(4, 1) + e(4, 3));
          },
          1e-9);
    t.check("2 x 2 at z = 1: two minimal co-isometric pieces", [&] {
        return coisometric_restrictions(clark_point(diag, 1.0)).pieces.size() == 2;
    });
    t.check("two-block seed at z = 1: geometric multiplicity at least the piece count", [&] {
        EigencheckReport r = boundary_eigencheck(examples::two_block(), 1.0);
        return r.pieces.size() >= 2 && r.geometric_multiplicity >= static_cast<int>(r.pieces.size());
    });
    t.check("2 x 2 family members are pairwise non-similar", [&] {
        auto pts = circle_points(5, 0.5);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (joint_similarity(clark_family(diag, pts[i]), clark_family(diag, pts[j])))
                    return false;
        return true;
    });
    t.check("2 x 2 family: empty similarity locus on the circle", [&] {
        // base point -1; z on the circle maps to the perturbation (z + 1)/(-1)
        const cplx z0 = -1.0;
        MatrixTuple a = clark_family(diag, z0);
        std::vector<cplx> samples;
        for (cplx z : circle_points(12, 0.2))
            samples.push_back((z - z0) / z0);
        return similarity_locus(a, diag.x, samples).similar_points.empty();
    });
    t.check("2 x 2 family: distinct points give mutually singular isometries", [&] {
        auto pts = circle_points(4, 0.4);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (!mutual_singularity(diag, pts[i], pts[j]).mutually_singular)
                    return false;
        return true;
    });
    t.check("irreducible member with nonsingular level one is singular to every other point", [&] {
        NcadReport r = ncad_report(diag, circle_points(5, 0.7));
        return r.irreducible_clause.value_or(false);
    });
    t.check("4 x 4 family: irreducible dilation away from z = 1, reducible at z = 1", [&] {
        NcadReport r = ncad_report(four, {1.0, -1.0, std::polar(1.0, 1.1), std::polar(1.0, -2.3)});
        const auto& ir = r.dilation_irreducible;
        return !ir[0] && ir[1] && ir[2] && ir[3];
    });
    t.add("2 x 2 family: det of the commutator is z (z - 1)^2 / 4",
          [&] {
              auto c = commutator_det_poly([&](cplx z) { return clark_family(diag, z); }, 4);
              return coeff_error(c, {0.0, 0.25, -0.5, 0.25, 0.0});
          },
          1e-12);
    t.add("4 x 4 family on V: det of the commutator is -2 w^2 (2 w + 1)",
          [&] {
              Mat q = Mat::Zero(4, 3);
              q(1, 0) = q(2, 1) = q(3, 2) = 1.0;
              // in w = (z - 1)/4 the polynomial is -4 w^3 - 2 w^2
              auto c = commutator_det_poly(
                  [&](cplx w) { return clark_family(four, 4.0 * w + 1.0); }, 4, q);
              return coeff_error(c, {0.0, 0.0, -2.0, -4.0, 0.0});
          },
          1e-12);
    t.add("traces: (z + 1)/2 on the 2 x 2 family, 2w on the 4 x 4 family restricted to V",
          [&] {
              Mat q = Mat::Zero(4, 3);
              q(1, 0) = q(2, 1) = q(3, 2) = 1.0;
              double err = 0.0;
              for (cplx z : circle_points(6, 0.1)) {
                  err = std::max(err, std::abs(clark_family(diag, z)[0].trace() - (z + 1.0) / 2.0));
                  MatrixTuple f = compress(clark_family(four, z), q);
                  err = std::max(err, std::abs(f[0].trace() - 2.0 * (z - 1.0) / 4.0));
              }
              return err;
          },
          1e-12);
    return t.json();
}

} // namespace ncclark::tools

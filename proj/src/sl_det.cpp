#include "ncclark/sl_det.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ncclark {

std::vector<PowerSeries> homogeneous_parts(const FMRealization& f, int L)
{
    PowerSeries all = coefficients(f, L);
    std::vector<PowerSeries> out(L + 1);
    for (int j = 0; j <= L; ++j) {
        out[j].d = f.d();
        out[j].maxdeg = L;
    }
    for (const auto& [w, c] : all.coef)
        out[w.size()].coef[w] = c;
    return out;
}

std::vector<PowerSeries> inverse_parts(const FMRealization& f, int L)
{
    return homogeneous_parts(fm_inv(f), L);
}

std::vector<PowerSeries> inverse_parts_recursive(const FMRealization& f, int L)
{
    if (std::abs(f.D) < 1e-14)
        throw RegularityError("inverse_parts: constant term is zero");
    std::vector<PowerSeries> fp = homogeneous_parts(f, L);
    std::vector<PowerSeries> g(L + 1);
    const cplx di = 1.0 / f.D;
    for (int k = 0; k <= L; ++k) {
        g[k].d = f.d();
        g[k].maxdeg = L;
    }
    g[0].coef[Word{}] = di;
    for (int k = 1; k <= L; ++k) {
        for (int i = 1; i <= k; ++i) {
            for (const auto& [u, fu] : fp[i].coef) {
                if (fu == cplx(0.0, 0.0))
                    continue;
                for (const auto& [v, gv] : g[k - i].coef) {
                    Word w = u;
                    w.insert(w.end(), v.begin(), v.end());
                    g[k].coef[w] -= di * fu * gv;
                }
            }
        }
        // keep every word of the degree present, as coefficients() does
        for (const auto& w : words_of_length(f.d(), k))
            g[k].coef.try_emplace(w, 0.0);
    }
    return g;
}

std::vector<Mat> homogeneous_values(const FMRealization& f, const MatrixTuple& z, int L)
{
    check_consistent(f);
    if (z.d() != f.d())
        throw ArityError("homogeneous_values: arity mismatch");
    const int n = z.n();
    const int m = f.m();
    std::vector<Mat> out;
    out.push_back(f.D * identity(n));
    if (L == 0)
        return out;
    if (m == 0) {
        out.resize(L + 1, Mat::Zero(n, n));
        return out;
    }
    Mat v = Mat::Zero(static_cast<Eigen::Index>(m) * n, n);
    Mat mz = Mat::Zero(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(m) * n);
    for (int j = 0; j < f.d(); ++j) {
        v += kron(f.B[j], z[j]);
        mz += kron(f.A[j], z[j]);
    }
    Mat c = kron(f.C, identity(n));
    for (int j = 1; j <= L; ++j) {
        out.push_back(c * v);
        v = mz * v;
    }
    return out;
}

std::vector<MatrixTuple> sl_samples(const FMRealization& f, int per_level, std::uint64_t seed,
                                    const std::vector<int>& levels)
{
    double s1 = joint_spectral_radius(f.A);
    double s2 = joint_spectral_radius(fm_inv(f).A);
    double radius = 0.5 / std::max({1.0, s1, s2});
    Rng rng(seed);
    std::vector<MatrixTuple> out;
    for (int n : levels)
        for (int k = 0; k < per_level; ++k)
            out.push_back(rng.row_contraction(f.d(), n, radius));
    return out;
}

SlCheck sl_condition_check(const FMRealization& f, const std::vector<MatrixTuple>& samples, int L,
                           double tol)
{
    check_consistent(f);
    FMRealization g = fm_inv(f);
    SlCheck r;
    r.residual_by_level.assign(L, 0.0);
    for (const auto& z : samples) {
        auto fv = homogeneous_values(f, z, L);
        auto gv = homogeneous_values(g, z, L);
        for (int l = 1; l <= L; ++l) {
            cplx s = 0.0;
            for (int j = 1; j <= l; ++j)
                s += static_cast<double>(j) * (fv[j] * gv[l - j]).trace();
            r.residual_by_level[l - 1] = std::max(r.residual_by_level[l - 1], std::abs(s));
        }
    }
    for (double v : r.residual_by_level)
        r.max_residual = std::max(r.max_residual, v);
    r.constant_deviation = std::abs(f.D - 1.0);
    r.holds = r.max_residual < tol && r.constant_deviation < tol;
    return r;
}

DetProbe det_constancy_direct(const FMRealization& f, const std::vector<MatrixTuple>& samples)
{
    DetProbe p;
    for (const auto& z : samples) {
        try {
            p.max_dev = std::max(p.max_dev, std::abs(det(transfer_eval(f, z)) - 1.0));
            ++p.evaluated;
        } catch (const DomainError&) {
            ++p.skipped;
        }
    }
    return p;
}

DetProbe det_constancy_direct(const ExprPtr& e, const std::vector<MatrixTuple>& samples)
{
    DetProbe p;
    for (const auto& z : samples) {
        try {
            p.max_dev = std::max(p.max_dev, std::abs(det(eval_expr(e, z)) - 1.0));
            ++p.evaluated;
        } catch (const DomainError&) {
            ++p.skipped;
        }
    }
    return p;
}

} // namespace ncclark

#include "ncclark/fock.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace ncclark {

TruncatedFock::TruncatedFock(int d, int N) : d_(d), N_(N), words_(words_up_to(d, N))
{
    if (d < 1 || N < 0)
        throw ArityError("truncated Fock space needs d >= 1 and N >= 0");
    for (std::size_t i = 0; i < words_.size(); ++i)
        pos_[words_[i]] = static_cast<int>(i);
}

int TruncatedFock::index(const Word& w) const
{
    auto it = pos_.find(w);
    return it == pos_.end() ? -1 : it->second;
}

std::vector<Mat> left_shift_matrices(int d, int N)
{
    TruncatedFock f(d, N);
    std::vector<Mat> out(d, Mat::Zero(f.size(), f.size()));
    for (int i = 0; i < f.size(); ++i) {
        const Word& w = f.words()[i];
        if (static_cast<int>(w.size()) >= N)
            continue;
        for (int k = 1; k <= d; ++k) {
            Word kw;
            kw.reserve(w.size() + 1);
            kw.push_back(k);
            kw.insert(kw.end(), w.begin(), w.end());
            out[k - 1](f.index(kw), i) = 1.0;
        }
    }
    return out;
}

Mat multiplier_matrix(const PowerSeries& s, int N)
{
    TruncatedFock f(s.d, N);
    Mat m = Mat::Zero(f.size(), f.size());
    for (int iu = 0; iu < f.size(); ++iu) {
        const Word& u = f.words()[iu];
        for (int iv = 0; iv < f.size(); ++iv) {
            const Word& v = f.words()[iv];
            if (v.size() > u.size())
                continue;
            if (!std::equal(v.begin(), v.end(), u.end() - static_cast<long>(v.size())))
                continue;
            Word w(u.begin(), u.end() - static_cast<long>(v.size()));
            if (static_cast<int>(w.size()) > s.maxdeg)
                throw PreconditionError(
                    fmt::format("multiplier_matrix: series known to degree {}, need {}", s.maxdeg,
                                w.size()));
            m(iu, iv) = s.at(w);
        }
    }
    return m;
}

namespace {

struct GramData {
    double h2;
    RowVec phi;
};

GramData gram_data(const FMRealization& f)
{
    if (!(joint_spectral_radius(f.A) < 1.0))
        throw PreconditionError("not a Fock space element: spr of the state tuple is >= 1");
    Mat w = observability_gramian(f);
    GramData g;
    g.h2 = std::norm(f.D);
    g.phi = std::conj(f.D) * f.C;
    for (int k = 0; k < f.d(); ++k) {
        if (f.m() == 0)
            break;
        g.h2 += std::real((f.B[k].adjoint() * w * f.B[k])(0));
        g.phi += f.B[k].adjoint() * w * f.A[k];
    }
    return g;
}

} // namespace

InnerCertificate inner_certificate(const FMRealization& f, double tol)
{
    check_consistent(f);
    if (!f.minimal)
        throw PreconditionError("inner_certificate: realization must be minimal");
    GramData g = gram_data(f);
    InnerCertificate c;
    c.h2 = g.h2;
    c.phi = g.phi;
    c.phi_norm = g.phi.size() == 0 ? 0.0 : g.phi.norm();
    c.inner = std::abs(c.h2 - 1.0) <= tol && c.phi_norm <= tol;
    return c;
}

Mat truncated_gram(const FMRealization& f, int N)
{
    check_consistent(f);
    GramData g = gram_data(f);
    TruncatedFock fk(f.d(), N);
    // gamma(s) = phi A^{s'} B_j for s = s' j
    auto gamma = [&](const Word& s) -> cplx {
        if (f.m() == 0)
            return 0.0;
        RowVec r = g.phi;
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            r = r * f.A[s[i] - 1];
        return (r * f.B[s.back() - 1])(0);
    };
    auto is_suffix = [](const Word& v, const Word& u) {
        return v.size() < u.size() &&
               std::equal(v.begin(), v.end(), u.end() - static_cast<long>(v.size()));
    };
    const int sz = fk.size();
    Mat G = Mat::Zero(sz, sz);
    for (int iu = 0; iu < sz; ++iu) {
        const Word& u = fk.words()[iu];
        G(iu, iu) = g.h2;
        for (int iv = 0; iv < sz; ++iv) {
            const Word& v = fk.words()[iv];
            if (is_suffix(v, u)) {
                Word s(u.begin(), u.end() - static_cast<long>(v.size()));
                cplx gs = gamma(s);
                G(iu, iv) = gs;
                G(iv, iu) = std::conj(gs);
            }
        }
    }
    return G;
}

ContractivityProbe contractivity_probe(const FMRealization& f, int samples, std::uint64_t seed,
                                       double tol)
{
    Rng rng(seed);
    ContractivityProbe p;
    for (int s = 0; s < samples; ++s) {
        int n = rng.integer(1, 3);
        double r = rng.uniform(0.0, 0.999);
        MatrixTuple z = rng.row_contraction(f.d(), n, r);
        try {
            p.max_norm = std::max(p.max_norm, op_norm(transfer_eval(f, z)));
            ++p.samples;
        } catch (const DomainError&) {
            ++p.skipped;
        }
    }
    p.exceeds = p.max_norm > 1.0 + tol;
    return p;
}

} // namespace ncclark

#include <doctest.h>

#include "ncclark/examples.hpp"
#include "ncclark/fock.hpp"
#include "support.hpp"

using namespace ncclark;
using namespace testsupport;

namespace {

double max_gap_cayley(const ClarkSeed& s, Rng& rng, int count)
{
    FMRealization f = minratreal_fm(s);
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        MatrixTuple z = rng.row_contraction(s.T.d(), rng.integer(1, 3), rng.uniform(0.1, 0.95));
        worst = std::max(worst, dist(transfer_eval(f, z), cayley(s, z)));
    }
    return worst;
}

} // namespace

TEST_CASE("moments")
{
    ClarkSeed e1 = examples::shift_pair(unit_vec(2, 0));
    auto m = moments(e1, {{}, {1}, {1, 2}, {2, 1}});
    CHECK(std::abs(m[{}] - 1.0) < 1e-15);
    CHECK(std::abs(m[{1}]) < 1e-15);
    CHECK(std::abs(m[{1, 2}] - 1.0) < 1e-15);
    CHECK(std::abs(m[{2, 1}]) < 1e-15);

    Rng rng(61);
    ClarkSeed zero{MatrixTuple::zeros(2, 3), rng.vector(3), 0.0};
    for (const auto& [w, v] : moments(zero, words_up_to(2, 3)))
        CHECK(std::abs(v - (w.empty() ? zero.x.squaredNorm() : 0.0)) < 1e-14);
}

TEST_CASE("moments match the descriptor coefficients")
{
    Rng rng(62);
    for (int k = 0; k < 10; ++k) {
        ClarkSeed s = examples::random_contractive(rng, 2, rng.integer(1, 3));
        auto mom = moments(s, words_up_to(2, 4));
        // G = (T^*, x, x) descriptor; its coefficient at w is <x, T^{* w} x>
        Descriptor g{adjoint_tuple(s.T), s.x, s.x};
        PowerSeries c = coefficients(fm_from_descriptor(g), 4);
        for (const Word& w : words_up_to(2, 4)) {
            cplx direct = s.x.dot(word_eval(adjoint_tuple(s.T), w) * s.x);
            CHECK(std::abs(c.at(w) - direct) < 1e-12);
            // and <x, T^w x> is the conjugate of <x, T^{*rev w} x>
            CHECK(std::abs(mom[w] - std::conj(s.x.dot(word_eval(adjoint_tuple(s.T), reverse(w)) * s.x))) < 1e-12);
        }
    }
}

TEST_CASE("herglotz and cayley")
{
    Rng rng(63);
    ClarkSeed s = examples::random_contractive(rng, 2, 3);
    cplx h0 = s.x.squaredNorm() + cplx(0, s.t);
    CHECK(dist(herglotz_eval(s, MatrixTuple::zeros(2, 2)), h0 * identity(2)) < 1e-13);
    CHECK(dist(cayley(s, MatrixTuple::zeros(2, 2)), (h0 - 1.0) / (h0 + 1.0) * identity(2)) < 1e-13);
    CHECK(std::abs(seed_b0(s) - (h0 - 1.0) / (h0 + 1.0)) < 1e-14);

    ClarkSeed trivial{MatrixTuple::zeros(1, 1), Vec::Ones(1), 0.0};
    MatrixTuple z({Mat::Constant(1, 1, cplx(0.3, 0.5))});
    CHECK(std::abs(herglotz_eval(trivial, z)(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(cayley(trivial, z)(0, 0)) < 1e-15);

    ClarkSeed unit = examples::random_coisometric(rng, 2, 3);
    CHECK(std::abs(seed_b0(unit)) < 1e-14);
}

TEST_CASE("Herglotz values have nonnegative real part")
{
    Rng rng(64);
    for (int k = 0; k < 10; ++k) {
        ClarkSeed s = examples::random_contractive(rng, rng.integer(1, 3), rng.integer(1, 4));
        for (int i = 0; i < 20; ++i) {
            MatrixTuple z = rng.row_contraction(s.T.d(), rng.integer(1, 3), rng.uniform(0.1, 0.95));
            Mat h = herglotz_eval(s, z);
            Mat re = 0.5 * (h + h.adjoint());
            CHECK(Eigen::SelfAdjointEigenSolver<Mat>(re).eigenvalues().minCoeff() >= -1e-10);
            CHECK(op_norm(cayley(s, z)) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("minratreal_fm")
{
    Rng rng(65);
    ClarkSeed e1 = examples::shift_pair(unit_vec(2, 0)), e2 = examples::shift_pair(unit_vec(2, 1));
    const double s = 1.0 / std::sqrt(2.0);
    ClarkSeed ac = examples::anticommuting(s, s);
    for (int k = 0; k < 10; ++k) {
        MatrixTuple z = rng.tuple(2, 3);
        CHECK(dist(transfer_eval(minratreal_fm(e1), z), z[1] * z[0]) < 1e-11);
        CHECK(dist(transfer_eval(minratreal_fm(e2), z), z[0] * z[1]) < 1e-11);
        CHECK(dist(transfer_eval(minratreal_fm(ac), z), 0.5 * (z[0] + z[1]) * (z[0] - z[1])) < 1e-11);
    }
    CHECK(minratreal_fm(e1).minimal);

    // x = e1 is not cyclic for the diagonal pair
    ClarkSeed diag = examples::diagonal_pair();
    diag.x = unit_vec(2, 0);
    CHECK_THROWS_AS(minratreal_fm(diag), PreconditionError);
}

TEST_CASE("minratreal_fm matches the cayley route")
{
    // b(0) != 0 for most of these, so the (1 - b(0)) factors are exercised
    Rng rng(66);
    for (int k = 0; k < 20; ++k) {
        ClarkSeed s = examples::random_contractive(rng, rng.integer(1, 3), rng.integer(1, 4));
        if (!cyclicity_report(s).tstar_cyclic)
            continue;
        CHECK(max_gap_cayley(s, rng, 20) < 1e-9);
    }
}

TEST_CASE("clark_family")
{
    ClarkSeed diag = examples::diagonal_pair();
    for (cplx z : circle(5, 0.7)) {
        MatrixTuple t = clark_family(diag, z);
        Mat e1(2, 2), e2(2, 2);
        e1 << (z + 1.0) / 2.0, (z - 1.0) / 2.0, 0.0, 0.0;
        e2 << 0.0, 0.0, (z - 1.0) / 2.0, (z + 1.0) / 2.0;
        CHECK(dist(t[0], e1) < 1e-15);
        CHECK(dist(t[1], e2) < 1e-15);
        CHECK(std::abs(t[0].trace() - (z + 1.0) / 2.0) < 1e-12);
    }

    ClarkSeed four = examples::four_dim();
    for (cplx z : circle(5, 0.2)) {
        cplx w = (z - 1.0) / 4.0;
        MatrixTuple t = clark_family(four, z);
        Mat a = Mat::Zero(4, 4), b = Mat::Zero(4, 4);
        a.row(1) << w + 1.0, w, w, w;
        a.row(3) << w, w, w + 1.0, w;
        b.row(1) << w, w + 1.0, w, w;
        b.row(2) << w, w, w, w + 1.0;
        CHECK(dist(t[0], a) < 1e-15);
        CHECK(dist(t[1], b) < 1e-15);
        CHECK(std::abs(t[0].trace() - 2.0 * w) < 1e-12);
    }

    Rng rng(67);
    for (int k = 0; k < 5; ++k) {
        ClarkSeed s = examples::random_coisometric(rng, 2, 3);
        MatrixTuple one = clark_family(s, 1.0);
        for (int j = 0; j < 2; ++j)
            CHECK(dist(one[j], s.T[j].adjoint()) == 0.0);
    }
    CHECK_THROWS_AS(clark_family(examples::random_contractive(rng, 2, 2), 1.0), PreconditionError);
}

TEST_CASE("clark family members are row co-isometries")
{
    Rng rng(68);
    for (int k = 0; k < 10; ++k) {
        ClarkSeed s = examples::random_coisometric(rng, 2, 3);
        MatrixTuple t = adjoint_tuple(clark_family(s, rng.unit_circle()));
        CHECK(is_row_coisometry(t));
    }
}

TEST_CASE("moebius_normalize")
{
    Rng rng(69);
    FMRealization z2z1 = minratreal_fm(examples::shift_pair(unit_vec(2, 0)));
    MoebiusResult same = moebius_normalize(z2z1);
    CHECK(std::abs(same.w) < 1e-15);
    CHECK(fm_equal(same.fm0, z2z1));

    // d = 1: b(z) = (z + w)/(1 + conj(w) z) maps back to z
    cplx w(0.3, -0.4);
    FMRealization blaschke = expr_to_fm(parse("(z1 + 0.3 - 0.4i)*inv(1 + (0.3 + 0.4i)*z1)", 1), 1);
    MoebiusResult mb = moebius_normalize(blaschke);
    CHECK(std::abs(mb.w - w) < 1e-14);
    CHECK(fm_equal(mb.fm0, fm_variable(1, 1)));

    for (int k = 0; k < 10; ++k) {
        ClarkSeed s = k % 2 ? examples::random_coisometric(rng, 2, 2) : examples::random_contractive(rng, 2, 2);
        s.t = rng.uniform(-1.0, 1.0);
        if (!cyclicity_report(s).tstar_cyclic)
            continue;
        FMRealization f = minratreal_fm(s);
        MoebiusResult r = moebius_normalize(f);
        CHECK(std::abs(r.fm0.D) < 1e-10);
        CHECK(inner_certificate(minimize(r.fm0)).inner == inner_certificate(f).inner);
        // pointwise (b - w)(1 - conj(w) b)^{-1}
        MatrixTuple z = rng.row_contraction(2, 2, 0.6);
        Mat b = transfer_eval(f, z);
        Mat expect = (b - r.w * identity(2)) * (identity(2) - std::conj(r.w) * b).inverse();
        CHECK(dist(transfer_eval(r.fm0, z), expect) < 1e-10);
    }
    CHECK_THROWS_AS(moebius_normalize(fm_constant(2, 1.0)), PreconditionError);
}

TEST_CASE("cyclicity_report")
{
    CyclicityReport four = cyclicity_report(examples::four_dim());
    CHECK(four.tstar_cyclic);
    CHECK(four.t_cyclic);
    REQUIRE(four.v_cyclic);
    CHECK(*four.v_cyclic);

    ClarkSeed diag = examples::diagonal_pair();
    diag.x = unit_vec(2, 0);
    CyclicityReport d = cyclicity_report(diag);
    CHECK_FALSE(d.tstar_cyclic);
    CHECK_FALSE(d.t_cyclic);

    Rng rng(70);
    ClarkSeed ac = examples::anticommuting(rng.complex_normal(), rng.complex_normal());
    ac.x.normalize();
    REQUIRE(is_irreducible(ac.T));
    CyclicityReport r = cyclicity_report(ac);
    CHECK(r.tstar_cyclic);
    CHECK(r.t_cyclic);
    REQUIRE(r.v_cyclic);
    CHECK(*r.v_cyclic);

    ClarkSeed contractive = examples::random_contractive(rng, 2, 2);
    CHECK_FALSE(cyclicity_report(contractive).v_cyclic.has_value());
}

TEST_CASE("classify")
{
    ClassifyReport e1 = classify(examples::shift_pair(unit_vec(2, 0)));
    CHECK(e1.singular);
    CHECK(e1.dilation_summands == 1);
    CHECK(e1.pure_rank == 0);
    CHECK(e1.vn_type_absent);
    CHECK(e1.cuntz_type_l_absent);

    Rng rng(71);
    ClarkSeed strict{rng.row_contraction(2, 3, 0.6), rng.unit_vector(3), 0.0};
    ClassifyReport sr = classify(strict);
    CHECK(sr.pure_rank == 3);
    CHECK(sr.ktilde_dim == 0);
    CHECK_FALSE(sr.singular);
    CHECK(sr.ac_part_present);

    // family point at -1 of the 4 x 4 example
    ClarkSeed four = examples::four_dim();
    ClarkSeed at{adjoint_tuple(clark_family(four, -1.0)), four.x, 0.0};
    ClassifyReport r4 = classify(at);
    CHECK(r4.dilation_summands == 1);
    CHECK(r4.singular);
}

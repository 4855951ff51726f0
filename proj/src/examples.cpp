#include "ncclark/examples.hpp"

#include <cmath>

namespace ncclark::examples {

ClarkSeed shift_pair(const Vec& x)
{
    Mat t1 = Mat::Zero(2, 2), t2 = Mat::Zero(2, 2);
    t1(0, 1) = 1.0;
    t2(1, 0) = 1.0;
    return {MatrixTuple({t1, t2}), x, 0.0};
}

ClarkSeed anticommuting(cplx alpha, cplx beta)
{
    const double s = 1.0 / std::sqrt(2.0);
    Mat t1(2, 2), t2(2, 2);
    t1 << s, 0.0, 0.0, -s;
    // the worked computation reads the displayed pair as T^*
    t2 << 0.0, s, -s, 0.0;
    Vec x(2);
    x << alpha, beta;
    return {MatrixTuple({t1, t2}), x, 0.0};
}

ClarkSeed diagonal_pair()
{
    Mat t1 = Mat::Zero(2, 2), t2 = Mat::Zero(2, 2);
    t1(0, 0) = 1.0;
    t2(1, 1) = 1.0;
    return {MatrixTuple({t1, t2}), Vec::Ones(2) / std::sqrt(2.0), 0.0};
}

ClarkSeed four_dim()
{
    // adjoints of the tuple are the displayed matrices
    Mat s1 = Mat::Zero(4, 4), s2 = Mat::Zero(4, 4);
    s1(1, 0) = 1.0;
    s1(3, 2) = 1.0;
    s2(1, 1) = 1.0;
    s2(2, 3) = 1.0;
    return {MatrixTuple({s1.adjoint(), s2.adjoint()}), Vec::Ones(4) / 2.0, 0.0};
}

ClarkSeed two_block()
{
    ClarkSeed a = shift_pair(Vec::Zero(2));
    ClarkSeed b = anticommuting(1.0, 0.0);
    Vec x(4);
    x << 0.6, 0.3, 0.5, std::sqrt(1.0 - 0.36 - 0.09 - 0.25);
    return {direct_sum(a.T, b.T), x, 0.0};
}

ClarkSeed random_coisometric(Rng& rng, int d, int m)
{
    return {rng.row_coisometry(d, m), rng.unit_vector(m), 0.0};
}

ClarkSeed random_contractive(Rng& rng, int d, int m)
{
    MatrixTuple t = rng.row_contraction(d, m, rng.uniform(0.2, 1.0));
    Vec x = rng.unit_vector(m) * rng.uniform(0.3, 2.0);
    return {t, x, rng.uniform(-1.0, 1.0)};
}

} // namespace ncclark::examples

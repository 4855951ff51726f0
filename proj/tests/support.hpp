#ifndef NCCLARK_TESTS_SUPPORT_HPP
#define NCCLARK_TESTS_SUPPORT_HPP

#include <cmath>
#include <numbers>
#include <vector>

#include "ncclark/linalg.hpp"

namespace testsupport {

using namespace ncclark;

inline Mat unit_mat(int n, int i, int j)
{
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

inline Vec unit_vec(int n, int i)
{
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    return v;
}

inline double dist(const Mat& a, const Mat& b) { return (a - b).norm(); }

inline std::vector<cplx> circle(int count, double offset)
{
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k)
        out.push_back(std::polar(1.0, offset + 2.0 * std::numbers::pi * k / count));
    return out;
}

// well conditioned invertible matrix
inline Mat random_invertible(Rng& rng, int n)
{
    Vec s(n);
    for (int i = 0; i < n; ++i)
        s(i) = std::exp(rng.uniform(-1.0, 1.0));
    return rng.unitary(n) * s.asDiagonal() * rng.unitary(n);
}

} // namespace testsupport

#endif

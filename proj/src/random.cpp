#include "ncclark/random.hpp"

#include <cmath>

#include "ncclark/linalg.hpp"

namespace ncclark {

double Rng::uniform(double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    return u(eng_);
}

double Rng::normal()
{
    std::normal_distribution<double> g(0.0, 1.0);
    return g(eng_);
}

int Rng::integer(int lo, int hi)
{
    std::uniform_int_distribution<int> u(lo, hi);
    return u(eng_);
}

cplx Rng::complex_normal()
{
    double re = normal();
    double im = normal();
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

cplx Rng::unit_circle()
{
    return std::polar(1.0, uniform(0.0, 2.0 * M_PI));
}

Mat Rng::matrix(int rows, int cols)
{
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = complex_normal();
    return m;
}

Vec Rng::vector(int n)
{
    Vec v(n);
    for (int i = 0; i < n; ++i)
        v(i) = complex_normal();
    return v;
}

Vec Rng::unit_vector(int n)
{
    Vec v = vector(n);
    return v / v.norm();
}

MatrixTuple Rng::tuple(int d, int n)
{
    std::vector<Mat> ms;
    for (int j = 0; j < d; ++j)
        ms.push_back(matrix(n, n));
    return MatrixTuple(std::move(ms));
}

Mat Rng::unitary(int n)
{
    Mat g = matrix(n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR();
    // fix phases so the distribution is Haar
    for (int i = 0; i < n; ++i) {
        cplx p = r(i, i) / std::abs(r(i, i));
        q.col(i) *= p;
    }
    return q;
}

MatrixTuple Rng::row_coisometry(int d, int n, double r)
{
    // an isometry V : C^n -> C^{dn}; its blocks are A_j^*
    Mat g = matrix(d * n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat v = qr.householderQ() * Mat::Identity(d * n, n);
    std::vector<Mat> ms;
    for (int j = 0; j < d; ++j)
        ms.push_back(r * v.block(j * n, 0, n, n).adjoint());
    return MatrixTuple(std::move(ms));
}

MatrixTuple Rng::row_contraction(int d, int n, double r)
{
    MatrixTuple t = tuple(d, n);
    double s = row_norm(t);
    std::vector<Mat> ms;
    for (int j = 0; j < d; ++j)
        ms.push_back(t[j] * (r / s));
    return MatrixTuple(std::move(ms));
}

} // namespace ncclark

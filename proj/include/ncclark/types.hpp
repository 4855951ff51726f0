#ifndef NCCLARK_TYPES_HPP
#define NCCLARK_TYPES_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ncclark {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;

// Letters are 1-based, as in z1..zd.
using Word = std::vector<int>;

constexpr double kDefaultTol = 1e-9;
constexpr double kSingularCond = 1e12;
constexpr double kRankTol = 1e-10;

// A d-tuple of n x n complex matrices.
class MatrixTuple {
public:
    MatrixTuple() = default;
    explicit MatrixTuple(std::vector<Mat> mats);

    static MatrixTuple zeros(int d, int n);

    int d() const { return static_cast<int>(mats_.size()); }
    int n() const { return mats_.empty() ? 0 : static_cast<int>(mats_[0].rows()); }

    // 0-based access.
    const Mat& operator[](int j) const { return mats_[j]; }
    Mat& operator[](int j) { return mats_[j]; }

    const std::vector<Mat>& mats() const { return mats_; }

private:
    std::vector<Mat> mats_;
};

// Orthonormal basis of a subspace, stored as the columns of an n x k matrix.
struct SubspaceBasis {
    Mat cols;

    int ambient() const { return static_cast<int>(cols.rows()); }
    int dim() const { return static_cast<int>(cols.cols()); }
    Mat projector() const { return cols * cols.adjoint(); }
};

} // namespace ncclark

#endif

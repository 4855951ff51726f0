#ifndef NCCLARK_SL_DET_HPP
#define NCCLARK_SL_DET_HPP

#include <vector>

#include "ncclark/realization.hpp"

namespace ncclark {

// Slice j holds the degree-j coefficients only.
std::vector<PowerSeries> homogeneous_parts(const FMRealization& f, int L);
std::vector<PowerSeries> inverse_parts(const FMRealization& f, int L);
// g_0 = 1/D, g_k = -(1/D) sum_{i=1..k} f_i g_{k-i}, products by word concatenation.
std::vector<PowerSeries> inverse_parts_recursive(const FMRealization& f, int L);

// f_j(Z) for j = 0..L, evaluated from the realization.
std::vector<Mat> homogeneous_values(const FMRealization& f, const MatrixTuple& z, int L);

// Sample points of size n in {2,3,4} inside a ball well within the domains
// of f and f^{-1}.
std::vector<MatrixTuple> sl_samples(const FMRealization& f, int per_level,
                                    std::uint64_t seed = kDefaultSeed,
                                    const std::vector<int>& levels = {2, 3, 4});

struct SlCheck {
    std::vector<double> residual_by_level; // index l-1, max over samples
    double max_residual = 0.0;
    double constant_deviation = 0.0;       // |D - 1|
    bool holds = false;
};
// Residuals sum_{j=1..l} j tr(f_j(Z) g_{l-j}(Z)); holds when all are below tol
// and D = 1.
SlCheck sl_condition_check(const FMRealization& f, const std::vector<MatrixTuple>& samples,
                           int L, double tol = kDefaultTol);

struct DetProbe {
    double max_dev = 0.0;
    int evaluated = 0;
    int skipped = 0;
};
DetProbe det_constancy_direct(const FMRealization& f, const std::vector<MatrixTuple>& samples);
DetProbe det_constancy_direct(const ExprPtr& e, const std::vector<MatrixTuple>& samples);

} // namespace ncclark

#endif

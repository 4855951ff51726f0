#ifndef NCCLARK_RANDOM_HPP
#define NCCLARK_RANDOM_HPP

#include <cstdint>
#include <random>

#include "ncclark/types.hpp"

namespace ncclark {

constexpr std::uint64_t kDefaultSeed = 20240917;

class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0);
    double normal();
    int integer(int lo, int hi); // inclusive
    cplx complex_normal();
    cplx unit_circle();

    Mat matrix(int rows, int cols);
    Vec vector(int n);
    Vec unit_vector(int n);
    MatrixTuple tuple(int d, int n);

    // Haar unitary via QR of a Gaussian matrix.
    Mat unitary(int n);
    // Tuple with sum_j A_j A_j^* = r^2 I_n exactly (up to roundoff).
    MatrixTuple row_coisometry(int d, int n, double r = 1.0);
    // Gaussian tuple rescaled so its row norm equals r.
    MatrixTuple row_contraction(int d, int n, double r);

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace ncclark

#endif

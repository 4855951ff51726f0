#ifndef NCCLARK_REALIZATION_HPP
#define NCCLARK_REALIZATION_HPP

#include <map>
#include <optional>
#include <vector>

#include "ncclark/expr.hpp"
#include "ncclark/linalg.hpp"

namespace ncclark {

// r(Z) = D I + (C (x) I) L_A(Z)^{-1} (sum_j B_j (x) Z_j)
struct FMRealization {
    MatrixTuple A;        // d matrices, m x m
    std::vector<Vec> B;   // d vectors of length m
    RowVec C;             // 1 x m
    cplx D{0.0, 0.0};
    bool minimal = false;

    int d() const { return A.d(); }
    int m() const { return A.n(); }
};

// r(Z) = (b^* (x) I) L_A(Z)^{-1} (c (x) I)
struct Descriptor {
    MatrixTuple A;
    Vec b, c;
};

struct PowerSeries {
    int d = 0;
    int maxdeg = 0;
    std::map<Word, cplx> coef;

    cplx at(const Word& w) const;
};

void check_consistent(const FMRealization& f);

FMRealization fm_constant(int d, cplx c);
FMRealization fm_variable(int d, int j);

Mat transfer_eval(const FMRealization& f, const MatrixTuple& z);
Mat descriptor_eval(const Descriptor& r, const MatrixTuple& z);
Descriptor descriptor_from_fm(const FMRealization& f);
FMRealization fm_from_descriptor(const Descriptor& r);

FMRealization fm_add(const FMRealization& f, const FMRealization& g);
FMRealization fm_scale(const FMRealization& f, cplx s);
FMRealization fm_mul(const FMRealization& f, const FMRealization& g);
FMRealization fm_inv(const FMRealization& f);

// Compile an expression; d is the arity (>= max_var(e)).
FMRealization expr_to_fm(const ExprPtr& e, int d);

FMRealization minimize(const FMRealization& f);
PowerSeries coefficients(const FMRealization& f, int maxdeg);
// norms[k] = sum_{|w| = k} |r_w|^2 for k = 0..maxdeg, without enumerating words.
std::vector<double> graded_norms(const FMRealization& f, int maxdeg);
bool fm_equal(const FMRealization& f, const FMRealization& g, double tol = kDefaultTol);

struct Membership {
    bool member = false;
    double spr = 0.0;
    std::optional<double> radius; // 1/spr; empty when spr = 0
    int min_dim = 0;
};
Membership fock_membership(const FMRealization& f, double tol = kDefaultTol);

cplx char_poly_via_pencil(const FMRealization& f, const MatrixTuple& z, cplx lambda);
cplx char_poly_direct(const FMRealization& f, const MatrixTuple& z, cplx lambda);

Descriptor transpose_realization(const Descriptor& r);
FMRealization fm_transpose(const FMRealization& f);

// K = P + sum_j Z_j K W_j^*
Mat szego_kernel_apply(const MatrixTuple& z, const MatrixTuple& w, const Mat& p);

// W = C^* C + sum_k A_k^* W A_k
Mat observability_gramian(const FMRealization& f);
Mat observability_gramian_iterative(const FMRealization& f, double tol = 1e-14,
                                    int max_iter = 100000);
double hardy_norm_sq(const FMRealization& f);
FMRealization rescale(const FMRealization& f, double r);

} // namespace ncclark

#endif

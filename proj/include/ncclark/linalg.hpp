#ifndef NCCLARK_LINALG_HPP
#define NCCLARK_LINALG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncclark/errors.hpp"
#include "ncclark/random.hpp"
#include "ncclark/types.hpp"

namespace ncclark {

// ---- dense helpers ----

Mat kron(const Mat& a, const Mat& b);
Mat identity(int n);
double op_norm(const Mat& m);
// 1-norm condition estimate; infinity when exactly singular.
double cond_estimate(const Mat& m);
// Inverse with a conditioning check; `what` names the matrix in the error.
Mat inverse_checked(const Mat& m, const std::string& what, double max_cond = kSingularCond);
Mat solve_checked(const Mat& m, const Mat& rhs, const std::string& what,
                  double max_cond = kSingularCond);
cplx det(const Mat& m);
// Orthonormal basis of the column space, rank cut at reltol * sigma_max.
Mat orth(const Mat& m, double reltol = kRankTol, double abstol = 0.0);
// Orthonormal basis of the kernel; singular values below abstol count as zero.
Mat null_space(const Mat& m, double abstol);
int numerical_rank(const Mat& m, double reltol = kRankTol);
// Hermitian square root (and inverse square root) of a PSD matrix.
Mat psd_sqrt(const Mat& p);
Mat psd_inv_sqrt(const Mat& p);

// ---- words ----

Mat word_eval(const MatrixTuple& a, const Word& w);
Word reverse(const Word& w);
// All words of length <= maxlen over d letters, graded then lexicographic.
std::vector<Word> words_up_to(int d, int maxlen);
std::vector<Word> words_of_length(int d, int len);
bool valid_word(const Word& w, int d);

// ---- tuples ----

MatrixTuple transpose_tuple(const MatrixTuple& a);
MatrixTuple adjoint_tuple(const MatrixTuple& a);
MatrixTuple conjugate_tuple(const MatrixTuple& a);
MatrixTuple scale_tuple(const MatrixTuple& a, cplx s);
// S A_j S^{-1} for each j.
MatrixTuple similarity_transform(const MatrixTuple& a, const Mat& s);
// Q^* A_j Q for an orthonormal Q (restriction to an invariant subspace).
MatrixTuple compress(const MatrixTuple& a, const Mat& q);
MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b);

// ---- pencils ----

// I_m (x) I_n - sum_j A_j (x) Z_j, state space as the outer factor.
Mat pencil(const MatrixTuple& a, const MatrixTuple& z);
// Same pencil with the factors exchanged: I - sum_j Z_j (x) A_j.
Mat pencil_swapped(const MatrixTuple& a, const MatrixTuple& z);
// Solve pencil(A,Z) X = rhs; DomainError when the pencil is singular.
Mat pencil_solve(const MatrixTuple& a, const MatrixTuple& z, const Mat& rhs);

// ---- completely positive maps and norms ----

// sum_j A_j P A_j^*
Mat cp_apply(const MatrixTuple& a, const Mat& p);
// sum_j A_j^* P A_j
Mat cp_apply_adjoint(const MatrixTuple& a, const Mat& p);
Vec vec(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);
// Matrix of X -> sum_j A_j X B_j acting on column-stacked vec(X).
Mat matrize(const std::vector<std::pair<Mat, Mat>>& terms);
// sum_j conj(A_j) (x) A_j, the matrix of Ad_{A,A*}.
Mat matrize_ad(const MatrixTuple& a);

double joint_spectral_radius(const MatrixTuple& a);
// ||Ad^{(k)}(I)||^{1/2k}
double beurling_iterate(const MatrixTuple& a, int k);

double row_norm(const MatrixTuple& a);
double col_norm(const MatrixTuple& a);
bool is_row_contraction(const MatrixTuple& a, double tol = kDefaultTol);
bool is_strict_row_contraction(const MatrixTuple& a, double tol = kDefaultTol);
bool is_row_coisometry(const MatrixTuple& a, double tol = kDefaultTol);
bool is_column_isometry(const MatrixTuple& a, double tol = kDefaultTol);
bool is_pure(const MatrixTuple& a, double tol = kDefaultTol);

struct SimilarityResult {
    Mat s;              // the similarity
    MatrixTuple scaled; // S A_j S^{-1}
    int terms = 0;      // series terms summed
};

// P = sum_k rho^{-2k} Ad_{A,A*}^{(k)}(I), S = P^{-1/2}; then S A S^{-1} has row
// norm <= rho.
SimilarityResult similarity_to_strict_row_contraction(const MatrixTuple& a, double rho,
                                                      double tol = 1e-13,
                                                      int max_terms = 200000);

// ---- irreducibility, invariant subspaces, equivalence (subspace.cpp) ----

// Orthonormal basis (as vectorized n^2 columns) of the unital algebra
// generated by the tuple.
Mat algebra_basis(const MatrixTuple& a, double tol = kDefaultTol);
bool is_irreducible(const MatrixTuple& a, double tol = kDefaultTol);
// det of the commutator, the n = 2, d = 2 reducibility test.
cplx commutator_det(const Mat& a, const Mat& b);

// Smallest invariant subspace containing the columns of v.
SubspaceBasis cyclic_subspace(const MatrixTuple& a, const Mat& v, double tol = kDefaultTol);
SubspaceBasis largest_invariant_in(const MatrixTuple& a, const SubspaceBasis& s0,
                                   double tol = kDefaultTol);
std::vector<SubspaceBasis> minimal_invariant_decomposition(const MatrixTuple& a,
                                                           const SubspaceBasis& k,
                                                           double tol = kDefaultTol,
                                                           std::uint64_t seed = kDefaultSeed);
// Orthonormal basis of the kernel of an operator (relative cut).
SubspaceBasis kernel_basis(const Mat& m, double tol = kDefaultTol);
SubspaceBasis full_space(int n);

std::optional<Mat> joint_similarity(const MatrixTuple& a, const MatrixTuple& b,
                                    double tol = kDefaultTol,
                                    std::uint64_t seed = kDefaultSeed);

struct UnitaryEquivalenceOptions {
    int max_word_length = -1;   // default 2 n^2
    int exhaustive_length = 6;  // enumerate all *-words up to this length
    int random_words = 200;     // sampled beyond exhaustive_length
    std::uint64_t seed = kDefaultSeed;
};

// U with U A_j U^* = B_j, if one exists.
std::optional<Mat> joint_unitary_equivalence(const MatrixTuple& a, const MatrixTuple& b,
                                             double tol = kDefaultTol,
                                             UnitaryEquivalenceOptions opt = {});

} // namespace ncclark

#endif

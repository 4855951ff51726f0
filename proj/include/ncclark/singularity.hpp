#ifndef NCCLARK_SINGULARITY_HPP
#define NCCLARK_SINGULARITY_HPP

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ncclark/clark.hpp"

namespace ncclark {

struct RestrictionPiece {
    SubspaceBasis basis;
    MatrixTuple F;            // Q^* A_k Q; F^* is A^* restricted to the piece
    double invariance_residual = 0.0;
    double coisometry_residual = 0.0;
};

struct CoisometricRestrictions {
    SubspaceBasis ktilde;     // largest A^*-invariant subspace of ker(I - sum A A^*)
    std::vector<RestrictionPiece> pieces;
};

CoisometricRestrictions coisometric_restrictions(const MatrixTuple& a, double tol = kDefaultTol,
                                                 std::uint64_t seed = kDefaultSeed);

// Element T(zeta) of the Clark family as a row tuple: the adjoint of
// clark_family(seed, conj(zeta)).
MatrixTuple clark_point(const ClarkSeed& s, cplx zeta, double tol = kDefaultTol);

struct PieceEigen {
    int dim = 0;
    bool evaluated = false;
    double pencil_cond = 0.0;
    double distance = 0.0;    // min |ev - zeta|
    Eigen::VectorXcd eigenvalues;
    Vec eigenvector;          // eigenvector of b(F^t) closest to zeta
    std::string error;
};

struct EigencheckReport {
    cplx zeta;
    std::vector<PieceEigen> pieces;
    int geometric_multiplicity = 0; // of zeta for b at the direct sum of pieces
    bool holds = false;
};

EigencheckReport boundary_eigencheck(const ClarkSeed& s, cplx zeta, double tol = kDefaultTol);
// Same check for an explicit realization and row tuple.
EigencheckReport boundary_eigencheck(const FMRealization& b, const MatrixTuple& t, cplx zeta,
                                     double tol = kDefaultTol);

struct DetSplitting {
    cplx lhs, rhs;
    double rel_error = 0.0;
};
DetSplitting det_splitting(const ClarkSeed& s, cplx zeta, const MatrixTuple& z);

struct BoundaryLimit {
    std::vector<double> r_grid;
    std::vector<cplx> values;
    std::vector<double> kernel_norm_sq;
    cplx eigenvalue;
    double last_increment = 0.0;
    double kernel_norm_bound = 0.0;
};
std::vector<double> default_r_grid();
BoundaryLimit boundary_limit(const FMRealization& b, const MatrixTuple& a, const Vec& y,
                             const Vec& v, std::vector<double> r_grid = {},
                             double tol = 1e-8);

struct TracePoly {
    std::vector<cplx> coeffs; // p_w(z) = sum coeffs[k] z^k
    int degree = -1;          // -1 for the zero polynomial
    int bound = 0;            // floor(|w|/2) - 1
};
struct TracePolyReport {
    std::map<Word, TracePoly> polys;
    std::vector<cplx> defects; // <A_j x, x>
};
// A_j(z) = A_j (I + z x x^*), p_w(z) = (tr A(z)^w - tr A^w)/z.
TracePolyReport trace_perturbation_polys(const MatrixTuple& a, const Vec& x, int maxlen,
                                         double tol = kDefaultTol);

struct LocusReport {
    std::vector<cplx> similar_points;
    int tested = 0;
    int locus_size_estimate = 0;
    bool all_similar_verdict = false;
    bool cross_validated = true;
    bool degree_bound_consistent = true;
};
LocusReport similarity_locus(const MatrixTuple& a, const Vec& x, const std::vector<cplx>& samples,
                             double tol = kDefaultTol);

struct MutualSingularity {
    bool mutually_singular = true;
    int pieces_zeta = 0, pieces_xi = 0;
    int pure_rank_zeta = 0, pure_rank_xi = 0;
    std::optional<Mat> witness;
};
MutualSingularity mutual_singularity(const ClarkSeed& s, cplx zeta, cplx xi,
                                     double tol = kDefaultTol);

struct NcadReport {
    int n = 0;
    std::vector<cplx> points;
    std::vector<std::vector<bool>> singular; // pairwise; diagonal false
    std::vector<bool> irreducible;          // of the tuple T(zeta)
    std::vector<bool> dilation_irreducible; // exactly one co-isometric piece
    int singular_to_all = -1;               // index or -1
    bool clause_holds = false;
    bool inner = false;
    bool level_one_nonzero = false;
    std::optional<bool> irreducible_clause; // set when its hypotheses hold
};
NcadReport ncad_report(const ClarkSeed& s, std::vector<cplx> points = {},
                       double tol = kDefaultTol);

// det[F_1, F_2] for the family at sample points, fitted as a polynomial of
// degree <= deg; q restricts the pair to an invariant subspace.
std::vector<cplx> commutator_det_poly(const std::function<MatrixTuple(cplx)>& family, int deg,
                                      const std::optional<Mat>& q = std::nullopt);
// Least squares fit through user-supplied sample points.
std::vector<cplx> commutator_det_fit(const std::function<MatrixTuple(cplx)>& family, int deg,
                                     const std::vector<cplx>& samples,
                                     const std::optional<Mat>& q = std::nullopt);

} // namespace ncclark

#endif

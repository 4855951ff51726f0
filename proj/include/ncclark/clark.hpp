#ifndef NCCLARK_CLARK_HPP
#define NCCLARK_CLARK_HPP

#include <map>
#include <optional>
#include <vector>

#include "ncclark/fock.hpp"
#include "ncclark/realization.hpp"

namespace ncclark {

// A row contraction T on C^m, a nonzero vector x and a real shift t.
struct ClarkSeed {
    MatrixTuple T;
    Vec x;
    double t = 0.0;
};

void check_seed(const ClarkSeed& s, double tol = kDefaultTol);
cplx seed_b0(const ClarkSeed& s);

// <x, T^w x>
std::map<Word, cplx> moments(const ClarkSeed& s, const std::vector<Word>& words);

// H(Z) = 2 G(Z) - |x|^2 I + i t I, with G the descriptor (T^*, x, x).
Mat herglotz_eval(const ClarkSeed& s, const MatrixTuple& z);
// (H - I)(H + I)^{-1}
Mat cayley(const ClarkSeed& s, const MatrixTuple& z);

// Minimal FM realization of the Cayley transform, on the span of
// T^{*w} x over nonempty words.
FMRealization minratreal_fm(const ClarkSeed& s, double tol = kDefaultTol);

// Components T_k^* ((I - x x^*) + lambda x x^*).  Needs |x| = 1, t = 0.
MatrixTuple clark_family(const ClarkSeed& s, cplx lambda, double tol = kDefaultTol);

struct MoebiusResult {
    FMRealization fm0;
    cplx w;
};
// (b - w)(1 - conj(w) b)^{-1} with w = b(0).
MoebiusResult moebius_normalize(const FMRealization& f);

struct CyclicityReport {
    bool tstar_cyclic = false;
    bool t_cyclic = false;
    std::optional<bool> v_cyclic; // empty: undetermined
};
CyclicityReport cyclicity_report(const ClarkSeed& s, double tol = kDefaultTol);

struct ClassifyReport {
    int pure_rank = 0;
    bool singular = false;
    int ktilde_dim = 0;
    int dilation_summands = 0;
    bool ac_part_present = false;
    bool vn_type_absent = true;
    bool cuntz_type_l_absent = true;
    CyclicityReport cyclicity;
};
ClassifyReport classify(const ClarkSeed& s, double tol = kDefaultTol);

} // namespace ncclark

#endif

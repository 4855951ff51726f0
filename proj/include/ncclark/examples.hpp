#ifndef NCCLARK_EXAMPLES_HPP
#define NCCLARK_EXAMPLES_HPP

#include "ncclark/clark.hpp"

namespace ncclark::examples {

// T = (E12, E21) on C^2, x given.
ClarkSeed shift_pair(const Vec& x);
// T^* = (diag(1,-1), [[0,-1],[1,0]]) / sqrt(2), x = (alpha, beta).
ClarkSeed anticommuting(cplx alpha, cplx beta);
// T = (diag(1,0), diag(0,1)), x = (1,1)/sqrt(2).
ClarkSeed diagonal_pair();
// 4 x 4 row co-isometry with x = (1,1,1,1)/2.
ClarkSeed four_dim();
// shift_pair (+) anticommuting blocks with x spread over both.
ClarkSeed two_block();

// Random row co-isometry seed; |x| = 1, t = 0.
ClarkSeed random_coisometric(Rng& rng, int d, int m);
// Random row contraction seed with |x| and t random.
ClarkSeed random_contractive(Rng& rng, int d, int m);

} // namespace ncclark::examples

#endif

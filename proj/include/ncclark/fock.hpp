#ifndef NCCLARK_FOCK_HPP
#define NCCLARK_FOCK_HPP

#include <map>
#include <vector>

#include "ncclark/realization.hpp"

namespace ncclark {

// Words of length <= N over d letters, graded then lexicographic; index()
// gives the position of a word in that order.
class TruncatedFock {
public:
    TruncatedFock(int d, int N);

    int d() const { return d_; }
    int N() const { return N_; }
    int size() const { return static_cast<int>(words_.size()); }
    const std::vector<Word>& words() const { return words_; }
    int index(const Word& w) const;

private:
    int d_, N_;
    std::vector<Word> words_;
    std::map<Word, int> pos_;
};

// P_N L_k P_N for k = 1..d.
std::vector<Mat> left_shift_matrices(int d, int N);
// Left multiplication by the series, compressed to degree <= N.
Mat multiplier_matrix(const PowerSeries& s, int N);

struct InnerCertificate {
    bool inner = false;
    double h2 = 0.0;
    double phi_norm = 0.0;
    RowVec phi;
};
InnerCertificate inner_certificate(const FMRealization& f, double tol = kDefaultTol);

// Exact Gram matrix <b(L)e_u, b(L)e_v> over words |u|, |v| <= N.
Mat truncated_gram(const FMRealization& f, int N);

struct ContractivityProbe {
    double max_norm = 0.0;
    bool exceeds = false;
    int samples = 0;
    int skipped = 0;
};
ContractivityProbe contractivity_probe(const FMRealization& f, int samples,
                                       std::uint64_t seed = kDefaultSeed,
                                       double tol = kDefaultTol);

} // namespace ncclark

#endif

#pragma once

// Regular accessible sequences of the filtered nerve, magnitude chain
// complexes and magnitude homology, relative nerve complexes, pages of the
// magnitude-path spectral sequence, and exhaustion reports for increasing
// sequences of induced subdigraphs.

#include "pathhom/chain.hpp"
#include "pathhom/digraph.hpp"

#include <span>

namespace pathhom {

struct AccSeq {
    std::vector<int> vertices;  // regular: consecutive entries distinct
    long length;                // L = sum of consecutive distances (finite)
};

// All regular accessible sequences with dimension <= n_max and length
// <= l_max, bucketed by (dimension, length), lexicographic inside a bucket.
class MagnitudeBasis {
public:
    MagnitudeBasis(const Digraph& X, int n_max, long l_max);
    const std::vector<AccSeq>& at(int n, long l) const;
    int n_max() const { return n_max_; }
    long l_max() const { return l_max_; }
    const DistanceMatrix& dist() const { return dist_; }

private:
    int n_max_;
    long l_max_;
    DistanceMatrix dist_;
    std::vector<std::vector<std::vector<AccSeq>>> buckets_;  // [n][l]
    std::vector<AccSeq> empty_;
};

std::string seq_label(const Digraph& X, std::span<const int> seq);

// l-th magnitude chain complex: degree-n basis = regular sequences of length
// exactly l, differential keeps only the length-preserving regular faces.
ChainComplexZ mc_complex(const Digraph& X, long l);

// Degrees 0..l; MH^l_n vanishes for n > l structurally.
HomologySummary magnitude_homology(const Digraph& X, long l, std::span<const Ring> rings);

// Normalized chains of the nerve quotient by length windows: degree-n basis
// = regular sequences with b < L <= a and n <= n_cap.  b = -1 gives the
// absolute complex.
ChainComplexZ relative_complex(const Digraph& X, long a, long b, int n_cap);

// One page entry, keyed by filtration level s and total degree n.  The two
// classical index presentations are i = n - s, j = s.
struct MpssEntry {
    long s;
    int n;
    long rank;
};

// Page r >= 1 over a field.  E^1 at (s, n) is rank MH^s_n; for r >= 2 the
// entry is the rank of the image of H_n(N^s/N^{s-r}) -> H_n(N^{s+r-1}/N^{s-1}).
std::vector<MpssEntry> mpss_page(const Digraph& X, int r, long s_max, int n_max, Ring field);

struct ExhaustInvariant {
    bool use_ph = true;  // otherwise MH^l_n
    int n = 1;
    long l = 1;
};

struct ExhaustWindow {
    int from, to;
    long image_rank;
};

struct ExhaustReport {
    std::vector<long> stage_ranks;
    std::vector<ExhaustWindow> windows;
    long stabilized_image_rank;  // image rank across the last window
};

// Stages must be induced subdigraphs of their successors (checked by vertex
// name).  `reduced` subtracts the point class in degree 0.
ExhaustReport exhaustion_report(std::span<const Digraph> seq, ExhaustInvariant inv, int window,
                                bool reduced, Ring field);

}  // namespace pathhom

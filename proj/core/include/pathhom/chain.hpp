#pragma once

// Bounded chain complexes of free Z-modules with labelled bases, their
// homology over Z / Q / F_p, and image ranks of induced maps on homology.

#include "pathhom/smith.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace pathhom {

struct ComplexError : std::runtime_error {
    int degree;
    ComplexError(int degree_, const std::string& msg)
        : std::runtime_error(msg), degree(degree_) {}
};

class ChainComplexZ {
public:
    // boundary[n] maps degree n to degree n-1 for n = 1..n_max; boundary[0]
    // is ignored and may be empty.  Verifies shapes and dd = 0 eagerly;
    // violations name the degree and the offending basis label.
    ChainComplexZ(std::vector<SparseIntMatrix> boundary,
                  std::vector<std::vector<std::string>> basis_labels);

    int max_degree() const { return static_cast<int>(labels_.size()) - 1; }
    long dim(int n) const;
    const std::vector<std::string>& labels(int n) const { return labels_.at(n); }
    // zero matrix of the right shape outside 1..max_degree
    SparseIntMatrix boundary(int n) const;

private:
    std::vector<SparseIntMatrix> boundary_;
    std::vector<std::vector<std::string>> labels_;
};

struct HomologySummary {
    struct Degree {
        long free_rank = 0;
        std::vector<Int> torsion;                 // invariant factors > 1
        std::map<std::string, long> field_ranks;  // keyed by Ring::key()
    };
    std::vector<Degree> degrees;  // index = homological degree

    long field_rank(int n, const Ring& r) const;
};

// Homology in every degree 0..max_degree.  Ring Z yields free rank plus
// invariant factors via Smith form; fields yield ranks from nullity - rank.
HomologySummary homology(const ChainComplexZ& C, std::span<const Ring> rings);

// Rank over `field` of the image of H_n(src) -> H_n(dst) under a chain map
// given per degree in basis coordinates.  The map is verified to commute
// with the boundaries.
long induced_image_rank(const ChainComplexZ& src, const ChainComplexZ& dst,
                        std::span<const SparseIntMatrix> chain_map, int n, Ring field);

}  // namespace pathhom

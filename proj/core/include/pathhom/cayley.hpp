#pragma once

// Cayley digraphs of finitely generated abelian groups (and finite groups
// given by tables), length-bounded relation words, the groups F^l(G,S), the
// kernel rho, and the exterior-algebra rank formula for path homology of
// Cayley digraphs under the sum-distinctness hypotheses.

#include "pathhom/digraph.hpp"
#include "pathhom/fundamental.hpp"
#include "pathhom/groups.hpp"
#include "pathhom/smith.hpp"

#include <span>
#include <string>
#include <vector>

namespace pathhom {

// Distinct nonzero elements; rejects 0 and duplicates.
void validate_genset(const FGAbelian& G, std::span<const FGAbelian::Elem> S);
bool generates(const FGAbelian& G, std::span<const FGAbelian::Elem> S);

// Vertices are all group elements (finite G), arrows (g, g+s).
Digraph cayley_finite(const FGAbelian& G, std::span<const FGAbelian::Elem> S);
Digraph cayley_table(const FiniteGroup& G, std::span<const int> gens);

// Induced subdigraph on elements of word length <= R over S and -S;
// increasing R gives an exhaustion by induced subdigraphs.
Digraph cayley_ball(const FGAbelian& G, std::span<const FGAbelian::Elem> S, int R);

struct RelationWord {
    std::vector<int> left, right;  // generator indices; products agree in G
    bool operator==(const RelationWord&) const = default;
};

// One pair (word, bucket representative) per extra word among all words of
// length 0..l with a common product; generates Rel(G,S) ∩ W^l(S) up to the
// normal closure.
std::vector<RelationWord> w_l_relations(const FGAbelian& G, std::span<const FGAbelian::Elem> S,
                                        int l);

// F^l(G,S) = F(S) / <<Rel ∩ W^l>>; generators named s0, s1, ...
GroupPresentation f_l_presentation(const FGAbelian& G, std::span<const FGAbelian::Elem> S, int l);

struct HypothesesCheck {
    bool ok = false;
    std::string violation;
};

// (1) pairwise sums avoid S ∪ {0}; (2) unordered pair sums are collision-free.
HypothesesCheck check_abelian_ph_hypotheses(const FGAbelian& G,
                                                 std::span<const FGAbelian::Elem> S);

struct RhoKernel {
    SparseIntMatrix basis;  // |S| rows; columns are a lattice basis of rho
    long rank = 0;
};

// rho = Ker(Z^S -> G); free abelian, computed by Smith form.
RhoKernel rho_kernel(const FGAbelian& G, std::span<const FGAbelian::Elem> S);

// rank PH_n = C(rank rho, n); throws std::domain_error when the hypotheses
// fail (the formula would be unsound outside them).
std::vector<long> abelian_ph(const FGAbelian& G, std::span<const FGAbelian::Elem> S, int n_max);

// H_*(Z^r) ranks: binomial(r, n).
std::vector<long> group_homology_free_abelian(long r, int n_max);

}  // namespace pathhom

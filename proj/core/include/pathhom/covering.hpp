#pragma once

// l-coverings of digraphs: the fiber-distance criterion and its slow path
// oracle, covers built from fiber actions, path and homotopy lifting, deck
// transformation groups, and the Omega rank comparison across a 2-covering.

#include "pathhom/digraph.hpp"
#include "pathhom/smith.hpp"

#include <span>
#include <string>
#include <vector>

namespace pathhom {

struct CoveringCheck {
    bool ok = false;
    std::string counterexample;
};

// Criterion: for every ordered base pair (x, x') with dist <= l, the relation
// {(e, e') in fiber(x) x fiber(x') : dist_E(e, e') <= l} is the graph of a
// bijection realizing dist_X(x, x').  Throws if p is not a morphism.
CoveringCheck is_l_covering(const Digraph& total, const Digraph& base,
                            const std::vector<int>& projection, int l);

// Unique-endpoint criterion on all path pairs of length <= l; slow, kept as
// an independent test oracle.
CoveringCheck is_l_covering_paths(const Digraph& total, const Digraph& base,
                                  const std::vector<int>& projection, int l);

struct CoverMorphism {
    const Digraph* total = nullptr;
    const Digraph* base = nullptr;
    std::vector<int> projection;
    int validated_level = 0;                // largest l <= requested that holds
    std::vector<std::vector<int>> fibers;   // per base vertex, ascending
};

CoverMorphism make_cover(const Digraph& total, const Digraph& base,
                         std::vector<int> projection, int requested_level);

// Presheaf data: finite fiber per base vertex and, per base arrow (x', x), a
// bijection fiber(x) -> fiber(x').  NOTE the contravariant convention: the
// bijection transports along the arrow from its head back to its tail.
struct FiberAction {
    std::vector<std::vector<std::string>> fibers;    // labels per base vertex
    std::vector<std::vector<int>> arrow_action;      // per base arrow index
};

struct BuiltCover {
    Digraph total;                // vertex names "<base>@<label>"
    std::vector<int> projection;  // total index -> base index
};

// Total digraph with arrows (action(e), e) over each base arrow; requires the
// composed transports along any two length <= l paths with equal endpoints to
// agree (reports the violating path pair otherwise).
BuiltCover build_cover(const Digraph& X, int l, const FiberAction& action);

FiberAction extract_action(const CoverMorphism& p);

// Unique lift through the anchor e over base_path[k]; needs level >= 1.
std::vector<int> lift_path(const CoverMorphism& p, std::span<const int> base_path, int k, int e);

// Unique lifted homotopy with p g_i = f_i; needs level >= 2.
std::vector<DigraphMorphism> lift_homotopy(const CoverMorphism& p,
                                           std::span<const DigraphMorphism> steps,
                                           const DigraphMorphism& g0);

struct DeckGroup {
    std::vector<std::vector<int>> elements;  // vertex permutations of the total digraph
    std::vector<std::vector<int>> table;     // table[i][j] = index of elements[i] o elements[j]
    long order() const { return static_cast<long>(elements.size()); }
};

// All automorphisms of the total digraph commuting with the projection;
// requires a connected total digraph validated at level l.
DeckGroup deck_group(const CoverMorphism& p, int l);

// rank Omega_n(E, e, fiber(x)) and rank Omega_n(X, p(e), x) over the field;
// equal for validated 2-coverings.
std::pair<long, long> omega_rank_check(const CoverMorphism& p, int x, int e, int n, Ring field);

// "e -> x" lines mapping total vertices onto base vertices
std::vector<int> parse_vertex_map(const Digraph& total, const Digraph& base,
                                  std::string_view text);
// "fiber x: a b" and "arrow x' x: a->b, b->a" lines
FiberAction parse_action_file(const Digraph& base, std::string_view text);

}  // namespace pathhom

#pragma once

// Path chains Omega, path homology PH, functorially induced maps, and
// cluster decompositions refined by voltage labelings.

#include "pathhom/chain.hpp"
#include "pathhom/digraph.hpp"
#include "pathhom/fundamental.hpp"

#include <map>
#include <optional>
#include <span>

namespace pathhom {

// Omega_n inside the span of regular n-paths.  Paths are grouped by
// (tail, head) clusters; the column matrix is block diagonal across clusters
// and each block is the kernel of the interior-face defect system.  Over Z
// the column lattice is saturated.
struct OmegaBasis {
    int degree = 0;
    std::vector<std::vector<int>> paths;               // grouped by cluster, lex inside
    std::vector<std::pair<int, int>> clusters;         // (tail, head), ascending
    std::vector<std::pair<int, int>> cluster_paths;    // per cluster: [begin,end) in paths
    SparseIntMatrix columns;                           // #paths x rank
    std::vector<int> column_cluster;                   // cluster id per column
};

OmegaBasis omega_basis(const Digraph& X, int n, Ring ring);

// The chain complex (Omega_n, boundary) in the Omega column bases.  The
// boundary of every generator is verified to land in Omega_{n-1}.
ChainComplexZ omega_complex(const Digraph& X, int n_max, Ring ring);

HomologySummary ph(const Digraph& X, std::span<const Ring> rings, int n_max);

struct PhInducedResult {
    std::vector<SparseIntMatrix> chain_map;  // per degree, in Omega column bases
    std::vector<long> image_ranks;           // image rank on PH_n per degree
};

// Chain map of a digraph morphism: a path maps to its image sequence, which
// dies whenever two consecutive vertices collide (degeneracy quotient).
PhInducedResult ph_induced(const DigraphMorphism& f, int n_max, Ring field);

struct ClusterKey {
    std::string tail, head;
    std::optional<std::string> voltage;
    auto operator<=>(const ClusterKey&) const = default;
};

// Rank of the Omega_n component per cluster; with a voltage labeling
// (validated at l = 2) clusters are refined by the voltage of any
// representing path.
std::map<ClusterKey, long> cluster_decompose(const Digraph& X, int n,
                                             const VoltageLabeling* voltage, Ring ring);

}  // namespace pathhom

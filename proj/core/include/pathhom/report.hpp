#pragma once

// Canonical JSON emission for every CLI-facing result.  All orderings are
// deterministic so identical inputs produce byte-identical reports.

#include "pathhom/cayley.hpp"
#include "pathhom/chain.hpp"
#include "pathhom/covering.hpp"
#include "pathhom/digraph.hpp"
#include "pathhom/fundamental.hpp"
#include "pathhom/magnitude.hpp"
#include "pathhom/path_homology.hpp"

#include <string>

namespace pathhom {

// homology rows: degree, free_rank/torsion (when Z was computed), field_ranks
std::string homology_to_json(const HomologySummary& h, bool with_z);
std::string mpss_to_json(int page, Ring field, const std::vector<MpssEntry>& entries);
std::string clusters_to_json(const std::map<ClusterKey, long>& ranks);
std::string abelian_invariants_to_json(const AbelianInvariants& a);
std::string exhaust_to_json(const ExhaustReport& r);
std::string deck_to_json(const DeckGroup& g, const Digraph& total);
std::string relations_to_json(const std::vector<RelationWord>& rels,
                              const std::vector<std::string>& gen_names);

}  // namespace pathhom

#pragma once

// Presentations of l-fundamental groups (arrows modulo equality of all
// directed paths of length <= l with common endpoints), abelianization, and
// voltage labeling validation.

#include "pathhom/digraph.hpp"
#include "pathhom/groups.hpp"
#include "pathhom/intmat.hpp"

#include <string>
#include <vector>

namespace pathhom {

struct GroupPresentation {
    std::vector<std::string> generators;
    // signed 1-based generator indices; -k is the inverse of generator k-1
    std::vector<std::vector<int>> relators;
};

struct AbelianInvariants {
    long rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1
    bool operator==(const AbelianInvariants&) const = default;
};

// Generators are the arrows of X (named a0, a1, ... in arrow order).
// Relators: the arrows of a breadth-first spanning tree of the underlying
// undirected graph rooted at the basepoint, plus one relator per unordered
// pair of directed paths of length <= l with common endpoints.  l in 1..3.
GroupPresentation pi_l_presentation(const Digraph& X, int basepoint, int l);

// Substitution-only Tietze cleanup: generators killed by length-1 relators
// are removed from all words; no search.
GroupPresentation tietze_substitute(const GroupPresentation& p);

AbelianInvariants abelianization(const GroupPresentation& p);

// #arrows - #vertices + 1 for connected X (free case l = 1).
long pi1_free_rank(const Digraph& X);

// Arrow labels in a group; valid at level l when every pair of directed
// paths of length <= l with common endpoints has equal label products.
struct VoltageLabeling {
    VoltageGroup group;
    std::vector<VoltageGroup::Elem> arrow_values;  // by arrow index of X
};

struct VoltageCheckResult {
    bool ok = false;
    std::string violation;
};

VoltageCheckResult check_voltage(const Digraph& X, int l, const VoltageLabeling& V);

// Format: "group Z^k" or "group Z/d ..." or "group table" + "elements: ..."
// + "mult: a b = c" lines; then "arrow u v = <element>" per arrow.
VoltageLabeling parse_voltage_file(const Digraph& X, std::string_view text);

std::string presentation_text(const GroupPresentation& p);

}  // namespace pathhom

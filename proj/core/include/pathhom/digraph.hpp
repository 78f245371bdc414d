#pragma once

// Finite loop-free digraphs, the shortest-directed-path extended quasi-metric,
// box products, distance powers, morphisms and step homotopies.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pathhom {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Value in N ∪ {∞}.  Infinity absorbs addition and compares greater than
// every finite value; it is a sentinel, never a large integer.
class ExtDist {
public:
    constexpr ExtDist() : v_(kInf) {}
    constexpr explicit ExtDist(long long v) : v_(v) {}
    static constexpr ExtDist infinity() { return ExtDist{}; }

    constexpr bool finite() const { return v_ != kInf; }
    long long value() const {
        if (!finite()) throw std::logic_error("ExtDist: value() of infinity");
        return v_;
    }

    friend constexpr ExtDist operator+(ExtDist a, ExtDist b) {
        return (a.finite() && b.finite()) ? ExtDist(a.v_ + b.v_) : infinity();
    }
    friend constexpr bool operator==(ExtDist a, ExtDist b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(ExtDist a, ExtDist b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(ExtDist a, ExtDist b) {
        if (a.v_ == b.v_) return false;
        if (!a.finite()) return false;
        if (!b.finite()) return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator<=(ExtDist a, ExtDist b) { return a == b || a < b; }
    friend constexpr bool operator>(ExtDist a, ExtDist b) { return b < a; }
    friend constexpr bool operator>=(ExtDist a, ExtDist b) { return b <= a; }

    std::string str() const { return finite() ? std::to_string(v_) : "inf"; }

private:
    static constexpr long long kInf = -1;
    long long v_;
};

// Immutable finite digraph.  Vertices carry external string names; all
// internal computation uses dense indices in first-appearance order.
// Arrows are loop-free ordered index pairs, stored sorted and deduplicated.
class Digraph {
public:
    Digraph() = default;

    // Throws std::invalid_argument on loops, duplicate names, unknown endpoints.
    static Digraph make(std::vector<std::string> vertex_names,
                        std::vector<std::pair<std::string, std::string>> arrows);
    static Digraph make_indexed(std::vector<std::string> vertex_names,
                                std::vector<std::pair<int, int>> arrows);

    int num_vertices() const { return static_cast<int>(names_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }
    std::optional<int> index_of(std::string_view name) const;
    int require_index(std::string_view name) const;

    const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
    bool has_arrow(int u, int v) const;
    // membership in X1 = arrows ∪ diagonal
    bool in_x1(int u, int v) const { return u == v || has_arrow(u, v); }
    std::span<const int> out(int v) const;
    std::span<const int> in(int v) const;

    // connectivity of the underlying undirected graph
    bool connected() const;

    bool operator==(const Digraph& o) const {
        return names_ == o.names_ && arrows_ == o.arrows_;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::pair<int, int>> arrows_;
    std::vector<std::vector<int>> out_, in_;
};

struct DigraphParse {
    Digraph digraph;
    std::vector<std::string> warnings;  // e.g. deduplicated arrows
};

// Text format: '#' comments, "vertices: a b c" declarations, "a -> b" arrows.
// Malformed lines and loop arrows raise ParseError with the line number;
// duplicate arrows are deduplicated with a warning.
DigraphParse parse_digraph(std::string_view text);

// All-pairs shortest directed path lengths, BFS from every source.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const Digraph& X);
    ExtDist operator()(int u, int v) const { return d_[static_cast<size_t>(u) * n_ + v]; }
    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<ExtDist> d_;
};

// Product vertex (x,y) is named "(x,y)"; arrows move in exactly one factor.
Digraph box_product(const Digraph& X, const Digraph& Y);

// D_n(X): same vertices, arrows = pairs of distinct vertices at distance 1..n.
Digraph d_power(const Digraph& X, int n);

// Induced subdigraph on the given vertex names (order preserved).
Digraph induced(const Digraph& X, const std::vector<std::string>& W);
Digraph induced_by_index(const Digraph& X, const std::vector<int>& W);

// Total vertex map between fixed digraphs.  The referenced digraphs must
// outlive the morphism.
struct DigraphMorphism {
    const Digraph* source = nullptr;
    const Digraph* target = nullptr;
    std::vector<int> map;  // source index -> target index

    int operator()(int v) const { return map.at(v); }
};

struct MorphismCheck {
    bool ok = false;
    // first source arrow whose image is neither equal endpoints nor an arrow
    std::optional<std::pair<int, int>> violating_arrow;
};

MorphismCheck check_morphism(const std::vector<int>& f, const Digraph& X, const Digraph& Y);

// Equivalent criterion dist(f(x),f(x')) <= dist(x,x') on all pairs; kept as
// an independent route for property tests.
bool check_morphism_via_distances(const std::vector<int>& f, const Digraph& X, const Digraph& Y);

DigraphMorphism compose(const DigraphMorphism& f, const DigraphMorphism& g);  // g after f
DigraphMorphism identity_morphism(const Digraph& X);

// sup over source vertices of dist(f(x), g(x)) in the shared target
ExtDist morphism_distance(const DigraphMorphism& f, const DigraphMorphism& g);

bool one_step_homotopic(const DigraphMorphism& f, const DigraphMorphism& g);

struct HomotopyCheck {
    bool ok = false;
    int bad_index = -1;  // offending morphism or step
    std::string reason;
};

// (f_0,...,f_k) with every step a morphism and consecutive steps one-step
// homotopic in either direction.
HomotopyCheck is_homotopy(std::span<const DigraphMorphism> steps);

std::string digraph_to_json(const Digraph& X);

}  // namespace pathhom

#pragma once

// Shared fixtures: named digraphs from the worked examples, a deterministic
// RNG for the random corpora, and small brute-force oracles.

#include "pathhom/digraph.hpp"
#include "pathhom/intmat.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace testutil {

using pathhom::Digraph;

// splitmix64: stable across platforms, unlike <random> distributions
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    // true with probability num/den
    bool chance(int num, int den) { return below(den) < num; }
};

inline Digraph cycle(int n, const std::string& prefix = "") {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < n; ++i) {
        names.push_back(prefix + std::to_string(i));
        arrows.emplace_back(i, (i + 1) % n);
    }
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

inline Digraph line(int lo, int hi) {  // vertices lo..hi, arrows i -> i+1
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    for (int i = lo; i <= hi; ++i) names.push_back(std::to_string(i));
    for (int i = 0; i < hi - lo; ++i) arrows.emplace_back(i, i + 1);
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

// 0->1, 0->2, 1->3, 2->3
inline Digraph square() {
    return Digraph::make_indexed({"0", "1", "2", "3"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

// 0->1, 1->2, 0->2
inline Digraph triangle_chord() {
    return Digraph::make_indexed({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}});
}

// x_i -> x_{i+1}, x_i -> y_{i+1}, y_i -> x_{i+1}, y_i -> y_{i+1}, indices mod m
inline Digraph double_cycle(int m) {
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 0; i < m; ++i) names.push_back("y" + std::to_string(i));
    auto x = [&](int i) { return ((i % m) + m) % m; };
    auto y = [&](int i) { return m + ((i % m) + m) % m; };
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < m; ++i) {
        arrows.emplace_back(x(i), x(i + 1));
        arrows.emplace_back(x(i), y(i + 1));
        arrows.emplace_back(y(i), x(i + 1));
        arrows.emplace_back(y(i), y(i + 1));
    }
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

inline Digraph random_digraph(Rng& rng, int max_vertices, int density_pct) {
    int n = 1 + rng.below(max_vertices);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng.chance(density_pct, 100)) arrows.emplace_back(i, j);
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

// brute-force shortest directed path by breadth-limited enumeration
inline pathhom::ExtDist dist_oracle(const Digraph& X, int from, int to) {
    if (from == to) return pathhom::ExtDist(0);
    std::vector<std::vector<int>> frontier{{from}};
    std::vector<char> seen(X.num_vertices(), 0);
    seen[from] = 1;
    for (int len = 1; len <= X.num_vertices(); ++len) {
        std::vector<int> next;
        for (int v : frontier.back())
            for (int w : X.out(v)) {
                if (w == to) return pathhom::ExtDist(len);
                if (!seen[w]) {
                    seen[w] = 1;
                    next.push_back(w);
                }
            }
        if (next.empty()) break;
        frontier.push_back(std::move(next));
    }
    return pathhom::ExtDist::infinity();
}

}  // namespace testutil

#include "pathhom/cayley.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace pathhom {

void validate_genset(const FGAbelian& G, std::span<const FGAbelian::Elem> S) {
    std::set<FGAbelian::Elem> seen;
    for (const auto& s : S) {
        FGAbelian::Elem r = G.reduce(s);
        if (G.is_zero(r))
            throw std::invalid_argument("generating set contains the identity element");
        if (!seen.insert(r).second)
            throw std::invalid_argument("generating set contains duplicate element " + G.str(r));
    }
    if (S.empty()) throw std::invalid_argument("generating set is empty");
}

bool generates(const FGAbelian& G, std::span<const FGAbelian::Elem> S) {
    // surjectivity of Z^{|S|} + torsion relations -> Z^dims: all invariant
    // factors must be 1 and there must be dims of them
    int dims = G.dims();
    SparseIntMatrix m(dims, static_cast<int>(S.size()) + static_cast<int>(G.torsion.size()));
    for (size_t j = 0; j < S.size(); ++j) {
        FGAbelian::Elem e = G.reduce(S[j]);
        for (int i = 0; i < dims; ++i) m.set(i, static_cast<int>(j), Int(e[i]));
    }
    for (size_t t = 0; t < G.torsion.size(); ++t)
        m.set(G.free_rank + static_cast<int>(t), static_cast<int>(S.size() + t),
              Int(G.torsion[t]));
    auto f = smith(m).factors;
    return static_cast<int>(f.size()) == dims &&
           std::all_of(f.begin(), f.end(), [](const Int& d) { return d == 1; });
}

Digraph cayley_finite(const FGAbelian& G, std::span<const FGAbelian::Elem> S) {
    if (!G.finite()) throw std::invalid_argument("cayley_finite: group is infinite");
    validate_genset(G, S);
    if (!generates(G, S))
        throw std::invalid_argument("cayley_finite: set does not generate the group");

    auto elems = G.elements();
    std::map<FGAbelian::Elem, int> index;
    std::vector<std::string> names;
    for (const auto& e : elems) {
        index.emplace(e, static_cast<int>(names.size()));
        names.push_back(G.str(e));
    }
    std::vector<std::pair<int, int>> arrows;
    for (const auto& g : elems)
        for (const auto& s : S) arrows.emplace_back(index.at(g), index.at(G.add(g, s)));
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

Digraph cayley_table(const FiniteGroup& G, std::span<const int> gens) {
    for (int s : gens) {
        if (s <= 0 || s >= G.size())
            throw std::invalid_argument("cayley_table: generator index out of range or identity");
    }
    std::set<int> uniq(gens.begin(), gens.end());
    if (uniq.size() != gens.size())
        throw std::invalid_argument("cayley_table: duplicate generator");
    // orbit closure from the identity; finite monoid closure is a subgroup
    std::set<int> reach{0};
    std::deque<int> q{0};
    while (!q.empty()) {
        int g = q.front();
        q.pop_front();
        for (int s : gens) {
            int h = G.mul(g, s);
            if (reach.insert(h).second) q.push_back(h);
        }
    }
    if (static_cast<int>(reach.size()) != G.size())
        throw std::invalid_argument("cayley_table: set does not generate the group");

    std::vector<std::pair<int, int>> arrows;
    for (int g = 0; g < G.size(); ++g)
        for (int s : gens) arrows.emplace_back(g, G.mul(g, s));
    return Digraph::make_indexed(G.elem_names, std::move(arrows));
}

Digraph cayley_ball(const FGAbelian& G, std::span<const FGAbelian::Elem> S, int R) {
    validate_genset(G, S);
    if (!generates(G, S))
        throw std::invalid_argument("cayley_ball: set does not generate the group");
    if (R < 0) throw std::invalid_argument("cayley_ball: negative radius");

    std::set<FGAbelian::Elem> ball{G.zero()};
    std::deque<std::pair<FGAbelian::Elem, int>> q{{G.zero(), 0}};
    while (!q.empty()) {
        auto [g, d] = q.front();
        q.pop_front();
        if (d == R) continue;
        for (const auto& s : S)
            for (const auto& step : {G.add(g, s), G.add(g, G.neg(s))})
                if (ball.insert(step).second) q.emplace_back(step, d + 1);
    }

    std::map<FGAbelian::Elem, int> index;
    std::vector<std::string> names;
    for (const auto& e : ball) {  // set order = lexicographic = deterministic
        index.emplace(e, static_cast<int>(names.size()));
        names.push_back(G.str(e));
    }
    std::vector<std::pair<int, int>> arrows;
    for (const auto& g : ball)
        for (const auto& s : S) {
            auto it = index.find(G.add(g, s));
            if (it != index.end()) arrows.emplace_back(index.at(g), it->second);
        }
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

std::vector<RelationWord> w_l_relations(const FGAbelian& G, std::span<const FGAbelian::Elem> S,
                                        int l) {
    validate_genset(G, S);
    if (l < 0 || l > 4) throw std::invalid_argument("w_l_relations: l must be in 0..4");

    // enumerate words by length then lexicographically; bucket by product
    std::map<FGAbelian::Elem, std::vector<std::vector<int>>> buckets;
    std::vector<std::vector<int>> words{{}};
    buckets[G.zero()].push_back({});
    for (int len = 1; len <= l; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : words)
            for (int s = 0; s < static_cast<int>(S.size()); ++s) {
                std::vector<int> nw = w;
                nw.push_back(s);
                next.push_back(nw);
            }
        for (const auto& w : next) {
            FGAbelian::Elem prod = G.zero();
            for (int s : w) prod = G.add(prod, S[s]);
            buckets[prod].push_back(w);
        }
        words = std::move(next);
    }

    std::vector<RelationWord> out;
    for (const auto& [prod, ws] : buckets) {
        (void)prod;
        for (size_t i = 1; i < ws.size(); ++i) out.push_back({ws[i], ws[0]});
    }
    return out;
}

GroupPresentation f_l_presentation(const FGAbelian& G, std::span<const FGAbelian::Elem> S,
                                   int l) {
    GroupPresentation p;
    for (size_t i = 0; i < S.size(); ++i) p.generators.push_back("s" + std::to_string(i));
    for (const RelationWord& r : w_l_relations(G, S, l)) {
        std::vector<int> w;
        for (int s : r.left) w.push_back(s + 1);
        for (auto it = r.right.rbegin(); it != r.right.rend(); ++it) w.push_back(-(*it + 1));
        p.relators.push_back(std::move(w));
    }
    return p;
}

HypothesesCheck check_abelian_ph_hypotheses(const FGAbelian& G,
                                                 std::span<const FGAbelian::Elem> S) {
    validate_genset(G, S);
    std::set<FGAbelian::Elem> sset;
    for (const auto& s : S) sset.insert(G.reduce(s));

    for (const auto& s : S)
        for (const auto& s2 : S) {
            FGAbelian::Elem sum = G.add(s, s2);
            if (G.is_zero(sum))
                return {false, "sum " + G.str(s) + " + " + G.str(s2) + " = 0"};
            if (sset.count(sum))
                return {false, "sum " + G.str(s) + " + " + G.str(s2) + " = " + G.str(sum) +
                                   " lies in S"};
        }

    std::map<FGAbelian::Elem, std::pair<size_t, size_t>> sums;
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i; j < S.size(); ++j) {
            FGAbelian::Elem sum = G.add(S[i], S[j]);
            auto [it, fresh] = sums.emplace(sum, std::make_pair(i, j));
            if (!fresh)
                return {false, "pair sums collide: " + G.str(S[it->second.first]) + " + " +
                                   G.str(S[it->second.second]) + " = " + G.str(S[i]) + " + " +
                                   G.str(S[j])};
        }
    return {true, ""};
}

RhoKernel rho_kernel(const FGAbelian& G, std::span<const FGAbelian::Elem> S) {
    validate_genset(G, S);
    if (!generates(G, S))
        throw std::invalid_argument("rho_kernel: set does not generate the group");
    int dims = G.dims();
    int t = static_cast<int>(G.torsion.size());
    SparseIntMatrix m(dims, static_cast<int>(S.size()) + t);
    for (size_t j = 0; j < S.size(); ++j) {
        FGAbelian::Elem e = G.reduce(S[j]);
        for (int i = 0; i < dims; ++i) m.set(i, static_cast<int>(j), Int(e[i]));
    }
    for (int k = 0; k < t; ++k)
        m.set(G.free_rank + k, static_cast<int>(S.size()) + k, Int(G.torsion[k]));

    // the x-part of the stacked kernel is a lattice isomorphism onto rho
    SparseIntMatrix full = kernel_basis(m, Ring::z());
    RhoKernel out;
    out.basis = SparseIntMatrix(static_cast<int>(S.size()), full.cols());
    for (const auto& [rc, v] : full.entries())
        if (rc.first < static_cast<int>(S.size())) out.basis.set(rc.first, rc.second, v);
    out.rank = full.cols();
    return out;
}

std::vector<long> abelian_ph(const FGAbelian& G, std::span<const FGAbelian::Elem> S, int n_max) {
    auto chk = check_abelian_ph_hypotheses(G, S);
    if (!chk.ok)
        throw std::domain_error("abelian rank formula does not apply: " + chk.violation);
    return group_homology_free_abelian(rho_kernel(G, S).rank, n_max);
}

std::vector<long> group_homology_free_abelian(long r, int n_max) {
    if (r < 0 || n_max < 0) throw std::invalid_argument("negative rank or degree");
    std::vector<long> out(n_max + 1, 0);
    // binomial(r, n) by Pascal rows
    std::vector<long> row{1};
    for (long i = 1; i <= r; ++i) {
        std::vector<long> next(row.size() + 1, 1);
        for (size_t j = 1; j < row.size(); ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    for (int n = 0; n <= n_max; ++n)
        out[n] = n < static_cast<int>(row.size()) ? row[n] : 0;
    return out;
}

}  // namespace pathhom

#include "pathhom/fundamental.hpp"
#include "pathhom/smith.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace pathhom {

namespace {

int arrow_index(const Digraph& X, int u, int v) {
    auto it = std::lower_bound(X.arrows().begin(), X.arrows().end(), std::make_pair(u, v));
    if (it == X.arrows().end() || *it != std::make_pair(u, v))
        throw std::logic_error("arrow_index: no such arrow");
    return static_cast<int>(it - X.arrows().begin());
}

// directed paths from u of length 0..l as arrow index sequences, bucketed by
// endpoint; DFS in ascending vertex order
void paths_from(const Digraph& X, int u, int l,
                std::vector<std::vector<std::vector<int>>>& by_endpoint) {
    std::vector<int> word;
    auto dfs = [&](auto&& self, int at, int depth) -> void {
        by_endpoint[at].push_back(word);
        if (depth == l) return;
        for (int w : X.out(at)) {
            word.push_back(arrow_index(X, at, w));
            self(self, w, depth + 1);
            word.pop_back();
        }
    };
    dfs(dfs, u, 0);
}

std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> r(w.rbegin(), w.rend());
    for (int& x : r) x = -x;
    return r;
}

std::vector<int> canonical_relator(std::vector<int> w) {
    std::vector<int> inv = inverse_word(w);
    return std::min(w, inv);
}

}  // namespace

GroupPresentation pi_l_presentation(const Digraph& X, int basepoint, int l) {
    if (l < 1 || l > 3) throw std::invalid_argument("pi_l_presentation: l must be in 1..3");
    if (basepoint < 0 || basepoint >= X.num_vertices())
        throw std::invalid_argument("pi_l_presentation: bad basepoint");
    if (!X.connected())
        throw std::invalid_argument("pi_l_presentation: digraph is not connected");

    GroupPresentation p;
    for (int i = 0; i < X.num_arrows(); ++i) p.generators.push_back("a" + std::to_string(i));

    // breadth-first spanning tree of the underlying undirected graph,
    // neighbors in ascending vertex order, forward arrows preferred
    std::set<std::vector<int>> relators;
    {
        std::vector<char> seen(X.num_vertices(), 0);
        std::deque<int> q{basepoint};
        seen[basepoint] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            std::vector<int> nb;
            for (int w : X.out(v)) nb.push_back(w);
            for (int w : X.in(v)) nb.push_back(w);
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            for (int w : nb) {
                if (seen[w]) continue;
                seen[w] = 1;
                int e = X.has_arrow(v, w) ? arrow_index(X, v, w) : arrow_index(X, w, v);
                relators.insert({e + 1});
                q.push_back(w);
            }
        }
    }

    // one relator per unordered pair of directed paths of length <= l with
    // common endpoints (the empty path participates when tail = head)
    for (int u = 0; u < X.num_vertices(); ++u) {
        std::vector<std::vector<std::vector<int>>> by_endpoint(X.num_vertices());
        paths_from(X, u, l, by_endpoint);
        for (int v = 0; v < X.num_vertices(); ++v) {
            const auto& ps = by_endpoint[v];
            for (size_t i = 0; i < ps.size(); ++i)
                for (size_t j = i + 1; j < ps.size(); ++j) {
                    std::vector<int> w;
                    for (int e : ps[i]) w.push_back(e + 1);
                    for (auto it = ps[j].rbegin(); it != ps[j].rend(); ++it)
                        w.push_back(-(*it + 1));
                    if (w.empty()) continue;
                    relators.insert(canonical_relator(std::move(w)));
                }
        }
    }

    p.relators.assign(relators.begin(), relators.end());
    return p;
}

GroupPresentation tietze_substitute(const GroupPresentation& p) {
    std::vector<char> dead(p.generators.size(), 0);
    std::vector<std::vector<int>> rel = p.relators;
    for (;;) {
        bool changed = false;
        for (const auto& r : rel)
            if (r.size() == 1) {
                int g = std::abs(r[0]) - 1;
                if (!dead[g]) {
                    dead[g] = 1;
                    changed = true;
                }
            }
        if (!changed) break;
        std::vector<std::vector<int>> next;
        for (auto& r : rel) {
            std::vector<int> w;
            for (int x : r)
                if (!dead[std::abs(x) - 1]) w.push_back(x);
            if (!w.empty()) next.push_back(std::move(w));
        }
        rel = std::move(next);
    }

    GroupPresentation out;
    std::vector<int> newindex(p.generators.size(), -1);
    for (size_t i = 0; i < p.generators.size(); ++i)
        if (!dead[i]) {
            newindex[i] = static_cast<int>(out.generators.size());
            out.generators.push_back(p.generators[i]);
        }
    std::set<std::vector<int>> uniq;
    for (const auto& r : rel) {
        std::vector<int> w;
        for (int x : r) {
            int g = newindex[std::abs(x) - 1] + 1;
            w.push_back(x > 0 ? g : -g);
        }
        uniq.insert(canonical_relator(std::move(w)));
    }
    out.relators.assign(uniq.begin(), uniq.end());
    return out;
}

AbelianInvariants abelianization(const GroupPresentation& p) {
    SparseIntMatrix m(static_cast<int>(p.generators.size()),
                      static_cast<int>(p.relators.size()));
    for (int j = 0; j < static_cast<int>(p.relators.size()); ++j)
        for (int x : p.relators[j]) m.add(std::abs(x) - 1, j, Int(x > 0 ? 1 : -1));
    SmithResult s = smith(m);
    AbelianInvariants inv;
    inv.rank = static_cast<long>(p.generators.size()) - static_cast<long>(s.factors.size());
    for (const Int& d : s.factors)
        if (d > 1) inv.torsion.push_back(d);
    return inv;
}

long pi1_free_rank(const Digraph& X) {
    if (!X.connected()) throw std::invalid_argument("pi1_free_rank: digraph is not connected");
    return X.num_arrows() - X.num_vertices() + 1;
}

VoltageCheckResult check_voltage(const Digraph& X, int l, const VoltageLabeling& V) {
    if (l < 1) throw std::invalid_argument("check_voltage: l must be >= 1");
    if (static_cast<int>(V.arrow_values.size()) != X.num_arrows())
        throw std::invalid_argument("check_voltage: assignment not total on arrows");

    for (int u = 0; u < X.num_vertices(); ++u) {
        // every endpoint keeps the first product seen; any later mismatch is
        // a violated relation pair
        std::vector<std::optional<VoltageGroup::Elem>> prod(X.num_vertices());
        std::vector<std::vector<int>> witness(X.num_vertices());
        std::vector<int> word;

        std::optional<VoltageCheckResult> bad;
        auto dfs = [&](auto&& self, int at, int depth, VoltageGroup::Elem acc) -> void {
            if (bad) return;
            if (!prod[at]) {
                prod[at] = acc;
                witness[at] = word;
            } else if (!(*prod[at] == acc)) {
                std::ostringstream os;
                os << "paths from " << X.name(u) << " to " << X.name(at)
                   << " carry different voltages: ";
                auto show = [&](const std::vector<int>& w) {
                    os << "[";
                    for (size_t i = 0; i < w.size(); ++i) {
                        auto [a, b] = X.arrows()[w[i]];
                        os << (i ? " " : "") << X.name(a) << "->" << X.name(b);
                    }
                    os << "]";
                };
                show(witness[at]);
                os << " vs ";
                show(word);
                bad = VoltageCheckResult{false, os.str()};
                return;
            }
            if (depth == l) return;
            for (int w : X.out(at)) {
                int e = arrow_index(X, at, w);
                word.push_back(e);
                self(self, w, depth + 1, V.group.mul(acc, V.arrow_values[e]));
                word.pop_back();
            }
        };
        dfs(dfs, u, 0, V.group.identity());
        if (bad) return *bad;
    }
    return {true, ""};
}

namespace {

std::string strip_copy(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

}  // namespace

VoltageLabeling parse_voltage_file(const Digraph& X, std::string_view text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        std::istringstream in{std::string(text)};
        while (std::getline(in, cur)) {
            cur = strip_copy(cur.substr(0, cur.find('#')));
            if (!cur.empty()) lines.push_back(cur);
        }
    }
    if (lines.empty() || lines[0].rfind("group", 0) != 0)
        throw std::invalid_argument("voltage file must start with a 'group ...' declaration");

    std::optional<VoltageGroup> group;
    size_t at = 1;
    std::string decl = strip_copy(lines[0].substr(5));
    if (decl == "table") {
        if (at >= lines.size() || lines[at].rfind("elements:", 0) != 0)
            throw std::invalid_argument("group table needs an 'elements:' line");
        std::vector<std::string> names;
        {
            std::istringstream in(lines[at].substr(9));
            std::string tok;
            while (in >> tok) names.push_back(tok);
        }
        ++at;
        std::vector<std::vector<int>> mult(names.size(), std::vector<int>(names.size(), -1));
        auto idx = [&](const std::string& n) {
            for (size_t i = 0; i < names.size(); ++i)
                if (names[i] == n) return static_cast<int>(i);
            throw std::invalid_argument("unknown table element '" + n + "'");
        };
        while (at < lines.size() && lines[at].rfind("mult:", 0) == 0) {
            std::istringstream in(lines[at].substr(5));
            std::string a, b, eq, c;
            if (!(in >> a >> b >> eq >> c) || eq != "=")
                throw std::invalid_argument("bad mult line '" + lines[at] + "'");
            mult[idx(a)][idx(b)] = idx(c);
            ++at;
        }
        for (const auto& row : mult)
            for (int v : row)
                if (v < 0) throw std::invalid_argument("multiplication table is incomplete");
        group = VoltageGroup::table(FiniteGroup::make(std::move(names), std::move(mult)));
    } else {
        group = VoltageGroup::abelian(parse_abelian_group(decl));
    }

    VoltageLabeling lab{*group, std::vector<VoltageGroup::Elem>(X.num_arrows())};
    std::vector<char> assigned(X.num_arrows(), 0);
    for (; at < lines.size(); ++at) {
        std::istringstream in(lines[at]);
        std::string kw, u, v, eq;
        if (!(in >> kw >> u >> v >> eq) || kw != "arrow" || eq != "=")
            throw std::invalid_argument("bad voltage line '" + lines[at] + "'");
        std::string rest;
        std::getline(in, rest);
        int e = arrow_index(X, X.require_index(u), X.require_index(v));
        lab.arrow_values[e] = group->parse(strip_copy(rest));
        assigned[e] = 1;
    }
    for (int e = 0; e < X.num_arrows(); ++e)
        if (!assigned[e]) {
            auto [a, b] = X.arrows()[e];
            throw std::invalid_argument("voltage missing for arrow " + X.name(a) + " -> " +
                                        X.name(b));
        }
    return lab;
}

std::string presentation_text(const GroupPresentation& p) {
    std::ostringstream os;
    os << "gens:";
    for (const auto& g : p.generators) os << " " << g;
    os << "\n";
    for (const auto& r : p.relators) {
        os << "rel:";
        for (int x : r) {
            std::string g = p.generators.at(std::abs(x) - 1);
            if (x < 0 && !g.empty()) g[0] = static_cast<char>(std::toupper(g[0]));
            os << " " << g;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pathhom

#include "pathhom/covering.hpp"
#include "pathhom/path_homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pathhom {

namespace {

void require_morphism(const Digraph& total, const Digraph& base, const std::vector<int>& p) {
    auto chk = check_morphism(p, total, base);
    if (!chk.ok) {
        auto [u, v] = *chk.violating_arrow;
        throw std::invalid_argument("projection is not a digraph morphism (arrow " +
                                    total.name(u) + " -> " + total.name(v) + ")");
    }
}

std::vector<std::vector<int>> fibers_of(const Digraph& total, const Digraph& base,
                                        const std::vector<int>& p) {
    std::vector<std::vector<int>> f(base.num_vertices());
    for (int e = 0; e < total.num_vertices(); ++e) f[p[e]].push_back(e);
    return f;
}

}  // namespace

CoveringCheck is_l_covering(const Digraph& total, const Digraph& base,
                            const std::vector<int>& projection, int l) {
    if (l < 1) throw std::invalid_argument("is_l_covering: l must be >= 1");
    require_morphism(total, base, projection);
    DistanceMatrix de(total), dx(base);
    auto fibers = fibers_of(total, base, projection);

    for (int x = 0; x < base.num_vertices(); ++x) {
        for (int x2 = 0; x2 < base.num_vertices(); ++x2) {
            ExtDist d = dx(x, x2);
            if (!(d <= ExtDist(l))) continue;
            std::vector<int> partner(fibers[x].size(), -1);
            std::vector<char> hit(fibers[x2].size(), 0);
            for (size_t i = 0; i < fibers[x].size(); ++i) {
                int e = fibers[x][i];
                for (size_t j = 0; j < fibers[x2].size(); ++j) {
                    int e2 = fibers[x2][j];
                    if (!(de(e, e2) <= ExtDist(l))) continue;
                    if (partner[i] != -1)
                        return {false, "fiber pair (" + total.name(partner[i]) + "," +
                                           total.name(e2) + ") over (" + base.name(x) + "," +
                                           base.name(x2) + ") both within distance " +
                                           std::to_string(l) + " of " + total.name(e)};
                    partner[i] = e2;
                    if (hit[j])
                        return {false, "two fiber elements over " + base.name(x) +
                                           " reach " + total.name(e2) + " within distance " +
                                           std::to_string(l)};
                    hit[j] = 1;
                    if (!(de(e, e2) == d))
                        return {false, "dist(" + total.name(e) + "," + total.name(e2) + ") = " +
                                           de(e, e2).str() + " but dist(" + base.name(x) + "," +
                                           base.name(x2) + ") = " + d.str()};
                }
                if (partner[i] == -1)
                    return {false, "no partner for " + total.name(e) + " over (" + base.name(x) +
                                       "," + base.name(x2) + ") within distance " +
                                       std::to_string(l)};
            }
            if (fibers[x].size() != fibers[x2].size())
                return {false, "fibers over " + base.name(x) + " and " + base.name(x2) +
                                   " have different sizes"};
        }
    }
    return {true, ""};
}

CoveringCheck is_l_covering_paths(const Digraph& total, const Digraph& base,
                                  const std::vector<int>& projection, int l) {
    if (l < 1) throw std::invalid_argument("is_l_covering_paths: l must be >= 1");
    require_morphism(total, base, projection);
    auto fibers = fibers_of(total, base, projection);

    // 1-covering: unique arrow lifts through tails and heads
    for (auto [x, x2] : base.arrows()) {
        for (int e : fibers[x]) {
            int count = 0;
            for (int w : total.out(e))
                if (projection[w] == x2) ++count;
            if (count != 1)
                return {false, "arrow (" + base.name(x) + "," + base.name(x2) + ") has " +
                                   std::to_string(count) + " lifts with tail " + total.name(e)};
        }
        for (int e2 : fibers[x2]) {
            int count = 0;
            for (int w : total.in(e2))
                if (projection[w] == x) ++count;
            if (count != 1)
                return {false, "arrow (" + base.name(x) + "," + base.name(x2) + ") has " +
                                   std::to_string(count) + " lifts with head " + total.name(e2)};
        }
    }

    // unique-endpoint condition on all path pairs of length <= l, bucketed
    std::map<std::pair<int, int>, std::set<int>> end_by_start;   // (e0, p(en)) -> {en}
    std::map<std::pair<int, int>, std::set<int>> start_by_end;   // (p(e0), en) -> {e0}
    std::vector<int> seq;
    auto dfs = [&](auto&& self, int at, int depth) -> void {
        end_by_start[{seq.front(), projection[at]}].insert(at);
        start_by_end[{projection[seq.front()], at}].insert(seq.front());
        if (depth == l) return;
        for (int w : total.out(at)) {
            seq.push_back(w);
            self(self, w, depth + 1);
            seq.pop_back();
        }
    };
    for (int e = 0; e < total.num_vertices(); ++e) {
        seq.assign(1, e);
        dfs(dfs, e, 0);
    }
    for (const auto& [key, ends] : end_by_start)
        if (ends.size() > 1)
            return {false, "paths from " + total.name(key.first) + " over endpoint " +
                               base.name(key.second) + " reach distinct lifts"};
    for (const auto& [key, starts] : start_by_end)
        if (starts.size() > 1)
            return {false, "paths onto " + total.name(key.second) + " over start " +
                               base.name(key.first) + " leave distinct lifts"};
    return {true, ""};
}

CoverMorphism make_cover(const Digraph& total, const Digraph& base, std::vector<int> projection,
                         int requested_level) {
    if (static_cast<int>(projection.size()) != total.num_vertices())
        throw std::invalid_argument("make_cover: projection not total");
    require_morphism(total, base, projection);
    CoverMorphism p{&total, &base, std::move(projection), 0, {}};
    p.fibers = fibers_of(total, base, p.projection);
    for (int l = requested_level; l >= 1; --l) {
        if (is_l_covering(total, base, p.projection, l).ok) {
            p.validated_level = l;
            break;
        }
    }
    return p;
}

BuiltCover build_cover(const Digraph& X, int l, const FiberAction& action) {
    if (l < 1) throw std::invalid_argument("build_cover: l must be >= 1");
    if (static_cast<int>(action.fibers.size()) != X.num_vertices())
        throw std::invalid_argument("build_cover: one fiber per base vertex expected");
    if (static_cast<int>(action.arrow_action.size()) != X.num_arrows())
        throw std::invalid_argument("build_cover: one bijection per base arrow expected");
    for (int a = 0; a < X.num_arrows(); ++a) {
        auto [tail, head] = X.arrows()[a];
        const auto& sigma = action.arrow_action[a];
        if (sigma.size() != action.fibers[head].size())
            throw std::invalid_argument("build_cover: action of arrow " + X.name(tail) + " -> " +
                                        X.name(head) + " has wrong domain size");
        std::vector<char> seen(action.fibers[tail].size(), 0);
        for (int img : sigma) {
            if (img < 0 || img >= static_cast<int>(action.fibers[tail].size()) || seen[img])
                throw std::invalid_argument("build_cover: action of arrow " + X.name(tail) +
                                            " -> " + X.name(head) + " is not a bijection");
            seen[img] = 1;
        }
        if (action.fibers[tail].size() != action.fibers[head].size())
            throw std::invalid_argument("build_cover: fibers of " + X.name(tail) + " and " +
                                        X.name(head) + " differ in size");
    }

    // transport along a path (x_0,...,x_k) sends fiber(x_k) to fiber(x_0) by
    // composing the arrow actions; any two <= l paths with equal endpoints
    // must transport identically (this is the rel_l consistency of the data)
    auto arrow_pos = [&](int u, int v) {
        auto it = std::lower_bound(X.arrows().begin(), X.arrows().end(), std::make_pair(u, v));
        return static_cast<int>(it - X.arrows().begin());
    };
    std::string violation;
    for (int u = 0; u < X.num_vertices() && violation.empty(); ++u) {
        std::map<int, std::pair<std::vector<int>, std::vector<int>>> seen;  // end -> (transport, path)
        std::vector<int> path{u};
        std::vector<int> id(action.fibers[u].size());
        for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
        auto dfs = [&](auto&& self, int at, const std::vector<int>& transport, int depth) -> void {
            if (!violation.empty()) return;
            auto it = seen.find(at);
            if (it == seen.end()) {
                seen.emplace(at, std::make_pair(transport, path));
            } else if (it->second.first != transport) {
                std::ostringstream os;
                os << "inconsistent action: paths";
                for (const auto& pp : {it->second.second, path}) {
                    os << " [";
                    for (size_t i = 0; i < pp.size(); ++i) os << (i ? " " : "") << X.name(pp[i]);
                    os << "]";
                }
                os << " transport fibers differently";
                violation = os.str();
                return;
            }
            if (depth == l) return;
            for (int w : X.out(at)) {
                const auto& sigma = action.arrow_action[arrow_pos(at, w)];
                // transport along the extended path: first cross (at, w), then
                // the already accumulated part
                std::vector<int> ext(sigma.size());
                for (size_t i = 0; i < sigma.size(); ++i) ext[i] = transport[sigma[i]];
                path.push_back(w);
                self(self, w, ext, depth + 1);
                path.pop_back();
            }
        };
        dfs(dfs, u, id, 0);
    }
    if (!violation.empty()) throw std::invalid_argument("build_cover: " + violation);

    // total digraph: vertex per fiber element, arrows (sigma(e), e)
    std::vector<std::string> names;
    std::vector<int> proj;
    std::vector<std::vector<int>> vid(X.num_vertices());
    for (int x = 0; x < X.num_vertices(); ++x)
        for (size_t i = 0; i < action.fibers[x].size(); ++i) {
            vid[x].push_back(static_cast<int>(names.size()));
            names.push_back(X.name(x) + "@" + action.fibers[x][i]);
            proj.push_back(x);
        }
    std::vector<std::pair<int, int>> arrows;
    for (int a = 0; a < X.num_arrows(); ++a) {
        auto [tail, head] = X.arrows()[a];
        const auto& sigma = action.arrow_action[a];
        for (size_t e = 0; e < sigma.size(); ++e)
            arrows.emplace_back(vid[tail][sigma[e]], vid[head][e]);
    }
    BuiltCover out{Digraph::make_indexed(std::move(names), std::move(arrows)), std::move(proj)};
    auto chk = is_l_covering(out.total, X, out.projection, l);
    if (!chk.ok)
        throw std::logic_error("build_cover: output failed its own covering check: " +
                               chk.counterexample);
    return out;
}

FiberAction extract_action(const CoverMorphism& p) {
    const Digraph& E = *p.total;
    const Digraph& X = *p.base;
    FiberAction act;
    act.fibers.resize(X.num_vertices());
    std::vector<int> pos_in_fiber(E.num_vertices(), -1);
    for (int x = 0; x < X.num_vertices(); ++x)
        for (size_t i = 0; i < p.fibers[x].size(); ++i) {
            act.fibers[x].push_back(E.name(p.fibers[x][i]));
            pos_in_fiber[p.fibers[x][i]] = static_cast<int>(i);
        }
    for (auto [tail, head] : X.arrows()) {
        std::vector<int> sigma(p.fibers[head].size(), -1);
        for (size_t j = 0; j < p.fibers[head].size(); ++j) {
            int e = p.fibers[head][j];
            for (int w : E.in(e))
                if (p.projection[w] == tail) {
                    if (sigma[j] != -1)
                        throw std::invalid_argument("extract_action: not a 1-covering");
                    sigma[j] = pos_in_fiber[w];
                }
            if (sigma[j] == -1) throw std::invalid_argument("extract_action: not a 1-covering");
        }
        act.arrow_action.push_back(std::move(sigma));
    }
    return act;
}

std::vector<int> lift_path(const CoverMorphism& p, std::span<const int> base_path, int k, int e) {
    const Digraph& E = *p.total;
    const Digraph& X = *p.base;
    if (p.validated_level < 1) throw std::invalid_argument("lift_path: cover not validated");
    if (base_path.empty()) throw std::invalid_argument("lift_path: empty path");
    if (k < 0 || k >= static_cast<int>(base_path.size()))
        throw std::invalid_argument("lift_path: anchor out of range");
    for (size_t i = 0; i + 1 < base_path.size(); ++i)
        if (!X.has_arrow(base_path[i], base_path[i + 1]))
            throw std::invalid_argument("lift_path: base sequence is not a path");
    if (p.projection[e] != base_path[k])
        throw std::invalid_argument("lift_path: anchor lies in the wrong fiber");

    std::vector<int> lift(base_path.size(), -1);
    lift[k] = e;
    for (int i = k; i + 1 < static_cast<int>(base_path.size()); ++i) {
        int next = -1;
        for (int w : E.out(lift[i]))
            if (p.projection[w] == base_path[i + 1]) {
                if (next != -1) throw std::logic_error("lift_path: non-unique arrow lift");
                next = w;
            }
        if (next == -1) throw std::logic_error("lift_path: missing arrow lift");
        lift[i + 1] = next;
    }
    for (int i = k; i - 1 >= 0; --i) {
        int prev = -1;
        for (int w : E.in(lift[i]))
            if (p.projection[w] == base_path[i - 1]) {
                if (prev != -1) throw std::logic_error("lift_path: non-unique arrow lift");
                prev = w;
            }
        if (prev == -1) throw std::logic_error("lift_path: missing arrow lift");
        lift[i - 1] = prev;
    }
    return lift;
}

std::vector<DigraphMorphism> lift_homotopy(const CoverMorphism& p,
                                           std::span<const DigraphMorphism> steps,
                                           const DigraphMorphism& g0) {
    const Digraph& E = *p.total;
    if (p.validated_level < 2)
        throw std::invalid_argument("lift_homotopy: cover is not a validated 2-covering");
    auto hc = is_homotopy(steps);
    if (!hc.ok) throw std::invalid_argument("lift_homotopy: steps are not a homotopy: " + hc.reason);
    const Digraph& W = *steps[0].source;
    if (!(*g0.source == W) || !(*g0.target == E))
        throw std::invalid_argument("lift_homotopy: g0 has wrong source or target");
    for (int w = 0; w < W.num_vertices(); ++w)
        if (p.projection[g0.map[w]] != steps[0].map[w])
            throw std::invalid_argument("lift_homotopy: g0 is not a lift of the first step");

    std::vector<DigraphMorphism> lifts{g0};
    for (size_t i = 0; i + 1 < steps.size(); ++i) {
        const auto& f0 = steps[i];
        const auto& f1 = steps[i + 1];
        const auto& gi = lifts.back();
        DigraphMorphism gn{&W, &E, std::vector<int>(W.num_vertices(), -1)};
        bool forward = morphism_distance(f0, f1) <= ExtDist(1);
        for (int w = 0; w < W.num_vertices(); ++w) {
            int cur = gi.map[w];
            int target_base = f1.map[w];
            if (f0.map[w] == target_base) {
                gn.map[w] = cur;
                continue;
            }
            int found = -1;
            auto scan = forward ? E.out(cur) : E.in(cur);
            for (int cand : scan)
                if (p.projection[cand] == target_base) {
                    if (found != -1) throw std::logic_error("lift_homotopy: non-unique lift");
                    found = cand;
                }
            if (found == -1) throw std::logic_error("lift_homotopy: missing lift");
            gn.map[w] = found;
        }
        if (!check_morphism(gn.map, W, E).ok)
            throw std::logic_error("lift_homotopy: lifted step is not a morphism");
        lifts.push_back(std::move(gn));
    }
    return lifts;
}

DeckGroup deck_group(const CoverMorphism& p, int l) {
    const Digraph& E = *p.total;
    if (!E.connected())
        throw std::invalid_argument("deck_group: total digraph must be connected");
    if (p.validated_level < l)
        throw std::invalid_argument("deck_group: cover not validated at the requested level");

    // extensions explored from vertex 0 along the underlying undirected graph
    std::vector<std::vector<int>> elements;
    int base0 = p.projection[0];
    for (int cand : p.fibers[base0]) {
        std::vector<int> phi(E.num_vertices(), -1);
        phi[0] = cand;
        bool ok = true;
        std::vector<int> stack{0};
        while (!stack.empty() && ok) {
            int v = stack.back();
            stack.pop_back();
            auto extend = [&](int w, bool forward) {
                int found = -1;
                auto scan = forward ? E.out(phi[v]) : E.in(phi[v]);
                for (int c : scan)
                    if (p.projection[c] == p.projection[w]) {
                        if (found != -1) {
                            ok = false;
                            return;
                        }
                        found = c;
                    }
                if (found == -1) {
                    ok = false;
                    return;
                }
                if (phi[w] == -1) {
                    phi[w] = found;
                    stack.push_back(w);
                } else if (phi[w] != found) {
                    ok = false;
                }
            };
            for (int w : E.out(v)) {
                extend(w, true);
                if (!ok) break;
            }
            for (int w : E.in(v)) {
                extend(w, false);
                if (!ok) break;
            }
        }
        if (!ok) continue;
        // total, bijective, arrow-preserving both ways, over the base
        if (std::count(phi.begin(), phi.end(), -1) != 0) continue;
        std::vector<char> hit(E.num_vertices(), 0);
        for (int v : phi) {
            if (hit[v]) {
                ok = false;
                break;
            }
            hit[v] = 1;
        }
        if (!ok) continue;
        for (int v = 0; v < E.num_vertices() && ok; ++v)
            if (p.projection[phi[v]] != p.projection[v]) ok = false;
        int mapped_arrows = 0;
        for (auto [u, v] : E.arrows()) {
            if (!E.has_arrow(phi[u], phi[v])) {
                ok = false;
                break;
            }
            ++mapped_arrows;
        }
        if (ok && mapped_arrows == E.num_arrows()) elements.push_back(std::move(phi));
    }

    std::sort(elements.begin(), elements.end());
    DeckGroup g;
    g.elements = std::move(elements);
    g.table.assign(g.elements.size(), std::vector<int>(g.elements.size(), -1));
    for (size_t i = 0; i < g.elements.size(); ++i)
        for (size_t j = 0; j < g.elements.size(); ++j) {
            std::vector<int> comp(E.num_vertices());
            for (int v = 0; v < E.num_vertices(); ++v) comp[v] = g.elements[i][g.elements[j][v]];
            auto it = std::lower_bound(g.elements.begin(), g.elements.end(), comp);
            if (it == g.elements.end() || *it != comp)
                throw std::logic_error("deck_group: composition left the candidate set");
            g.table[i][j] = static_cast<int>(it - g.elements.begin());
        }
    return g;
}

std::pair<long, long> omega_rank_check(const CoverMorphism& p, int x, int e, int n, Ring field) {
    auto up = cluster_decompose(*p.total, n, nullptr, field);
    auto down = cluster_decompose(*p.base, n, nullptr, field);
    long rank_e = 0;
    for (int e2 : p.fibers[x]) {
        auto it = up.find({p.total->name(e), p.total->name(e2), std::nullopt});
        if (it != up.end()) rank_e += it->second;
    }
    long rank_x = 0;
    auto it = down.find({p.base->name(p.projection[e]), p.base->name(x), std::nullopt});
    if (it != down.end()) rank_x = it->second;
    return {rank_e, rank_x};
}

std::vector<int> parse_vertex_map(const Digraph& total, const Digraph& base,
                                  std::string_view text) {
    std::vector<int> map(total.num_vertices(), -1);
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string e, arrow, x;
        if (!(ls >> e)) continue;
        if (!(ls >> arrow >> x) || arrow != "->")
            throw ParseError(lineno, "expected 'e -> x' in vertex map");
        map.at(total.require_index(e)) = base.require_index(x);
    }
    for (int v = 0; v < total.num_vertices(); ++v)
        if (map[v] == -1)
            throw std::invalid_argument("vertex map missing total vertex " + total.name(v));
    return map;
}

FiberAction parse_action_file(const Digraph& base, std::string_view text) {
    FiberAction act;
    act.fibers.resize(base.num_vertices());
    act.arrow_action.resize(base.num_arrows());
    std::vector<char> have_fiber(base.num_vertices(), 0);
    std::vector<char> have_arrow(base.num_arrows(), 0);
    auto arrow_pos = [&](int u, int v) {
        auto it = std::lower_bound(base.arrows().begin(), base.arrows().end(),
                                   std::make_pair(u, v));
        if (it == base.arrows().end() || *it != std::make_pair(u, v))
            throw std::invalid_argument("action file: no base arrow " + base.name(u) + " -> " +
                                        base.name(v));
        return static_cast<int>(it - base.arrows().begin());
    };

    std::vector<std::string> arrow_lines;
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "fiber") {
            std::string x;
            ls >> x;
            if (x.empty() || x.back() != ':')
                throw ParseError(lineno, "expected 'fiber x: labels...'");
            x.pop_back();
            int xi = base.require_index(x);
            std::string lab;
            while (ls >> lab) act.fibers[xi].push_back(lab);
            have_fiber[xi] = 1;
        } else if (kw == "arrow") {
            arrow_lines.push_back(std::to_string(lineno) + "\t" + line);
        } else {
            throw ParseError(lineno, "expected 'fiber' or 'arrow' line");
        }
    }
    for (int x = 0; x < base.num_vertices(); ++x)
        if (!have_fiber[x])
            throw std::invalid_argument("action file: missing fiber for vertex " + base.name(x));

    auto label_pos = [&](int x, const std::string& lab) {
        for (size_t i = 0; i < act.fibers[x].size(); ++i)
            if (act.fibers[x][i] == lab) return static_cast<int>(i);
        throw std::invalid_argument("action file: unknown fiber label '" + lab + "' over " +
                                    base.name(x));
    };

    for (const auto& tagged : arrow_lines) {
        size_t tab = tagged.find('\t');
        int at_line = std::stoi(tagged.substr(0, tab));
        std::istringstream ls(tagged.substr(tab + 1));
        std::string kw, xp, x;
        ls >> kw >> xp >> x;
        if (x.empty() || x.back() != ':') throw ParseError(at_line, "expected 'arrow x' x: ...'");
        x.pop_back();
        int tail = base.require_index(xp);
        int head = base.require_index(x);
        int a = arrow_pos(tail, head);
        std::vector<int> sigma(act.fibers[head].size(), -1);
        std::string pair;
        while (ls >> pair) {
            if (!pair.empty() && pair.back() == ',') pair.pop_back();
            size_t ar = pair.find("->");
            if (ar == std::string::npos) throw ParseError(at_line, "expected 'a->b' entries");
            int from = label_pos(head, pair.substr(0, ar));
            int to = label_pos(tail, pair.substr(ar + 2));
            sigma.at(from) = to;
        }
        for (int v : sigma)
            if (v == -1)
                throw ParseError(at_line, "arrow action does not cover the whole fiber");
        act.arrow_action[a] = std::move(sigma);
        have_arrow[a] = 1;
    }
    for (int a = 0; a < base.num_arrows(); ++a)
        if (!have_arrow[a]) {
            auto [u, v] = base.arrows()[a];
            throw std::invalid_argument("action file: missing action for arrow " + base.name(u) +
                                        " -> " + base.name(v));
        }
    return act;
}

}  // namespace pathhom

#include "pathhom/digraph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace pathhom {

Digraph Digraph::make_indexed(std::vector<std::string> vertex_names,
                              std::vector<std::pair<int, int>> arrows) {
    Digraph X;
    X.names_ = std::move(vertex_names);
    for (int i = 0; i < X.num_vertices(); ++i) {
        auto [it, fresh] = X.index_.emplace(X.names_[i], i);
        (void)it;
        if (!fresh) throw std::invalid_argument("duplicate vertex name: " + X.names_[i]);
    }
    std::sort(arrows.begin(), arrows.end());
    arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
    for (auto [u, v] : arrows) {
        if (u < 0 || v < 0 || u >= X.num_vertices() || v >= X.num_vertices())
            throw std::invalid_argument("arrow endpoint out of range");
        if (u == v)
            throw std::invalid_argument("loop arrow at vertex '" + X.names_[u] +
                                        "' (arrows must be loop-free)");
    }
    X.arrows_ = std::move(arrows);
    X.out_.assign(X.num_vertices(), {});
    X.in_.assign(X.num_vertices(), {});
    for (auto [u, v] : X.arrows_) {
        X.out_[u].push_back(v);
        X.in_[v].push_back(u);
    }
    return X;
}

Digraph Digraph::make(std::vector<std::string> vertex_names,
                      std::vector<std::pair<std::string, std::string>> arrows) {
    std::unordered_map<std::string, int> idx;
    for (size_t i = 0; i < vertex_names.size(); ++i) {
        if (!idx.emplace(vertex_names[i], static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate vertex name: " + vertex_names[i]);
    }
    std::vector<std::pair<int, int>> ia;
    ia.reserve(arrows.size());
    for (auto& [a, b] : arrows) {
        auto it = idx.find(a);
        auto jt = idx.find(b);
        if (it == idx.end()) throw std::invalid_argument("unknown arrow endpoint: " + a);
        if (jt == idx.end()) throw std::invalid_argument("unknown arrow endpoint: " + b);
        ia.emplace_back(it->second, jt->second);
    }
    return make_indexed(std::move(vertex_names), std::move(ia));
}

std::optional<int> Digraph::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? std::nullopt : std::optional<int>(it->second);
}

int Digraph::require_index(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw std::invalid_argument("unknown vertex: " + std::string(name));
    return *i;
}

bool Digraph::has_arrow(int u, int v) const {
    return std::binary_search(arrows_.begin(), arrows_.end(), std::make_pair(u, v));
}

std::span<const int> Digraph::out(int v) const { return out_.at(v); }
std::span<const int> Digraph::in(int v) const { return in_.at(v); }

bool Digraph::connected() const {
    int n = num_vertices();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int found = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        auto visit = [&](int w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++found;
                q.push_back(w);
            }
        };
        for (int w : out_[v]) visit(w);
        for (int w : in_[v]) visit(w);
    }
    return found == n;
}

namespace {

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

DigraphParse parse_digraph(std::string_view text) {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> idx;
    auto intern = [&](const std::string& v) {
        auto it = idx.find(v);
        if (it != idx.end()) return it->second;
        int i = static_cast<int>(names.size());
        names.push_back(v);
        idx.emplace(v, i);
        return i;
    };

    std::vector<std::pair<int, int>> arrows;
    std::vector<std::string> warnings;

    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                             : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++lineno;

        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;

        if (line.rfind("vertices:", 0) == 0) {
            for (const auto& v : split_ws(line.substr(9))) intern(v);
            continue;
        }
        size_t ar = line.find("->");
        if (ar == std::string::npos)
            throw ParseError(lineno, "expected 'a -> b' or 'vertices: ...', got '" + line + "'");
        std::string lhs = trim(line.substr(0, ar));
        std::string rhs = trim(line.substr(ar + 2));
        if (lhs.empty() || rhs.empty() || split_ws(lhs).size() != 1 || split_ws(rhs).size() != 1)
            throw ParseError(lineno, "malformed arrow '" + line + "'");
        if (lhs == rhs)
            throw ParseError(lineno, "loop arrow '" + lhs + " -> " + rhs +
                                         "' is forbidden (arrows are loop-free)");
        int u = intern(lhs), v = intern(rhs);
        if (std::find(arrows.begin(), arrows.end(), std::make_pair(u, v)) != arrows.end())
            warnings.push_back("line " + std::to_string(lineno) + ": duplicate arrow " + lhs +
                               " -> " + rhs + " (deduplicated)");
        else
            arrows.emplace_back(u, v);
    }
    return {Digraph::make_indexed(std::move(names), std::move(arrows)), std::move(warnings)};
}

DistanceMatrix::DistanceMatrix(const Digraph& X) : n_(X.num_vertices()) {
    d_.assign(static_cast<size_t>(n_) * n_, ExtDist::infinity());
    std::deque<int> q;
    for (int s = 0; s < n_; ++s) {
        auto* row = d_.data() + static_cast<size_t>(s) * n_;
        row[s] = ExtDist(0);
        q.clear();
        q.push_back(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            ExtDist step = row[v] + ExtDist(1);
            for (int w : X.out(v)) {
                if (!row[w].finite()) {
                    row[w] = step;
                    q.push_back(w);
                }
            }
        }
    }
}

Digraph box_product(const Digraph& X, const Digraph& Y) {
    int nx = X.num_vertices(), ny = Y.num_vertices();
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) names.push_back("(" + X.name(i) + "," + Y.name(j) + ")");
    auto id = [&](int i, int j) { return i * ny + j; };
    std::vector<std::pair<int, int>> arrows;
    for (auto [u, v] : X.arrows())
        for (int j = 0; j < ny; ++j) arrows.emplace_back(id(u, j), id(v, j));
    for (auto [u, v] : Y.arrows())
        for (int i = 0; i < nx; ++i) arrows.emplace_back(id(i, u), id(i, v));
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

Digraph d_power(const Digraph& X, int n) {
    if (n < 1) throw std::invalid_argument("d_power: n must be >= 1");
    DistanceMatrix dist(X);
    std::vector<std::pair<int, int>> arrows;
    for (int u = 0; u < X.num_vertices(); ++u)
        for (int v = 0; v < X.num_vertices(); ++v)
            if (u != v && dist(u, v) <= ExtDist(n)) arrows.emplace_back(u, v);
    return Digraph::make_indexed(X.names(), std::move(arrows));
}

Digraph induced_by_index(const Digraph& X, const std::vector<int>& W) {
    std::vector<std::string> names;
    std::vector<int> back(X.num_vertices(), -1);
    for (int v : W) {
        if (v < 0 || v >= X.num_vertices()) throw std::invalid_argument("induced: bad index");
        if (back[v] != -1) throw std::invalid_argument("induced: repeated vertex " + X.name(v));
        back[v] = static_cast<int>(names.size());
        names.push_back(X.name(v));
    }
    std::vector<std::pair<int, int>> arrows;
    for (auto [u, v] : X.arrows())
        if (back[u] != -1 && back[v] != -1) arrows.emplace_back(back[u], back[v]);
    return Digraph::make_indexed(std::move(names), std::move(arrows));
}

Digraph induced(const Digraph& X, const std::vector<std::string>& W) {
    std::vector<int> idx;
    idx.reserve(W.size());
    for (const auto& w : W) idx.push_back(X.require_index(w));
    return induced_by_index(X, idx);
}

MorphismCheck check_morphism(const std::vector<int>& f, const Digraph& X, const Digraph& Y) {
    if (static_cast<int>(f.size()) != X.num_vertices())
        throw std::invalid_argument("check_morphism: map not total on source vertices");
    for (int img : f)
        if (img < 0 || img >= Y.num_vertices())
            throw std::invalid_argument("check_morphism: image vertex out of range");
    for (auto [u, v] : X.arrows())
        if (!Y.in_x1(f[u], f[v])) return {false, std::make_pair(u, v)};
    return {true, std::nullopt};
}

bool check_morphism_via_distances(const std::vector<int>& f, const Digraph& X, const Digraph& Y) {
    DistanceMatrix dx(X), dy(Y);
    for (int u = 0; u < X.num_vertices(); ++u)
        for (int v = 0; v < X.num_vertices(); ++v)
            if (!(dy(f[u], f[v]) <= dx(u, v))) return false;
    return true;
}

DigraphMorphism compose(const DigraphMorphism& f, const DigraphMorphism& g) {
    if (!(*f.target == *g.source))
        throw std::invalid_argument("compose: target of first != source of second");
    DigraphMorphism h{f.source, g.target, {}};
    h.map.reserve(f.map.size());
    for (int v : f.map) h.map.push_back(g.map.at(v));
    return h;
}

DigraphMorphism identity_morphism(const Digraph& X) {
    DigraphMorphism id{&X, &X, std::vector<int>(X.num_vertices())};
    for (int v = 0; v < X.num_vertices(); ++v) id.map[v] = v;
    return id;
}

ExtDist morphism_distance(const DigraphMorphism& f, const DigraphMorphism& g) {
    if (!(*f.source == *g.source) || !(*f.target == *g.target))
        throw std::invalid_argument("morphism_distance: mismatched source/target");
    DistanceMatrix dy(*f.target);
    ExtDist sup(0);
    for (int v = 0; v < f.source->num_vertices(); ++v) {
        ExtDist d = dy(f.map[v], g.map[v]);
        if (d > sup) sup = d;
    }
    return sup;
}

bool one_step_homotopic(const DigraphMorphism& f, const DigraphMorphism& g) {
    return morphism_distance(f, g) <= ExtDist(1) || morphism_distance(g, f) <= ExtDist(1);
}

HomotopyCheck is_homotopy(std::span<const DigraphMorphism> steps) {
    if (steps.empty()) return {false, -1, "empty homotopy"};
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        if (!(*s.source == *steps[0].source) || !(*s.target == *steps[0].target))
            return {false, static_cast<int>(i), "step has mismatched source/target"};
        if (!check_morphism(s.map, *s.source, *s.target).ok)
            return {false, static_cast<int>(i), "step is not a digraph morphism"};
    }
    for (size_t i = 0; i + 1 < steps.size(); ++i)
        if (!one_step_homotopic(steps[i], steps[i + 1]))
            return {false, static_cast<int>(i), "consecutive steps not one-step homotopic"};
    return {true, -1, ""};
}

}  // namespace pathhom

#include "pathhom/groups.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pathhom {

long long FGAbelian::order() const {
    if (!finite()) throw std::invalid_argument("order(): group is infinite");
    long long n = 1;
    for (long long d : torsion) n *= d;
    return n;
}

FGAbelian::Elem FGAbelian::reduce(Elem e) const {
    if (static_cast<int>(e.size()) != dims())
        throw std::invalid_argument("group element has wrong dimension");
    for (size_t i = 0; i < torsion.size(); ++i) {
        long long d = torsion[i];
        long long& c = e[free_rank + i];
        c %= d;
        if (c < 0) c += d;
    }
    return e;
}

FGAbelian::Elem FGAbelian::add(const Elem& a, const Elem& b) const {
    Elem c(dims());
    for (int i = 0; i < dims(); ++i) c[i] = a.at(i) + b.at(i);
    return reduce(std::move(c));
}

FGAbelian::Elem FGAbelian::neg(const Elem& a) const {
    Elem c(dims());
    for (int i = 0; i < dims(); ++i) c[i] = -a.at(i);
    return reduce(std::move(c));
}

bool FGAbelian::is_zero(const Elem& a) const {
    Elem r = reduce(a);
    return std::all_of(r.begin(), r.end(), [](long long c) { return c == 0; });
}

std::string FGAbelian::str(const Elem& a) const {
    Elem r = reduce(a);
    std::string s = "(";
    for (int i = 0; i < dims(); ++i) {
        if (i) s += ",";
        s += std::to_string(r[i]);
    }
    return s + ")";
}

std::vector<FGAbelian::Elem> FGAbelian::elements() const {
    if (!finite()) throw std::invalid_argument("elements(): group is infinite");
    std::vector<Elem> out{zero()};
    for (size_t i = 0; i < torsion.size(); ++i) {
        std::vector<Elem> next;
        for (const Elem& e : out)
            for (long long c = 0; c < torsion[i]; ++c) {
                Elem f = e;
                f[free_rank + i] = c;
                next.push_back(std::move(f));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

FGAbelian parse_abelian_group(const std::string& text) {
    FGAbelian g;
    std::string t = text;
    std::replace(t.begin(), t.end(), '+', ' ');
    std::istringstream in(t);
    std::string tok;
    bool saw_torsion = false;
    while (in >> tok) {
        if (tok == "Z") {
            if (saw_torsion) throw std::invalid_argument("free factors must precede torsion");
            g.free_rank += 1;
        } else if (tok.rfind("Z^", 0) == 0) {
            if (saw_torsion) throw std::invalid_argument("free factors must precede torsion");
            g.free_rank += std::stoi(tok.substr(2));
        } else if (tok.rfind("Z/", 0) == 0) {
            long long d = std::stoll(tok.substr(2));
            if (d < 2) throw std::invalid_argument("torsion order must be >= 2");
            g.torsion.push_back(d);
            saw_torsion = true;
        } else {
            throw std::invalid_argument("bad group factor '" + tok + "' (want Z, Z^k, Z/d)");
        }
    }
    if (g.free_rank < 0) throw std::invalid_argument("negative free rank");
    for (size_t i = 1; i < g.torsion.size(); ++i)
        if (g.torsion[i] % g.torsion[i - 1] != 0)
            throw std::invalid_argument(
                "torsion orders must form a divisibility chain (invariant factors); got Z/" +
                std::to_string(g.torsion[i - 1]) + " before Z/" + std::to_string(g.torsion[i]));
    return g;
}

FGAbelian::Elem parse_abelian_elem(const FGAbelian& g, const std::string& text) {
    std::string t = strip(text);
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw std::invalid_argument("unbalanced element '" + text + "'");
        t = t.substr(1, t.size() - 2);
    }
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    FGAbelian::Elem e;
    long long c;
    while (in >> c) e.push_back(c);
    if (static_cast<int>(e.size()) != g.dims())
        throw std::invalid_argument("element '" + text + "' has " + std::to_string(e.size()) +
                                    " coordinates, group needs " + std::to_string(g.dims()));
    return g.reduce(std::move(e));
}

std::vector<FGAbelian::Elem> parse_gen_list(const FGAbelian& g, const std::string& text) {
    std::vector<FGAbelian::Elem> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ';')) {
        cur = strip(cur);
        if (!cur.empty()) out.push_back(parse_abelian_elem(g, cur));
    }
    return out;
}

FiniteGroup FiniteGroup::make(std::vector<std::string> names, std::vector<std::vector<int>> mult) {
    FiniteGroup g;
    g.elem_names = std::move(names);
    g.mult = std::move(mult);
    int n = g.size();
    if (n == 0) throw std::invalid_argument("finite group needs at least the identity");
    if (static_cast<int>(g.mult.size()) != n)
        throw std::invalid_argument("multiplication table has wrong size");
    for (const auto& row : g.mult) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("multiplication table row has wrong size");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (g.mult[0][a] != a || g.mult[a][0] != a)
            throw std::invalid_argument("element 0 is not a two-sided identity");
    for (int a = 0; a < n; ++a) {
        bool has_inv = false;
        for (int b = 0; b < n; ++b) has_inv |= (g.mult[a][b] == 0 && g.mult[b][a] == 0);
        if (!has_inv) throw std::invalid_argument("element '" + g.elem_names[a] + "' has no inverse");
    }
    return g;
}

int FiniteGroup::inverse(int a) const {
    for (int b = 0; b < size(); ++b)
        if (mul(a, b) == 0 && mul(b, a) == 0) return b;
    throw std::logic_error("inverse not found");
}

std::optional<int> FiniteGroup::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elem_names[i] == name) return i;
    return std::nullopt;
}

VoltageGroup VoltageGroup::abelian(FGAbelian g) {
    VoltageGroup v;
    v.ab_ = std::move(g);
    return v;
}

VoltageGroup VoltageGroup::table(FiniteGroup g) {
    VoltageGroup v;
    v.tab_ = std::move(g);
    return v;
}

VoltageGroup::Elem VoltageGroup::identity() const {
    Elem e;
    if (ab_)
        e.vec = ab_->zero();
    else
        e.idx = 0;
    return e;
}

VoltageGroup::Elem VoltageGroup::mul(const Elem& a, const Elem& b) const {
    Elem e;
    if (ab_)
        e.vec = ab_->add(a.vec, b.vec);
    else
        e.idx = tab_->mul(a.idx, b.idx);
    return e;
}

std::string VoltageGroup::str(const Elem& e) const {
    return ab_ ? ab_->str(e.vec) : tab_->elem_names.at(e.idx);
}

VoltageGroup::Elem VoltageGroup::parse(const std::string& text) const {
    Elem e;
    if (ab_) {
        e.vec = parse_abelian_elem(*ab_, text);
    } else {
        auto i = tab_->index_of(strip(text));
        if (!i) throw std::invalid_argument("unknown group element '" + text + "'");
        e.idx = *i;
    }
    return e;
}

}  // namespace pathhom

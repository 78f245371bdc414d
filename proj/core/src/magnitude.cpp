#include "pathhom/magnitude.hpp"
#include "pathhom/path_homology.hpp"

#include <algorithm>
#include <map>

namespace pathhom {

MagnitudeBasis::MagnitudeBasis(const Digraph& X, int n_max, long l_max)
    : n_max_(n_max), l_max_(l_max), dist_(X) {
    if (n_max < 0 || l_max < 0) throw std::invalid_argument("MagnitudeBasis: negative bounds");
    buckets_.assign(n_max + 1, std::vector<std::vector<AccSeq>>(l_max + 1));

    // depth-first extension in vertex order gives lexicographic buckets;
    // prune as soon as the running length exceeds l_max
    std::vector<int> seq;
    auto extend = [&](auto&& self, long len) -> void {
        int n = static_cast<int>(seq.size()) - 1;
        buckets_[n][len].push_back({seq, len});
        if (n == n_max_) return;
        int last = seq.back();
        for (int w = 0; w < X.num_vertices(); ++w) {
            if (w == last) continue;  // regularity
            ExtDist d = dist_(last, w);
            if (!d.finite()) continue;
            long nl = len + d.value();
            if (nl > l_max_) continue;
            seq.push_back(w);
            self(self, nl);
            seq.pop_back();
        }
    };
    for (int v = 0; v < X.num_vertices(); ++v) {
        seq.assign(1, v);
        extend(extend, 0);
    }
}

const std::vector<AccSeq>& MagnitudeBasis::at(int n, long l) const {
    if (n < 0 || n > n_max_ || l < 0 || l > l_max_) return empty_;
    return buckets_[n][l];
}

std::string seq_label(const Digraph& X, std::span<const int> seq) {
    std::string s = "(";
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ",";
        s += X.name(seq[i]);
    }
    return s + ")";
}

namespace {

// shared assembly for mc_complex and relative_complex: keep faces that stay
// regular and whose length stays in (b, a]
ChainComplexZ window_complex(const Digraph& X, long a, long b, int n_cap) {
    MagnitudeBasis basis(X, n_cap, a);
    const DistanceMatrix& dist = basis.dist();

    std::vector<std::vector<const AccSeq*>> basis_by_degree(n_cap + 1);
    std::vector<std::map<std::vector<int>, int>> index(n_cap + 1);
    std::vector<std::vector<std::string>> labels(n_cap + 1);
    for (int n = 0; n <= n_cap; ++n) {
        for (long l = std::max(b + 1, 0l); l <= a; ++l)
            for (const AccSeq& s : basis.at(n, l)) {
                index[n].emplace(s.vertices, static_cast<int>(basis_by_degree[n].size()));
                basis_by_degree[n].push_back(&s);
                labels[n].push_back(seq_label(X, s.vertices));
            }
    }

    std::vector<SparseIntMatrix> boundary(n_cap + 1);
    boundary[0] = SparseIntMatrix(0, static_cast<int>(basis_by_degree[0].size()));
    for (int n = 1; n <= n_cap; ++n) {
        SparseIntMatrix d(static_cast<int>(basis_by_degree[n - 1].size()),
                          static_cast<int>(basis_by_degree[n].size()));
        for (int j = 0; j < static_cast<int>(basis_by_degree[n].size()); ++j) {
            const AccSeq& s = *basis_by_degree[n][j];
            std::vector<int> face(s.vertices.size() - 1);
            for (int i = 0; i <= n; ++i) {
                for (int k = 0, t = 0; k <= n; ++k)
                    if (k != i) face[t++] = s.vertices[k];
                long flen;
                if (i == 0) {
                    flen = s.length - dist(s.vertices[0], s.vertices[1]).value();
                } else if (i == n) {
                    flen = s.length - dist(s.vertices[n - 1], s.vertices[n]).value();
                } else {
                    if (s.vertices[i - 1] == s.vertices[i + 1]) continue;  // non-regular
                    flen = s.length - dist(s.vertices[i - 1], s.vertices[i]).value() -
                           dist(s.vertices[i], s.vertices[i + 1]).value() +
                           dist(s.vertices[i - 1], s.vertices[i + 1]).value();
                }
                if (flen <= b) continue;  // falls into the quotiented part
                auto it = index[n - 1].find(face);
                if (it == index[n - 1].end())
                    throw std::logic_error("window_complex: missing face " + seq_label(X, face));
                d.add(it->second, j, (i % 2) ? Int(-1) : Int(1));
            }
        }
        boundary[n] = std::move(d);
    }
    return ChainComplexZ(std::move(boundary), std::move(labels));
}

}  // namespace

ChainComplexZ mc_complex(const Digraph& X, long l) {
    if (l < 0) throw std::invalid_argument("mc_complex: l must be >= 0");
    // MC^l = N(nerve^l)/N(nerve^{l-1}); dimension is capped by l
    return window_complex(X, l, l - 1, static_cast<int>(l));
}

HomologySummary magnitude_homology(const Digraph& X, long l, std::span<const Ring> rings) {
    return homology(mc_complex(X, l), rings);
}

ChainComplexZ relative_complex(const Digraph& X, long a, long b, int n_cap) {
    if (!(a > b && b >= -1)) throw std::invalid_argument("relative_complex: need a > b >= -1");
    if (n_cap < 0) throw std::invalid_argument("relative_complex: negative degree cap");
    return window_complex(X, a, b, n_cap);
}

std::vector<MpssEntry> mpss_page(const Digraph& X, int r, long s_max, int n_max, Ring field) {
    if (r < 1) throw std::invalid_argument("mpss_page: page index must be >= 1");
    if (field.tag == RingTag::Z) throw std::invalid_argument("mpss_page: field coefficients only");

    std::vector<MpssEntry> out;
    if (r == 1) {
        for (long s = 0; s <= s_max; ++s) {
            auto h = magnitude_homology(X, s, std::vector<Ring>{field});
            for (int n = 0; n <= n_max; ++n)
                out.push_back({s, n, n <= s ? h.field_rank(n, field) : 0});
        }
        return out;
    }

    int cap = n_max + 1;
    std::map<std::pair<long, long>, ChainComplexZ> cache;
    auto window = [&](long a, long b) -> const ChainComplexZ& {
        b = std::max(b, -1l);
        auto key = std::make_pair(a, b);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, relative_complex(X, a, b, cap)).first;
        return it->second;
    };

    for (long s = 0; s <= s_max; ++s) {
        const ChainComplexZ& src = window(s, s - r);
        const ChainComplexZ& dst = window(s + r - 1, s - 1);
        // the chain map induced by inclusion and quotient: a sequence
        // survives iff its length exceeds s - 1
        std::vector<SparseIntMatrix> cm;
        for (int n = 0; n <= cap; ++n) {
            std::map<std::string, int> dst_index;
            for (int j = 0; j < dst.dim(n); ++j) dst_index.emplace(dst.labels(n)[j], j);
            SparseIntMatrix f(static_cast<int>(dst.dim(n)), static_cast<int>(src.dim(n)));
            for (int j = 0; j < src.dim(n); ++j) {
                auto it = dst_index.find(src.labels(n)[j]);
                if (it != dst_index.end()) f.set(it->second, j, 1);
            }
            cm.push_back(std::move(f));
        }
        for (int n = 0; n <= n_max; ++n)
            out.push_back({s, n, induced_image_rank(src, dst, cm, n, field)});
    }
    return out;
}

namespace {

void require_induced_inclusion(const Digraph& small, const Digraph& big, int step) {
    std::vector<std::string> names = small.names();
    for (const auto& nm : names)
        if (!big.index_of(nm))
            throw std::invalid_argument("exhaustion: stage " + std::to_string(step) +
                                        " is not included in stage " + std::to_string(step + 1) +
                                        " (missing vertex " + nm + ")");
    if (!(induced(big, names) == small))
        throw std::invalid_argument("exhaustion: stage " + std::to_string(step) +
                                    " is not an induced subdigraph of stage " +
                                    std::to_string(step + 1));
}

}  // namespace

ExhaustReport exhaustion_report(std::span<const Digraph> seq, ExhaustInvariant inv, int window,
                                bool reduced, Ring field) {
    if (seq.empty()) throw std::invalid_argument("exhaustion: empty sequence");
    if (window < 1) throw std::invalid_argument("exhaustion: window must be >= 1");
    for (size_t k = 0; k + 1 < seq.size(); ++k)
        require_induced_inclusion(seq[k], seq[k + 1], static_cast<int>(k));

    auto reduce0 = [&](long rank, const Digraph& x) {
        if (reduced && inv.n == 0 && x.num_vertices() > 0) return rank - 1;
        return rank;
    };

    ExhaustReport rep;
    if (inv.use_ph) {
        std::vector<Ring> rings{field};
        for (const Digraph& x : seq) {
            auto h = ph(x, rings, inv.n);
            rep.stage_ranks.push_back(reduce0(h.field_rank(inv.n, field), x));
        }
        for (size_t k = 0; k + window < seq.size(); ++k) {
            const Digraph& a = seq[k];
            const Digraph& b = seq[k + window];
            DigraphMorphism incl{&a, &b, {}};
            for (const auto& nm : a.names()) incl.map.push_back(b.require_index(nm));
            auto res = ph_induced(incl, inv.n, field);
            rep.windows.push_back({static_cast<int>(k), static_cast<int>(k + window),
                                   reduce0(res.image_ranks.at(inv.n), a)});
        }
    } else {
        std::vector<ChainComplexZ> mc;
        mc.reserve(seq.size());
        for (const Digraph& x : seq) {
            mc.push_back(mc_complex(x, inv.l));
            auto h = homology(mc.back(), std::vector<Ring>{field});
            rep.stage_ranks.push_back(
                inv.n <= inv.l ? reduce0(h.field_rank(inv.n, field), x) : 0);
        }
        for (size_t k = 0; k + window < seq.size(); ++k) {
            const ChainComplexZ& src = mc[k];
            const ChainComplexZ& dst = mc[k + window];
            // a basis sequence survives iff its length in the larger digraph
            // is still exactly l; labels are vertex-name based, so equal
            // labels identify equal sequences
            std::vector<SparseIntMatrix> cm;
            for (int n = 0; n <= src.max_degree(); ++n) {
                std::map<std::string, int> dst_index;
                if (n <= dst.max_degree())
                    for (int j = 0; j < dst.dim(n); ++j) dst_index.emplace(dst.labels(n)[j], j);
                SparseIntMatrix f(static_cast<int>(n <= dst.max_degree() ? dst.dim(n) : 0),
                                  static_cast<int>(src.dim(n)));
                for (int j = 0; j < src.dim(n); ++j) {
                    auto it = dst_index.find(src.labels(n)[j]);
                    if (it != dst_index.end()) f.set(it->second, j, 1);
                }
                cm.push_back(std::move(f));
            }
            long rank = inv.n <= inv.l
                            ? induced_image_rank(src, dst, cm, inv.n, field)
                            : 0;
            rep.windows.push_back(
                {static_cast<int>(k), static_cast<int>(k + window), reduce0(rank, seq[k])});
        }
    }
    rep.stabilized_image_rank = rep.windows.empty() ? rep.stage_ranks.back()
                                                    : rep.windows.back().image_rank;
    return rep;
}

}  // namespace pathhom

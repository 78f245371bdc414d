#include "pathhom/chain.hpp"

#include <algorithm>

namespace pathhom {

ChainComplexZ::ChainComplexZ(std::vector<SparseIntMatrix> boundary,
                             std::vector<std::vector<std::string>> basis_labels)
    : boundary_(std::move(boundary)), labels_(std::move(basis_labels)) {
    if (labels_.empty()) throw std::invalid_argument("chain complex needs degree 0");
    if (boundary_.size() != labels_.size())
        throw std::invalid_argument("chain complex: one boundary per degree expected");
    for (int n = 1; n <= max_degree(); ++n) {
        const auto& d = boundary_[n];
        if (d.cols() != dim(n) || d.rows() != dim(n - 1))
            throw ComplexError(n, "boundary shape mismatch in degree " + std::to_string(n));
    }
    for (int n = 2; n <= max_degree(); ++n) {
        SparseIntMatrix dd = boundary_[n - 1] * boundary_[n];
        if (!dd.is_zero()) {
            int col = dd.entries().begin()->first.second;
            throw ComplexError(n, "dd != 0 in degree " + std::to_string(n) +
                                      " at basis element '" + labels_[n].at(col) + "'");
        }
    }
}

long ChainComplexZ::dim(int n) const {
    if (n < 0 || n > max_degree()) return 0;
    return static_cast<long>(labels_[n].size());
}

SparseIntMatrix ChainComplexZ::boundary(int n) const {
    if (n >= 1 && n <= max_degree()) return boundary_[n];
    if (n == 0) return SparseIntMatrix(0, static_cast<int>(dim(0)));
    return SparseIntMatrix(static_cast<int>(dim(n - 1)), static_cast<int>(dim(n)));
}

long HomologySummary::field_rank(int n, const Ring& r) const {
    if (n < 0 || n >= static_cast<int>(degrees.size())) return 0;
    auto it = degrees[n].field_ranks.find(r.key());
    if (it == degrees[n].field_ranks.end())
        throw std::invalid_argument("homology was not computed over " + r.key());
    return it->second;
}

HomologySummary homology(const ChainComplexZ& C, std::span<const Ring> rings) {
    HomologySummary out;
    out.degrees.resize(C.max_degree() + 1);

    bool want_z = std::any_of(rings.begin(), rings.end(),
                              [](const Ring& r) { return r.tag == RingTag::Z; });

    for (int n = 0; n <= C.max_degree(); ++n) {
        auto& deg = out.degrees[n];
        SparseIntMatrix dn = C.boundary(n);
        SparseIntMatrix dn1 = C.boundary(n + 1);

        for (const Ring& r : rings) {
            if (r.tag == RingTag::Z) continue;
            long null_n = C.dim(n) - rank_over(dn, r);
            deg.field_ranks[r.key()] = null_n - rank_over(dn1, r);
        }
        if (want_z) {
            // cycles: saturated kernel of d_n (all of C_n in degree 0)
            SparseIntMatrix K = (n == 0) ? SparseIntMatrix::identity(static_cast<int>(C.dim(0)))
                                         : kernel_basis(dn, Ring::z());
            SparseIntMatrix Y;
            try {
                Y = solve_in_lattice(K, dn1);
            } catch (const std::domain_error&) {
                throw ComplexError(n + 1, "boundaries do not lie in the cycle lattice in degree " +
                                              std::to_string(n));
            }
            SmithResult s = smith(Y);
            deg.free_rank = K.cols() - static_cast<long>(s.factors.size());
            for (const Int& d : s.factors)
                if (d > 1) deg.torsion.push_back(d);
        }
    }
    return out;
}

long induced_image_rank(const ChainComplexZ& src, const ChainComplexZ& dst,
                        std::span<const SparseIntMatrix> chain_map, int n, Ring field) {
    if (field.tag == RingTag::Z)
        throw std::invalid_argument("induced_image_rank is a field computation");
    auto fmap = [&](int k) -> SparseIntMatrix {
        if (k >= 0 && k < static_cast<int>(chain_map.size())) return chain_map[k];
        return SparseIntMatrix(static_cast<int>(dst.dim(k)), static_cast<int>(src.dim(k)));
    };
    for (int k = 0; k < static_cast<int>(chain_map.size()); ++k) {
        const auto& f = chain_map[k];
        if (f.rows() != dst.dim(k) || f.cols() != src.dim(k))
            throw ComplexError(k, "chain map shape mismatch in degree " + std::to_string(k));
        if (k >= 1) {
            SparseIntMatrix lhs = fmap(k - 1) * src.boundary(k);
            SparseIntMatrix rhs = dst.boundary(k) * f;
            if (!(lhs == rhs))
                throw ComplexError(k, "chain map does not commute with boundaries in degree " +
                                          std::to_string(k));
        }
    }

    SparseIntMatrix Z = (n == 0) ? SparseIntMatrix::identity(static_cast<int>(src.dim(0)))
                                 : kernel_basis(src.boundary(n), field);
    SparseIntMatrix mapped = fmap(n) * Z;
    SparseIntMatrix B = dst.boundary(n + 1);
    long rank_b = rank_over(B, field);
    long rank_both = rank_over(SparseIntMatrix::hconcat(mapped, B), field);
    return rank_both - rank_b;
}

}  // namespace pathhom

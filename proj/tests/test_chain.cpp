#include <doctest.h>

#include "pathhom/chain.hpp"
#include "testutil.hpp"

using namespace pathhom;

namespace {

SparseIntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    SparseIntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, Int(rows[i][j]));
    return m;
}

std::vector<Ring> all_rings() { return {Ring::z(), Ring::q(), Ring::fp(2), Ring::fp(3)}; }

}  // namespace

TEST_CASE("homology: multiplication by 2 on Z") {
    // 0 -> Z --x2--> Z -> 0
    ChainComplexZ c({SparseIntMatrix(0, 1), from_rows({{2}})}, {{"e0"}, {"e1"}});
    auto rings = all_rings();
    auto h = homology(c, rings);
    CHECK(h.degrees[0].free_rank == 0);
    CHECK(h.degrees[0].torsion == std::vector<Int>{2});
    CHECK(h.degrees[1].free_rank == 0);
    CHECK(h.degrees[1].torsion.empty());
    CHECK(h.field_rank(0, Ring::q()) == 0);
    CHECK(h.field_rank(0, Ring::fp(2)) == 1);  // Z/2 survives mod 2
    CHECK(h.field_rank(1, Ring::fp(2)) == 1);
    CHECK(h.field_rank(1, Ring::fp(3)) == 0);
}

TEST_CASE("homology: empty complex") {
    ChainComplexZ c({SparseIntMatrix(0, 0)}, {{}});
    auto rings = all_rings();
    auto h = homology(c, rings);
    CHECK(h.degrees[0].free_rank == 0);
    CHECK(h.field_rank(0, Ring::q()) == 0);
}

TEST_CASE("dd != 0 is rejected with the offending degree") {
    // d1 = identity, d2 = identity: d1*d2 != 0
    CHECK_THROWS_AS(ChainComplexZ({SparseIntMatrix(0, 1), from_rows({{1}}), from_rows({{1}})},
                                  {{"a"}, {"b"}, {"c"}}),
                    ComplexError);
}

TEST_CASE("universal coefficients consistency on random complexes") {
    // build small random 2-step complexes with d1*d2 = 0 by construction:
    // choose d2 inside the kernel lattice of a random d1
    testutil::Rng rng(0xc0c0);
    auto rings = all_rings();
    for (int trial = 0; trial < 60; ++trial) {
        int n1 = 1 + rng.below(4), n0 = 1 + rng.below(4);
        SparseIntMatrix d1(n0, n1);
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j)
                if (rng.chance(1, 2)) d1.set(i, j, Int(rng.below(5) - 2));
        SparseIntMatrix k = kernel_basis(d1, Ring::z());
        int n2 = 1 + rng.below(3);
        SparseIntMatrix coef(k.cols(), n2);
        for (int i = 0; i < k.cols(); ++i)
            for (int j = 0; j < n2; ++j)
                if (rng.chance(1, 2)) coef.set(i, j, Int(rng.below(7) - 3));
        SparseIntMatrix d2 = k * coef;
        if (k.cols() == 0) d2 = SparseIntMatrix(n1, n2);

        std::vector<std::vector<std::string>> labels(3);
        for (int i = 0; i < n0; ++i) labels[0].push_back("a" + std::to_string(i));
        for (int i = 0; i < n1; ++i) labels[1].push_back("b" + std::to_string(i));
        for (int i = 0; i < n2; ++i) labels[2].push_back("c" + std::to_string(i));
        ChainComplexZ c({SparseIntMatrix(0, n0), d1, d2}, labels);
        auto h = homology(c, rings);

        for (int n = 0; n <= 2; ++n) {
            const auto& deg = h.degrees[n];
            CHECK(h.field_rank(n, Ring::q()) == deg.free_rank);
            for (std::uint64_t p : {2ull, 3ull}) {
                long tn = 0, tn1 = 0;
                for (const Int& d : deg.torsion)
                    if (d % static_cast<long long>(p) == 0) ++tn;
                if (n >= 1)
                    for (const Int& d : h.degrees[n - 1].torsion)
                        if (d % static_cast<long long>(p) == 0) ++tn1;
                CHECK(h.field_rank(n, Ring::fp(p)) == deg.free_rank + tn + tn1);
            }
        }
    }
}

TEST_CASE("induced_image_rank: identity, zero, non-commuting rejection") {
    // circle-like complex: one 0-cell, one 1-cell, boundary zero
    ChainComplexZ c({SparseIntMatrix(0, 1), SparseIntMatrix(1, 1)}, {{"v"}, {"e"}});
    std::vector<SparseIntMatrix> id{SparseIntMatrix::identity(1), SparseIntMatrix::identity(1)};
    CHECK(induced_image_rank(c, c, id, 1, Ring::q()) == 1);

    std::vector<SparseIntMatrix> zero{SparseIntMatrix(1, 1), SparseIntMatrix(1, 1)};
    CHECK(induced_image_rank(c, c, zero, 1, Ring::q()) == 0);

    ChainComplexZ d({SparseIntMatrix(0, 1), from_rows({{1}})}, {{"v"}, {"e"}});
    std::vector<SparseIntMatrix> bad{SparseIntMatrix(1, 1), SparseIntMatrix::identity(1)};
    CHECK_THROWS_AS(induced_image_rank(c, d, bad, 1, Ring::q()), ComplexError);
}

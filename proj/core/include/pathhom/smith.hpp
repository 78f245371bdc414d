#pragma once

// Smith normal form, exact ranks and kernels over Z, Q and F_p.

#include "pathhom/intmat.hpp"

#include <optional>

namespace pathhom {

enum class RingTag { Z, Q, Fp };

struct Ring {
    RingTag tag = RingTag::Q;
    std::uint64_t p = 0;  // prime, Fp only (p < 2^61)

    static Ring z() { return {RingTag::Z, 0}; }
    static Ring q() { return {RingTag::Q, 0}; }
    static Ring fp(std::uint64_t p);  // throws on non-prime

    bool operator==(const Ring&) const = default;
    std::string key() const;  // "Z", "Q", "F2", ...
};

bool is_prime_u64(std::uint64_t n);

struct SmithResult {
    std::vector<Int> factors;  // nonzero invariant factors, d1 | d2 | ...
    // when requested: U * M * V == diag(factors) exactly, U and V unimodular
    std::optional<SparseIntMatrix> U, V;
};

// Smallest-magnitude pivot selection, arbitrary-precision arithmetic.
SmithResult smith(const SparseIntMatrix& M, bool want_transforms = false);

// Rank over Q (= rank over Z) or over F_p; fraction-free elimination.
long rank_over(const SparseIntMatrix& M, Ring ring);

// Kernel basis as matrix columns.
//  - Z: saturated lattice basis (a primitive basis of Ker as a subgroup);
//  - Q: integer columns spanning the Q-kernel (content-reduced);
//  - Fp: residue entries in [0, p).
SparseIntMatrix kernel_basis(const SparseIntMatrix& M, Ring ring);

// Solve K * Y = B over Z where the columns of K are Z-independent (e.g. a
// saturated kernel basis).  Throws if some column of B is not in the lattice.
SparseIntMatrix solve_in_lattice(const SparseIntMatrix& K, const SparseIntMatrix& B);

// Solve K * Y = B over F_p; throws if unsolvable.
SparseIntMatrix solve_mod_p(const SparseIntMatrix& K, const SparseIntMatrix& B, std::uint64_t p);

}  // namespace pathhom

#include "pathhom/smith.hpp"

#include <algorithm>
#include <cstdlib>

namespace pathhom {

namespace mp = boost::multiprecision;

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

Ring Ring::fp(std::uint64_t p) {
    if (p >= (1ull << 61)) throw std::invalid_argument("F_p: p must be < 2^61");
    if (!is_prime_u64(p)) throw std::invalid_argument("F_p: " + std::to_string(p) + " is not prime");
    return {RingTag::Fp, p};
}

std::string Ring::key() const {
    switch (tag) {
        case RingTag::Z: return "Z";
        case RingTag::Q: return "Q";
        case RingTag::Fp: return "F" + std::to_string(p);
    }
    return "?";
}

namespace {

using Dense = std::vector<std::vector<Int>>;

Dense to_dense(const SparseIntMatrix& m) {
    Dense a(m.rows(), std::vector<Int>(m.cols(), Int(0)));
    for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
    return a;
}

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

// g = gcd(a, b) = s*a + t*b with g >= 0
void gcd_ext(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s1;
        old_s = s1;
        s1 = tmp;
        tmp = old_t - q * t1;
        old_t = t1;
        t1 = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

struct SmithWork {
    Dense a;
    int rows, cols;
    bool track;
    Dense u, v;  // U: rows x rows, V: cols x cols

    void swap_rows(int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        if (track) std::swap(u[i], u[j]);
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (auto& row : a) std::swap(row[i], row[j]);
        if (track)
            for (auto& row : v) std::swap(row[i], row[j]);
    }
    // row_i -= q * row_j
    void row_sub(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < cols; ++c)
            if (a[j][c] != 0) a[i][c] -= q * a[j][c];
        if (track)
            for (int c = 0; c < rows; ++c)
                if (u[j][c] != 0) u[i][c] -= q * u[j][c];
    }
    // col_i -= q * col_j
    void col_sub(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < rows; ++r)
            if (a[r][j] != 0) a[r][i] -= q * a[r][j];
        if (track)
            for (int r = 0; r < cols; ++r)
                if (v[r][j] != 0) v[r][i] -= q * v[r][j];
    }
    // unimodular 2x2 transform on rows (t, i) putting gcd(a[t][t], a[i][t])
    // into the pivot and zero below it in one shot
    void gcd_rows(int t, int i) {
        Int g, s, c;
        const Int p = a[t][t], x = a[i][t];
        gcd_ext(p, x, g, s, c);
        Int mp = p / g, mx = x / g;
        for (int j = 0; j < cols; ++j) {
            Int at = a[t][j], ai = a[i][j];
            a[t][j] = s * at + c * ai;
            a[i][j] = mp * ai - mx * at;
        }
        if (track)
            for (int j = 0; j < rows; ++j) {
                Int ut = u[t][j], ui = u[i][j];
                u[t][j] = s * ut + c * ui;
                u[i][j] = mp * ui - mx * ut;
            }
    }
    void gcd_cols(int t, int j) {
        Int g, s, c;
        const Int p = a[t][t], x = a[t][j];
        gcd_ext(p, x, g, s, c);
        Int mp = p / g, mx = x / g;
        for (int i = 0; i < rows; ++i) {
            Int at = a[i][t], aj = a[i][j];
            a[i][t] = s * at + c * aj;
            a[i][j] = mp * aj - mx * at;
        }
        if (track)
            for (int i = 0; i < cols; ++i) {
                Int vt = v[i][t], vj = v[i][j];
                v[i][t] = s * vt + c * vj;
                v[i][j] = mp * vj - mx * vt;
            }
    }
    void negate_row(int i) {
        for (auto& x : a[i]) x = -x;
        if (track)
            for (auto& x : u[i]) x = -x;
    }
};

}  // namespace

SmithResult smith(const SparseIntMatrix& M, bool want_transforms) {
    SmithWork w;
    w.a = to_dense(M);
    w.rows = M.rows();
    w.cols = M.cols();
    w.track = want_transforms;
    if (want_transforms) {
        w.u = to_dense(SparseIntMatrix::identity(w.rows));
        w.v = to_dense(SparseIntMatrix::identity(w.cols));
    }

    int t = 0;
    int bound = std::min(w.rows, w.cols);
    while (t < bound) {
        // smallest-magnitude nonzero pivot in the trailing submatrix
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < w.rows; ++i)
            for (int j = t; j < w.cols; ++j)
                if (w.a[i][j] != 0) {
                    Int m = iabs(w.a[i][j]);
                    if (pi < 0 || m < best) {
                        best = m;
                        pi = i;
                        pj = j;
                    }
                }
        if (pi < 0) break;  // trailing submatrix is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            // clear column t, exact quotients when possible, gcd transforms
            // otherwise; then row t, which may re-dirty the column
            bool dirty = false;
            for (int i = t + 1; i < w.rows; ++i) {
                if (w.a[i][t] == 0) continue;
                if (w.a[i][t] % w.a[t][t] == 0)
                    w.row_sub(i, t, w.a[i][t] / w.a[t][t]);
                else
                    w.gcd_rows(t, i);
            }
            for (int j = t + 1; j < w.cols; ++j) {
                if (w.a[t][j] == 0) continue;
                if (w.a[t][j] % w.a[t][t] == 0)
                    w.col_sub(j, t, w.a[t][j] / w.a[t][t]);
                else
                    w.gcd_cols(t, j);
            }
            for (int i = t + 1; i < w.rows && !dirty; ++i) dirty = w.a[i][t] != 0;
            for (int j = t + 1; j < w.cols && !dirty; ++j) dirty = w.a[t][j] != 0;
            if (dirty) continue;

            // divisibility of the rest by the pivot
            bool fixed = false;
            for (int i = t + 1; i < w.rows && !fixed; ++i)
                for (int j = t + 1; j < w.cols && !fixed; ++j)
                    if (w.a[i][j] % w.a[t][t] != 0) {
                        w.row_sub(t, i, Int(-1));  // row_t += row_i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.a[t][t] < 0) w.negate_row(t);
        ++t;
    }

    SmithResult res;
    for (int i = 0; i < t; ++i) res.factors.push_back(w.a[i][i]);
    if (want_transforms) {
        res.U = SparseIntMatrix::from_dense(w.u);
        res.V = SparseIntMatrix::from_dense(w.v);
    }
    return res;
}

namespace {

using RowMap = std::map<int, Int>;

void content_reduce(RowMap& row) {
    Int g = 0;
    for (const auto& [c, v] : row) {
        g = mp::gcd(g, v);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [c, v] : row) v /= g;
}

// Integer row echelon: returns pivot rows (content-reduced) sorted by pivot
// column.  Row operations are Q-invertible, so the row space over Q and the
// kernel over Q are preserved.
struct Echelon {
    std::vector<std::pair<int, RowMap>> pivots;  // (pivot column, row)
};

Echelon echelon_q(const SparseIntMatrix& M) {
    std::vector<RowMap> rows;
    for (auto& r : M.row_maps())
        if (!r.empty()) rows.push_back(std::move(r));

    Echelon e;
    while (!rows.empty()) {
        // pivot choice: unit entries first, then smallest magnitude, then
        // shortest row; keeps the fraction-free updates from blowing up
        size_t br = 0;
        int bc = -1;
        Int bv;
        for (size_t i = 0; i < rows.size(); ++i)
            for (const auto& [c, v] : rows[i]) {
                Int m = iabs(v);
                bool better = bc < 0 || m < bv ||
                              (m == bv && rows[i].size() < rows[br].size());
                if (better) {
                    br = i;
                    bc = c;
                    bv = m;
                    if (bv == 1 && rows[i].size() == 1) goto chosen;
                }
            }
    chosen:
        RowMap piv = std::move(rows[br]);
        rows.erase(rows.begin() + br);
        const Int& p = piv.at(bc);
        std::vector<RowMap> next;
        next.reserve(rows.size());
        for (auto& r : rows) {
            auto it = r.find(bc);
            if (it == r.end()) {
                next.push_back(std::move(r));
                continue;
            }
            Int q = it->second;
            Int g = mp::gcd(p, q);
            Int mp_ = p / g, mq = q / g;
            RowMap s;
            for (auto& [c, v] : r) s[c] = v * mp_;
            for (const auto& [c, v] : piv) {
                auto jt = s.find(c);
                if (jt == s.end()) {
                    s[c] = -mq * v;
                } else {
                    jt->second -= mq * v;
                    if (jt->second == 0) s.erase(jt);
                }
            }
            content_reduce(s);
            if (!s.empty()) next.push_back(std::move(s));
        }
        rows = std::move(next);
        e.pivots.emplace_back(bc, std::move(piv));
    }
    // kept in elimination order: each pivot row is clear of all columns
    // pivoted before it, so back-substitution walks the list in reverse
    return e;
}

long rank_fp(const SparseIntMatrix& M, std::uint64_t p) {
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    auto inv = [&](std::uint64_t a) { return powmod(a, p - 2); };

    std::vector<std::map<int, std::uint64_t>> rows;
    {
        std::vector<std::map<int, std::uint64_t>> all(M.rows());
        for (const auto& [rc, v] : M.entries()) {
            Int r = v % static_cast<long long>(p);
            if (r < 0) r += static_cast<long long>(p);
            auto u = r.convert_to<std::uint64_t>();
            if (u) all[rc.first][rc.second] = u;
        }
        for (auto& r : all)
            if (!r.empty()) rows.push_back(std::move(r));
    }
    long rank = 0;
    while (!rows.empty()) {
        size_t br = 0;
        for (size_t i = 1; i < rows.size(); ++i)
            if (rows[i].size() < rows[br].size()) br = i;
        auto piv = std::move(rows[br]);
        rows.erase(rows.begin() + br);
        int c = piv.begin()->first;
        std::uint64_t pinv = inv(piv.begin()->second);
        ++rank;
        std::vector<std::map<int, std::uint64_t>> next;
        next.reserve(rows.size());
        for (auto& r : rows) {
            auto it = r.find(c);
            if (it == r.end()) {
                next.push_back(std::move(r));
                continue;
            }
            std::uint64_t f = mulmod(it->second, pinv);
            for (const auto& [cc, vv] : piv) {
                std::uint64_t sub = mulmod(f, vv);
                auto jt = r.find(cc);
                std::uint64_t cur = jt == r.end() ? 0 : jt->second;
                std::uint64_t nv = (cur + p - sub) % p;
                if (nv == 0) {
                    if (jt != r.end()) r.erase(jt);
                } else {
                    r[cc] = nv;
                }
            }
            if (!r.empty()) next.push_back(std::move(r));
        }
        rows = std::move(next);
    }
    return rank;
}

SparseIntMatrix kernel_fp(const SparseIntMatrix& M, std::uint64_t p) {
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    auto inv = [&](std::uint64_t a) { return powmod(a, p - 2); };

    // reduced row echelon form over F_p
    std::vector<std::map<int, std::uint64_t>> rr(M.rows());
    for (const auto& [rc, v] : M.entries()) {
        Int r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        auto u = r.convert_to<std::uint64_t>();
        if (u) rr[rc.first][rc.second] = u;
    }
    std::vector<std::map<int, std::uint64_t>> red;  // rows with unit pivots
    std::map<int, int> pivot_row;                   // pivot col -> index in red
    for (auto& row : rr) {
        auto r = std::move(row);
        // eliminate existing pivots
        for (auto it = r.begin(); it != r.end();) {
            auto pr = pivot_row.find(it->first);
            if (pr == pivot_row.end()) {
                ++it;
                continue;
            }
            std::uint64_t f = it->second;
            const auto& prow = red[pr->second];
            for (const auto& [cc, vv] : prow) {
                std::uint64_t sub = mulmod(f, vv);
                auto jt = r.find(cc);
                std::uint64_t cur = jt == r.end() ? 0 : jt->second;
                std::uint64_t nv = (cur + p - sub) % p;
                if (nv == 0) {
                    if (jt != r.end()) r.erase(jt);
                } else {
                    r[cc] = nv;
                }
            }
            it = r.begin();  // restart; pivots only shrink support
            while (it != r.end() && pivot_row.find(it->first) == pivot_row.end()) ++it;
        }
        if (r.empty()) continue;
        int c = r.begin()->first;
        std::uint64_t f = inv(r.begin()->second);
        for (auto& [cc, vv] : r) vv = mulmod(vv, f);
        // clear column c from earlier rows
        for (auto& [pc, ri] : pivot_row) {
            (void)pc;
            auto& prow = red[ri];
            auto jt = prow.find(c);
            if (jt == prow.end()) continue;
            std::uint64_t g = jt->second;
            for (const auto& [cc, vv] : r) {
                std::uint64_t sub = mulmod(g, vv);
                auto kt = prow.find(cc);
                std::uint64_t cur = kt == prow.end() ? 0 : kt->second;
                std::uint64_t nv = (cur + p - sub) % p;
                if (nv == 0) {
                    if (kt != prow.end()) prow.erase(kt);
                } else {
                    prow[cc] = nv;
                }
            }
        }
        pivot_row[c] = static_cast<int>(red.size());
        red.push_back(std::move(r));
    }

    std::vector<int> free_cols;
    for (int c = 0; c < M.cols(); ++c)
        if (!pivot_row.count(c)) free_cols.push_back(c);

    SparseIntMatrix K(M.cols(), static_cast<int>(free_cols.size()));
    for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
        int f = free_cols[j];
        K.set(f, j, 1);
        for (const auto& [c, ri] : pivot_row) {
            auto it = red[ri].find(f);
            if (it == red[ri].end()) continue;
            std::uint64_t val = (p - it->second) % p;  // x_c = -R[c][f]
            if (val) K.set(c, j, Int(val));
        }
    }
    return K;
}

SparseIntMatrix kernel_q(const SparseIntMatrix& M) {
    Echelon e = echelon_q(M);
    std::vector<char> is_pivot(M.cols(), 0);
    for (const auto& [c, row] : e.pivots) {
        (void)row;
        is_pivot[c] = 1;
    }
    std::vector<int> free_cols;
    for (int c = 0; c < M.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    SparseIntMatrix K(M.cols(), static_cast<int>(free_cols.size()));
    for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
        RowMap x;
        x[free_cols[j]] = 1;
        // back-substitute pivot coordinates, scaling x to stay integral
        for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
            const auto& [c, row] = *it;
            Int s = 0;
            for (const auto& [cc, vv] : row) {
                if (cc == c) continue;
                auto xt = x.find(cc);
                if (xt != x.end()) s += vv * xt->second;
            }
            if (s == 0) continue;
            const Int& pval = row.at(c);
            Int g = mp::gcd(pval, s);
            Int scale = pval / g;
            if (scale < 0) scale = -scale;
            if (scale != 1) {
                for (auto& [cc, vv] : x) vv *= scale;
                s *= scale;
            }
            x[c] = -s / pval;
            if (x[c] == 0) x.erase(c);
        }
        content_reduce(x);
        for (const auto& [c, v] : x) K.set(c, j, v);
    }
    return K;
}

}  // namespace

long rank_over(const SparseIntMatrix& M, Ring ring) {
    switch (ring.tag) {
        case RingTag::Fp: return rank_fp(M, ring.p);
        case RingTag::Z:
        case RingTag::Q: return static_cast<long>(echelon_q(M).pivots.size());
    }
    return 0;
}

SparseIntMatrix kernel_basis(const SparseIntMatrix& M, Ring ring) {
    switch (ring.tag) {
        case RingTag::Fp: return kernel_fp(M, ring.p);
        case RingTag::Q: return kernel_q(M);
        case RingTag::Z: {
            // U M V = D: the trailing columns of V form a saturated kernel basis
            SmithResult s = smith(M, true);
            long r = static_cast<long>(s.factors.size());
            std::vector<int> cols;
            for (int j = static_cast<int>(r); j < M.cols(); ++j) cols.push_back(j);
            return s.V->columns(cols);
        }
    }
    throw std::logic_error("kernel_basis: bad ring");
}

SparseIntMatrix solve_in_lattice(const SparseIntMatrix& K, const SparseIntMatrix& B) {
    if (K.rows() != B.rows()) throw std::invalid_argument("solve_in_lattice: shape mismatch");
    SmithResult s = smith(K, true);
    long r = static_cast<long>(s.factors.size());
    SparseIntMatrix UB = *s.U * B;
    SparseIntMatrix Z(K.cols(), B.cols());
    for (const auto& [rc, v] : UB.entries()) {
        if (rc.first >= r) throw std::domain_error("solve_in_lattice: column not in lattice");
        const Int& d = s.factors[rc.first];
        if (v % d != 0) throw std::domain_error("solve_in_lattice: column not in lattice");
        Z.set(rc.first, rc.second, v / d);
    }
    SparseIntMatrix Y = *s.V * Z;
    if (!(K * Y == B)) throw std::domain_error("solve_in_lattice: verification failed");
    return Y;
}

SparseIntMatrix solve_mod_p(const SparseIntMatrix& K, const SparseIntMatrix& B, std::uint64_t p) {
    if (K.rows() != B.rows()) throw std::invalid_argument("solve_mod_p: shape mismatch");
    // RREF of the augmented matrix [K | B]
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    auto inv = [&](std::uint64_t a) { return powmod(a, p - 2); };

    int n = K.rows();
    int m = K.cols();
    int bc = B.cols();
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(m + bc, 0));
    auto put = [&](const SparseIntMatrix& M, int coff) {
        for (const auto& [rc, v] : M.entries()) {
            Int r = v % static_cast<long long>(p);
            if (r < 0) r += static_cast<long long>(p);
            a[rc.first][rc.second + coff] = r.convert_to<std::uint64_t>();
        }
    };
    put(K, 0);
    put(B, m);

    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < m && row < n; ++c) {
        int pr = -1;
        for (int i = row; i < n; ++i)
            if (a[i][c]) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[row], a[pr]);
        std::uint64_t f = inv(a[row][c]);
        for (int j = c; j < m + bc; ++j) a[row][j] = mulmod(a[row][j], f);
        for (int i = 0; i < n; ++i) {
            if (i == row || !a[i][c]) continue;
            std::uint64_t g = a[i][c];
            for (int j = c; j < m + bc; ++j)
                a[i][j] = (a[i][j] + p - mulmod(g, a[row][j])) % p;
        }
        pivot_col.push_back(c);
        ++row;
    }
    // consistency: rows with zero K-part must have zero B-part
    for (int i = row; i < n; ++i)
        for (int j = m; j < m + bc; ++j)
            if (a[i][j]) throw std::domain_error("solve_mod_p: unsolvable system");

    SparseIntMatrix Y(m, bc);
    for (int i = 0; i < row; ++i)
        for (int j = 0; j < bc; ++j)
            if (a[i][m + j]) Y.set(pivot_col[i], j, Int(a[i][m + j]));
    return Y;
}

}  // namespace pathhom

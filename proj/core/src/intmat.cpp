#include "pathhom/intmat.hpp"

#include <sstream>

namespace pathhom {

void SparseIntMatrix::check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                                ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
}

void SparseIntMatrix::set(int r, int c, Int v) {
    check(r, c);
    if (v == 0)
        entries_.erase({r, c});
    else
        entries_[{r, c}] = std::move(v);
}

void SparseIntMatrix::add(int r, int c, const Int& v) {
    check(r, c);
    if (v == 0) return;
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
        entries_.emplace(std::make_pair(r, c), v);
    } else {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

Int SparseIntMatrix::get(int r, int c) const {
    check(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Int(0) : it->second;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
    SparseIntMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.entries_[{rc.second, rc.first}] = v;
    return t;
}

std::vector<std::map<int, Int>> SparseIntMatrix::row_maps() const {
    std::vector<std::map<int, Int>> rows(rows_);
    for (const auto& [rc, v] : entries_) rows[rc.first][rc.second] = v;
    return rows;
}

std::vector<std::map<int, Int>> SparseIntMatrix::col_maps() const {
    std::vector<std::map<int, Int>> cols(cols_);
    for (const auto& [rc, v] : entries_) cols[rc.second][rc.first] = v;
    return cols;
}

SparseIntMatrix SparseIntMatrix::identity(int n) {
    SparseIntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.entries_[{i, i}] = 1;
    return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Int>>& a) {
    int r = static_cast<int>(a.size());
    int c = r == 0 ? 0 : static_cast<int>(a[0].size());
    SparseIntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (a[i][j] != 0) m.entries_[{i, j}] = a[i][j];
    return m;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    auto brows = b.row_maps();
    SparseIntMatrix c(a.rows_, b.cols_);
    // accumulate row by row of a
    std::map<int, Int> acc;
    int cur = -1;
    auto flush = [&]() {
        for (auto& [j, v] : acc)
            if (v != 0) c.entries_[{cur, j}] = std::move(v);
        acc.clear();
    };
    for (const auto& [rc, v] : a.entries_) {
        if (rc.first != cur) {
            if (cur >= 0) flush();
            cur = rc.first;
        }
        for (const auto& [j, w] : brows[rc.second]) acc[j] += v * w;
    }
    if (cur >= 0) flush();
    return c;
}

SparseIntMatrix SparseIntMatrix::hconcat(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hconcat shape mismatch");
    SparseIntMatrix m(a.rows_, a.cols_ + b.cols_);
    m.entries_ = a.entries_;
    for (const auto& [rc, v] : b.entries_) m.entries_[{rc.first, rc.second + a.cols_}] = v;
    return m;
}

SparseIntMatrix SparseIntMatrix::columns(const std::vector<int>& which) const {
    auto cols = col_maps();
    SparseIntMatrix m(rows_, static_cast<int>(which.size()));
    for (int j = 0; j < static_cast<int>(which.size()); ++j)
        for (const auto& [i, v] : cols.at(which[j])) m.entries_[{i, j}] = v;
    return m;
}

std::string SparseIntMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) os << get(i, j) << (j + 1 == cols_ ? "" : " ");
        os << "\n";
    }
    return os.str();
}

}  // namespace pathhom

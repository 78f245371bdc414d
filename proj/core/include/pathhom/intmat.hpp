#pragma once

// Sparse matrices over Z with arbitrary-precision entries.  Everything in the
// library that touches linear algebra is exact; there is no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pathhom {

using Int = boost::multiprecision::cpp_int;

class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    void set(int r, int c, Int v);
    void add(int r, int c, const Int& v);
    Int get(int r, int c) const;

    // (row, col) -> nonzero entry, ordered; zero entries are never stored
    const std::map<std::pair<int, int>, Int>& entries() const { return entries_; }

    SparseIntMatrix transposed() const;
    std::vector<std::map<int, Int>> row_maps() const;
    std::vector<std::map<int, Int>> col_maps() const;

    static SparseIntMatrix identity(int n);
    static SparseIntMatrix from_dense(const std::vector<std::vector<Int>>& a);

    friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
    bool operator==(const SparseIntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    // columns of `b` appended to the right of `a`
    static SparseIntMatrix hconcat(const SparseIntMatrix& a, const SparseIntMatrix& b);
    SparseIntMatrix columns(const std::vector<int>& which) const;

    std::string str() const;  // small-matrix debugging aid

private:
    void check(int r, int c) const;
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Int> entries_;
};

}  // namespace pathhom

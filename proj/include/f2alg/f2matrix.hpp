#pragma once

// Dense exact linear algebra over F2. Rows are bit-packed into 64-bit words.
// All elimination is deterministic: pivots are chosen leftmost-column-first,
// topmost-row-first, so repeated runs give bit-identical results.

#include <cstdint>
#include <optional>
#include <vector>

#include "f2alg/common.hpp"

namespace f2alg {

// Bit vector over F2.
class F2Vec {
public:
    F2Vec() = default;
    explicit F2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void xor_with(const F2Vec& o);
    bool is_zero() const;
    // index of first set bit, or -1
    long long first_set() const;
    std::size_t popcount() const;

    bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const F2Vec& o) const;  // lexicographic on bits, for canonical sorting

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

    static F2Vec unit(std::size_t n, std::size_t i) {
        F2Vec v(n);
        v.set(i, true);
        return v;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);

    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (w(r)[c >> 6] >> (c & 63)) & 1u; }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        if (v)
            w(r)[c >> 6] |= m;
        else
            w(r)[c >> 6] &= ~m;
    }

    F2Vec row(std::size_t r) const;
    F2Vec col(std::size_t c) const;
    void set_row(std::size_t r, const F2Vec& v);
    void xor_row_into(std::size_t src, std::size_t dst);  // row dst ^= row src
    void swap_rows(std::size_t a, std::size_t b);

    F2Matrix transpose() const;
    F2Matrix multiply(const F2Matrix& o) const;  // this * o
    F2Vec apply(const F2Vec& v) const;           // matrix * column vector
    F2Matrix vstack(const F2Matrix& below) const;
    bool is_zero() const;

    bool operator==(const F2Matrix& o) const;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> data_;

    std::uint64_t* w(std::size_t r) { return data_.data() + r * stride_; }
    const std::uint64_t* w(std::size_t r) const { return data_.data() + r * stride_; }
};

// Row echelon data for a matrix: the reduced rows, and for each pivot row the
// column it pivots on (strictly increasing).
struct EchelonForm {
    F2Matrix reduced;              // fully reduced (RREF): pivot columns are cleared above too
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

EchelonForm echelon(const F2Matrix& m);
std::size_t rank(const F2Matrix& m);

// Basis of the right kernel {x : m x = 0}; one vector per free column, in
// increasing free-column order, each with a 1 at its free column.
std::vector<F2Vec> kernel_basis(const F2Matrix& m);

// One solution x of m x = b, or nullopt if none.
std::optional<F2Vec> solve(const F2Matrix& m, const F2Vec& b);

// Matrix inverse; argument error if singular.
F2Matrix inverse(const F2Matrix& m);

// Given independent vectors `inner` inside span(outer), extend greedily with
// vectors of `outer` (in presentation order) to a basis of span(outer).
// Returns the indices of the chosen outer vectors.
std::vector<std::size_t> complement_indices(const std::vector<F2Vec>& inner,
                                            const std::vector<F2Vec>& outer);

}  // namespace f2alg

#include "f2alg/f2matrix.hpp"

#include <algorithm>
#include <bit>

namespace f2alg {

namespace {
// public-facing operations reject anything larger than this many bits;
// the bound admits the ~15k x 49k boundary matrices the self-test reduces
// while still refusing runaway quadratic blowups
constexpr std::uint64_t kSizeCap = std::uint64_t(1) << 31;
}  // namespace

void F2Vec::xor_with(const F2Vec& o) {
    if (n_ != o.n_) throw_argument("F2Vec::xor_with: length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
}

bool F2Vec::is_zero() const {
    for (auto x : w_)
        if (x) return false;
    return true;
}

long long F2Vec::first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return (long long)(i * 64 + std::countr_zero(w_[i]));
    return -1;
}

std::size_t F2Vec::popcount() const {
    std::size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
}

bool F2Vec::operator<(const F2Vec& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t i = 0; i < n_; ++i) {
        bool a = get(i), b = o.get(i);
        if (a != b) return b;  // 0 before 1
    }
    return false;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64) {
    if ((std::uint64_t)rows * (std::uint64_t)cols > kSizeCap)
        throw_size("F2Matrix: " + std::to_string(rows) + "x" + std::to_string(cols) +
                   " exceeds the 2^31 bit cap");
    if (stride_ == 0) stride_ = 1;  // keep row pointers valid for 0-column matrices
    data_.assign(rows_ * stride_, 0);
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols) {
    F2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw_argument("F2Matrix::from_rows: ragged row");
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] & 1) m.set(r, c, true);
    }
    return m;
}

F2Vec F2Matrix::row(std::size_t r) const {
    F2Vec v(cols_);
    std::copy(w(r), w(r) + v.words().size(), v.words().begin());
    return v;
}

F2Vec F2Matrix::col(std::size_t c) const {
    F2Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

void F2Matrix::set_row(std::size_t r, const F2Vec& v) {
    if (v.size() != cols_) throw_argument("F2Matrix::set_row: length mismatch");
    std::copy(v.words().begin(), v.words().end(), w(r));
}

void F2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
    auto* s = w(src);
    auto* d = w(dst);
    for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    auto* x = w(a);
    auto* y = w(b);
    for (std::size_t i = 0; i < stride_; ++i) std::swap(x[i], y[i]);
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < stride_; ++i) {
            std::uint64_t x = w(r)[i];
            while (x) {
                int b = std::countr_zero(x);
                x &= x - 1;
                t.set(i * 64 + b, r, true);
            }
        }
    return t;
}

F2Matrix F2Matrix::multiply(const F2Matrix& o) const {
    if (cols_ != o.rows_) throw_argument("F2Matrix::multiply: shape mismatch");
    F2Matrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < stride_; ++i) {
            std::uint64_t x = w(r)[i];
            while (x) {
                int b = std::countr_zero(x);
                x &= x - 1;
                std::size_t k = i * 64 + b;
                for (std::size_t j = 0; j < out.stride_; ++j) out.w(r)[j] ^= o.w(k)[j];
            }
        }
    return out;
}

F2Vec F2Matrix::apply(const F2Vec& v) const {
    if (v.size() != cols_) throw_argument("F2Matrix::apply: length mismatch");
    F2Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < v.words().size(); ++i) acc ^= w(r)[i] & v.words()[i];
        if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
}

F2Matrix F2Matrix::vstack(const F2Matrix& below) const {
    if (cols_ != below.cols_) throw_argument("F2Matrix::vstack: column mismatch");
    F2Matrix out(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + rows_ * stride_);
    return out;
}

bool F2Matrix::is_zero() const {
    for (auto x : data_)
        if (x) return false;
    return true;
}

bool F2Matrix::operator==(const F2Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

EchelonForm echelon(const F2Matrix& m) {
    EchelonForm ef;
    ef.reduced = m;
    F2Matrix& a = ef.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        // topmost row at or below r with a 1 in column c
        std::size_t pr = r;
        while (pr < a.rows() && !a.get(pr, c)) ++pr;
        if (pr == a.rows()) continue;
        a.swap_rows(r, pr);
        for (std::size_t r2 = 0; r2 < a.rows(); ++r2)
            if (r2 != r && a.get(r2, c)) a.xor_row_into(r, r2);
        ef.pivot_cols.push_back(c);
        ++r;
    }
    return ef;
}

std::size_t rank(const F2Matrix& m) { return echelon(m).rank(); }

std::vector<F2Vec> kernel_basis(const F2Matrix& m) {
    EchelonForm ef = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ef.pivot_cols) is_pivot[c] = true;
    std::vector<F2Vec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        F2Vec v(m.cols());
        v.set(f, true);
        // each pivot row reads off the dependent coordinate
        for (std::size_t pr = 0; pr < ef.pivot_cols.size(); ++pr)
            if (ef.reduced.get(pr, f)) v.set(ef.pivot_cols[pr], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<F2Vec> solve(const F2Matrix& m, const F2Vec& b) {
    if (b.size() != m.rows()) throw_argument("solve: rhs length mismatch");
    // eliminate on [m | b]
    F2Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        F2Vec row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (row.get(c)) aug.set(r, c, true);
        if (b.get(r)) aug.set(r, m.cols(), true);
    }
    EchelonForm ef = echelon(aug);
    F2Vec x(m.cols());
    for (std::size_t pr = 0; pr < ef.pivot_cols.size(); ++pr) {
        if (ef.pivot_cols[pr] == m.cols()) return std::nullopt;  // pivot in rhs column
        if (ef.reduced.get(pr, m.cols())) x.set(ef.pivot_cols[pr], true);
    }
    return x;
}

F2Matrix inverse(const F2Matrix& m) {
    if (m.rows() != m.cols()) throw_argument("inverse: not square");
    std::size_t n = m.rows();
    if (n == 0) return F2Matrix(0, 0);
    F2Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            if (m.get(r, c)) aug.set(r, c, true);
        aug.set(r, n + r, true);
    }
    EchelonForm ef = echelon(aug);
    if (ef.rank() < n || ef.pivot_cols[n - 1] != n - 1) throw_argument("inverse: singular matrix");
    F2Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (ef.reduced.get(r, n + c)) out.set(r, c, true);
    return out;
}

std::vector<std::size_t> complement_indices(const std::vector<F2Vec>& inner,
                                            const std::vector<F2Vec>& outer) {
    // incremental elimination: keep an echelon basis of what is spanned so far
    std::vector<F2Vec> ech;            // rows with distinct leading bits
    std::vector<long long> lead;
    auto reduce = [&](F2Vec v) -> F2Vec {
        for (std::size_t i = 0; i < ech.size(); ++i)
            if (lead[i] >= 0 && v.get((std::size_t)lead[i])) v.xor_with(ech[i]);
        return v;
    };
    for (const auto& v : inner) {
        F2Vec r = reduce(v);
        if (r.is_zero()) throw_argument("complement_indices: inner vectors are dependent");
        lead.push_back(r.first_set());
        ech.push_back(std::move(r));
    }
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < outer.size(); ++j) {
        F2Vec r = reduce(outer[j]);
        if (!r.is_zero()) {
            picked.push_back(j);
            lead.push_back(r.first_set());
            ech.push_back(std::move(r));
        }
    }
    return picked;
}

}  // namespace f2alg

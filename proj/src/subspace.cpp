#include "f2alg/subspace.hpp"

namespace f2alg {

Subspace::Subspace(std::size_t ambient, const std::vector<F2Vec>& gens) : ambient_(ambient) {
    if (gens.empty()) return;
    F2Matrix m(gens.size(), ambient);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].size() != ambient) throw_argument("Subspace: generator length mismatch");
        m.set_row(i, gens[i]);
    }
    EchelonForm ef = echelon(m);
    for (std::size_t r = 0; r < ef.rank(); ++r) basis_.push_back(ef.reduced.row(r));
}

bool Subspace::contains(const F2Vec& v) const {
    if (v.size() != ambient_) throw_argument("Subspace::contains: length mismatch");
    F2Vec r = v;
    for (const auto& b : basis_) {
        long long lead = b.first_set();
        if (lead >= 0 && r.get((std::size_t)lead)) r.xor_with(b);
    }
    return r.is_zero();
}

bool Subspace::contains(const Subspace& o) const {
    for (const auto& b : o.basis_)
        if (!contains(b)) return false;
    return true;
}

std::optional<F2Vec> Subspace::coordinates(const F2Vec& v) const {
    F2Vec r = v;
    F2Vec coords(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        long long lead = basis_[i].first_set();
        if (lead >= 0 && r.get((std::size_t)lead)) {
            r.xor_with(basis_[i]);
            coords.set(i, true);
        }
    }
    if (!r.is_zero()) return std::nullopt;
    return coords;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw_argument("Subspace::sum: ambient mismatch");
    std::vector<F2Vec> gens = basis_;
    gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
    return Subspace(ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw_argument("Subspace::intersect: ambient mismatch");
    if (basis_.empty() || o.basis_.empty()) return Subspace(ambient_);
    // kernel of [A^T | B^T] pairs coefficient vectors (a, b) with A^T a = B^T b
    std::size_t da = basis_.size(), db = o.basis_.size();
    F2Matrix m(ambient_, da + db);
    for (std::size_t j = 0; j < da; ++j)
        for (std::size_t i = 0; i < ambient_; ++i)
            if (basis_[j].get(i)) m.set(i, j, true);
    for (std::size_t j = 0; j < db; ++j)
        for (std::size_t i = 0; i < ambient_; ++i)
            if (o.basis_[j].get(i)) m.set(i, da + j, true);
    std::vector<F2Vec> gens;
    for (const auto& k : kernel_basis(m)) {
        F2Vec v(ambient_);
        for (std::size_t j = 0; j < da; ++j)
            if (k.get(j)) v.xor_with(basis_[j]);
        gens.push_back(std::move(v));
    }
    return Subspace(ambient_, gens);
}

Subspace Subspace::full(std::size_t ambient) {
    std::vector<F2Vec> gens;
    for (std::size_t i = 0; i < ambient; ++i) gens.push_back(F2Vec::unit(ambient, i));
    return Subspace(ambient, gens);
}

Subspace preimage(const F2Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.rows()) throw_argument("preimage: ambient mismatch");
    // x is a preimage iff m x is killed by every functional vanishing on s.
    // Equivalent kernel trick: pair x with coefficients of the target basis.
    std::size_t ds = s.dim();
    F2Matrix stacked(m.rows(), m.cols() + ds);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) stacked.set(r, c, true);
    for (std::size_t j = 0; j < ds; ++j)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (s.basis()[j].get(r)) stacked.set(r, m.cols() + j, true);
    std::vector<F2Vec> gens;
    for (const auto& k : kernel_basis(stacked)) {
        F2Vec v(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (k.get(c)) v.set(c, true);
        gens.push_back(std::move(v));
    }
    return Subspace(m.cols(), gens);
}

Subspace image(const F2Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.cols()) throw_argument("image: ambient mismatch");
    std::vector<F2Vec> gens;
    for (const auto& b : s.basis()) gens.push_back(m.apply(b));
    return Subspace(m.rows(), gens);
}

}  // namespace f2alg

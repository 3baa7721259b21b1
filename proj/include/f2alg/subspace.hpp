#pragma once

// A subspace of F2^n kept as a reduced (RREF) basis so equality, containment
// and membership are cheap and canonical.

#include <vector>

#include "f2alg/f2matrix.hpp"

namespace f2alg {

class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
    // span of the given vectors (dependent inputs are fine)
    Subspace(std::size_t ambient, const std::vector<F2Vec>& gens);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<F2Vec>& basis() const { return basis_; }

    bool contains(const F2Vec& v) const;
    bool contains(const Subspace& o) const;
    // coordinates of v in this basis, or nullopt if v is outside
    std::optional<F2Vec> coordinates(const F2Vec& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    static Subspace full(std::size_t ambient);

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<F2Vec> basis_;  // rows of an RREF matrix, by increasing pivot
};

// preimage {x : m x in s}, as a subspace of F2^{cols(m)}
Subspace preimage(const F2Matrix& m, const Subspace& s);

// image of a subspace under a matrix
Subspace image(const F2Matrix& m, const Subspace& s);

}  // namespace f2alg

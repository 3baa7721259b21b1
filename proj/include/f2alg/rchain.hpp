#pragma once

// Chain complexes of restricted vector spaces, their homology with the
// induced restriction maps, and the simplicial side of the normalized-chains
// correspondence: the functor K building a simplicial object from a complex,
// its inverse N, and the elementary simplicial objects K[n,q] and K[n,q,k].

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "f2alg/restricted.hpp"

namespace f2alg {

struct RVSComplex {
    int max_internal_degree = 0;
    std::vector<RestrictedVS> levels;  // homological degrees 0..length-1
    std::vector<RVSMap> diffs;         // diffs[t] : level t -> level t-1; diffs[0] stays empty

    int length() const { return static_cast<int>(levels.size()); }
    const RestrictedVS* level(int t) const {
        return (t >= 0 && t < length()) ? &levels[static_cast<std::size_t>(t)] : nullptr;
    }
};

// throws a validation error unless all levels share the window, every
// differential commutes with phi, and d composed with d vanishes
void require_valid_complex(const RVSComplex& c);

RVSComplex zero_complex(int N, int length);
// C(q): one free line concentrated in homological degree 0
RVSComplex complex_point(int q, int N);
// C(q,k): F(2^k q) in degree 1 mapping onto the top of F(q) in degree 0,
// so the degree-0 homology is the torsion chain T(q,k)
RVSComplex complex_cell(int q, int k, int N);
// prepend n zero levels
RVSComplex shift_complex(const RVSComplex& c, int n);
RVSComplex direct_sum_complex(const std::vector<RVSComplex>& parts);

// homology at every level, with the restriction maps phi descends to;
// representative choice is deterministic (pivot order of the kernel bases)
std::vector<RestrictedVS> homology(const RVSComplex& c);

struct ComplexSummand {
    enum class Kind { FreePoint, TorsionCell, FreeUpToBound };
    Kind kind = Kind::FreePoint;
    int n = 0;  // homological shift
    int q = 0;  // generator internal degree
    int k = 0;  // torsion length, 0 otherwise

    bool operator==(const ComplexSummand& o) const = default;
    // order by homological shift first so printed sums read left to right
    auto operator<=>(const ComplexSummand& o) const {
        if (auto c = n <=> o.n; c != 0) return c;
        if (auto c = kind <=> o.kind; c != 0) return c;
        if (auto c = q <=> o.q; c != 0) return c;
        return k <=> o.k;
    }
};
std::string to_string(const ComplexSummand& s);

using ComplexDecomposition = std::map<ComplexSummand, long long>;
std::string to_string(const ComplexDecomposition& d);

// decompose every homology level; quasi-isomorphism type of the complex
ComplexDecomposition decompose_complex(const RVSComplex& c);
// direct sum of the standard models, one per multiset entry
RVSComplex reassemble_complex(const ComplexDecomposition& d, int N);

struct SimplicialRVS {
    int level_bound = 0;                            // L
    std::vector<RestrictedVS> levels;               // simplicial degrees 0..L
    std::vector<std::vector<RVSMap>> faces;         // faces[n][i] : level n -> n-1, n >= 1
    std::vector<std::vector<RVSMap>> degeneracies;  // degeneracies[n][i] : level n -> n+1, n < L
    // provenance when built by dold_kan_K: per level and internal degree, the
    // increment-step mask of the component each basis column belongs to.
    // Bit x-1 set means the component's surjection steps up at position x.
    std::vector<std::map<int, std::vector<std::uint32_t>>> component_masks;
};

// check the simplicial identities wherever both sides stay within the bound
void require_valid_simplicial(const SimplicialRVS& s);

// K(C) up to level L: level n is one copy of C_k for every order-preserving
// surjection [n] ->> [k], enumerated by their increment-step sets in
// lexicographic order; structure maps follow the identity/differential/zero
// block rule obtained from epi-mono factorization
SimplicialRVS dold_kan_K(const RVSComplex& c, int L);

// normalized chains: level t is the intersection of the kernels of the faces
// d_1..d_t, the differential is d_0 restricted to it. Homological degrees
// above level_bound - 1 are not trustworthy and callers must not read them.
RVSComplex normalize_N(const SimplicialRVS& s);

// the elementary simplicial objects
SimplicialRVS make_K(int n, int q, int N, int L);
SimplicialRVS make_K_cell(int n, int q, int k, int N, int L);

// order-preserving surjection [n] ->> [k] encoded by its values
std::vector<int> surjection_from_mask(int n, std::uint32_t mask);
// increment-step subsets of {1..n} of size k, lexicographically ordered masks
std::vector<std::uint32_t> increment_masks(int n, int k);

}  // namespace f2alg

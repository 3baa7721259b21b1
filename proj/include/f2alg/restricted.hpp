#pragma once

// Restricted vector spaces over F2: nonnegatively graded spaces V with a
// linear restriction map phi_i : V^i -> V^{2i} for every i, phi_0 = id.
// Data is truncated at an internal degree window N: dims and phi matrices are
// only stored for degrees <= N, and phi_i is only meaningful when 2i <= N.
//
// Structure theory implemented here: every such object splits as a direct
// sum of free lines F(n) (phi injective down the chain n, 2n, 4n, ...) and
// torsion chains T(n,k) = F(n)/phi^k (alive in degrees 2^r n for r < k, the
// k-th power of phi observed to vanish inside the window).

#include <map>
#include <string>
#include <vector>

#include "f2alg/subspace.hpp"

namespace f2alg {

struct RestrictedVS {
    int max_internal_degree = 0;   // N
    std::vector<int> dims;         // size N+1; dims[i] = dim V^i
    std::map<int, F2Matrix> phi;   // i -> matrix dims[2i] x dims[i]; absent = zero

    int dim_at(int i) const {
        return (i >= 0 && i <= max_internal_degree) ? dims[i] : 0;
    }
    // phi matrix at degree i, materializing the zero matrix when absent
    F2Matrix phi_at(int i) const;
};

RestrictedVS make_rvs(int N, const std::map<int, int>& dims);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;
};
ValidationReport validate(const RestrictedVS& v);
void require_valid(const RestrictedVS& v);  // throws Error(Validation) with the first problem

// A graded map between restricted vector spaces sharing a window; component
// at each internal degree. Absent component = zero map.
struct RVSMap {
    std::map<int, F2Matrix> comps;
    const F2Matrix* at(int degree) const {
        auto it = comps.find(degree);
        return it == comps.end() ? nullptr : &it->second;
    }
};
// check shapes and phi-equivariance of f : src -> tgt
void require_valid_map(const RestrictedVS& src, const RestrictedVS& tgt, const RVSMap& f,
                       const std::string& what);

// degreewise subspace of the underlying graded space; absent degree = zero
using SubspaceFamily = std::map<int, Subspace>;

// Is the phi-closed subspace V a direct summand of W as restricted objects?
// Decided by the lifting criterion: whenever phi(w) lands in V it must equal
// phi of some element of V.
bool is_summand(const SubspaceFamily& v, const RestrictedVS& w);

// {w : phi^n(w) in V for some n >= 0 with 2^n * deg(w) <= N}, computed by
// iterating preimages down from the top of each doubling chain. Always a
// summand when V is phi-closed.
SubspaceFamily phi_preimage(const SubspaceFamily& v, const RestrictedVS& w);

struct Summand {
    enum class Kind { Free, Torsion, FreeUpToBound };
    Kind kind = Kind::Free;
    int n = 0;  // generator degree
    int k = 0;  // torsion length; 0 for the free kinds

    bool operator==(const Summand& o) const = default;
    auto operator<=>(const Summand& o) const = default;
};
std::string to_string(const Summand& s);

struct Decomposition {
    std::map<Summand, long long> counts;
    long long total() const;
    bool operator==(const Decomposition& o) const = default;
};
std::string to_string(const Decomposition& d);

struct FreeNilpotentSplit {
    RestrictedVS free_part;       // phi injective wherever the window shows it
    RestrictedVS nilpotent_part;  // every element killed by some phi power inside the window
    RVSMap include_free;          // into the input, columns = chosen basis vectors
    RVSMap include_nilpotent;
};
FreeNilpotentSplit split_free_nilpotent(const RestrictedVS& v);

// Full decomposition into F(n), T(n,k) and boundary-flagged free lines.
// Free generators in degree n with 2n > N carry no phi data at all and are
// reported FreeUpToBound{n}.
Decomposition decompose(const RestrictedVS& v);

struct BasisElement {
    int degree = 0;
    F2Vec vec;        // in the coordinates of V^degree
    Summand summand;  // which summand this element generates
};
// Summand generators; for each degree i = 2^r p the union of the generators
// in degree i with the phi-images of lower generators along the chain is a
// basis of V^i (dropping zero images).
std::vector<BasisElement> extract_basis(const RestrictedVS& v);

// rank(phi^s : V^i -> V^{2^s i}) for all i, s >= 0 with 2^s i <= N.
// Complete isomorphism invariant; s = 0 gives the dims.
std::map<std::pair<int, int>, int> rank_family(const RestrictedVS& v);

RestrictedVS direct_sum(const std::vector<RestrictedVS>& parts);
// the standard model of one summand inside a window of size N
RestrictedVS summand_rvs(const Summand& s, int N);

// literal equality: same window, same dims, same phi matrices (absent
// entries count as zero matrices on both sides)
bool equal_rvs(const RestrictedVS& a, const RestrictedVS& b);
// literal equality of two maps between the same spaces
bool equal_map(const RVSMap& f, const RVSMap& g, const RestrictedVS& src, const RestrictedVS& tgt);

}  // namespace f2alg

#pragma once

// The free unstable algebra functor U on restricted vector spaces, with
// U(V) = S(V)/(x^2 = phi x). Provides graded dimensions of U(V), the functor
// applied levelwise to a simplicial object, a brute-force homotopy oracle
// obtained from the normalized chains of that simplicial algebra, the closed
// form for the homotopy of U applied to a chain complex, and the length
// filtration dimensions refining it.

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "f2alg/rchain.hpp"

namespace f2alg {

// internal degree -> dimension, truncated at the requested bound
using GradedAlgebraDims = std::map<int, long long>;

// dimensions of U(V) up to internal degree max_internal, which must not
// exceed the window of V so the squaring relation is never cut off.
// Degree-0 generators are Boolean (x^2 = x), contributing 2^d in degree 0.
GradedAlgebraDims U_dims(const RestrictedVS& v, int max_internal);

// U applied to every level of a simplicial object, with all structure maps
// written out as dense matrices per internal degree. Basis vectors are the
// square-free monomials in the level's coordinate basis.
struct SimplicialGradedVS {
    int level_bound = 0;
    int max_internal = 0;
    std::vector<std::vector<int>> dims;                            // [level][internal degree]
    std::vector<std::vector<std::vector<F2Matrix>>> faces;         // [level][face index][internal]
    std::vector<std::vector<std::vector<F2Matrix>>> degeneracies;  // [level][index][internal]
};

SimplicialGradedVS U_simplicial(const SimplicialRVS& s, int max_internal);

struct PiUResult {
    std::map<std::pair<int, int>, long long> dims;  // (homotopy, internal) -> dimension
};

// homotopy of U applied to a simplicial object, computed by brute force in
// the quotient of the levelwise monomial bases by the degenerate monomials
// (isomorphic to the normalized complex). Needs construction provenance
// (component masks) and level_bound >= max_homotopy + 1.
PiUResult pi_U_oracle(const SimplicialRVS& s, int max_homotopy, int max_internal);

// closed form: U(H_0)[0] tensor the free symmetric delta algebra on the
// cokernel of phi on positive homotopy, tensor the same on the kernel of phi
// shifted up by one homotopy degree with its internal degree doubled
PiUResult pi_U_closed_form(const RVSComplex& c, int max_homotopy, int max_internal);

// the generator multiplicities the closed form is built from, keyed by
// (homotopy, internal); kernel entries are already shifted and doubled
struct ClosedFormGenerators {
    std::map<std::pair<int, int>, int> cokernel;
    std::map<std::pair<int, int>, int> kernel;
};
ClosedFormGenerators closed_form_generators(const RVSComplex& c);

// dimensions of the associated graded of the word length filtration:
// (filtration, homotopy, internal) -> dimension. Marginalizing the
// filtration recovers pi_U_closed_form.
using EInfinityDims = std::map<std::array<int, 3>, long long>;
EInfinityDims e_infinity_length(const RVSComplex& c, int max_homotopy, int max_internal);

}  // namespace f2alg

#pragma once

// JSON readers and writers for the file formats shared by the library and
// the command line tool: restricted vector spaces, chain complexes, and the
// result tables printed by the various subcommands. Writers emit object keys
// in sorted order with a fixed indentation, so the output is byte identical
// across runs. Readers treat omitted dims entries as zero dimensions and
// omitted phi or differential entries as zero maps, and reject anything
// structurally unexpected with a validation error naming the offending key.

#include <string>
#include <vector>

#include "f2alg/loopspace.hpp"
#include "f2alg/unstable.hpp"

namespace f2alg {

// {"max_internal_degree": N,
//  "dims": {"<i>": d_i, ...},
//  "phi": {"<i>": [[row bits of length d_i], ... d_{2i} rows], ...}}
// phi at degree 0 may be omitted even when d_0 > 0; it is filled in as the
// identity, the only valid value there.
RestrictedVS rvs_from_json(const std::string& text);
std::string rvs_to_json(const RestrictedVS& v);

// {"levels": [<restricted vector space>, ...],
//  "differentials": [{"<q>": [[row bits], ...], ...}, ...]}
// differentials[j] maps level j+1 to level j, so the array is one entry
// shorter than levels; it may be omitted entirely for a zero differential.
RVSComplex complex_from_json(const std::string& text);
std::string complex_to_json(const RVSComplex& c);

// {"counts": {"F(2)": 1, "T(1,2)": 3, ...}}
std::string decomposition_to_json(const Decomposition& d);
// {"counts": {"C(1,1)": 1, "S^1 C(3)": 2, ...}}
std::string complex_decomposition_to_json(const ComplexDecomposition& d);

// {"dims": {"(t,q)": c, ...}, "generators": [...], "homotopy_zero": "F(2)"}
// with one generators entry per closed-form tensor factor
std::string pi_u_to_json(const PiUResult& r, const ClosedFormGenerators& gens,
                         const Decomposition& h0);
// {"dims": {"(t,q)": c, ...}} without the generator data, for oracle output
std::string pi_u_dims_to_json(const PiUResult& r);
// {"dims": {"(s,t,q)": c, ...}} keyed by (filtration, homotopy, internal)
std::string e_infinity_to_json(const EInfinityDims& d);

// {"k": k, "max_degree": D, "dl": [{"b": [...], "degree": n}, ...]}
std::string dl_listing_to_json(int k, int max_degree, const std::vector<DLGenerator>& gens);
// {"k": k, "max_degree": D,
//  "e2": [{"s": s, "a": [...], "I": [...], "degree": n, "filtration": f,
//          "internal": m}, ...]}
std::string e2_listing_to_json(int k, int max_degree, const std::vector<E2Generator>& gens);
// {"degrees": [...], "max_degree": D, "dl_series": [...], "e2_series": [...],
//  "series_equal": bool, "first_mismatch": d or -1}
std::string collapse_to_json(const std::vector<int>& degrees, const CollapseReport& rep);

}  // namespace f2alg

#pragma once

// The combinatorial algebra of higher divided square operations: admissible
// index sequences, excess and weight, rewriting products into admissible
// normal form, and basis counting for the free symmetric and exterior
// algebras these operations generate over a graded or bigraded space.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace f2alg {

// an index sequence (i_1, ..., i_k); entries must be >= 1
using IndexSeq = std::vector<int>;

// a sum of admissible sequences with mod-2 coefficients
using DeltaPolynomial = std::set<IndexSeq>;

// i_t >= 2 i_{t+1} for all adjacent pairs; the empty sequence is admissible
bool is_admissible(const IndexSeq& seq);
// i_1 - i_2 - ... - i_k, zero for the empty sequence
long long excess(const IndexSeq& seq);
// 2^k where k is the length
long long weight(const IndexSeq& seq);

// binomial(n, k) mod 2 without computing the binomial
bool odd_binomial(long long n, long long k);

// rewrite the inadmissible product d_i d_j (i < 2j) as a sum of admissible
// pairs d_{i+j-s} d_s over integers s with (i+1)/2 <= s <= (i+j)/3
DeltaPolynomial adem_rewrite(int i, int j);

// rewrite an arbitrary word into its admissible normal form by repeatedly
// replacing the leftmost inadmissible pair
DeltaPolynomial normal_form(const IndexSeq& word);

std::string to_string(const IndexSeq& seq);         // "d5 d2", "1" when empty
std::string to_string(const DeltaPolynomial& p);    // "d5 d2 + d6 d1", "0" when empty

enum class AlgebraFlavor { Symmetric, Exterior };

// (homotopy degree, internal degree, weight) of a monomial
struct GradedKey {
    int homotopy = 0;
    int internal = 0;
    long long weight = 0;

    bool operator==(const GradedKey&) const = default;
    auto operator<=>(const GradedKey&) const = default;
};
using MonomialBasisCounts = std::map<GradedKey, long long>;

// basis counts of the free algebra on delta operations applied to a graded
// space: generators are d_I v with I admissible, the last entry >= 2
// (symmetric flavor) or >= 1 (exterior flavor), and excess(I) bounded by the
// degree of v. Positive-degree generators square to zero; degree-0 generators
// are polynomial in the symmetric flavor and exterior otherwise. The internal
// component of every key is zero here.
MonomialBasisCounts enum_frak_s(const std::map<int, int>& dims, AlgebraFlavor flavor,
                                int max_homotopy, long long max_weight);

// bigraded version: a generator at (homotopy n, internal q) contributes
// d_I v at (n + |I|, 2^{len I} q) with weight 2^{len I}; the excess bound
// reads against the homotopy degree
MonomialBasisCounts enum_frak_S(const std::map<std::pair<int, int>, int>& dims,
                                AlgebraFlavor flavor, int max_homotopy, int max_internal,
                                long long max_weight);

}  // namespace f2alg

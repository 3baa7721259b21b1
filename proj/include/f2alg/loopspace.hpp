#pragma once

// Additive generators on the two sides of the loop-space homology spectral
// sequence of a sphere class: derived-destabilization generators
// [a_1..a_s](v) with optional divided-square decoration d_I, Dyer-Lashof
// tuples {b_1..b_sigma}(v), the degree-preserving bijection between the two
// families with its inverse, and a Hilbert-series witness that the spectral
// sequence collapses.

#include <string>
#include <vector>

#include "f2alg/delta.hpp"

namespace f2alg {

// d_I [a_1..a_s](v); s = 0 with empty a and I denotes the class v itself.
// I must be admissible with entries >= 1 and excess(I) <= s.
struct E2Generator {
    int s = 0;
    std::vector<int> a;  // size s, entries >= 0
    IndexSeq I;
    int k = 1;  // degree of the underlying class, >= 1

    bool operator==(const E2Generator&) const = default;
};

// {b_1..b_sigma}(v); empty b denotes the class v itself. A tuple with
// b_1 > 0 is a polynomial generator, a leading zero marks the square of the
// tuple with that zero dropped.
struct DLGenerator {
    std::vector<int> b;  // entries >= 0
    int k = 1;

    bool operator==(const DLGenerator&) const = default;
};

void require_valid_e2(const E2Generator& g);
void require_valid_dl(const DLGenerator& g);

struct TriDegree {
    int filtration = 0;  // minus (s plus the sum of the entries of I)
    int internal = 0;
    int total = 0;  // internal + filtration

    bool operator==(const TriDegree&) const = default;
};
TriDegree e2_degree(const E2Generator& g);
long long dl_degree(const DLGenerator& g);

// forward: d_I [a_1..a_s](v) -> {s - sum r, r_1, .., r_{l-1}, a_1 + r_l - 1,
// a_2, .., a_s}(v) where r_t = i_t - 2 i_{t+1} and r_l = i_l; degree
// preserving by construction, total e2 degree = dl degree
DLGenerator forward_map(const E2Generator& g);
E2Generator inverse_map(const DLGenerator& d);

// every generator of total degree <= max_total, in increasing degree order,
// including the underlying class itself when it fits the bound
std::vector<E2Generator> enum_e2(int k, int max_total);
std::vector<DLGenerator> enum_dl(int k, int max_total);

struct HilbertSeries {
    int max_degree = 0;
    std::vector<long long> coeffs;  // size max_degree + 1

    bool operator==(const HilbertSeries&) const = default;
};

// Both sides of the collapse count for a wedge of sphere classes: the
// Dyer-Lashof side is polynomial on the classes and the b_1 > 0 tuples, the
// spectral-sequence side is exterior on every decorated generator with one
// (1 + x^k) factor per class. Squares hide inside the polynomial factors,
// which is what makes the two bookkeepings comparable.
struct CollapseReport {
    HilbertSeries dl_series;
    HilbertSeries e2_series;
    bool equal = false;
    int first_mismatch = -1;  // -1 when the series agree
};
CollapseReport collapse_check(const std::vector<int>& degrees, int max_degree);

std::string to_string(const E2Generator& g);  // "d3 d1 [3,5](v1)", "v2"
std::string to_string(const DLGenerator& g);  // "{0,1,3,5}(v1)", "v2"

}  // namespace f2alg

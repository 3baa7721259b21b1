#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "f2alg/common.hpp"
#include "f2alg/delta.hpp"
#include "f2alg/rchain.hpp"
#include "f2alg/restricted.hpp"
#include "f2alg/unstable.hpp"

using namespace f2alg;

namespace {

F2Matrix random_invertible(int n, std::mt19937& rng) {
    if (n == 0) return F2Matrix(0, 0);
    while (true) {
        F2Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), rng() & 1u);
        if (rank(m) == static_cast<std::size_t>(n)) return m;
    }
}

// conjugate every degree of a restricted space by a random change of basis
RestrictedVS scramble_rvs(const RestrictedVS& v, std::mt19937& rng) {
    std::map<int, F2Matrix> p;
    for (int q = 0; q <= v.max_internal_degree; ++q)
        p.emplace(q, random_invertible(v.dim_at(q), rng));
    RestrictedVS out;
    out.max_internal_degree = v.max_internal_degree;
    out.dims = v.dims;
    for (int q = 0; 2 * q <= v.max_internal_degree; ++q) {
        if (v.dim_at(q) == 0 || v.dim_at(2 * q) == 0) continue;
        F2Matrix m = p.at(2 * q).multiply(v.phi_at(q)).multiply(inverse(p.at(q)));
        if (!m.is_zero()) out.phi.emplace(q, std::move(m));
    }
    return out;
}

RestrictedVS random_restricted(int N, std::mt19937& rng, int max_gens = 4) {
    std::vector<RestrictedVS> parts;
    int gens = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gens));
    for (int g = 0; g < gens; ++g) {
        int pick = static_cast<int>(rng() % 3u);
        if (pick == 0) {
            int n = static_cast<int>(rng() % static_cast<unsigned>(N / 2 + 1));
            parts.push_back(summand_rvs({Summand::Kind::Free, n, 0}, N));
        } else if (pick == 1) {
            std::vector<std::pair<int, int>> legal;
            for (int n = 1; n <= N; ++n)
                for (int k = 1; (1LL << k) * n <= N; ++k) legal.push_back({n, k});
            if (legal.empty()) { --g; continue; }
            auto [n, k] = legal[rng() % legal.size()];
            parts.push_back(summand_rvs({Summand::Kind::Torsion, n, k}, N));
        } else {
            int n = N / 2 + 1 + static_cast<int>(rng() % static_cast<unsigned>(N - N / 2));
            parts.push_back(summand_rvs({Summand::Kind::FreeUpToBound, n, 0}, N));
        }
    }
    return scramble_rvs(direct_sum(parts), rng);
}

// subset-sum count over the graded basis: the associated graded of U is the
// exterior algebra, so dimensions only depend on the dimension sequence
std::map<int, long long> subset_sum_dims(const RestrictedVS& v, int max_internal) {
    std::vector<long long> table(static_cast<std::size_t>(max_internal) + 1, 0);
    table[0] = 1;
    for (int q = 0; q <= v.max_internal_degree; ++q)
        for (int copy = 0; copy < v.dim_at(q); ++copy) {
            if (q == 0) {
                table[0] *= 2;
                continue;
            }
            for (int s = max_internal; s >= q; --s)
                table[static_cast<std::size_t>(s)] += table[static_cast<std::size_t>(s - q)];
        }
    std::map<int, long long> out;
    for (int s = 0; s <= max_internal; ++s)
        if (table[static_cast<std::size_t>(s)] != 0) out[s] = table[static_cast<std::size_t>(s)];
    return out;
}

// homotopy dimensions from the full (unnormalized) simplicial algebra: the
// alternating face sum over F2 is just the XOR of the face matrices
std::map<std::pair<int, int>, long long> dense_homotopy_dims(const SimplicialGradedVS& u,
                                                             int max_homotopy) {
    REQUIRE(max_homotopy + 1 <= u.level_bound);
    auto boundary = [&](int t, int q) {
        std::size_t rows = static_cast<std::size_t>(
            u.dims[static_cast<std::size_t>(t) - 1][static_cast<std::size_t>(q)]);
        std::size_t cols =
            static_cast<std::size_t>(u.dims[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)]);
        F2Matrix m(rows, cols);
        for (const auto& face : u.faces[static_cast<std::size_t>(t)]) {
            const F2Matrix& f = face[static_cast<std::size_t>(q)];
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    if (f.get(r, c)) m.set(r, c, !m.get(r, c));
        }
        return m;
    };
    std::map<std::pair<int, int>, long long> out;
    for (int t = 0; t <= max_homotopy; ++t)
        for (int q = 0; q <= u.max_internal; ++q) {
            long long dim = u.dims[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
            long long z = dim - (t >= 1 ? static_cast<long long>(rank(boundary(t, q))) : 0);
            long long b = static_cast<long long>(rank(boundary(t + 1, q)));
            if (z - b != 0) out[{t, q}] = z - b;
        }
    return out;
}

RVSComplex random_small_complex(int N, std::mt19937& rng) {
    std::vector<RVSComplex> parts;
    int pieces = 1 + static_cast<int>(rng() % 2u);
    for (int p = 0; p < pieces; ++p) {
        int shift = static_cast<int>(rng() % 2u);
        if (rng() & 1u) {
            int q = static_cast<int>(rng() % static_cast<unsigned>(N)) + 1;
            parts.push_back(shift_complex(complex_point(q, N), shift));
        } else {
            std::vector<std::pair<int, int>> legal;
            for (int q = 1; q <= N; ++q)
                for (int k = 1; (1LL << k) * q <= N; ++k) legal.push_back({q, k});
            auto [q, k] = legal[rng() % legal.size()];
            parts.push_back(shift_complex(complex_cell(q, k, N), shift));
        }
    }
    return direct_sum_complex(parts);
}

std::map<std::pair<int, int>, long long> convolve_pi(
    const std::map<std::pair<int, int>, long long>& a,
    const std::map<std::pair<int, int>, long long>& b, int max_homotopy, int max_internal) {
    std::map<std::pair<int, int>, long long> out;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) {
            int t = ka.first + kb.first;
            int j = ka.second + kb.second;
            if (t <= max_homotopy && j <= max_internal) out[{t, j}] += va * vb;
        }
    return out;
}

}  // namespace

TEST_CASE("graded dimensions of the free unstable algebra") {
    SUBCASE("one free generator in degree 1") {
        GradedAlgebraDims d = U_dims(summand_rvs({Summand::Kind::Free, 1, 0}, 4), 4);
        GradedAlgebraDims want{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}};
        CHECK(d == want);
    }
    SUBCASE("one torsion generator of length 1") {
        GradedAlgebraDims d = U_dims(summand_rvs({Summand::Kind::Torsion, 1, 1}, 2), 2);
        GradedAlgebraDims want{{0, 1}, {1, 1}};
        CHECK(d == want);
    }
    SUBCASE("degree-0 generators are Boolean") {
        GradedAlgebraDims d = U_dims(summand_rvs({Summand::Kind::Free, 0, 0}, 2), 2);
        CHECK(d == GradedAlgebraDims{{0, 2}});
        std::vector<RestrictedVS> many(5, summand_rvs({Summand::Kind::Free, 0, 0}, 2));
        CHECK(U_dims(direct_sum(many), 0) == GradedAlgebraDims{{0, 32}});
    }
    SUBCASE("boundary-flagged generators behave like free ones") {
        GradedAlgebraDims d = U_dims(summand_rvs({Summand::Kind::FreeUpToBound, 3, 0}, 4), 4);
        CHECK(d == GradedAlgebraDims{{0, 1}, {3, 1}});
    }
    SUBCASE("too many Boolean generators is a size error") {
        std::vector<RestrictedVS> many(21, summand_rvs({Summand::Kind::Free, 0, 0}, 2));
        RestrictedVS v = direct_sum(many);
        CHECK_THROWS_AS(U_dims(v, 0), Error);
        try {
            U_dims(v, 0);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrKind::Size);
        }
    }
    SUBCASE("truncation past the window is rejected") {
        RestrictedVS v = summand_rvs({Summand::Kind::Free, 1, 0}, 4);
        CHECK_THROWS_AS(U_dims(v, 5), Error);
        CHECK_THROWS_AS(U_dims(v, -1), Error);
    }
}

TEST_CASE("U dimensions agree with the subset-sum count on scrambled inputs") {
    std::mt19937 rng(20240816u);
    for (int trial = 0; trial < 60; ++trial) {
        int N = 2 + static_cast<int>(rng() % 7u);
        RestrictedVS v = random_restricted(N, rng);
        int max_internal = static_cast<int>(rng() % static_cast<unsigned>(N + 1));
        CAPTURE(trial);
        CHECK(U_dims(v, max_internal) == subset_sum_dims(v, max_internal));
    }
}

TEST_CASE("simplicial algebra of a constant object is constant with identity maps") {
    SimplicialRVS s = make_K(0, 2, 4, 3);
    SimplicialGradedVS u = U_simplicial(s, 4);
    REQUIRE(u.level_bound == 3);
    GradedAlgebraDims base = U_dims(s.levels[0], 4);
    for (int n = 0; n <= 3; ++n)
        for (int q = 0; q <= 4; ++q) {
            long long want = base.count(q) ? base.at(q) : 0;
            CHECK(u.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] == want);
        }
    for (int n = 1; n <= 3; ++n)
        for (const auto& face : u.faces[static_cast<std::size_t>(n)])
            for (int q = 0; q <= 4; ++q) {
                const F2Matrix& m = face[static_cast<std::size_t>(q)];
                REQUIRE(m.rows() == m.cols());
                CHECK(m == F2Matrix::identity(m.rows()));
            }
}

TEST_CASE("simplicial algebra levels are the monomial algebras of the levels") {
    SimplicialRVS s = make_K(1, 1, 4, 3);
    SimplicialGradedVS u = U_simplicial(s, 4);
    for (int n = 0; n <= 3; ++n) {
        GradedAlgebraDims want = U_dims(s.levels[static_cast<std::size_t>(n)], 4);
        for (int q = 0; q <= 4; ++q) {
            long long w = want.count(q) ? want.at(q) : 0;
            CHECK(u.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] == w);
        }
    }
    SUBCASE("the functor preserves the simplicial identities") {
        for (int n = 2; n <= 3; ++n)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    for (int q = 0; q <= 4; ++q) {
                        F2Matrix lhs =
                            u.faces[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(q)]
                                .multiply(u.faces[static_cast<std::size_t>(n)]
                                                 [static_cast<std::size_t>(j)]
                                                 [static_cast<std::size_t>(q)]);
                        F2Matrix rhs =
                            u.faces[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(j) - 1]
                                   [static_cast<std::size_t>(q)]
                                .multiply(u.faces[static_cast<std::size_t>(n)]
                                                 [static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(q)]);
                        CHECK(lhs == rhs);
                    }
        for (int n = 0; n < 3; ++n)
            for (int i = 0; i <= n; ++i)
                for (int q = 0; q <= 4; ++q) {
                    const F2Matrix& s_iq =
                        u.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]
                                      [static_cast<std::size_t>(q)];
                    F2Matrix a = u.faces[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(i)]
                                        [static_cast<std::size_t>(q)]
                                     .multiply(s_iq);
                    F2Matrix b =
                        u.faces[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(i) + 1]
                               [static_cast<std::size_t>(q)]
                            .multiply(s_iq);
                    CHECK(a == F2Matrix::identity(a.rows()));
                    CHECK(b == F2Matrix::identity(b.rows()));
                }
    }
    SUBCASE("the unit survives every face map") {
        for (int n = 1; n <= 3; ++n)
            for (const auto& face : u.faces[static_cast<std::size_t>(n)]) {
                const F2Matrix& m = face[0];
                REQUIRE(m.rows() >= 1);
                REQUIRE(m.cols() >= 1);
                CHECK(m.get(0, 0));
            }
    }
}

TEST_CASE("homotopy oracle matches the dense unnormalized computation") {
    SUBCASE("one generator in degree 1 at homological degree 1") {
        SimplicialRVS s = make_K(1, 1, 4, 3);
        PiUResult fast = pi_U_oracle(s, 2, 3);
        CHECK(fast.dims == dense_homotopy_dims(U_simplicial(s, 3), 2));
    }
    SUBCASE("one torsion cell") {
        SimplicialRVS s = make_K_cell(1, 1, 1, 4, 3);
        PiUResult fast = pi_U_oracle(s, 2, 4);
        CHECK(fast.dims == dense_homotopy_dims(U_simplicial(s, 4), 2));
    }
    SUBCASE("a degree-0 generator") {
        SimplicialRVS s = make_K(1, 0, 2, 3);
        PiUResult fast = pi_U_oracle(s, 2, 2);
        CHECK(fast.dims == dense_homotopy_dims(U_simplicial(s, 2), 2));
    }
}

TEST_CASE("frozen homotopy values of the oracle") {
    SUBCASE("suspension of a degree-1 line") {
        SimplicialRVS s = make_K(1, 1, 4, 4);
        PiUResult got = pi_U_oracle(s, 3, 4);
        std::map<std::pair<int, int>, long long> want{{{0, 0}, 1}, {{1, 1}, 1}};
        CHECK(got.dims == want);
    }
    SUBCASE("double suspension sees the divided square ladder") {
        SimplicialRVS s = make_K(2, 1, 3, 7);
        PiUResult got = pi_U_oracle(s, 6, 3);
        std::map<std::pair<int, int>, long long> want{
            {{0, 0}, 1}, {{2, 1}, 1}, {{4, 2}, 1}, {{6, 3}, 1}};
        CHECK(got.dims == want);
    }
    SUBCASE("degree-0 spheres are homotopy discrete") {
        for (int n : {1, 2}) {
            SimplicialRVS s = make_K(n, 0, 2, n + 2);
            PiUResult got = pi_U_oracle(s, n + 1, 2);
            std::map<std::pair<int, int>, long long> want{{{0, 0}, 1}};
            CHECK(got.dims == want);
        }
    }
    SUBCASE("missing provenance masks are rejected") {
        SimplicialRVS s = make_K(1, 1, 4, 3);
        s.component_masks.clear();
        CHECK_THROWS_AS(pi_U_oracle(s, 2, 3), Error);
    }
    SUBCASE("the level bound must exceed the homotopy bound") {
        SimplicialRVS s = make_K(1, 1, 4, 3);
        CHECK_THROWS_AS(pi_U_oracle(s, 3, 3), Error);
        CHECK_THROWS_AS(pi_U_oracle(s, 2, 5), Error);
    }
}

TEST_CASE("closed form agrees with the oracle") {
    SUBCASE("spheres and cells") {
        struct Probe {
            RVSComplex c;
            int T, Q;
        };
        int N = 4;
        std::vector<Probe> probes;
        probes.push_back({shift_complex(complex_point(1, N), 1), 3, 4});
        probes.push_back({shift_complex(complex_point(2, N), 1), 3, 4});
        probes.push_back({shift_complex(complex_cell(1, 1, N), 1), 3, 4});
        probes.push_back({shift_complex(complex_cell(1, 2, N), 1), 3, 4});
        probes.push_back({complex_point(2, N), 2, 4});
        for (std::size_t i = 0; i < probes.size(); ++i) {
            CAPTURE(i);
            const Probe& p = probes[i];
            SimplicialRVS s = dold_kan_K(p.c, p.T + 1);
            CHECK(pi_U_oracle(s, p.T, p.Q).dims == pi_U_closed_form(p.c, p.T, p.Q).dims);
        }
    }
    SUBCASE("random small complexes") {
        std::mt19937 rng(77u);
        for (int trial = 0; trial < 6; ++trial) {
            RVSComplex c = random_small_complex(3, rng);
            CAPTURE(trial);
            SimplicialRVS s = dold_kan_K(c, 4);
            CHECK(pi_U_oracle(s, 3, 3).dims == pi_U_closed_form(c, 3, 3).dims);
        }
    }
}

TEST_CASE("closed form frozen examples") {
    SUBCASE("a torsion cell contributes a polynomial ladder on the kernel") {
        RVSComplex c = shift_complex(complex_cell(1, 2, 8), 1);
        PiUResult got = pi_U_closed_form(c, 4, 8);
        MonomialBasisCounts a = enum_frak_S({{{1, 1}, 1}}, AlgebraFlavor::Symmetric, 4, 8, 1000);
        MonomialBasisCounts b = enum_frak_S({{{2, 4}, 1}}, AlgebraFlavor::Symmetric, 4, 8, 1000);
        std::map<std::pair<int, int>, long long> ma, mb;
        for (const auto& [k, v] : a) ma[{k.homotopy, k.internal}] += v;
        for (const auto& [k, v] : b) mb[{k.homotopy, k.internal}] += v;
        CHECK(got.dims == convolve_pi(ma, mb, 4, 8));
    }
    SUBCASE("homology concentrated in homotopy 0 gives back the algebra") {
        RVSComplex c = complex_point(2, 4);
        PiUResult got = pi_U_closed_form(c, 3, 4);
        std::map<std::pair<int, int>, long long> want;
        for (const auto& [q, d] : U_dims(summand_rvs({Summand::Kind::Free, 2, 0}, 4), 4))
            want[{0, q}] = d;
        CHECK(got.dims == want);
    }
    SUBCASE("the zero complex has the homotopy of the unit") {
        PiUResult got = pi_U_closed_form(zero_complex(4, 3), 3, 4);
        std::map<std::pair<int, int>, long long> want{{{0, 0}, 1}};
        CHECK(got.dims == want);
    }
}

TEST_CASE("homotopy of a direct sum is the convolution of the factors") {
    std::mt19937 rng(4242u);
    for (int trial = 0; trial < 8; ++trial) {
        RVSComplex a = random_small_complex(4, rng);
        RVSComplex b = random_small_complex(4, rng);
        RVSComplex both = direct_sum_complex({a, b});
        CAPTURE(trial);
        auto pa = pi_U_closed_form(a, 4, 4).dims;
        auto pb = pi_U_closed_form(b, 4, 4).dims;
        CHECK(pi_U_closed_form(both, 4, 4).dims == convolve_pi(pa, pb, 4, 4));
    }
}

TEST_CASE("length filtration refines the closed form") {
    SUBCASE("suspended degree-1 line") {
        RVSComplex c = shift_complex(complex_point(1, 4), 1);
        EInfinityDims got = e_infinity_length(c, 1, 1);
        EInfinityDims want{{{0, 0, 0}, 1}, {{1, 1, 1}, 1}};
        CHECK(got == want);
    }
    SUBCASE("a degree-0 point splits across filtrations 0 and 1") {
        RVSComplex c = complex_point(0, 2);
        EInfinityDims got = e_infinity_length(c, 1, 2);
        EInfinityDims want{{{0, 0, 0}, 1}, {{1, 0, 0}, 1}};
        CHECK(got == want);
    }
    SUBCASE("marginalizing the filtration recovers the homotopy dimensions") {
        std::mt19937 rng(99u);
        for (int trial = 0; trial < 10; ++trial) {
            RVSComplex c = random_small_complex(4, rng);
            CAPTURE(trial);
            std::map<std::pair<int, int>, long long> marg;
            for (const auto& [k, v] : e_infinity_length(c, 4, 4)) marg[{k[1], k[2]}] += v;
            CHECK(marg == pi_U_closed_form(c, 4, 4).dims);
        }
    }
    SUBCASE("filtration degrees come from symbol weights") {
        RVSComplex c = shift_complex(complex_point(1, 3), 2);
        EInfinityDims got = e_infinity_length(c, 6, 3);
        EInfinityDims want{{{0, 0, 0}, 1}, {{1, 2, 1}, 1}, {{2, 4, 2}, 1}, {{3, 6, 3}, 1}};
        CHECK(got == want);
    }
}

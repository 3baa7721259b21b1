#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "f2alg/common.hpp"
#include "f2alg/delta.hpp"
#include "f2alg/loopspace.hpp"
#include "f2alg/restricted.hpp"
#include "f2alg/unstable.hpp"

using namespace f2alg;

namespace {

// independent degree computation for a Dyer-Lashof tuple: convert to upper
// indices j_i and fold deg(Q^j x) = j + deg x from the inside out. The j's
// come from the partial sums l_j = b_1 + .. + b_j.
long long oracle_dl_degree(const std::vector<int>& b, int k) {
    int sigma = static_cast<int>(b.size());
    std::vector<long long> l(static_cast<std::size_t>(sigma) + 1, 0);
    for (int j = 1; j <= sigma; ++j)
        l[static_cast<std::size_t>(j)] = l[static_cast<std::size_t>(j) - 1] +
                                         b[static_cast<std::size_t>(j) - 1];
    std::vector<long long> upper(static_cast<std::size_t>(sigma) + 1, 0);
    for (int i = 1; i <= sigma; ++i) {
        long long ji = (1LL << (sigma - i)) * k + l[static_cast<std::size_t>(i)];
        for (int j = i + 1; j <= sigma; ++j)
            ji += (1LL << (j - i - 1)) * l[static_cast<std::size_t>(j)];
        upper[static_cast<std::size_t>(i)] = ji;
    }
    long long deg = k;
    for (int i = sigma; i >= 1; --i) deg += upper[static_cast<std::size_t>(i)];
    // the upper indices must be allowable, dropping by the tuple entries
    for (int i = 1; i < sigma; ++i)
        REQUIRE(upper[static_cast<std::size_t>(i)] ==
                2 * upper[static_cast<std::size_t>(i) + 1] - b[static_cast<std::size_t>(i)]);
    if (sigma >= 1) {
        long long rest = k;
        for (int i = 2; i <= sigma; ++i) rest += upper[static_cast<std::size_t>(i)];
        REQUIRE(upper[1] - rest == b[0]);
    }
    return deg;
}

std::map<long long, long long> degree_census_dl(const std::vector<DLGenerator>& v) {
    std::map<long long, long long> out;
    for (const auto& g : v) ++out[dl_degree(g)];
    return out;
}

std::map<long long, long long> degree_census_e2(const std::vector<E2Generator>& v) {
    std::map<long long, long long> out;
    for (const auto& g : v) ++out[e2_degree(g).total];
    return out;
}

}  // namespace

TEST_CASE("degrees of decorated brackets") {
    SUBCASE("bracket with one entry") {
        TriDegree d = e2_degree({1, {1}, {}, 1});
        CHECK(d.internal == 4);
        CHECK(d.filtration == -1);
        CHECK(d.total == 3);
    }
    SUBCASE("decorated bracket") {
        TriDegree d = e2_degree({1, {0}, {1}, 1});
        CHECK(d.total == 4);
        CHECK(d.filtration == -2);
        CHECK(d.internal == 6);
    }
    SUBCASE("two-entry bracket matches its tuple partner") {
        TriDegree d = e2_degree({2, {0, 0}, {}, 1});
        CHECK(d.internal == 9);
        CHECK(d.total == 7);
        CHECK(dl_degree({{1, 0}, 1}) == 7);
    }
    SUBCASE("bare class") {
        TriDegree d = e2_degree({0, {}, {}, 3});
        CHECK(d.total == 3);
        CHECK(d.filtration == 0);
        CHECK(dl_degree({{}, 3}) == 3);
    }
    SUBCASE("tuple degrees") {
        CHECK(dl_degree({{1}, 1}) == 3);
        CHECK(dl_degree({{0}, 1}) == 2);
        CHECK(dl_degree({{0, 0}, 1}) == 4);
    }
    SUBCASE("malformed inputs are rejected") {
        CHECK_THROWS_AS(e2_degree({1, {0, 0}, {}, 1}), Error);  // wrong bracket size
        CHECK_THROWS_AS(e2_degree({1, {-1}, {}, 1}), Error);
        CHECK_THROWS_AS(e2_degree({1, {0}, {2}, 1}), Error);  // excess 2 > s
        CHECK_THROWS_AS(e2_degree({2, {0, 0}, {1, 1}, 1}), Error);  // inadmissible
        CHECK_THROWS_AS(e2_degree({0, {}, {}, 0}), Error);
        CHECK_THROWS_AS(dl_degree({{-1}, 1}), Error);
        CHECK_THROWS_AS(dl_degree({{0}, 0}), Error);
    }
}

TEST_CASE("tuple degrees agree with the upper-index oracle") {
    for (int k = 1; k <= 4; ++k)
        for (const DLGenerator& g : enum_dl(k, 60)) {
            CAPTURE(to_string(g));
            CHECK(dl_degree(g) == oracle_dl_degree(g.b, g.k));
        }
}

TEST_CASE("forward map on the worked examples") {
    SUBCASE("single decoration") {
        DLGenerator d = forward_map({1, {0}, {1}, 2});
        CHECK(d.b == std::vector<int>{0, 0});
        CHECK(d.k == 2);
    }
    SUBCASE("length-two decoration") {
        DLGenerator d = forward_map({2, {3, 5}, {3, 1}, 1});
        CHECK(d.b == std::vector<int>{0, 1, 3, 5});
    }
    SUBCASE("undecorated brackets absorb into the head") {
        for (int b = 0; b <= 4; ++b) {
            DLGenerator d = forward_map({1, {b}, {}, 1});
            CHECK(d.b == std::vector<int>{b});
        }
        DLGenerator d = forward_map({3, {2, 0, 7}, {}, 1});
        CHECK(d.b == std::vector<int>{4, 0, 7});
    }
    SUBCASE("bare class maps to itself") {
        CHECK(forward_map({0, {}, {}, 5}) == DLGenerator{{}, 5});
    }
}

TEST_CASE("inverse map on the worked examples") {
    SUBCASE("all-zero tuples rebuild the doubling chain") {
        E2Generator g = inverse_map({{0, 0}, 1});
        CHECK(g.s == 1);
        CHECK(g.a == std::vector<int>{0});
        CHECK(g.I == IndexSeq{1});
        CHECK(inverse_map({{0, 0, 0}, 1}).I == IndexSeq{2, 1});
    }
    SUBCASE("single-entry tuples are undecorated") {
        for (int b = 0; b <= 4; ++b) {
            E2Generator g = inverse_map({{b}, 1});
            CHECK(g.s == 1);
            CHECK(g.a == std::vector<int>{b});
            CHECK(g.I.empty());
        }
    }
    SUBCASE("the documented four-entry split") {
        E2Generator g = inverse_map({{0, 1, 3, 5}, 1});
        CHECK(g.s == 2);
        CHECK(g.I == IndexSeq{3, 1});
        CHECK(g.a == std::vector<int>{3, 5});
    }
}

TEST_CASE("the two enumerations biject degree by degree") {
    SUBCASE("small hand-checked lists") {
        std::vector<DLGenerator> dl = enum_dl(1, 3);
        REQUIRE(dl.size() == 3);
        CHECK(dl[0] == DLGenerator{{}, 1});
        CHECK(dl[1] == DLGenerator{{0}, 1});
        CHECK(dl[2] == DLGenerator{{1}, 1});
        std::vector<E2Generator> e2 = enum_e2(1, 3);
        REQUIRE(e2.size() == 3);
        CHECK(e2[0] == E2Generator{0, {}, {}, 1});
        CHECK(e2[1] == E2Generator{1, {0}, {}, 1});
        CHECK(e2[2] == E2Generator{1, {1}, {}, 1});
        CHECK(enum_dl(2, 3) == std::vector<DLGenerator>{{{}, 2}});
        CHECK(enum_dl(4, 3).empty());
    }
    SUBCASE("degree censuses agree") {
        for (int k = 1; k <= 4; ++k) {
            std::vector<E2Generator> e2 = enum_e2(k, 60);
            std::vector<DLGenerator> dl = enum_dl(k, 60);
            CHECK(e2.size() == dl.size());
            CHECK(degree_census_e2(e2) == degree_census_dl(dl));
        }
    }
    SUBCASE("round trips are exhaustive and exact") {
        for (int k = 1; k <= 4; ++k) {
            std::vector<E2Generator> e2 = enum_e2(k, 60);
            std::vector<DLGenerator> dl = enum_dl(k, 60);
            std::set<std::vector<int>> seen;
            for (const E2Generator& g : e2) {
                DLGenerator d = forward_map(g);
                CHECK(dl_degree(d) == e2_degree(g).total);
                CHECK(inverse_map(d) == g);
                seen.insert(d.b);
            }
            // forward is injective onto the enumerated tuple range
            CHECK(seen.size() == e2.size());
            for (const DLGenerator& d : dl) {
                E2Generator g = inverse_map(d);
                CHECK(forward_map(g) == d);
                CHECK(seen.count(d.b) == 1);
            }
        }
    }
}

TEST_CASE("series helpers and collapse") {
    SUBCASE("a single generator satisfies the square-chain identity") {
        // 1/(1-x^d) = prod_m (1 + x^(2^m d)), coefficientwise to any bound
        for (int d = 1; d <= 5; ++d) {
            int D = 40;
            std::vector<long long> poly(static_cast<std::size_t>(D) + 1, 0), ext = poly;
            poly[0] = ext[0] = 1;
            for (int i = d; i <= D; ++i)
                poly[static_cast<std::size_t>(i)] += poly[static_cast<std::size_t>(i - d)];
            for (long long step = d; step <= D; step *= 2)
                for (long long i = D; i >= step; --i)
                    ext[static_cast<std::size_t>(i)] += ext[static_cast<std::size_t>(i - step)];
            CHECK(poly == ext);
        }
    }
    SUBCASE("collapse for one sphere class") {
        CollapseReport rep = collapse_check({1}, 20);
        CHECK(rep.equal);
        CHECK(rep.first_mismatch == -1);
        CHECK(rep.dl_series.coeffs[0] == 1);
        CHECK(rep.dl_series.coeffs[1] == 1);
        CHECK(rep.dl_series.coeffs[2] == 1);  // the square of the class
        CHECK(rep.dl_series == rep.e2_series);
        for (int k = 2; k <= 3; ++k) CHECK(collapse_check({k}, 30).equal);
    }
    SUBCASE("truncation below the class degree leaves the unit") {
        CollapseReport rep = collapse_check({5}, 3);
        CHECK(rep.equal);
        CHECK(rep.dl_series.coeffs == std::vector<long long>{1, 0, 0, 0});
    }
    SUBCASE("wedges multiply the series") {
        CollapseReport both = collapse_check({1, 2}, 25);
        CHECK(both.equal);
        CollapseReport one = collapse_check({1}, 25);
        CollapseReport two = collapse_check({2}, 25);
        for (int i = 0; i <= 25; ++i) {
            long long conv = 0;
            for (int j = 0; j <= i; ++j)
                conv += one.dl_series.coeffs[static_cast<std::size_t>(j)] *
                        two.dl_series.coeffs[static_cast<std::size_t>(i - j)];
            CHECK(both.dl_series.coeffs[static_cast<std::size_t>(i)] == conv);
        }
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(collapse_check({}, 10), Error);
        CHECK_THROWS_AS(collapse_check({0}, 10), Error);
        CHECK_THROWS_AS(collapse_check({1}, -1), Error);
        CHECK_THROWS_AS(collapse_check({1}, 200), Error);
        CHECK_THROWS_AS(enum_dl(1, 600), Error);
    }
}

TEST_CASE("decorations match the divided-square symbol algebra") {
    // For a fixed undecorated bracket, its decorations d_I with excess <= s
    // double the internal degree once per entry of I and raise the
    // filtration magnitude by the sum of I. The exterior algebra they span
    // must therefore agree, as a bigraded count, with the exterior-flavor
    // monomial basis over a single generator placed at (s, internal).
    std::vector<E2Generator> bases = {
        {1, {0}, {}, 1}, {1, {1}, {}, 1}, {2, {0, 0}, {}, 1}, {2, {1, 0}, {}, 2}};
    for (const E2Generator& base : bases) {
        CAPTURE(to_string(base));
        TriDegree bd = e2_degree(base);
        int T = base.s + 14;
        int Q = bd.internal * 16;
        std::map<std::pair<int, int>, long long> from_delta;
        for (const auto& [key, cnt] :
             enum_frak_S({{{base.s, bd.internal}, 1}}, AlgebraFlavor::Exterior, T, Q, 1'000'000))
            from_delta[{key.homotopy, key.internal}] += cnt;

        // decorations of this bracket, filtered from the full enumeration;
        // the bound Q suffices because the total never exceeds the internal
        std::map<std::pair<int, int>, long long> gens;
        for (const E2Generator& g : enum_e2(base.k, Q)) {
            if (g.s != base.s || g.a != base.a) continue;
            TriDegree d = e2_degree(g);
            int filt = -d.filtration;
            if (filt <= T && d.internal <= Q) ++gens[{filt, d.internal}];
        }
        std::map<std::pair<int, int>, long long> from_loop{{{0, 0}, 1}};
        for (const auto& [key, cnt] : gens)
            for (long long c = 0; c < cnt; ++c) {
                std::map<std::pair<int, int>, long long> snap = from_loop;
                for (const auto& [k2, v2] : snap) {
                    int h = k2.first + key.first;
                    int q = k2.second + key.second;
                    if (h <= T && q <= Q) from_loop[{h, q}] += v2;
                }
            }
        CHECK(from_delta == from_loop);
    }
}

TEST_CASE("the exterior side counts the unstable algebra of a point") {
    // the (1 + x^k) factor of the spectral-sequence series is the Hilbert
    // series of the free unstable algebra on one class with zero restriction
    for (int k = 1; k <= 3; ++k) {
        RestrictedVS v = summand_rvs({Summand::Kind::Torsion, k, 1}, 4 * k);
        GradedAlgebraDims dims = U_dims(v, 4 * k);
        GradedAlgebraDims want{{0, 1}, {k, 1}};
        CHECK(dims == want);
    }
}

TEST_CASE("generator display") {
    CHECK(to_string(E2Generator{2, {3, 5}, {3, 1}, 1}) == "d3 d1 [3,5](v1)");
    CHECK(to_string(E2Generator{1, {0}, {}, 2}) == "[0](v2)");
    CHECK(to_string(E2Generator{0, {}, {}, 2}) == "v2");
    CHECK(to_string(DLGenerator{{0, 1, 3, 5}, 1}) == "{0,1,3,5}(v1)");
    CHECK(to_string(DLGenerator{{}, 3}) == "v3");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "f2alg/json_io.hpp"
#include "f2alg/rchain.hpp"

using namespace f2alg;

namespace {

ErrKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrKind::Internal;
}

}  // namespace

TEST_CASE("restricted vector space round trips through json") {
    std::vector<RestrictedVS> samples;
    samples.push_back(make_rvs(4, {}));
    samples.push_back(summand_rvs(Summand{Summand::Kind::Free, 1, 0}, 8));
    samples.push_back(summand_rvs(Summand{Summand::Kind::Torsion, 1, 2}, 8));
    samples.push_back(summand_rvs(Summand{Summand::Kind::FreeUpToBound, 5, 0}, 8));
    samples.push_back(direct_sum({summand_rvs(Summand{Summand::Kind::Free, 0, 0}, 6),
                                  summand_rvs(Summand{Summand::Kind::Free, 1, 0}, 6),
                                  summand_rvs(Summand{Summand::Kind::Torsion, 3, 1}, 6)}));
    for (const RestrictedVS& v : samples) {
        std::string text = rvs_to_json(v);
        RestrictedVS back = rvs_from_json(text);
        CHECK(equal_rvs(v, back));
        // canonical form: serializing the parse reproduces the bytes
        CHECK(rvs_to_json(back) == text);
    }
}

TEST_CASE("omitted json fields mean zero") {
    RestrictedVS empty = rvs_from_json("{\"max_internal_degree\": 3}");
    CHECK(empty.max_internal_degree == 3);
    for (int q = 0; q <= 3; ++q) CHECK(empty.dim_at(q) == 0);

    // no phi entry: the restriction map is zero, so both lines are torsion
    RestrictedVS t = rvs_from_json("{\"max_internal_degree\": 4, \"dims\": {\"1\": 2}}");
    Decomposition d = decompose(t);
    CHECK(d.counts[Summand{Summand::Kind::Torsion, 1, 1}] == 2);
    CHECK(d.total() == 2);

    // the degree-0 restriction is reconstructed as the identity
    RestrictedVS b = rvs_from_json("{\"max_internal_degree\": 1, \"dims\": {\"0\": 2}}");
    REQUIRE(b.phi.count(0) == 1);
    CHECK(b.phi.at(0) == F2Matrix::identity(2));
}

TEST_CASE("explicit phi matrices parse into the right shape") {
    RestrictedVS v = rvs_from_json(
        "{\"max_internal_degree\": 2, \"dims\": {\"1\": 1, \"2\": 1}, \"phi\": {\"1\": [[1]]}}");
    Decomposition d = decompose(v);
    CHECK(d.counts[Summand{Summand::Kind::Free, 1, 0}] == 1);
    CHECK(d.total() == 1);
}

TEST_CASE("malformed restricted vector space json is rejected") {
    auto validation = [](const std::string& text) {
        CHECK(kind_of([&] { rvs_from_json(text); }) == ErrKind::Validation);
    };
    validation("{");
    validation("[1, 2]");
    validation("{\"dims\": {}}");
    validation("{\"max_internal_degree\": 2, \"dim\": {}}");
    validation("{\"max_internal_degree\": -1}");
    validation("{\"max_internal_degree\": 2, \"dims\": {\"x\": 1}}");
    validation("{\"max_internal_degree\": 2, \"dims\": {\"-1\": 1}}");
    validation("{\"max_internal_degree\": 2, \"dims\": {\"3\": 1}}");
    validation("{\"max_internal_degree\": 2, \"dims\": {\"1\": -2}}");
    validation("{\"max_internal_degree\": 2, \"dims\": {\"1\": 1.5}}");
    // phi target degree 4 falls outside the window
    validation("{\"max_internal_degree\": 3, \"dims\": {\"2\": 1}, \"phi\": {\"2\": [[1]]}}");
    // wrong row count: phi at 1 must have dims(2) = 1 row
    validation(
        "{\"max_internal_degree\": 2, \"dims\": {\"1\": 1, \"2\": 1}, \"phi\": {\"1\": [[1], [0]]}}");
    // ragged row
    validation(
        "{\"max_internal_degree\": 2, \"dims\": {\"1\": 2, \"2\": 1}, \"phi\": {\"1\": [[1]]}}");
    // entries must be bits
    validation(
        "{\"max_internal_degree\": 2, \"dims\": {\"1\": 1, \"2\": 1}, \"phi\": {\"1\": [[2]]}}");
    // the degree-0 restriction must be the identity
    validation("{\"max_internal_degree\": 1, \"dims\": {\"0\": 1}, \"phi\": {\"0\": [[0]]}}");

    CHECK(kind_of([] { rvs_from_json("{\"max_internal_degree\": 200000}"); }) == ErrKind::Size);
    CHECK(kind_of([] {
              rvs_from_json("{\"max_internal_degree\": 2, \"dims\": {\"1\": 99999999}}");
          }) == ErrKind::Size);
}

TEST_CASE("complex round trips through json") {
    std::vector<RVSComplex> samples;
    samples.push_back(complex_point(2, 8));
    samples.push_back(complex_cell(1, 2, 8));
    samples.push_back(zero_complex(4, 3));
    samples.push_back(direct_sum_complex(
        {complex_cell(1, 1, 8), shift_complex(complex_point(3, 8), 1)}));
    for (const RVSComplex& c : samples) {
        std::string text = complex_to_json(c);
        RVSComplex back = complex_from_json(text);
        REQUIRE(back.length() == c.length());
        for (int t = 0; t < c.length(); ++t) {
            CHECK(equal_rvs(back.levels[static_cast<std::size_t>(t)],
                            c.levels[static_cast<std::size_t>(t)]));
            if (t >= 1)
                CHECK(equal_map(back.diffs[static_cast<std::size_t>(t)],
                                c.diffs[static_cast<std::size_t>(t)],
                                c.levels[static_cast<std::size_t>(t)],
                                c.levels[static_cast<std::size_t>(t - 1)]));
        }
        CHECK(decompose_complex(back) == decompose_complex(c));
        CHECK(complex_to_json(back) == text);
    }
}

TEST_CASE("complex json accepts omitted differentials and rejects bad ones") {
    RVSComplex two = complex_from_json(
        "{\"levels\": [{\"max_internal_degree\": 4, \"dims\": {\"1\": 1}},"
        " {\"max_internal_degree\": 4, \"dims\": {\"3\": 1}}]}");
    REQUIRE(two.length() == 2);
    CHECK(decompose_complex(two).size() == 2);

    auto validation = [](const std::string& text) {
        CHECK(kind_of([&] { complex_from_json(text); }) == ErrKind::Validation);
    };
    validation("{\"levels\": []}");
    validation("{\"differentials\": []}");
    validation("{\"levels\": [{\"max_internal_degree\": 2}], \"differentials\": [{}]}");
    // windows must agree across the levels
    validation(
        "{\"levels\": [{\"max_internal_degree\": 2}, {\"max_internal_degree\": 3}]}");
    // wrong matrix shape for the declared dims
    validation(
        "{\"levels\": [{\"max_internal_degree\": 4, \"dims\": {\"1\": 1}},"
        " {\"max_internal_degree\": 4, \"dims\": {\"1\": 1}}],"
        " \"differentials\": [{\"1\": [[1, 0]]}]}");
    // identity twice does not square to zero
    validation(
        "{\"levels\": [{\"max_internal_degree\": 1, \"dims\": {\"1\": 1}},"
        " {\"max_internal_degree\": 1, \"dims\": {\"1\": 1}},"
        " {\"max_internal_degree\": 1, \"dims\": {\"1\": 1}}],"
        " \"differentials\": [{\"1\": [[1]]}, {\"1\": [[1]]}]}");
}

TEST_CASE("result writers are byte stable") {
    Decomposition d;
    d.counts[Summand{Summand::Kind::Free, 1, 0}] = 1;
    CHECK(decomposition_to_json(d) ==
          "{\n  \"counts\": {\n    \"F(1)\": 1\n  }\n}\n");

    // the shifted torsion cell has one cokernel and one kernel generator
    RVSComplex c = shift_complex(complex_cell(1, 2, 8), 1);
    PiUResult pi = pi_U_closed_form(c, 2, 4);
    ClosedFormGenerators gens = closed_form_generators(c);
    Decomposition h0 = decompose(homology(c)[0]);
    std::string text = pi_u_to_json(pi, gens, h0);
    CHECK(text.find("\"(1,1)\": 1") != std::string::npos);
    CHECK(text.find("\"(2,4)\": 1") != std::string::npos);
    CHECK(text.find("\"source\": \"cokernel\"") != std::string::npos);
    CHECK(text.find("\"source\": \"kernel\"") != std::string::npos);
    CHECK(text.find("\"homotopy_zero\": \"0\"") != std::string::npos);
    CHECK(pi_u_to_json(pi, gens, h0) == text);
    CHECK(pi_u_dims_to_json(pi).find("\"(1,1)\": 1") != std::string::npos);

    EInfinityDims e = e_infinity_length(c, 2, 4);
    std::string etext = e_infinity_to_json(e);
    CHECK(etext.find("\"(1,1,1)\": 1") != std::string::npos);
    CHECK(e_infinity_to_json(e) == etext);

    CollapseReport rep = collapse_check({1}, 5);
    std::string ctext = collapse_to_json({1}, rep);
    CHECK(ctext.find("\"series_equal\": true") != std::string::npos);
    CHECK(ctext.find("\"first_mismatch\": -1") != std::string::npos);
    CHECK(collapse_to_json({1}, rep) == ctext);

    std::string dl = dl_listing_to_json(1, 3, enum_dl(1, 3));
    CHECK(dl.find("\"degree\": 1") != std::string::npos);
    CHECK(dl.find("\"degree\": 2") != std::string::npos);
    CHECK(dl.find("\"degree\": 3") != std::string::npos);
    std::string e2 = e2_listing_to_json(1, 3, enum_e2(1, 3));
    CHECK(e2.find("\"filtration\": -1") != std::string::npos);
    CHECK(e2.find("\"I\": []") != std::string::npos);
}

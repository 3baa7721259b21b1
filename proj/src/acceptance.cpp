#include "f2alg/acceptance.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "f2alg/common.hpp"
#include "f2alg/json_io.hpp"
#include "f2alg/loopspace.hpp"
#include "f2alg/rchain.hpp"
#include "f2alg/unstable.hpp"
#include "json.hpp"

namespace f2alg {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << s << "s";
    return os.str();
}

struct CheckResult {
    bool pass = true;
    std::string detail;
    json snapshot = json::object();
};

F2Matrix random_invertible(std::size_t n, std::mt19937& rng) {
    F2Matrix m = F2Matrix::identity(n);
    if (n < 2) return m;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int step = 0; step < static_cast<int>(4 * n); ++step) {
        std::size_t a = pick(rng);
        std::size_t b = pick(rng);
        if (a == b) continue;
        if (rng() & 1)
            m.xor_row_into(a, b);
        else
            m.swap_rows(a, b);
    }
    return m;
}

// conjugate every degree by a random basis change; garbles the matrices but
// keeps the isomorphism type
RestrictedVS scramble_rvs(const RestrictedVS& v, std::mt19937& rng) {
    int N = v.max_internal_degree;
    std::vector<F2Matrix> p;
    for (int q = 0; q <= N; ++q)
        p.push_back(random_invertible(static_cast<std::size_t>(v.dim_at(q)), rng));
    RestrictedVS out;
    out.max_internal_degree = N;
    out.dims = v.dims;
    for (int q = 0; 2 * q <= N; ++q) {
        if (v.dim_at(q) == 0) continue;
        F2Matrix m = p[static_cast<std::size_t>(2 * q)]
                         .multiply(v.phi_at(q))
                         .multiply(inverse(p[static_cast<std::size_t>(q)]));
        if (!m.is_zero()) out.phi[q] = std::move(m);
    }
    return out;
}

// a random direct sum of summand models inside a random window, total
// dimension capped at 40, returned scrambled together with the multiset it
// was built from
RestrictedVS random_rvs_case(std::mt19937& rng, Decomposition& expected, int& window) {
    std::uniform_int_distribution<int> win(2, 32);
    int N = win(rng);
    window = N;
    std::uniform_int_distribution<int> scount(0, 5);
    int pieces = scount(rng);
    std::vector<RestrictedVS> parts;
    expected = Decomposition{};
    long long total = 0;
    for (int i = 0; i < pieces; ++i) {
        Summand s;
        int flavor = static_cast<int>(rng() % 3);
        if (flavor == 0) {
            std::uniform_int_distribution<int> nd(0, N / 2);
            s = Summand{Summand::Kind::Free, nd(rng), 0};
        } else if (flavor == 1) {
            std::vector<std::pair<int, int>> legal;
            for (int n = 1; n <= N; ++n)
                for (int k = 1; (n << k) <= N; ++k) legal.push_back({n, k});
            auto [n, k] = legal[rng() % legal.size()];
            s = Summand{Summand::Kind::Torsion, n, k};
        } else {
            std::uniform_int_distribution<int> nd(N / 2 + 1, N);
            s = Summand{Summand::Kind::FreeUpToBound, nd(rng), 0};
        }
        RestrictedVS model = summand_rvs(s, N);
        long long dim = 0;
        for (int q = 0; q <= N; ++q) dim += model.dim_at(q);
        if (total + dim > 40) break;
        total += dim;
        parts.push_back(std::move(model));
        expected.counts[s] += 1;
    }
    RestrictedVS v = parts.empty() ? make_rvs(N, {}) : direct_sum(parts);
    return scramble_rvs(v, rng);
}

RVSComplex scramble_complex(const RVSComplex& c, std::mt19937& rng) {
    int N = c.max_internal_degree;
    RVSComplex out;
    out.max_internal_degree = N;
    std::vector<std::vector<F2Matrix>> p(static_cast<std::size_t>(c.length()));
    for (int t = 0; t < c.length(); ++t)
        for (int q = 0; q <= N; ++q) {
            std::size_t d =
                static_cast<std::size_t>(c.levels[static_cast<std::size_t>(t)].dim_at(q));
            p[static_cast<std::size_t>(t)].push_back(random_invertible(d, rng));
        }
    for (int t = 0; t < c.length(); ++t) {
        const RestrictedVS& lvl = c.levels[static_cast<std::size_t>(t)];
        std::map<int, int> dims;
        for (int q = 0; q <= N; ++q)
            if (lvl.dim_at(q) > 0) dims[q] = lvl.dim_at(q);
        RestrictedVS nl = make_rvs(N, dims);
        for (int q = 0; 2 * q <= N; ++q) {
            if (lvl.dim_at(q) == 0) continue;
            nl.phi[q] = p[static_cast<std::size_t>(t)][static_cast<std::size_t>(2 * q)]
                            .multiply(lvl.phi_at(q))
                            .multiply(inverse(p[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)]));
        }
        out.levels.push_back(std::move(nl));
        RVSMap d;
        if (t >= 1 && t < static_cast<int>(c.diffs.size())) {
            for (int q = 0; q <= N; ++q) {
                int rows = c.levels[static_cast<std::size_t>(t - 1)].dim_at(q);
                int cols = lvl.dim_at(q);
                if (rows == 0 || cols == 0) continue;
                F2Matrix base(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
                if (const F2Matrix* m = c.diffs[static_cast<std::size_t>(t)].at(q)) base = *m;
                d.comps[q] = p[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(q)]
                                 .multiply(base)
                                 .multiply(inverse(p[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)]));
            }
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

// short random complexes: points and bounded lines shifted up to two levels,
// torsion cells up to one, so everything fits in three levels
ComplexDecomposition random_complex_decomposition(int N, std::mt19937& rng) {
    ComplexDecomposition d;
    std::uniform_int_distribution<int> ncount(1, 4);
    std::uniform_int_distribution<int> mult(1, 2);
    int n_summands = ncount(rng);
    for (int i = 0; i < n_summands; ++i) {
        ComplexSummand s;
        int flavor = static_cast<int>(rng() % 3);
        if (flavor == 0) {
            std::uniform_int_distribution<int> qd(0, N / 2);
            std::uniform_int_distribution<int> shift(0, 2);
            s.kind = ComplexSummand::Kind::FreePoint;
            s.q = qd(rng);
            s.n = shift(rng);
        } else if (flavor == 1) {
            std::vector<std::pair<int, int>> legal;
            for (int q = 1; q <= N; ++q)
                for (int k = 1; (q << k) <= N; ++k) legal.push_back({q, k});
            auto [q, k] = legal[rng() % legal.size()];
            std::uniform_int_distribution<int> shift(0, 1);
            s.kind = ComplexSummand::Kind::TorsionCell;
            s.q = q;
            s.k = k;
            s.n = shift(rng);
        } else {
            std::uniform_int_distribution<int> qd(N / 2 + 1, N);
            std::uniform_int_distribution<int> shift(0, 2);
            s.kind = ComplexSummand::Kind::FreeUpToBound;
            s.q = qd(rng);
            s.n = shift(rng);
        }
        d[s] += mult(rng);
    }
    return d;
}

std::string pi_key(const std::pair<int, int>& k) {
    return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
}

// first entry where the two bigraded tables differ, empty when equal
std::string first_pi_mismatch(const PiUResult& closed, const PiUResult& oracle) {
    for (const auto& [k, v] : closed.dims) {
        auto it = oracle.dims.find(k);
        long long w = it == oracle.dims.end() ? 0 : it->second;
        if (v != w)
            return pi_key(k) + ": closed form " + std::to_string(v) + ", oracle " +
                   std::to_string(w);
    }
    for (const auto& [k, w] : oracle.dims)
        if (closed.dims.find(k) == closed.dims.end())
            return pi_key(k) + ": closed form 0, oracle " + std::to_string(w);
    return "";
}

// ---- check 1: decomposition round trip on scrambled direct sums ----------

CheckResult check_decomposition_round_trip(unsigned seed) {
    auto start = Clock::now();
    std::mt19937 rng(seed);
    CheckResult r;
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Decomposition expected;
        int N = 0;
        RestrictedVS v = random_rvs_case(rng, expected, N);
        if (!(decompose(v) == expected)) {
            ++failures;
            if (r.detail.empty())
                r.detail = "first failing trial " + std::to_string(trial);
        }
    }
    double dt = seconds_since(start);
    r.pass = failures == 0 && dt < 60.0;
    if (failures == 0)
        r.detail = "1000 cases, " + fmt_seconds(dt);
    else
        r.detail = std::to_string(failures) + " of 1000 cases failed, " + r.detail;
    if (dt >= 60.0) r.detail += ", over the 60s budget";
    r.snapshot["cases"] = 1000;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

// ---- check 2: rank family reproduced by reassembly ------------------------

CheckResult check_rank_family(unsigned seed) {
    auto start = Clock::now();
    std::mt19937 rng(seed);
    CheckResult r;
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Decomposition expected;
        int N = 0;
        RestrictedVS v = random_rvs_case(rng, expected, N);
        Decomposition dec = decompose(v);
        std::vector<RestrictedVS> parts;
        for (const auto& [s, count] : dec.counts)
            for (long long i = 0; i < count; ++i) parts.push_back(summand_rvs(s, N));
        RestrictedVS rebuilt = parts.empty() ? make_rvs(N, {}) : direct_sum(parts);
        if (rank_family(rebuilt) != rank_family(v)) {
            ++failures;
            if (r.detail.empty())
                r.detail = "first failing trial " + std::to_string(trial);
        }
    }
    double dt = seconds_since(start);
    r.pass = failures == 0;
    if (failures == 0)
        r.detail = "1000 cases, " + fmt_seconds(dt);
    else
        r.detail = std::to_string(failures) + " of 1000 cases failed, " + r.detail;
    r.snapshot["cases"] = 1000;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

// ---- check 3: normalized chains invert the simplicial construction --------

CheckResult check_normalization_round_trip(unsigned seed) {
    auto start = Clock::now();
    std::mt19937 rng(seed);
    CheckResult r;
    int failures = 0;
    std::uniform_int_distribution<int> win(2, 8);
    for (int trial = 0; trial < 200; ++trial) {
        int N = win(rng);
        ComplexDecomposition d = random_complex_decomposition(N, rng);
        RVSComplex model = scramble_complex(reassemble_complex(d, N), rng);
        int L = model.length() + 1;
        SimplicialRVS k = dold_kan_K(model, L);
        RVSComplex back = normalize_N(k);
        bool ok = back.length() >= L + 1;
        RestrictedVS zero = make_rvs(N, {});
        for (int t = 0; ok && t <= L; ++t) {
            const RestrictedVS* expect = model.level(t);
            if (expect == nullptr) expect = &zero;
            ok = equal_rvs(back.levels[static_cast<std::size_t>(t)], *expect);
            if (ok && t >= 1) {
                RVSMap expected_diff;
                if (t < static_cast<int>(model.diffs.size()))
                    expected_diff = model.diffs[static_cast<std::size_t>(t)];
                const RestrictedVS* src = model.level(t);
                const RestrictedVS* tgt = model.level(t - 1);
                ok = equal_map(back.diffs[static_cast<std::size_t>(t)], expected_diff,
                               src ? *src : zero, tgt ? *tgt : zero);
            }
        }
        if (!ok) {
            ++failures;
            if (r.detail.empty()) r.detail = "first failing trial " + std::to_string(trial);
        }
    }
    double dt = seconds_since(start);
    r.pass = failures == 0;
    if (failures == 0)
        r.detail = "200 complexes, " + fmt_seconds(dt);
    else
        r.detail = std::to_string(failures) + " of 200 complexes failed, " + r.detail;
    r.snapshot["cases"] = 200;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

// ---- check 4: rewriting terminates admissibly and idempotently ------------

CheckResult check_rewriting(unsigned) {
    auto start = Clock::now();
    CheckResult r;
    int pairs = 0;
    int failures = 0;
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j) {
            if (i >= 2 * j) continue;  // already admissible
            ++pairs;
            DeltaPolynomial p = normal_form({i, j});
            bool ok = true;
            for (const IndexSeq& term : p) {
                if (!is_admissible(term)) ok = false;
                long long sum = 0;
                for (int e : term) sum += e;
                if (sum != i + j) ok = false;
                DeltaPolynomial again = normal_form(term);
                if (!(again.size() == 1 && *again.begin() == term)) ok = false;
            }
            if (!ok) {
                ++failures;
                if (r.detail.empty())
                    r.detail = "first failure at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")";
            }
        }
    double dt = seconds_since(start);
    r.pass = failures == 0 && dt < 10.0;
    if (failures == 0) r.detail = std::to_string(pairs) + " pairs, " + fmt_seconds(dt);
    if (dt >= 10.0) r.detail += ", over the 10s budget";
    r.snapshot["pairs"] = pairs;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

// ---- checks 5 and 6: the homotopy oracle and the length filtration --------

struct HomotopyCase {
    std::string label;
    RVSComplex complex;
    int max_homotopy = 0;    // closed-form side checks go this high
    int oracle_homotopy = 0; // the simplicial oracle comparison goes this high
    int max_internal = 0;
};

// The elementary inputs the closed form is checked against. The two torsion
// cells whose kernel generator sits at internal degree 4 run with the window
// widened to 8 so the first divided square above that generator is visible.
// Two cases compare against the simplicial oracle one homotopy level lower
// than the closed-form checks: the Boolean double shift (whose degree-zero
// monomial count at level 7 is 1,887,284) and the double-shifted torsion
// cell (whose level-7 boundary block at internal degree 6 is 51,255 by
// 151,809). Both sit far beyond desk-scale exact linear algebra, while one
// level lower the largest blocks stay in the tens of thousands of columns
// and the whole comparison finishes in minutes.
std::vector<HomotopyCase> homotopy_cases() {
    std::vector<HomotopyCase> cases;
    auto point = [](int n, int q, int N) { return shift_complex(complex_point(q, N), n); };
    auto cell = [](int n, int q, int k, int N) {
        return shift_complex(complex_cell(q, k, N), n);
    };
    cases.push_back({"point(1,1)", point(1, 1, 6), 6, 6, 6});
    cases.push_back({"point(1,2)", point(1, 2, 6), 6, 6, 6});
    cases.push_back({"point(2,1)", point(2, 1, 6), 6, 6, 6});
    cases.push_back({"point(2,2)", point(2, 2, 6), 6, 6, 6});
    cases.push_back({"point(1,0)", point(1, 0, 6), 6, 6, 6});
    cases.push_back({"point(2,0)", point(2, 0, 6), 6, 5, 6});
    cases.push_back({"cell(1,1,1)", cell(1, 1, 1, 6), 6, 6, 6});
    cases.push_back({"cell(1,1,2)", cell(1, 1, 2, 8), 6, 6, 8});
    cases.push_back({"cell(1,2,1)", cell(1, 2, 1, 8), 6, 6, 8});
    cases.push_back({"cell(2,1,1)", cell(2, 1, 1, 6), 6, 5, 6});
    return cases;
}

CheckResult check_homotopy_oracle(unsigned) {
    auto start = Clock::now();
    CheckResult r;
    r.snapshot["cases"] = json::array();
    int failures = 0;
    for (const HomotopyCase& hc : homotopy_cases()) {
        auto case_start = Clock::now();
        json entry = json::object();
        entry["label"] = hc.label;
        std::string diff;
        try {
            SimplicialRVS k = dold_kan_K(hc.complex, hc.oracle_homotopy + 1);
            PiUResult oracle = pi_U_oracle(k, hc.oracle_homotopy, hc.max_internal);
            PiUResult closed =
                pi_U_closed_form(hc.complex, hc.oracle_homotopy, hc.max_internal);
            diff = first_pi_mismatch(closed, oracle);
            entry["dims"] = json::parse(pi_u_dims_to_json(closed))["dims"];
        } catch (const std::exception& ex) {
            diff = std::string("error: ") + ex.what();
        }
        if (!diff.empty()) {
            ++failures;
            if (r.detail.empty()) r.detail = hc.label + " at " + diff;
        }
        entry["match"] = diff.empty();
        entry["seconds"] = seconds_since(case_start);
        r.snapshot["cases"].push_back(std::move(entry));
    }
    double dt = seconds_since(start);
    r.pass = failures == 0;
    if (failures == 0) r.detail = "10 cases, " + fmt_seconds(dt);
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

CheckResult check_length_filtration(unsigned seed) {
    auto start = Clock::now();
    CheckResult r;
    int failures = 0;
    int cases = 0;
    auto matches = [&](const RVSComplex& c, int T, int Q, const std::string& label) {
        ++cases;
        EInfinityDims e = e_infinity_length(c, T, Q);
        std::map<std::pair<int, int>, long long> marginal;
        for (const auto& [key, v] : e) marginal[{key[1], key[2]}] += v;
        PiUResult closed = pi_U_closed_form(c, T, Q);
        if (marginal != closed.dims) {
            ++failures;
            if (r.detail.empty()) r.detail = "first failure on " + label;
        }
    };
    for (const HomotopyCase& hc : homotopy_cases())
        matches(hc.complex, hc.max_homotopy, hc.max_internal, hc.label);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> win(2, 8);
    for (int trial = 0; trial < 50; ++trial) {
        int N = win(rng);
        ComplexDecomposition d = random_complex_decomposition(N, rng);
        RVSComplex model = scramble_complex(reassemble_complex(d, N), rng);
        matches(model, 4, N, "random trial " + std::to_string(trial));
    }
    double dt = seconds_since(start);
    r.pass = failures == 0;
    if (failures == 0) r.detail = std::to_string(cases) + " cases, " + fmt_seconds(dt);
    r.snapshot["cases"] = cases;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

// ---- checks 7 and 8: the generator bijection -------------------------------

CheckResult check_bijection_round_trip(unsigned) {
    auto start = Clock::now();
    CheckResult r;
    int failures = 0;
    long long generators = 0;
    for (int k = 1; k <= 4; ++k) {
        std::vector<E2Generator> e2s = enum_e2(k, 60);
        std::vector<DLGenerator> dls = enum_dl(k, 60);
        bool ok = e2s.size() == dls.size();
        std::set<std::vector<int>> images;
        for (const E2Generator& g : e2s) {
            DLGenerator d = forward_map(g);
            if (!images.insert(d.b).second) ok = false;  // forward must be injective
            if (!(inverse_map(d) == g)) ok = false;
        }
        for (const DLGenerator& d : dls) {
            if (images.count(d.b) == 0) ok = false;  // and onto the enumerated tuples
            if (!(forward_map(inverse_map(d)) == d)) ok = false;
        }
        generators += static_cast<long long>(e2s.size());
        if (!ok) {
            ++failures;
            if (r.detail.empty()) r.detail = "first failure at class degree " + std::to_string(k);
        }
    }
    double dt = seconds_since(start);
    r.pass = failures == 0 && dt < 10.0;
    if (failures == 0)
        r.detail = std::to_string(generators) + " generators per side, " + fmt_seconds(dt);
    if (dt >= 10.0) r.detail += ", over the 10s budget";
    r.snapshot["generators"] = generators;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

CheckResult check_degree_preservation(unsigned) {
    auto start = Clock::now();
    CheckResult r;
    int failures = 0;
    long long checked = 0;
    for (int k = 1; k <= 4; ++k) {
        for (const E2Generator& g : enum_e2(k, 60)) {
            ++checked;
            TriDegree t = e2_degree(g);
            bool ok = t.total == t.internal + t.filtration;
            if (dl_degree(forward_map(g)) != t.total) ok = false;
            if (!ok) {
                ++failures;
                if (r.detail.empty()) r.detail = "first failure on " + to_string(g);
            }
        }
        for (const DLGenerator& d : enum_dl(k, 60)) {
            ++checked;
            if (e2_degree(inverse_map(d)).total != dl_degree(d)) {
                ++failures;
                if (r.detail.empty()) r.detail = "first failure on " + to_string(d);
            }
        }
    }
    double dt = seconds_since(start);
    r.pass = failures == 0 && dt < 10.0;
    if (failures == 0)
        r.detail = std::to_string(checked) + " degree checks, " + fmt_seconds(dt);
    if (dt >= 10.0) r.detail += ", over the 10s budget";
    r.snapshot["checked"] = checked;
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

// ---- check 9: the series collapse witness ----------------------------------

CheckResult check_collapse(unsigned) {
    auto start = Clock::now();
    CheckResult r;
    int failures = 0;
    std::vector<std::vector<int>> inputs = {{1}, {2}, {3}, {1, 2}};
    r.snapshot["cases"] = json::array();
    for (const std::vector<int>& degrees : inputs) {
        CollapseReport rep = collapse_check(degrees, 40);
        if (!rep.equal) {
            ++failures;
            if (r.detail.empty())
                r.detail = "first mismatch at degree " + std::to_string(rep.first_mismatch);
        }
        json entry = json::object();
        entry["degrees"] = degrees;
        entry["equal"] = rep.equal;
        entry["dl_series"] = rep.dl_series.coeffs;
        r.snapshot["cases"].push_back(std::move(entry));
    }
    double dt = seconds_since(start);
    r.pass = failures == 0 && dt < 30.0;
    if (failures == 0) r.detail = "4 inputs through degree 40, " + fmt_seconds(dt);
    if (dt >= 30.0) r.detail += ", over the 30s budget";
    r.snapshot["failures"] = failures;
    r.snapshot["seconds"] = dt;
    return r;
}

}  // namespace

bool run_acceptance(std::ostream& out, const AcceptanceOptions& opt) {
    struct Entry {
        const char* name;
        CheckResult (*fn)(unsigned);
    };
    const Entry entries[] = {
        {"decomposition round trip on scrambled direct sums", check_decomposition_round_trip},
        {"rank family reproduced by reassembly", check_rank_family},
        {"normalized chains invert the simplicial construction", check_normalization_round_trip},
        {"rewriting terminates admissibly and idempotently", check_rewriting},
        {"homotopy oracle matches the closed form", check_homotopy_oracle},
        {"length filtration marginalizes to the closed form", check_length_filtration},
        {"generator bijection round trips both ways", check_bijection_round_trip},
        {"the bijection preserves degrees", check_degree_preservation},
        {"series collapse witness", check_collapse},
    };

    if (!opt.golden_dir.empty()) std::filesystem::create_directories(opt.golden_dir);
    auto emit = [&](int index, const std::string& name, const CheckResult& r) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << index << "  " << name;
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n" << std::flush;
        if (opt.golden_dir.empty()) return;
        json snap = r.snapshot;
        snap["index"] = index;
        snap["name"] = name;
        snap["pass"] = r.pass;
        std::ofstream f(opt.golden_dir + "/check_" + std::to_string(index) + ".json");
        f << snap.dump(2) << "\n";
    };

    bool all = true;
    int index = 0;
    for (const Entry& e : entries) {
        ++index;
        CheckResult r;
        try {
            r = e.fn(opt.seed);
        } catch (const std::exception& ex) {
            // a throwing check is a red result, not a crashed run
            r.pass = false;
            r.detail = std::string("error: ") + ex.what();
        }
        all = all && r.pass;
        emit(index, e.name, r);
    }

    CheckResult summary;
    summary.pass = all;
    summary.detail = all ? "9 of 9 checks green" : "at least one check failed";
    summary.snapshot["all_pass"] = all;
    emit(10, "every check above passed", summary);
    return all;
}

}  // namespace f2alg

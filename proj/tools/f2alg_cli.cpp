// Command line front end: decompose restricted vector spaces and complexes
// from json files, print homotopy and filtration tables with an optional
// brute-force cross-check, list the generators on both sides of the
// loop-space bijection, verify the series collapse, rewrite divided-square
// words, and run the acceptance suite.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "f2alg/acceptance.hpp"
#include "f2alg/common.hpp"
#include "f2alg/json_io.hpp"
#include "f2alg/loopspace.hpp"
#include "f2alg/rchain.hpp"
#include "f2alg/unstable.hpp"
#include "json.hpp"

using namespace f2alg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw_argument("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// (homotopy t) rows against (internal q) columns; zeros print as dots
void print_bigraded(std::ostream& out, const std::map<std::pair<int, int>, long long>& dims) {
    if (dims.empty()) {
        out << "0\n";
        return;
    }
    int T = 0, Q = 0;
    for (const auto& [k, v] : dims) {
        T = std::max(T, k.first);
        Q = std::max(Q, k.second);
    }
    std::vector<std::size_t> width(static_cast<std::size_t>(Q) + 1);
    for (int q = 0; q <= Q; ++q) width[static_cast<std::size_t>(q)] = std::to_string(q).size();
    for (const auto& [k, v] : dims) {
        std::size_t w = std::to_string(v).size();
        width[static_cast<std::size_t>(k.second)] =
            std::max(width[static_cast<std::size_t>(k.second)], w);
    }
    out << "t\\q";
    for (int q = 0; q <= Q; ++q)
        out << "  " << std::setw(static_cast<int>(width[static_cast<std::size_t>(q)])) << q;
    out << "\n";
    for (int t = 0; t <= T; ++t) {
        out << std::setw(3) << t;
        for (int q = 0; q <= Q; ++q) {
            out << "  " << std::setw(static_cast<int>(width[static_cast<std::size_t>(q)]));
            auto it = dims.find({t, q});
            if (it == dims.end())
                out << ".";
            else
                out << it->second;
        }
        out << "\n";
    }
}

std::string pi_key(const std::pair<int, int>& k) {
    return "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
}

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

int cmd_decompose(const std::string& path, const std::string& format) {
    RestrictedVS v = rvs_from_json(read_file(path));
    Decomposition d = decompose(v);
    if (format == "json")
        std::cout << decomposition_to_json(d);
    else
        std::cout << to_string(d) << "\n";
    return 0;
}

int cmd_chain_decompose(const std::string& path, const std::string& format) {
    RVSComplex c = complex_from_json(read_file(path));
    ComplexDecomposition d = decompose_complex(c);
    if (format == "json")
        std::cout << complex_decomposition_to_json(d);
    else
        std::cout << to_string(d) << "\n";
    return 0;
}

int cmd_pi_u(const std::string& path, int T, int Q, bool oracle, int levels,
             const std::string& format) {
    RVSComplex c = complex_from_json(read_file(path));
    PiUResult closed = pi_U_closed_form(c, T, Q);
    std::string mismatch;
    bool ran_oracle = false;
    if (oracle) {
        int L = levels > 0 ? levels : T + 1;
        SimplicialRVS k = dold_kan_K(c, L);
        PiUResult brute = pi_U_oracle(k, T, Q);
        mismatch = first_pi_mismatch(closed, brute);
        ran_oracle = true;
    }
    if (format == "json") {
        nlohmann::json j =
            nlohmann::json::parse(pi_u_to_json(closed, closed_form_generators(c),
                                               decompose(homology(c)[0])));
        if (ran_oracle) {
            j["match"] = mismatch.empty();
            if (!mismatch.empty()) j["first_mismatch"] = mismatch;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        print_bigraded(std::cout, closed.dims);
        if (ran_oracle) {
            if (mismatch.empty())
                std::cout << "MATCH\n";
            else
                std::cout << "MISMATCH at " << mismatch << "\n";
        }
    }
    return ran_oracle && !mismatch.empty() ? 1 : 0;
}

int cmd_e_infinity(const std::string& path, int T, int Q, const std::string& format) {
    RVSComplex c = complex_from_json(read_file(path));
    EInfinityDims e = e_infinity_length(c, T, Q);
    if (format == "json") {
        std::cout << e_infinity_to_json(e);
        return 0;
    }
    std::map<int, std::map<std::pair<int, int>, long long>> slices;
    for (const auto& [k, v] : e) slices[k[0]][{k[1], k[2]}] = v;
    bool first = true;
    for (const auto& [filt, dims] : slices) {
        if (!first) std::cout << "\n";
        first = false;
        std::cout << "filtration " << filt << "\n";
        print_bigraded(std::cout, dims);
    }
    if (first) std::cout << "0\n";
    return 0;
}

int cmd_e2(int k, int max_degree, const std::string& format) {
    std::vector<E2Generator> gens = enum_e2(k, max_degree);
    if (format == "json") {
        std::cout << e2_listing_to_json(k, max_degree, gens);
        return 0;
    }
    for (const E2Generator& g : gens) {
        TriDegree t = e2_degree(g);
        std::cout << "degree " << t.total << "  (filtration " << t.filtration << ", internal "
                  << t.internal << ")  " << to_string(g) << "\n";
    }
    return 0;
}

int cmd_qx(int k, int max_degree, const std::string& format) {
    std::vector<DLGenerator> gens = enum_dl(k, max_degree);
    if (format == "json") {
        std::cout << dl_listing_to_json(k, max_degree, gens);
        return 0;
    }
    for (const DLGenerator& g : gens)
        std::cout << "degree " << dl_degree(g) << "  " << to_string(g) << "\n";
    return 0;
}

int cmd_collapse(const std::vector<int>& degrees, int max_degree, const std::string& format) {
    CollapseReport rep = collapse_check(degrees, max_degree);
    if (format == "json") {
        std::cout << collapse_to_json(degrees, rep);
        return rep.equal ? 0 : 1;
    }
    if (rep.equal)
        std::cout << "EQUAL through degree " << max_degree << "\n";
    else
        std::cout << "MISMATCH at degree " << rep.first_mismatch << ": dl "
                  << rep.dl_series.coeffs[static_cast<std::size_t>(rep.first_mismatch)] << " vs e2 "
                  << rep.e2_series.coeffs[static_cast<std::size_t>(rep.first_mismatch)] << "\n";
    auto series_line = [](const char* label, const HilbertSeries& s) {
        std::cout << label;
        for (long long c : s.coeffs) std::cout << " " << c;
        std::cout << "\n";
    };
    series_line("dl series:", rep.dl_series);
    series_line("e2 series:", rep.e2_series);
    return rep.equal ? 0 : 1;
}

int cmd_adem(int i, int j, const std::string& format) {
    if (i < 1 || j < 1) throw_argument("indices must be at least 1");
    DeltaPolynomial p = normal_form({i, j});
    if (format == "json") {
        nlohmann::json out;
        out["input"] = to_string(IndexSeq{i, j});
        out["normal_form"] = to_string(p);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << to_string(p) << "\n";
    }
    return 0;
}

int cmd_selftest(unsigned seed, const std::string& golden) {
    AcceptanceOptions opt;
    opt.seed = seed;
    opt.golden_dir = golden;
    return run_acceptance(std::cout, opt) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mod-2 computations: restricted vector spaces, their complexes, "
                 "free unstable algebras, and loop-space generator bookkeeping"};
    app.require_subcommand(1);

    std::string format = "table";
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json"}))
            ->capture_default_str();
    };
    add_format(&app);

    std::string de_file;
    auto* de = app.add_subcommand("decompose", "split a restricted vector space into summands");
    de->add_option("file", de_file, "json input")->required();

    std::string cd_file;
    auto* cd = app.add_subcommand("chain-decompose",
                                  "split a complex into its quasi-isomorphism type");
    cd->add_option("file", cd_file, "json input")->required();

    std::string pu_file;
    int pu_T = 0, pu_Q = 0, pu_levels = 0;
    bool pu_oracle = false;
    auto* pu = app.add_subcommand("pi-u", "homotopy table of the free unstable algebra");
    pu->add_option("file", pu_file, "json complex input")->required();
    pu->add_option("--max-homotopy", pu_T, "homotopy truncation")->required();
    pu->add_option("--max-internal", pu_Q, "internal degree truncation")->required();
    pu->add_flag("--oracle", pu_oracle, "cross-check against the brute-force computation");
    pu->add_option("--levels", pu_levels, "simplicial level bound for the oracle");

    std::string ei_file;
    int ei_T = 0, ei_Q = 0;
    auto* ei = app.add_subcommand("e-infinity", "length filtration table, graded by filtration");
    ei->add_option("file", ei_file, "json complex input")->required();
    ei->add_option("--max-homotopy", ei_T, "homotopy truncation")->required();
    ei->add_option("--max-internal", ei_Q, "internal degree truncation")->required();

    std::vector<int> e2_degrees;
    int e2_max = 0;
    auto* e2 = app.add_subcommand("e2", "list decorated destabilization generators");
    e2->add_option("--degrees", e2_degrees, "class degree (exactly one)")->required();
    e2->add_option("--max-degree", e2_max, "total degree bound")->required();

    std::vector<int> qx_degrees;
    int qx_max = 0;
    auto* qx = app.add_subcommand("qx", "list operation tuples on a class");
    qx->add_option("--degrees", qx_degrees, "class degree (exactly one)")->required();
    qx->add_option("--max-degree", qx_max, "degree bound")->required();

    std::vector<int> co_degrees;
    int co_max = 0;
    auto* co = app.add_subcommand("collapse", "compare the two generator counts degreewise");
    co->add_option("--degrees", co_degrees, "class degrees of the wedge")->required();
    co->add_option("--max-degree", co_max, "degree bound")->required();

    int ad_i = 0, ad_j = 0;
    auto* ad = app.add_subcommand("adem", "admissible normal form of a two-letter word");
    ad->add_option("i", ad_i, "first index")->required();
    ad->add_option("j", ad_j, "second index")->required();

    unsigned st_seed = 20240816u;
    std::string st_golden;
    auto* st = app.add_subcommand("selftest", "run the acceptance checks");
    st->add_option("--seed", st_seed, "corpus seed")->capture_default_str();
    st->add_option("--golden", st_golden, "directory for json snapshots of each check");

    for (CLI::App* cmd : {de, cd, pu, ei, e2, qx, co, ad}) add_format(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (de->parsed()) return cmd_decompose(de_file, format);
        if (cd->parsed()) return cmd_chain_decompose(cd_file, format);
        if (pu->parsed()) return cmd_pi_u(pu_file, pu_T, pu_Q, pu_oracle, pu_levels, format);
        if (ei->parsed()) return cmd_e_infinity(ei_file, ei_T, ei_Q, format);
        if (e2->parsed()) {
            if (e2_degrees.size() != 1)
                throw_argument("e2 takes exactly one class degree");
            return cmd_e2(e2_degrees[0], e2_max, format);
        }
        if (qx->parsed()) {
            if (qx_degrees.size() != 1)
                throw_argument("qx takes exactly one class degree");
            return cmd_qx(qx_degrees[0], qx_max, format);
        }
        if (co->parsed()) return cmd_collapse(co_degrees, co_max, format);
        if (ad->parsed()) return cmd_adem(ad_i, ad_j, format);
        if (st->parsed()) return cmd_selftest(st_seed, st_golden);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrKind::Argument:
            case ErrKind::Validation:
                return 2;
            case ErrKind::Size:
                return 3;
            case ErrKind::Internal:
                return 1;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

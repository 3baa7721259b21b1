#include "f2alg/json_io.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "f2alg/common.hpp"
#include "json.hpp"

namespace f2alg {

namespace {

using nlohmann::json;

constexpr long long window_cap = 100'000;
constexpr long long total_dim_cap = 1'000'000;

json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw_validation(std::string(what) + ": " + e.what());
    }
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed, const char* what) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const std::string& k : allowed)
            if (item.key() == k) known = true;
        if (!known) throw_validation(std::string(what) + ": unexpected key '" + item.key() + "'");
    }
}

int key_to_degree(const std::string& key, const char* what) {
    if (key.empty() || key.size() > 9)
        throw_validation(std::string(what) + ": key '" + key + "' is not a nonnegative integer");
    for (char c : key)
        if (c < '0' || c > '9')
            throw_validation(std::string(what) + ": key '" + key + "' is not a nonnegative integer");
    return std::stoi(key);
}

long long get_integer(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw_validation(std::string(what) + ": expected an integer");
    return j.get<long long>();
}

// matrix as an array of rows of 0/1 entries, with the shape dictated by the
// surrounding dims; `what` names the map and degree for error messages
F2Matrix matrix_from_value(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array()) throw_validation(what + " must be an array of rows");
    if (static_cast<int>(j.size()) != rows)
        throw_validation(what + " has " + std::to_string(j.size()) + " rows, expected " +
                         std::to_string(rows));
    F2Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw_validation(what + " row " + std::to_string(r) + " has " +
                             (row.is_array() ? std::to_string(row.size()) : std::string("no")) +
                             " entries, expected " + std::to_string(cols));
        for (int c = 0; c < cols; ++c) {
            long long e = get_integer(row[static_cast<std::size_t>(c)], what.c_str());
            if (e != 0 && e != 1)
                throw_validation(what + " entry at (" + std::to_string(r) + "," +
                                 std::to_string(c) + ") is " + std::to_string(e) +
                                 ", expected 0 or 1");
            if (e == 1) m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), true);
        }
    }
    return m;
}

json matrix_to_value(const F2Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return rows;
}

RestrictedVS rvs_from_value(const json& j, const std::string& what) {
    if (!j.is_object()) throw_validation(what + " must be an object");
    reject_unknown_keys(j, {"max_internal_degree", "dims", "phi"}, what.c_str());
    if (!j.contains("max_internal_degree"))
        throw_validation(what + ": missing max_internal_degree");
    long long N = get_integer(j.at("max_internal_degree"), what.c_str());
    if (N < 0) throw_validation(what + ": max_internal_degree is negative");
    if (N > window_cap) throw_size(what + ": window " + std::to_string(N) + " is too large");

    std::map<int, int> dims;
    long long total = 0;
    if (j.contains("dims")) {
        const json& dj = j.at("dims");
        if (!dj.is_object()) throw_validation(what + ": dims must be an object");
        for (const auto& item : dj.items()) {
            int deg = key_to_degree(item.key(), (what + ": dims").c_str());
            if (deg > N)
                throw_validation(what + ": dims key '" + item.key() + "' is outside the window 0.." +
                                 std::to_string(N));
            long long d = get_integer(item.value(), (what + ": dims").c_str());
            if (d < 0) throw_validation(what + ": dims at degree " + item.key() + " is negative");
            total += d;
            if (total > total_dim_cap) throw_size(what + ": total dimension is too large");
            if (d > 0) dims[deg] = static_cast<int>(d);
        }
    }
    RestrictedVS v = make_rvs(static_cast<int>(N), dims);

    if (j.contains("phi")) {
        const json& pj = j.at("phi");
        if (!pj.is_object()) throw_validation(what + ": phi must be an object");
        for (const auto& item : pj.items()) {
            int deg = key_to_degree(item.key(), (what + ": phi").c_str());
            if (2LL * deg > N)
                throw_validation(what + ": phi at degree " + item.key() + " has target degree " +
                                 std::to_string(2 * deg) + " outside the window 0.." +
                                 std::to_string(N));
            F2Matrix m = matrix_from_value(item.value(), v.dim_at(2 * deg), v.dim_at(deg),
                                           what + ": phi at degree " + item.key());
            v.phi[deg] = std::move(m);
        }
    }
    require_valid(v);
    return v;
}

json rvs_to_value(const RestrictedVS& v) {
    json j = json::object();
    j["max_internal_degree"] = v.max_internal_degree;
    json dims = json::object();
    for (int q = 0; q <= v.max_internal_degree; ++q)
        if (v.dim_at(q) > 0) dims[std::to_string(q)] = v.dim_at(q);
    if (!dims.empty()) j["dims"] = std::move(dims);
    json phi = json::object();
    for (const auto& [deg, m] : v.phi) {
        if (m.is_zero()) continue;
        // the degree-0 restriction is forced to be the identity, so readers
        // reconstruct it and writers leave it out
        if (deg == 0 && m == F2Matrix::identity(m.rows())) continue;
        phi[std::to_string(deg)] = matrix_to_value(m);
    }
    if (!phi.empty()) j["phi"] = std::move(phi);
    return j;
}

}  // namespace

RestrictedVS rvs_from_json(const std::string& text) {
    json j = parse_text(text, "restricted vector space");
    return rvs_from_value(j, "restricted vector space");
}

std::string rvs_to_json(const RestrictedVS& v) { return rvs_to_value(v).dump(2) + "\n"; }

RVSComplex complex_from_json(const std::string& text) {
    json j = parse_text(text, "complex");
    if (!j.is_object()) throw_validation("complex: top level must be an object");
    reject_unknown_keys(j, {"levels", "differentials"}, "complex");
    if (!j.contains("levels")) throw_validation("complex: missing levels");
    const json& lj = j.at("levels");
    if (!lj.is_array() || lj.empty())
        throw_validation("complex: levels must be a nonempty array");

    RVSComplex c;
    for (std::size_t t = 0; t < lj.size(); ++t)
        c.levels.push_back(rvs_from_value(lj[t], "complex level " + std::to_string(t)));
    c.max_internal_degree = c.levels[0].max_internal_degree;
    c.diffs.assign(c.levels.size(), RVSMap{});

    if (j.contains("differentials")) {
        const json& dj = j.at("differentials");
        if (!dj.is_array())
            throw_validation("complex: differentials must be an array");
        if (dj.size() + 1 != c.levels.size())
            throw_validation("complex: differentials has " + std::to_string(dj.size()) +
                             " entries, expected " + std::to_string(c.levels.size() - 1) +
                             " (one per level above the bottom)");
        for (std::size_t i = 0; i < dj.size(); ++i) {
            int t = static_cast<int>(i) + 1;  // maps level t to level t-1
            const json& entry = dj[i];
            std::string what = "complex differential from level " + std::to_string(t);
            if (!entry.is_object()) throw_validation(what + " must be an object");
            RVSMap d;
            for (const auto& item : entry.items()) {
                int q = key_to_degree(item.key(), what.c_str());
                if (q > c.max_internal_degree)
                    throw_validation(what + ": degree key '" + item.key() +
                                     "' is outside the window");
                F2Matrix m = matrix_from_value(
                    item.value(), c.levels[static_cast<std::size_t>(t - 1)].dim_at(q),
                    c.levels[static_cast<std::size_t>(t)].dim_at(q),
                    what + " at degree " + item.key());
                if (!m.is_zero()) d.comps[q] = std::move(m);
            }
            c.diffs[static_cast<std::size_t>(t)] = std::move(d);
        }
    }
    require_valid_complex(c);
    return c;
}

std::string complex_to_json(const RVSComplex& c) {
    json j = json::object();
    json levels = json::array();
    for (const RestrictedVS& lvl : c.levels) levels.push_back(rvs_to_value(lvl));
    j["levels"] = std::move(levels);
    json diffs = json::array();
    for (int t = 1; t < c.length(); ++t) {
        json entry = json::object();
        if (t < static_cast<int>(c.diffs.size()))
            for (const auto& [q, m] : c.diffs[static_cast<std::size_t>(t)].comps)
                if (!m.is_zero()) entry[std::to_string(q)] = matrix_to_value(m);
        diffs.push_back(std::move(entry));
    }
    if (!diffs.empty()) j["differentials"] = std::move(diffs);
    return j.dump(2) + "\n";
}

std::string decomposition_to_json(const Decomposition& d) {
    json counts = json::object();
    for (const auto& [s, c] : d.counts) counts[to_string(s)] = c;
    json j = json::object();
    j["counts"] = std::move(counts);
    return j.dump(2) + "\n";
}

std::string complex_decomposition_to_json(const ComplexDecomposition& d) {
    json counts = json::object();
    for (const auto& [s, c] : d) counts[to_string(s)] = c;
    json j = json::object();
    j["counts"] = std::move(counts);
    return j.dump(2) + "\n";
}

namespace {

json pi_dims_to_value(const PiUResult& r) {
    json dims = json::object();
    for (const auto& [key, c] : r.dims)
        dims["(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")"] = c;
    return dims;
}

}  // namespace

std::string pi_u_to_json(const PiUResult& r, const ClosedFormGenerators& gens,
                         const Decomposition& h0) {
    json j = json::object();
    j["dims"] = pi_dims_to_value(r);
    json gl = json::array();
    for (const auto& [key, c] : gens.cokernel) {
        json g = json::object();
        g["source"] = "cokernel";
        g["homotopy"] = key.first;
        g["internal"] = key.second;
        g["count"] = c;
        gl.push_back(std::move(g));
    }
    for (const auto& [key, c] : gens.kernel) {
        json g = json::object();
        g["source"] = "kernel";
        g["homotopy"] = key.first;
        g["internal"] = key.second;
        g["count"] = c;
        gl.push_back(std::move(g));
    }
    j["generators"] = std::move(gl);
    j["homotopy_zero"] = to_string(h0);
    return j.dump(2) + "\n";
}

std::string pi_u_dims_to_json(const PiUResult& r) {
    json j = json::object();
    j["dims"] = pi_dims_to_value(r);
    return j.dump(2) + "\n";
}

std::string e_infinity_to_json(const EInfinityDims& d) {
    json dims = json::object();
    for (const auto& [key, c] : d)
        dims["(" + std::to_string(key[0]) + "," + std::to_string(key[1]) + "," +
             std::to_string(key[2]) + ")"] = c;
    json j = json::object();
    j["dims"] = std::move(dims);
    return j.dump(2) + "\n";
}

std::string dl_listing_to_json(int k, int max_degree, const std::vector<DLGenerator>& gens) {
    json list = json::array();
    for (const DLGenerator& g : gens) {
        json e = json::object();
        e["b"] = g.b;
        e["degree"] = dl_degree(g);
        list.push_back(std::move(e));
    }
    json j = json::object();
    j["k"] = k;
    j["max_degree"] = max_degree;
    j["dl"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string e2_listing_to_json(int k, int max_degree, const std::vector<E2Generator>& gens) {
    json list = json::array();
    for (const E2Generator& g : gens) {
        TriDegree t = e2_degree(g);
        json e = json::object();
        e["s"] = g.s;
        e["a"] = g.a;
        e["I"] = g.I;
        e["degree"] = t.total;
        e["filtration"] = t.filtration;
        e["internal"] = t.internal;
        list.push_back(std::move(e));
    }
    json j = json::object();
    j["k"] = k;
    j["max_degree"] = max_degree;
    j["e2"] = std::move(list);
    return j.dump(2) + "\n";
}

std::string collapse_to_json(const std::vector<int>& degrees, const CollapseReport& rep) {
    json j = json::object();
    j["degrees"] = degrees;
    j["max_degree"] = rep.dl_series.max_degree;
    j["dl_series"] = rep.dl_series.coeffs;
    j["e2_series"] = rep.e2_series.coeffs;
    j["series_equal"] = rep.equal;
    j["first_mismatch"] = rep.first_mismatch;
    return j.dump(2) + "\n";
}

}  // namespace f2alg

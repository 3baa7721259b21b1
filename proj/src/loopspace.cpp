#include "f2alg/loopspace.hpp"

#include <algorithm>
#include <functional>

#include "f2alg/common.hpp"

namespace f2alg {

namespace {

constexpr int enum_degree_cap = 512;
constexpr int series_degree_cap = 120;

long long sum_of(const std::vector<int>& v) {
    long long s = 0;
    for (int x : v) s += x;
    return s;
}

// r-coordinates of an admissible sequence: r_t = i_t - 2 i_{t+1}, r_l = i_l.
// The sequence is recovered by i_t = r_t + 2 i_{t+1}, and the excess is the
// sum of the r's.
std::vector<int> to_r_coords(const IndexSeq& I) {
    std::vector<int> r(I.size());
    for (std::size_t t = 0; t < I.size(); ++t)
        r[t] = t + 1 < I.size() ? I[t] - 2 * I[t + 1] : I[t];
    return r;
}

IndexSeq from_r_coords(const std::vector<int>& r) {
    IndexSeq I(r.size());
    int below = 0;
    for (std::size_t t = r.size(); t-- > 0;) {
        I[t] = r[t] + 2 * below;
        below = I[t];
    }
    return I;
}

}  // namespace

void require_valid_e2(const E2Generator& g) {
    if (g.k < 1) throw_validation("the underlying class must live in degree at least 1");
    if (g.s < 0) throw_validation("the bracket length must be nonnegative");
    if (static_cast<int>(g.a.size()) != g.s)
        throw_validation("the bracket must list exactly s entries");
    for (int x : g.a)
        if (x < 0) throw_validation("bracket entries must be nonnegative");
    if (g.s == 0 && !g.I.empty())
        throw_validation("the bare class admits no decoration");
    for (int x : g.I)
        if (x < 1) throw_validation("decoration entries must be positive");
    if (!is_admissible(g.I)) throw_validation("the decoration must be admissible");
    if (excess(g.I) > g.s)
        throw_validation("the decoration excess must not exceed the bracket length");
    if (g.s > 40 || static_cast<int>(g.I.size()) > 40)
        throw_size("generator shape too large for the degree formulas");
}

void require_valid_dl(const DLGenerator& g) {
    if (g.k < 1) throw_validation("the underlying class must live in degree at least 1");
    for (int x : g.b)
        if (x < 0) throw_validation("tuple entries must be nonnegative");
    if (g.b.size() > 40) throw_size("tuple too long for the degree formulas");
}

TriDegree e2_degree(const E2Generator& g) {
    require_valid_e2(g);
    int s = g.s;
    int l = static_cast<int>(g.I.size());
    long long pow_sl = 1LL << (s + l);
    long long internal = pow_sl * g.k + pow_sl * (s - 1) + (1LL << l);
    for (int i = 1; i <= s; ++i)
        internal += static_cast<long long>(g.a[static_cast<std::size_t>(i) - 1]) *
                    (pow_sl - (1LL << (l + i - 1)));
    long long filtration = -(s + sum_of(g.I));
    TriDegree out;
    out.internal = static_cast<int>(internal);
    out.filtration = static_cast<int>(filtration);
    out.total = static_cast<int>(internal + filtration);
    return out;
}

long long dl_degree(const DLGenerator& g) {
    require_valid_dl(g);
    int sigma = static_cast<int>(g.b.size());
    long long deg = (1LL << sigma) * g.k;
    for (int r = 1; r <= sigma; ++r)
        deg += ((1LL << sigma) - (1LL << (r - 1))) *
               g.b[static_cast<std::size_t>(r) - 1];
    return deg;
}

DLGenerator forward_map(const E2Generator& g) {
    require_valid_e2(g);
    DLGenerator out;
    out.k = g.k;
    if (g.s == 0) return out;
    std::vector<int> r = to_r_coords(g.I);
    int l = static_cast<int>(r.size());
    if (l == 0) {
        out.b = g.a;
        out.b[0] += g.s - 1;
    } else {
        out.b.push_back(g.s - static_cast<int>(sum_of(r)));
        for (int t = 1; t < l; ++t) out.b.push_back(r[static_cast<std::size_t>(t) - 1]);
        out.b.push_back(g.a[0] + r[static_cast<std::size_t>(l) - 1] - 1);
        for (int i = 2; i <= g.s; ++i) out.b.push_back(g.a[static_cast<std::size_t>(i) - 1]);
    }
    if (dl_degree(out) != e2_degree(g).total)
        throw_internal("the tuple image changed the total degree");
    return out;
}

E2Generator inverse_map(const DLGenerator& d) {
    require_valid_dl(d);
    E2Generator out;
    out.k = d.k;
    int sigma = static_cast<int>(d.b.size());
    if (sigma == 0) return out;
    // the unique split point: prefix + L < sigma <= prefix + b_{L+1} + L + 1
    int L = -1;
    long long prefix = 0;
    for (int cand = 0; cand < sigma; ++cand) {
        long long with_next = prefix + d.b[static_cast<std::size_t>(cand)];
        if (prefix + cand < sigma && sigma <= with_next + cand + 1) {
            L = cand;
            break;
        }
        prefix += d.b[static_cast<std::size_t>(cand)];
    }
    if (L < 0) throw_validation("the tuple admits no split into a decorated bracket");
    out.s = sigma - L;
    std::vector<int> r(static_cast<std::size_t>(L));
    long long head = 0;
    for (int t = 1; t <= L; ++t) head += d.b[static_cast<std::size_t>(t) - 1];
    for (int t = 1; t < L; ++t) r[static_cast<std::size_t>(t) - 1] = d.b[static_cast<std::size_t>(t)];
    if (L > 0) r[static_cast<std::size_t>(L) - 1] = out.s - static_cast<int>(head);
    out.I = from_r_coords(r);
    out.a.resize(static_cast<std::size_t>(out.s));
    int r_last = L > 0 ? r[static_cast<std::size_t>(L) - 1] : out.s;
    out.a[0] = d.b[static_cast<std::size_t>(L)] - r_last + 1;
    for (int i = 2; i <= out.s; ++i)
        out.a[static_cast<std::size_t>(i) - 1] = d.b[static_cast<std::size_t>(L + i) - 1];
    require_valid_e2(out);
    return out;
}

std::vector<E2Generator> enum_e2(int k, int max_total) {
    if (k < 1) throw_argument("the underlying class must live in degree at least 1");
    if (max_total < 0) throw_argument("degree bound must be nonnegative");
    if (max_total > enum_degree_cap) throw_size("degree bound exceeds the enumeration cap");
    std::vector<E2Generator> out;
    if (k <= max_total) out.push_back({0, {}, {}, k});
    for (int sigma = 1; (1LL << sigma) * k <= max_total; ++sigma)
        for (int l = 0; l < sigma; ++l) {
            int s = sigma - l;
            // decorations in r-coordinates: r_t >= 0, r_l >= 1, sum <= s
            std::vector<std::vector<int>> rs;
            std::vector<int> r(static_cast<std::size_t>(l));
            std::function<void(int, int)> rec_r = [&](int pos, int left) {
                if (pos == l) {
                    if (l == 0 || r.back() >= 1) rs.push_back(r);
                    return;
                }
                for (int x = 0; x <= left; ++x) {
                    r[static_cast<std::size_t>(pos)] = x;
                    rec_r(pos + 1, left - x);
                }
            };
            rec_r(0, s);
            for (const auto& rr : rs) {
                E2Generator g{s, std::vector<int>(static_cast<std::size_t>(s), 0),
                              from_r_coords(rr), k};
                long long base = e2_degree(g).total;
                std::function<void(int, long long)> rec_a = [&](int pos, long long tot) {
                    if (tot > max_total) return;
                    if (pos == s) {
                        out.push_back(g);
                        return;
                    }
                    long long coef = (1LL << sigma) - (1LL << (l + pos));
                    for (int x = 0; tot + x * coef <= max_total; ++x) {
                        g.a[static_cast<std::size_t>(pos)] = x;
                        rec_a(pos + 1, tot + x * coef);
                    }
                    g.a[static_cast<std::size_t>(pos)] = 0;
                };
                rec_a(0, base);
            }
        }
    std::sort(out.begin(), out.end(), [](const E2Generator& x, const E2Generator& y) {
        int dx = e2_degree(x).total, dy = e2_degree(y).total;
        if (dx != dy) return dx < dy;
        if (x.s != y.s) return x.s < y.s;
        if (x.I != y.I) return x.I < y.I;
        return x.a < y.a;
    });
    return out;
}

std::vector<DLGenerator> enum_dl(int k, int max_total) {
    if (k < 1) throw_argument("the underlying class must live in degree at least 1");
    if (max_total < 0) throw_argument("degree bound must be nonnegative");
    if (max_total > enum_degree_cap) throw_size("degree bound exceeds the enumeration cap");
    std::vector<DLGenerator> out;
    if (k <= max_total) out.push_back({{}, k});
    for (int sigma = 1; (1LL << sigma) * k <= max_total; ++sigma) {
        DLGenerator g{std::vector<int>(static_cast<std::size_t>(sigma), 0), k};
        std::function<void(int, long long)> rec = [&](int pos, long long tot) {
            if (pos == sigma) {
                out.push_back(g);
                return;
            }
            long long coef = (1LL << sigma) - (1LL << pos);
            for (int x = 0; tot + x * coef <= max_total; ++x) {
                g.b[static_cast<std::size_t>(pos)] = x;
                rec(pos + 1, tot + x * coef);
            }
            g.b[static_cast<std::size_t>(pos)] = 0;
        };
        rec(0, (1LL << sigma) * k);
    }
    std::sort(out.begin(), out.end(), [](const DLGenerator& x, const DLGenerator& y) {
        long long dx = dl_degree(x), dy = dl_degree(y);
        if (dx != dy) return dx < dy;
        if (x.b.size() != y.b.size()) return x.b.size() < y.b.size();
        return x.b < y.b;
    });
    return out;
}

CollapseReport collapse_check(const std::vector<int>& degrees, int max_degree) {
    if (degrees.empty()) throw_argument("need at least one sphere class");
    for (int k : degrees)
        if (k < 1) throw_argument("sphere classes must live in degree at least 1");
    if (max_degree < 0) throw_argument("degree bound must be nonnegative");
    if (max_degree > series_degree_cap) throw_size("series bound exceeds the truncation cap");
    int D = max_degree;
    CollapseReport rep;
    rep.dl_series.max_degree = D;
    rep.dl_series.coeffs.assign(static_cast<std::size_t>(D) + 1, 0);
    rep.dl_series.coeffs[0] = 1;
    rep.e2_series = rep.dl_series;

    auto polynomial_factor = [&](std::vector<long long>& c, int d) {
        for (int i = d; i <= D; ++i)
            c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - d)];
    };
    auto exterior_factor = [&](std::vector<long long>& c, int d) {
        for (int i = D; i >= d; --i)
            c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - d)];
    };

    for (int k : degrees) {
        if (k <= D) polynomial_factor(rep.dl_series.coeffs, k);
        for (const DLGenerator& g : enum_dl(k, D))
            if (!g.b.empty() && g.b[0] > 0)
                polynomial_factor(rep.dl_series.coeffs, static_cast<int>(dl_degree(g)));
        if (k <= D) exterior_factor(rep.e2_series.coeffs, k);
        for (const E2Generator& g : enum_e2(k, D))
            if (g.s >= 1) exterior_factor(rep.e2_series.coeffs, e2_degree(g).total);
    }

    rep.equal = true;
    for (int i = 0; i <= D; ++i)
        if (rep.dl_series.coeffs[static_cast<std::size_t>(i)] !=
            rep.e2_series.coeffs[static_cast<std::size_t>(i)]) {
            rep.equal = false;
            rep.first_mismatch = i;
            break;
        }
    return rep;
}

std::string to_string(const E2Generator& g) {
    std::string out;
    for (int i : g.I) out += "d" + std::to_string(i) + " ";
    if (g.s == 0) return out + "v" + std::to_string(g.k);
    out += "[";
    for (int i = 0; i < g.s; ++i) {
        if (i) out += ",";
        out += std::to_string(g.a[static_cast<std::size_t>(i)]);
    }
    return out + "](v" + std::to_string(g.k) + ")";
}

std::string to_string(const DLGenerator& g) {
    if (g.b.empty()) return "v" + std::to_string(g.k);
    std::string out = "{";
    for (std::size_t i = 0; i < g.b.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(g.b[i]);
    }
    return out + "}(v" + std::to_string(g.k) + ")";
}

}  // namespace f2alg

#include "f2alg/unstable.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "f2alg/common.hpp"
#include "f2alg/delta.hpp"

namespace f2alg {

namespace {

constexpr long long dense_level_cap = 200'000;
constexpr long long oracle_monomial_budget = 6'000'000;
constexpr int boolean_generator_cap = 20;

// a square-free monomial: sorted list of level variable ids
using Mono = std::vector<int>;

struct LevelVars {
    std::vector<int> deg;                    // internal degree per variable
    std::vector<std::vector<int>> phi_vars;  // the squared class, as variables of doubled degree
    std::vector<std::uint32_t> mask;         // provenance masks when supplied, zero otherwise
    std::map<int, int> start;                // internal degree -> first variable id
    int total = 0;
};

LevelVars build_vars(const RestrictedVS& lvl, const std::map<int, std::vector<std::uint32_t>>* masks) {
    LevelVars out;
    int N = lvl.max_internal_degree;
    for (int q = 0; q <= N; ++q) {
        int d = lvl.dim_at(q);
        if (d == 0) continue;
        out.start[q] = out.total;
        for (int i = 0; i < d; ++i) {
            out.deg.push_back(q);
            std::uint32_t m = 0;
            if (masks) {
                auto it = masks->find(q);
                if (it == masks->end() || static_cast<int>(it->second.size()) != d)
                    throw_argument("construction provenance is missing for a simplicial level");
                m = it->second[static_cast<std::size_t>(i)];
            }
            out.mask.push_back(m);
        }
        out.total += d;
    }
    out.phi_vars.resize(static_cast<std::size_t>(out.total));
    for (const auto& [q, st] : out.start) {
        if (2 * q > N) continue;  // squaring falls out of the window, so squares vanish
        F2Matrix ph = lvl.phi_at(q);
        for (int i = 0; i < lvl.dim_at(q); ++i)
            for (std::size_t r = 0; r < ph.rows(); ++r)
                if (ph.get(r, static_cast<std::size_t>(i)))
                    out.phi_vars[static_cast<std::size_t>(st + i)].push_back(
                        out.start.at(2 * q) + static_cast<int>(r));
    }
    return out;
}

void toggle(std::set<Mono>& s, const Mono& m) {
    auto [it, inserted] = s.insert(m);
    if (!inserted) s.erase(it);
}

// eliminate repeated variables with v*v = phi(v); each step shortens the word
void reduce_into(const Mono& m, const LevelVars& lv, std::set<Mono>& out) {
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        if (m[i] != m[i + 1]) continue;
        Mono base;
        base.reserve(m.size() - 2);
        base.insert(base.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(i));
        base.insert(base.end(), m.begin() + static_cast<std::ptrdiff_t>(i) + 2, m.end());
        for (int w : lv.phi_vars[static_cast<std::size_t>(m[i])]) {
            Mono ext = base;
            ext.insert(std::upper_bound(ext.begin(), ext.end(), w), w);
            reduce_into(ext, lv, out);
        }
        return;
    }
    toggle(out, m);
}

// push a monomial through a map given by the images of the variables; the
// result is the reduced F2 sum of target monomials
std::set<Mono> map_monomial(const Mono& m, const std::vector<std::vector<int>>& img,
                            const LevelVars& tgt) {
    std::set<Mono> acc;
    acc.insert(Mono{});
    for (int v : m) {
        std::set<Mono> next;
        for (const Mono& part : acc)
            for (int w : img[static_cast<std::size_t>(v)]) {
                Mono ext = part;
                ext.insert(std::upper_bound(ext.begin(), ext.end(), w), w);
                toggle(next, ext);
            }
        acc = std::move(next);
        if (acc.size() > 100'000) throw_size("monomial image expansion exceeded the budget");
        if (acc.empty()) break;
    }
    std::set<Mono> out;
    for (const Mono& mm : acc) reduce_into(mm, tgt, out);
    return out;
}

std::vector<std::vector<int>> var_images(const RestrictedVS& src_lvl, const RestrictedVS& tgt_lvl,
                                         const LevelVars& src, const LevelVars& tgt, const RVSMap& f) {
    std::vector<std::vector<int>> img(static_cast<std::size_t>(src.total));
    for (const auto& [q, st] : src.start) {
        int rows = tgt_lvl.dim_at(q);
        int cols = src_lvl.dim_at(q);
        if (rows == 0) continue;
        F2Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
        if (const F2Matrix* p = f.at(q)) m = *p;
        int tst = tgt.start.at(q);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r)
                if (m.get(static_cast<std::size_t>(r), static_cast<std::size_t>(c)))
                    img[static_cast<std::size_t>(st + c)].push_back(tst + r);
    }
    return img;
}

// square-free monomials of total degree <= max_internal, grouped by degree,
// optionally restricted to those whose provenance masks cover full_mask
std::vector<std::vector<Mono>> enumerate_monomials(const LevelVars& lv, int max_internal,
                                                   bool need_full, std::uint32_t full_mask,
                                                   long long cap, long long& counter) {
    std::vector<std::vector<Mono>> grouped(static_cast<std::size_t>(max_internal) + 1);
    std::vector<std::uint32_t> suffix(static_cast<std::size_t>(lv.total) + 1, 0);
    for (int i = lv.total - 1; i >= 0; --i)
        suffix[static_cast<std::size_t>(i)] =
            suffix[static_cast<std::size_t>(i) + 1] | lv.mask[static_cast<std::size_t>(i)];
    Mono cur;
    std::function<void(int, int, std::uint32_t)> dfs = [&](int i, int used, std::uint32_t mask) {
        if (!need_full || mask == full_mask) {
            if (++counter > cap) throw_size("monomial budget exceeded");
            grouped[static_cast<std::size_t>(used)].push_back(cur);
        }
        for (int j = i; j < lv.total; ++j) {
            if (used + lv.deg[static_cast<std::size_t>(j)] > max_internal) break;
            if (need_full && (mask | suffix[static_cast<std::size_t>(j)]) != full_mask) break;
            cur.push_back(j);
            dfs(j + 1, used + lv.deg[static_cast<std::size_t>(j)],
                mask | lv.mask[static_cast<std::size_t>(j)]);
            cur.pop_back();
        }
    };
    dfs(0, 0, 0);
    return grouped;
}

int mono_degree(const Mono& m, const LevelVars& lv) {
    int d = 0;
    for (int v : m) d += lv.deg[static_cast<std::size_t>(v)];
    return d;
}

}  // namespace

GradedAlgebraDims U_dims(const RestrictedVS& v, int max_internal) {
    require_valid(v);
    if (max_internal < 0) throw_argument("truncation bound must be nonnegative");
    if (max_internal > v.max_internal_degree)
        throw_argument("truncation bound must stay inside the window");
    Decomposition dec = decompose(v);
    std::vector<long long> series(static_cast<std::size_t>(max_internal) + 1, 0);
    series[0] = 1;
    long long boolean_gens = 0;
    for (const auto& [s, count] : dec.counts) {
        if (s.kind == Summand::Kind::Free && s.n == 0) {
            boolean_gens += count;
            continue;
        }
        std::vector<long long> factor(static_cast<std::size_t>(max_internal) + 1, 0);
        if (s.kind == Summand::Kind::Torsion) {
            for (long long m = 0; m < (1LL << s.k) && m * s.n <= max_internal; ++m)
                factor[static_cast<std::size_t>(m * s.n)] = 1;
        } else {
            for (long long m = 0; m * s.n <= max_internal; ++m)
                factor[static_cast<std::size_t>(m * s.n)] = 1;
        }
        for (long long copy = 0; copy < count; ++copy) {
            std::vector<long long> next(static_cast<std::size_t>(max_internal) + 1, 0);
            for (int a = 0; a <= max_internal; ++a) {
                if (series[static_cast<std::size_t>(a)] == 0) continue;
                for (int b = 0; a + b <= max_internal; ++b)
                    if (factor[static_cast<std::size_t>(b)] != 0)
                        next[static_cast<std::size_t>(a + b)] +=
                            series[static_cast<std::size_t>(a)] * factor[static_cast<std::size_t>(b)];
            }
            series = std::move(next);
        }
    }
    if (boolean_gens > boolean_generator_cap)
        throw_size("degree-0 Boolean part exceeds the configured generator cap");
    long long scale = 1LL << boolean_gens;
    GradedAlgebraDims out;
    for (int q = 0; q <= max_internal; ++q)
        if (series[static_cast<std::size_t>(q)] != 0)
            out[q] = series[static_cast<std::size_t>(q)] * scale;
    return out;
}

SimplicialGradedVS U_simplicial(const SimplicialRVS& s, int max_internal) {
    require_valid_simplicial(s);
    if (max_internal < 0) throw_argument("truncation bound must be nonnegative");
    int N = s.levels[0].max_internal_degree;
    if (max_internal > N) throw_argument("truncation bound must stay inside the window");
    int L = s.level_bound;

    std::vector<LevelVars> lv;
    lv.reserve(static_cast<std::size_t>(L) + 1);
    std::vector<std::vector<std::vector<Mono>>> mono(static_cast<std::size_t>(L) + 1);
    std::vector<std::vector<std::map<Mono, int>>> index(static_cast<std::size_t>(L) + 1);
    for (int n = 0; n <= L; ++n) {
        lv.push_back(build_vars(s.levels[static_cast<std::size_t>(n)], nullptr));
        long long counter = 0;
        mono[static_cast<std::size_t>(n)] =
            enumerate_monomials(lv.back(), max_internal, false, 0, dense_level_cap, counter);
        index[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(max_internal) + 1);
        for (int q = 0; q <= max_internal; ++q) {
            const auto& list = mono[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
            for (std::size_t i = 0; i < list.size(); ++i)
                index[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)][list[i]] =
                    static_cast<int>(i);
        }
    }

    SimplicialGradedVS out;
    out.level_bound = L;
    out.max_internal = max_internal;
    out.dims.assign(static_cast<std::size_t>(L) + 1,
                    std::vector<int>(static_cast<std::size_t>(max_internal) + 1, 0));
    for (int n = 0; n <= L; ++n)
        for (int q = 0; q <= max_internal; ++q)
            out.dims[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] =
                static_cast<int>(mono[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)].size());

    auto build_block = [&](int src_level, int tgt_level, const RVSMap& f) {
        std::vector<F2Matrix> per_degree;
        per_degree.reserve(static_cast<std::size_t>(max_internal) + 1);
        auto img = var_images(s.levels[static_cast<std::size_t>(src_level)],
                              s.levels[static_cast<std::size_t>(tgt_level)],
                              lv[static_cast<std::size_t>(src_level)],
                              lv[static_cast<std::size_t>(tgt_level)], f);
        for (int q = 0; q <= max_internal; ++q) {
            const auto& cols = mono[static_cast<std::size_t>(src_level)][static_cast<std::size_t>(q)];
            std::size_t rows =
                mono[static_cast<std::size_t>(tgt_level)][static_cast<std::size_t>(q)].size();
            F2Matrix m(rows, cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (const Mono& im :
                     map_monomial(cols[c], img, lv[static_cast<std::size_t>(tgt_level)])) {
                    if (mono_degree(im, lv[static_cast<std::size_t>(tgt_level)]) != q)
                        throw_internal("a structure map failed to preserve the internal degree");
                    int row = index[static_cast<std::size_t>(tgt_level)][static_cast<std::size_t>(q)]
                                  .at(im);
                    m.set(static_cast<std::size_t>(row), c, true);
                }
            per_degree.push_back(std::move(m));
        }
        return per_degree;
    };

    out.faces.resize(static_cast<std::size_t>(L) + 1);
    out.degeneracies.resize(static_cast<std::size_t>(L) + 1);
    for (int n = 1; n <= L; ++n)
        for (int i = 0; i <= n; ++i)
            out.faces[static_cast<std::size_t>(n)].push_back(
                build_block(n, n - 1, s.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]));
    for (int n = 0; n < L; ++n)
        for (int i = 0; i <= n; ++i)
            out.degeneracies[static_cast<std::size_t>(n)].push_back(build_block(
                n, n + 1, s.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]));
    return out;
}

PiUResult pi_U_oracle(const SimplicialRVS& s, int max_homotopy, int max_internal) {
    require_valid_simplicial(s);
    if (max_homotopy < 0) throw_argument("homotopy bound must be nonnegative");
    if (max_internal < 0) throw_argument("truncation bound must be nonnegative");
    int N = s.levels[0].max_internal_degree;
    if (max_internal > N) throw_argument("truncation bound must stay inside the window");
    int L = s.level_bound;
    if (L < max_homotopy + 1)
        throw_argument("level bound must exceed the homotopy bound by at least one");
    if (static_cast<int>(s.component_masks.size()) != L + 1)
        throw_argument("the oracle needs the construction provenance masks");
    int top = max_homotopy + 1;
    if (top >= 32) throw_size("homotopy bound too large for the mask encoding");

    // nondegenerate monomials per level: provenance masks must cover the level
    std::vector<LevelVars> lv;
    std::vector<std::vector<std::vector<Mono>>> mono(static_cast<std::size_t>(top) + 1);
    std::vector<std::vector<std::map<Mono, int>>> index(static_cast<std::size_t>(top) + 1);
    long long counter = 0;
    for (int n = 0; n <= top; ++n) {
        lv.push_back(build_vars(s.levels[static_cast<std::size_t>(n)],
                                &s.component_masks[static_cast<std::size_t>(n)]));
        std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
        mono[static_cast<std::size_t>(n)] = enumerate_monomials(
            lv.back(), max_internal, true, full, oracle_monomial_budget, counter);
        index[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(max_internal) + 1);
        for (int q = 0; q <= max_internal; ++q) {
            const auto& list = mono[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
            for (std::size_t i = 0; i < list.size(); ++i)
                index[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)][list[i]] =
                    static_cast<int>(i);
        }
    }

    // boundary of the quotient complex: sum of all faces, then projection
    // away from the degenerate monomials
    std::vector<std::vector<F2Matrix>> boundary(static_cast<std::size_t>(top) + 1);
    for (int n = 1; n <= top; ++n) {
        std::uint32_t full_below = n - 1 == 0 ? 0u : ((1u << (n - 1)) - 1u);
        std::vector<std::vector<std::vector<int>>> imgs;
        for (int i = 0; i <= n; ++i)
            imgs.push_back(var_images(s.levels[static_cast<std::size_t>(n)],
                                      s.levels[static_cast<std::size_t>(n - 1)],
                                      lv[static_cast<std::size_t>(n)],
                                      lv[static_cast<std::size_t>(n - 1)],
                                      s.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]));
        for (int q = 0; q <= max_internal; ++q) {
            const auto& cols = mono[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
            std::size_t rows =
                mono[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(q)].size();
            F2Matrix m(rows, cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c) {
                std::set<Mono> acc;
                for (int i = 0; i <= n; ++i)
                    for (const Mono& im : map_monomial(cols[c], imgs[static_cast<std::size_t>(i)],
                                                       lv[static_cast<std::size_t>(n - 1)]))
                        toggle(acc, im);
                for (const Mono& im : acc) {
                    std::uint32_t u = 0;
                    for (int vvar : im)
                        u |= lv[static_cast<std::size_t>(n - 1)].mask[static_cast<std::size_t>(vvar)];
                    if (u != full_below) continue;  // degenerate, projected away
                    int row = index[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(q)]
                                  .at(im);
                    m.set(static_cast<std::size_t>(row), c, true);
                }
            }
            boundary[static_cast<std::size_t>(n)].push_back(std::move(m));
        }
    }

    PiUResult out;
    for (int t = 0; t <= max_homotopy; ++t)
        for (int q = 0; q <= max_internal; ++q) {
            long long dim =
                static_cast<long long>(mono[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)].size());
            long long z = dim;
            if (t >= 1)
                z -= static_cast<long long>(
                    rank(boundary[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)]));
            long long b = static_cast<long long>(
                rank(boundary[static_cast<std::size_t>(t) + 1][static_cast<std::size_t>(q)]));
            if (z - b != 0) out.dims[{t, q}] = z - b;
        }
    return out;
}

namespace {

// bigraded generator multiplicities of the kernel and cokernel of phi on the
// positive homotopy levels; the kernel is shifted up one homotopy degree and
// its internal degree doubles
void phi_kernel_cokernel(const std::vector<RestrictedVS>& h, int N,
                         std::map<std::pair<int, int>, int>& coker_gens,
                         std::map<std::pair<int, int>, int>& ker_gens) {
    for (int n = 1; n < static_cast<int>(h.size()); ++n) {
        const RestrictedVS& v = h[static_cast<std::size_t>(n)];
        for (int j = 0; j <= N; ++j) {
            int dim = v.dim_at(j);
            if (dim == 0) continue;
            int im = 0;
            if (j % 2 == 0 && v.dim_at(j / 2) > 0)
                im = static_cast<int>(rank(v.phi_at(j / 2)));
            if (dim - im > 0) coker_gens[{n, j}] += dim - im;
        }
        for (int q = 0; 2 * q <= N; ++q) {
            int dim = v.dim_at(q);
            if (dim == 0) continue;
            int kd = dim - static_cast<int>(rank(v.phi_at(q)));
            if (kd > 0) ker_gens[{n + 1, 2 * q}] += kd;
        }
    }
}

long long weight_cap(int max_homotopy) {
    if (max_homotopy > 40) throw_size("homotopy bound too large for the weight table");
    return (static_cast<long long>(max_homotopy) << max_homotopy) + 1;
}

}  // namespace

PiUResult pi_U_closed_form(const RVSComplex& c, int max_homotopy, int max_internal) {
    require_valid_complex(c);
    if (max_homotopy < 0) throw_argument("homotopy bound must be nonnegative");
    if (max_internal < 0) throw_argument("truncation bound must be nonnegative");
    if (max_internal > c.max_internal_degree)
        throw_argument("truncation bound must stay inside the window");
    std::vector<RestrictedVS> h = homology(c);
    GradedAlgebraDims u0;
    if (h.empty())
        u0[0] = 1;
    else
        u0 = U_dims(h[0], max_internal);
    std::map<std::pair<int, int>, int> coker_gens, ker_gens;
    phi_kernel_cokernel(h, c.max_internal_degree, coker_gens, ker_gens);
    long long W = weight_cap(max_homotopy);
    MonomialBasisCounts symC =
        enum_frak_S(coker_gens, AlgebraFlavor::Symmetric, max_homotopy, max_internal, W);
    MonomialBasisCounts symK =
        enum_frak_S(ker_gens, AlgebraFlavor::Symmetric, max_homotopy, max_internal, W);
    std::map<std::pair<int, int>, long long> mc, mk;
    for (const auto& [k, v] : symC) mc[{k.homotopy, k.internal}] += v;
    for (const auto& [k, v] : symK) mk[{k.homotopy, k.internal}] += v;

    PiUResult out;
    for (const auto& [j0, c0] : u0)
        for (const auto& [k1, c1] : mc)
            for (const auto& [k2, c2] : mk) {
                int t = k1.first + k2.first;
                int j = j0 + k1.second + k2.second;
                if (t <= max_homotopy && j <= max_internal) out.dims[{t, j}] += c0 * c1 * c2;
            }
    return out;
}

ClosedFormGenerators closed_form_generators(const RVSComplex& c) {
    require_valid_complex(c);
    std::vector<RestrictedVS> h = homology(c);
    ClosedFormGenerators out;
    phi_kernel_cokernel(h, c.max_internal_degree, out.cokernel, out.kernel);
    return out;
}

EInfinityDims e_infinity_length(const RVSComplex& c, int max_homotopy, int max_internal) {
    require_valid_complex(c);
    if (max_homotopy < 0) throw_argument("homotopy bound must be nonnegative");
    if (max_internal < 0) throw_argument("truncation bound must be nonnegative");
    if (max_internal > c.max_internal_degree)
        throw_argument("truncation bound must stay inside the window");
    std::vector<RestrictedVS> h = homology(c);

    // exterior powers of the homotopy-0 homology: (length, internal) -> count
    std::map<std::pair<int, int>, long long> lam;
    lam[{0, 0}] = 1;
    if (!h.empty()) {
        long long total = 0;
        for (int j = 0; j <= max_internal; ++j) total += h[0].dim_at(j);
        if (total > 40) throw_size("homotopy-0 homology too large for the filtration table");
        for (int j = 0; j <= max_internal; ++j)
            for (int copy = 0; copy < h[0].dim_at(j); ++copy) {
                std::map<std::pair<int, int>, long long> old = lam;
                for (const auto& [k, v] : old)
                    if (k.second + j <= max_internal) lam[{k.first + 1, k.second + j}] += v;
            }
    }

    std::map<std::pair<int, int>, int> coker_gens, ker_gens;
    phi_kernel_cokernel(h, c.max_internal_degree, coker_gens, ker_gens);
    long long W = weight_cap(max_homotopy);
    MonomialBasisCounts symC =
        enum_frak_S(coker_gens, AlgebraFlavor::Symmetric, max_homotopy, max_internal, W);
    MonomialBasisCounts symK =
        enum_frak_S(ker_gens, AlgebraFlavor::Symmetric, max_homotopy, max_internal, W);

    EInfinityDims out;
    for (const auto& [rj, c0] : lam)
        for (const auto& [k1, c1] : symC)
            for (const auto& [k2, c2] : symK) {
                int t = k1.homotopy + k2.homotopy;
                int j = rj.second + k1.internal + k2.internal;
                if (t > max_homotopy || j > max_internal) continue;
                int filt = rj.first + static_cast<int>(k1.weight + k2.weight);
                out[{filt, t, j}] += c0 * c1 * c2;
            }
    return out;
}

}  // namespace f2alg

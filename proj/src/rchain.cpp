#include "f2alg/rchain.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "f2alg/common.hpp"
#include "f2alg/subspace.hpp"

namespace f2alg {

namespace {

const RVSMap& diff_at(const RVSComplex& c, int t) {
    static const RVSMap empty;
    if (t >= 1 && t < static_cast<int>(c.diffs.size())) return c.diffs[static_cast<std::size_t>(t)];
    return empty;
}

// materialize one degree component of a map, absent meaning zero
F2Matrix map_matrix(const RVSMap& f, int q, int rows, int cols) {
    if (const F2Matrix* p = f.at(q)) {
        if (static_cast<int>(p->rows()) != rows || static_cast<int>(p->cols()) != cols)
            throw_internal("map component has unexpected shape");
        return *p;
    }
    return F2Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
}

F2Matrix from_columns(int rows, const std::vector<F2Vec>& cols) {
    F2Matrix m(static_cast<std::size_t>(rows), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows)
            throw_internal("column has wrong length");
        for (int r = 0; r < rows; ++r)
            if (cols[j].get(static_cast<std::size_t>(r))) m.set(static_cast<std::size_t>(r), j, true);
    }
    return m;
}

}  // namespace

void require_valid_complex(const RVSComplex& c) {
    if (c.max_internal_degree < 0) throw_validation("complex window must be nonnegative");
    int N = c.max_internal_degree;
    for (const RestrictedVS& v : c.levels) {
        if (v.max_internal_degree != N)
            throw_validation("all complex levels must share the internal-degree window");
        require_valid(v);
    }
    if (static_cast<int>(c.diffs.size()) > std::max(c.length(), 1))
        throw_validation("complex has more differentials than levels");
    if (!c.diffs.empty() && !c.diffs[0].comps.empty())
        throw_validation("the level-0 differential slot must stay empty");
    for (int t = 1; t < c.length(); ++t)
        require_valid_map(c.levels[static_cast<std::size_t>(t)], c.levels[static_cast<std::size_t>(t - 1)],
                          diff_at(c, t), "complex differential");
    for (int t = 2; t < c.length(); ++t) {
        for (int q = 0; q <= N; ++q) {
            int d0 = c.levels[static_cast<std::size_t>(t - 2)].dim_at(q);
            int d1 = c.levels[static_cast<std::size_t>(t - 1)].dim_at(q);
            int d2 = c.levels[static_cast<std::size_t>(t)].dim_at(q);
            if (d0 == 0 || d2 == 0) continue;
            F2Matrix a = map_matrix(diff_at(c, t - 1), q, d0, d1);
            F2Matrix b = map_matrix(diff_at(c, t), q, d1, d2);
            if (!a.multiply(b).is_zero())
                throw_validation("differential does not square to zero at level " + std::to_string(t) +
                                 ", degree " + std::to_string(q));
        }
    }
}

RVSComplex zero_complex(int N, int length) {
    if (N < 0) throw_argument("window must be nonnegative");
    if (length < 0) throw_argument("length must be nonnegative");
    RVSComplex c;
    c.max_internal_degree = N;
    c.levels.assign(static_cast<std::size_t>(length), make_rvs(N, {}));
    c.diffs.assign(static_cast<std::size_t>(length), RVSMap{});
    return c;
}

RVSComplex complex_point(int q, int N) {
    if (N < 0) throw_argument("window must be nonnegative");
    if (q < 0 || q > N) throw_argument("point degree must lie in the window");
    RVSComplex c;
    c.max_internal_degree = N;
    c.levels.push_back(summand_rvs(Summand{Summand::Kind::Free, q, 0}, N));
    c.diffs.push_back(RVSMap{});
    return c;
}

RVSComplex complex_cell(int q, int k, int N) {
    if (N < 0) throw_argument("window must be nonnegative");
    if (q < 1) throw_argument("cell degree must be positive");
    if (k < 1) throw_argument("cell torsion length must be positive");
    if (k > 30 || (static_cast<long long>(q) << k) > N)
        throw_argument("cell 2^k q must stay inside the window");
    RVSComplex c;
    c.max_internal_degree = N;
    int top = q << k;
    c.levels.push_back(summand_rvs(Summand{Summand::Kind::Free, q, 0}, N));
    c.levels.push_back(summand_rvs(Summand{Summand::Kind::Free, top, 0}, N));
    RVSMap d;
    for (long long deg = top; deg <= N; deg *= 2) {
        F2Matrix one(1, 1);
        one.set(0, 0, true);
        d.comps[static_cast<int>(deg)] = one;
    }
    c.diffs.push_back(RVSMap{});
    c.diffs.push_back(std::move(d));
    return c;
}

RVSComplex shift_complex(const RVSComplex& c, int n) {
    if (n < 0) throw_argument("shift must be nonnegative");
    RVSComplex out;
    out.max_internal_degree = c.max_internal_degree;
    out.levels.assign(static_cast<std::size_t>(n), make_rvs(c.max_internal_degree, {}));
    out.diffs.assign(static_cast<std::size_t>(n), RVSMap{});
    for (int t = 0; t < c.length(); ++t) {
        out.levels.push_back(c.levels[static_cast<std::size_t>(t)]);
        out.diffs.push_back(t == 0 ? RVSMap{} : diff_at(c, t));
    }
    return out;
}

RVSComplex direct_sum_complex(const std::vector<RVSComplex>& parts) {
    if (parts.empty()) throw_argument("direct sum needs at least one complex");
    int N = parts[0].max_internal_degree;
    int length = 0;
    for (const RVSComplex& p : parts) {
        if (p.max_internal_degree != N)
            throw_argument("direct sum parts must share the internal-degree window");
        length = std::max(length, p.length());
    }
    RVSComplex out;
    out.max_internal_degree = N;
    RestrictedVS zero = make_rvs(N, {});
    auto part_level = [&](const RVSComplex& p, int t) -> const RestrictedVS& {
        return t < p.length() ? p.levels[static_cast<std::size_t>(t)] : zero;
    };
    for (int t = 0; t < length; ++t) {
        std::vector<RestrictedVS> slice;
        slice.reserve(parts.size());
        for (const RVSComplex& p : parts) slice.push_back(part_level(p, t));
        out.levels.push_back(direct_sum(slice));
        RVSMap d;
        if (t >= 1) {
            for (int q = 0; q <= N; ++q) {
                int rows = 0;
                int cols = 0;
                for (const RVSComplex& p : parts) {
                    rows += part_level(p, t - 1).dim_at(q);
                    cols += part_level(p, t).dim_at(q);
                }
                if (rows == 0 || cols == 0) continue;
                F2Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
                int roff = 0;
                int coff = 0;
                for (const RVSComplex& p : parts) {
                    int pr = part_level(p, t - 1).dim_at(q);
                    int pc = part_level(p, t).dim_at(q);
                    if (pr > 0 && pc > 0) {
                        F2Matrix blk = map_matrix(diff_at(p, t), q, pr, pc);
                        for (int r = 0; r < pr; ++r)
                            for (int cix = 0; cix < pc; ++cix)
                                if (blk.get(static_cast<std::size_t>(r), static_cast<std::size_t>(cix)))
                                    m.set(static_cast<std::size_t>(roff + r), static_cast<std::size_t>(coff + cix), true);
                    }
                    roff += pr;
                    coff += pc;
                }
                d.comps[q] = std::move(m);
            }
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

std::vector<RestrictedVS> homology(const RVSComplex& c) {
    require_valid_complex(c);
    int N = c.max_internal_degree;
    int len = c.length();
    std::vector<RestrictedVS> out;
    out.reserve(static_cast<std::size_t>(len));
    for (int t = 0; t < len; ++t) {
        const RestrictedVS& lvl = c.levels[static_cast<std::size_t>(t)];
        // representatives of homology classes and the boundary subspace, per degree
        std::vector<std::vector<F2Vec>> reps(static_cast<std::size_t>(N + 1));
        std::vector<Subspace> bnd;
        bnd.reserve(static_cast<std::size_t>(N + 1));
        for (int q = 0; q <= N; ++q) {
            int dim = lvl.dim_at(q);
            std::vector<F2Vec> zbasis;
            if (t == 0) {
                for (int i = 0; i < dim; ++i)
                    zbasis.push_back(F2Vec::unit(static_cast<std::size_t>(dim), static_cast<std::size_t>(i)));
            } else {
                int up = c.levels[static_cast<std::size_t>(t - 1)].dim_at(q);
                zbasis = kernel_basis(map_matrix(diff_at(c, t), q, up, dim));
            }
            Subspace b(static_cast<std::size_t>(dim));
            if (t + 1 < len) {
                int below = c.levels[static_cast<std::size_t>(t + 1)].dim_at(q);
                F2Matrix m = map_matrix(diff_at(c, t + 1), q, dim, below);
                std::vector<F2Vec> gens;
                for (int j = 0; j < below; ++j) gens.push_back(m.col(static_cast<std::size_t>(j)));
                b = Subspace(static_cast<std::size_t>(dim), gens);
            }
            for (std::size_t ix : complement_indices(b.basis(), zbasis))
                reps[static_cast<std::size_t>(q)].push_back(zbasis[ix]);
            bnd.push_back(std::move(b));
        }
        std::map<int, int> dims;
        for (int q = 0; q <= N; ++q)
            if (!reps[static_cast<std::size_t>(q)].empty())
                dims[q] = static_cast<int>(reps[static_cast<std::size_t>(q)].size());
        RestrictedVS h = make_rvs(N, dims);
        for (int q = 0; 2 * q <= N; ++q) {
            std::size_t src_dim = reps[static_cast<std::size_t>(q)].size();
            std::size_t tgt_dim = reps[static_cast<std::size_t>(2 * q)].size();
            if (src_dim == 0) continue;
            // solve against chosen representatives extended by the boundaries
            std::vector<F2Vec> cols = reps[static_cast<std::size_t>(2 * q)];
            for (const F2Vec& b : bnd[static_cast<std::size_t>(2 * q)].basis()) cols.push_back(b);
            F2Matrix solver = from_columns(lvl.dim_at(2 * q), cols);
            F2Matrix ph(tgt_dim, src_dim);
            F2Matrix lift = lvl.phi_at(q);
            for (std::size_t j = 0; j < src_dim; ++j) {
                F2Vec w = lift.apply(reps[static_cast<std::size_t>(q)][j]);
                auto x = solve(solver, w);
                if (!x) throw_internal("restriction of a cycle left the cycle space");
                for (std::size_t r = 0; r < tgt_dim; ++r)
                    if (x->get(r)) ph.set(r, j, true);
            }
            h.phi[q] = std::move(ph);
        }
        out.push_back(std::move(h));
    }
    return out;
}

std::string to_string(const ComplexSummand& s) {
    std::string prefix = s.n == 0 ? "" : "S^" + std::to_string(s.n) + " ";
    switch (s.kind) {
        case ComplexSummand::Kind::FreePoint:
            return prefix + "C(" + std::to_string(s.q) + ")";
        case ComplexSummand::Kind::TorsionCell:
            return prefix + "C(" + std::to_string(s.q) + "," + std::to_string(s.k) + ")";
        case ComplexSummand::Kind::FreeUpToBound:
            return prefix + "C?(" + std::to_string(s.q) + ")";
    }
    return "?";
}

std::string to_string(const ComplexDecomposition& d) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : d) {
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c > 1) os << c << "*";
        os << to_string(s);
    }
    if (first) return "0";
    return os.str();
}

ComplexDecomposition decompose_complex(const RVSComplex& c) {
    ComplexDecomposition out;
    std::vector<RestrictedVS> h = homology(c);
    for (int t = 0; t < static_cast<int>(h.size()); ++t) {
        Decomposition dec = decompose(h[static_cast<std::size_t>(t)]);
        for (const auto& [s, count] : dec.counts) {
            ComplexSummand cs;
            cs.n = t;
            cs.q = s.n;
            switch (s.kind) {
                case Summand::Kind::Free:
                    cs.kind = ComplexSummand::Kind::FreePoint;
                    break;
                case Summand::Kind::Torsion:
                    cs.kind = ComplexSummand::Kind::TorsionCell;
                    cs.k = s.k;
                    break;
                case Summand::Kind::FreeUpToBound:
                    cs.kind = ComplexSummand::Kind::FreeUpToBound;
                    break;
            }
            out[cs] += count;
        }
    }
    return out;
}

RVSComplex reassemble_complex(const ComplexDecomposition& d, int N) {
    if (N < 0) throw_argument("window must be nonnegative");
    std::vector<RVSComplex> parts;
    for (const auto& [s, count] : d) {
        if (count < 0) throw_argument("summand multiplicity must be nonnegative");
        if (count == 0) continue;
        RVSComplex base;
        switch (s.kind) {
            case ComplexSummand::Kind::FreePoint:
                base = complex_point(s.q, N);
                break;
            case ComplexSummand::Kind::TorsionCell:
                base = complex_cell(s.q, s.k, N);
                break;
            case ComplexSummand::Kind::FreeUpToBound:
                if (2LL * s.q <= N)
                    throw_argument("free-up-to-bound summand needs 2q beyond the window");
                base = complex_point(s.q, N);
                break;
        }
        base = shift_complex(base, s.n);
        for (long long i = 0; i < count; ++i) parts.push_back(base);
    }
    if (parts.empty()) return zero_complex(N, 0);
    return direct_sum_complex(parts);
}

std::vector<int> surjection_from_mask(int n, std::uint32_t mask) {
    if (n < 0) throw_argument("simplex dimension must be nonnegative");
    if (n < 32 && (mask >> n) != 0) throw_argument("increment mask has bits beyond the dimension");
    std::vector<int> vals(static_cast<std::size_t>(n) + 1, 0);
    for (int x = 1; x <= n; ++x)
        vals[static_cast<std::size_t>(x)] =
            vals[static_cast<std::size_t>(x - 1)] + ((mask >> (x - 1)) & 1u);
    return vals;
}

std::vector<std::uint32_t> increment_masks(int n, int k) {
    std::vector<std::uint32_t> out;
    if (n < 0 || k < 0 || k > n) return out;
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    // positions 1..n choose k, enumerated in lexicographic order of the set
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        std::uint32_t mask = 0;
        for (int i = 0; i < k; ++i) mask |= 1u << (c[static_cast<std::size_t>(i)] - 1);
        out.push_back(mask);
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

namespace {

// one direct summand of a level of K(C): the degree shift k of the copy of
// C_k together with the increment mask of its indexing surjection
struct KComponent {
    int k = 0;
    std::uint32_t mask = 0;
    std::vector<int> alpha;
};

std::uint32_t mask_of_values(const std::vector<int>& vals) {
    std::uint32_t m = 0;
    for (std::size_t x = 1; x < vals.size(); ++x)
        if (vals[x] == vals[x - 1] + 1) m |= 1u << (x - 1);
    return m;
}

// classification of a composite gamma = alpha o theta on [m]:
// identity block, differential block, or zero
enum class BlockKind { Identity, Differential, Zero };

BlockKind classify(const std::vector<int>& gamma, int k) {
    for (std::size_t x = 1; x < gamma.size(); ++x)
        if (gamma[x] - gamma[x - 1] > 1) return BlockKind::Zero;
    if (gamma.front() == 0 && gamma.back() == k) return BlockKind::Identity;
    if (k >= 1 && gamma.front() == 1 && gamma.back() == k) return BlockKind::Differential;
    return BlockKind::Zero;
}

}  // namespace

SimplicialRVS dold_kan_K(const RVSComplex& c, int L) {
    require_valid_complex(c);
    if (L < 0) throw_argument("level bound must be nonnegative");
    if (L > 25) throw_size("level bound too large for the mask encoding");
    int N = c.max_internal_degree;
    int len = c.length();

    std::vector<std::vector<KComponent>> comps(static_cast<std::size_t>(L) + 1);
    std::vector<std::map<std::pair<int, std::uint32_t>, int>> cindex(static_cast<std::size_t>(L) + 1);
    for (int n = 0; n <= L; ++n) {
        for (int k = 0; k <= std::min(n, len - 1); ++k) {
            for (std::uint32_t mask : increment_masks(n, k)) {
                cindex[static_cast<std::size_t>(n)][{k, mask}] =
                    static_cast<int>(comps[static_cast<std::size_t>(n)].size());
                comps[static_cast<std::size_t>(n)].push_back({k, mask, surjection_from_mask(n, mask)});
            }
        }
    }

    // column offsets of each component inside its level, per internal degree
    std::vector<std::vector<std::vector<int>>> off(static_cast<std::size_t>(L) + 1);
    std::vector<std::vector<int>> ldim(static_cast<std::size_t>(L) + 1,
                                       std::vector<int>(static_cast<std::size_t>(N) + 1, 0));
    for (int n = 0; n <= L; ++n) {
        auto& level_comps = comps[static_cast<std::size_t>(n)];
        off[static_cast<std::size_t>(n)].assign(level_comps.size(),
                                                std::vector<int>(static_cast<std::size_t>(N) + 1, 0));
        for (std::size_t ci = 0; ci < level_comps.size(); ++ci) {
            const RestrictedVS& piece = c.levels[static_cast<std::size_t>(level_comps[ci].k)];
            for (int q = 0; q <= N; ++q) {
                off[static_cast<std::size_t>(n)][ci][static_cast<std::size_t>(q)] =
                    ldim[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
                ldim[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] += piece.dim_at(q);
            }
        }
    }

    SimplicialRVS s;
    s.level_bound = L;
    s.levels.reserve(static_cast<std::size_t>(L) + 1);
    s.component_masks.resize(static_cast<std::size_t>(L) + 1);
    for (int n = 0; n <= L; ++n) {
        std::map<int, int> dims;
        for (int q = 0; q <= N; ++q) {
            int d = ldim[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
            if (d > 0) dims[q] = d;
        }
        RestrictedVS lvl = make_rvs(N, dims);
        for (int q = 0; 2 * q <= N; ++q) {
            int cols = ldim[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)];
            int rows = ldim[static_cast<std::size_t>(n)][static_cast<std::size_t>(2 * q)];
            if (cols == 0) continue;
            F2Matrix ph(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
            auto& level_comps = comps[static_cast<std::size_t>(n)];
            for (std::size_t ci = 0; ci < level_comps.size(); ++ci) {
                const RestrictedVS& piece = c.levels[static_cast<std::size_t>(level_comps[ci].k)];
                if (piece.dim_at(q) == 0) continue;
                F2Matrix blk = piece.phi_at(q);
                int roff = off[static_cast<std::size_t>(n)][ci][static_cast<std::size_t>(2 * q)];
                int coff = off[static_cast<std::size_t>(n)][ci][static_cast<std::size_t>(q)];
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t cc = 0; cc < blk.cols(); ++cc)
                        if (blk.get(r, cc))
                            ph.set(static_cast<std::size_t>(roff) + r, static_cast<std::size_t>(coff) + cc, true);
            }
            lvl.phi[q] = std::move(ph);
        }
        s.levels.push_back(std::move(lvl));
        for (int q = 0; q <= N; ++q) {
            if (ldim[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)] == 0) continue;
            std::vector<std::uint32_t>& marks = s.component_masks[static_cast<std::size_t>(n)][q];
            for (const KComponent& comp : comps[static_cast<std::size_t>(n)])
                for (int i = 0; i < c.levels[static_cast<std::size_t>(comp.k)].dim_at(q); ++i)
                    marks.push_back(comp.mask);
        }
    }

    // build one structure map from the block decomposition of alpha o theta
    auto build_map = [&](int src_level, int tgt_level,
                         const std::vector<int>& theta) -> RVSMap {
        RVSMap f;
        for (int q = 0; q <= N; ++q) {
            int cols = ldim[static_cast<std::size_t>(src_level)][static_cast<std::size_t>(q)];
            int rows = ldim[static_cast<std::size_t>(tgt_level)][static_cast<std::size_t>(q)];
            if (cols == 0 || rows == 0) continue;
            F2Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
            auto& src_comps = comps[static_cast<std::size_t>(src_level)];
            for (std::size_t ci = 0; ci < src_comps.size(); ++ci) {
                const KComponent& comp = src_comps[ci];
                int sdim = c.levels[static_cast<std::size_t>(comp.k)].dim_at(q);
                if (sdim == 0) continue;
                std::vector<int> gamma(theta.size());
                for (std::size_t x = 0; x < theta.size(); ++x)
                    gamma[x] = comp.alpha[static_cast<std::size_t>(theta[x])];
                BlockKind kind = classify(gamma, comp.k);
                if (kind == BlockKind::Zero) continue;
                int soff = off[static_cast<std::size_t>(src_level)][ci][static_cast<std::size_t>(q)];
                if (kind == BlockKind::Identity) {
                    auto it = cindex[static_cast<std::size_t>(tgt_level)].find({comp.k, mask_of_values(gamma)});
                    if (it == cindex[static_cast<std::size_t>(tgt_level)].end())
                        throw_internal("missing target component for an identity block");
                    int toff = off[static_cast<std::size_t>(tgt_level)][static_cast<std::size_t>(it->second)]
                                  [static_cast<std::size_t>(q)];
                    for (int r = 0; r < sdim; ++r)
                        m.set(static_cast<std::size_t>(toff + r), static_cast<std::size_t>(soff + r), true);
                } else {
                    std::vector<int> beta(gamma.size());
                    for (std::size_t x = 0; x < gamma.size(); ++x) beta[x] = gamma[x] - 1;
                    auto it = cindex[static_cast<std::size_t>(tgt_level)].find({comp.k - 1, mask_of_values(beta)});
                    if (it == cindex[static_cast<std::size_t>(tgt_level)].end())
                        throw_internal("missing target component for a differential block");
                    int tdim = c.levels[static_cast<std::size_t>(comp.k - 1)].dim_at(q);
                    F2Matrix blk = map_matrix(diff_at(c, comp.k), q, tdim, sdim);
                    int toff = off[static_cast<std::size_t>(tgt_level)][static_cast<std::size_t>(it->second)]
                                  [static_cast<std::size_t>(q)];
                    for (int r = 0; r < tdim; ++r)
                        for (int cc = 0; cc < sdim; ++cc)
                            if (blk.get(static_cast<std::size_t>(r), static_cast<std::size_t>(cc)))
                                m.set(static_cast<std::size_t>(toff + r), static_cast<std::size_t>(soff + cc), true);
                }
            }
            f.comps[q] = std::move(m);
        }
        return f;
    };

    s.faces.resize(static_cast<std::size_t>(L) + 1);
    s.degeneracies.resize(static_cast<std::size_t>(L) + 1);
    for (int n = 1; n <= L; ++n) {
        s.faces[static_cast<std::size_t>(n)].reserve(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            std::vector<int> theta(static_cast<std::size_t>(n));
            for (int x = 0; x < n; ++x) theta[static_cast<std::size_t>(x)] = x < j ? x : x + 1;
            s.faces[static_cast<std::size_t>(n)].push_back(build_map(n, n - 1, theta));
        }
    }
    for (int n = 0; n < L; ++n) {
        s.degeneracies[static_cast<std::size_t>(n)].reserve(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            std::vector<int> theta(static_cast<std::size_t>(n) + 2);
            for (int x = 0; x <= n + 1; ++x) theta[static_cast<std::size_t>(x)] = x <= j ? x : x - 1;
            s.degeneracies[static_cast<std::size_t>(n)].push_back(build_map(n, n + 1, theta));
        }
    }
    return s;
}

namespace {

F2Matrix simplicial_map_matrix(const SimplicialRVS& s, const RVSMap& f, int src_level, int tgt_level, int q) {
    int rows = s.levels[static_cast<std::size_t>(tgt_level)].dim_at(q);
    int cols = s.levels[static_cast<std::size_t>(src_level)].dim_at(q);
    return map_matrix(f, q, rows, cols);
}

}  // namespace

void require_valid_simplicial(const SimplicialRVS& s) {
    int L = s.level_bound;
    if (L < 0) throw_validation("level bound must be nonnegative");
    if (static_cast<int>(s.levels.size()) != L + 1)
        throw_validation("simplicial object must carry levels 0..L");
    int N = s.levels[0].max_internal_degree;
    for (const RestrictedVS& v : s.levels) {
        if (v.max_internal_degree != N)
            throw_validation("all simplicial levels must share the internal-degree window");
        require_valid(v);
    }
    if (static_cast<int>(s.faces.size()) != L + 1 || !s.faces[0].empty())
        throw_validation("face lists must exist for levels 1..L and stay empty at level 0");
    if (static_cast<int>(s.degeneracies.size()) != L + 1 ||
        !s.degeneracies[static_cast<std::size_t>(L)].empty())
        throw_validation("degeneracy lists must exist for levels 0..L-1 and stay empty at level L");
    for (int n = 1; n <= L; ++n) {
        if (static_cast<int>(s.faces[static_cast<std::size_t>(n)].size()) != n + 1)
            throw_validation("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " faces");
        for (int i = 0; i <= n; ++i)
            require_valid_map(s.levels[static_cast<std::size_t>(n)], s.levels[static_cast<std::size_t>(n - 1)],
                              s.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)], "face map");
    }
    for (int n = 0; n < L; ++n) {
        if (static_cast<int>(s.degeneracies[static_cast<std::size_t>(n)].size()) != n + 1)
            throw_validation("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " degeneracies");
        for (int i = 0; i <= n; ++i)
            require_valid_map(s.levels[static_cast<std::size_t>(n)], s.levels[static_cast<std::size_t>(n + 1)],
                              s.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)],
                              "degeneracy map");
    }

    auto face = [&](int n, int i, int q) {
        return simplicial_map_matrix(s, s.faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)],
                                     n, n - 1, q);
    };
    auto degen = [&](int n, int i, int q) {
        return simplicial_map_matrix(s, s.degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)],
                                     n, n + 1, q);
    };
    auto fail = [&](const char* what, int n, int i, int j, int q) {
        throw_validation(std::string("simplicial identity ") + what + " fails at level " +
                         std::to_string(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                         ", degree " + std::to_string(q));
    };
    for (int q = 0; q <= N; ++q) {
        for (int n = 2; n <= L; ++n)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (!(face(n - 1, i, q).multiply(face(n, j, q)) ==
                          face(n - 1, j - 1, q).multiply(face(n, i, q))))
                        fail("d_i d_j = d_{j-1} d_i", n, i, j, q);
        for (int n = 0; n + 2 <= L; ++n)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i)
                    if (!(degen(n + 1, i, q).multiply(degen(n, j, q)) ==
                          degen(n + 1, j + 1, q).multiply(degen(n, i, q))))
                        fail("s_i s_j = s_{j+1} s_i", n, i, j, q);
        for (int n = 0; n < L; ++n) {
            int dim = s.levels[static_cast<std::size_t>(n)].dim_at(q);
            F2Matrix ident(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
            for (int r = 0; r < dim; ++r)
                ident.set(static_cast<std::size_t>(r), static_cast<std::size_t>(r), true);
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= n + 1; ++i) {
                    F2Matrix lhs = face(n + 1, i, q).multiply(degen(n, j, q));
                    if (i == j || i == j + 1) {
                        if (!(lhs == ident)) fail("d_i s_j = id", n, i, j, q);
                    } else if (i < j) {
                        if (n == 0) throw_internal("mixed identity reached an impossible level");
                        if (!(lhs == degen(n - 1, j - 1, q).multiply(face(n, i, q))))
                            fail("d_i s_j = s_{j-1} d_i", n, i, j, q);
                    } else {
                        if (n == 0) throw_internal("mixed identity reached an impossible level");
                        if (!(lhs == degen(n - 1, j, q).multiply(face(n, i - 1, q))))
                            fail("d_i s_j = s_j d_{i-1}", n, i, j, q);
                    }
                }
        }
    }
}

RVSComplex normalize_N(const SimplicialRVS& s) {
    require_valid_simplicial(s);
    int L = s.level_bound;
    int N = s.levels[0].max_internal_degree;
    // reps[t][q]: basis of the intersection of ker d_1..d_t, in level coordinates
    std::vector<std::vector<std::vector<F2Vec>>> reps(static_cast<std::size_t>(L) + 1);
    for (int t = 0; t <= L; ++t) {
        reps[static_cast<std::size_t>(t)].resize(static_cast<std::size_t>(N) + 1);
        for (int q = 0; q <= N; ++q) {
            int dim = s.levels[static_cast<std::size_t>(t)].dim_at(q);
            if (dim == 0) continue;
            if (t == 0) {
                for (int i = 0; i < dim; ++i)
                    reps[0][static_cast<std::size_t>(q)].push_back(
                        F2Vec::unit(static_cast<std::size_t>(dim), static_cast<std::size_t>(i)));
                continue;
            }
            int up = s.levels[static_cast<std::size_t>(t - 1)].dim_at(q);
            F2Matrix stacked(0, static_cast<std::size_t>(dim));
            for (int i = 1; i <= t; ++i)
                stacked = stacked.vstack(simplicial_map_matrix(
                    s, s.faces[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)], t, t - 1, q));
            (void)up;
            reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)] = kernel_basis(stacked);
        }
    }

    RVSComplex out;
    out.max_internal_degree = N;
    auto express = [&](int t, int q, const F2Vec& w) {
        const std::vector<F2Vec>& basis = reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
        F2Matrix solver = from_columns(s.levels[static_cast<std::size_t>(t)].dim_at(q), basis);
        auto x = solve(solver, w);
        if (!x) throw_internal("normalized chains are not closed under the structure maps");
        return *x;
    };
    for (int t = 0; t <= L; ++t) {
        std::map<int, int> dims;
        for (int q = 0; q <= N; ++q)
            if (!reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)].empty())
                dims[q] = static_cast<int>(reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)].size());
        RestrictedVS lvl = make_rvs(N, dims);
        for (int q = 0; 2 * q <= N; ++q) {
            const auto& src = reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
            if (src.empty()) continue;
            std::size_t tgt_dim = reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(2 * q)].size();
            F2Matrix ph(tgt_dim, src.size());
            F2Matrix lift = s.levels[static_cast<std::size_t>(t)].phi_at(q);
            for (std::size_t j = 0; j < src.size(); ++j) {
                F2Vec x = express(t, 2 * q, lift.apply(src[j]));
                for (std::size_t r = 0; r < tgt_dim; ++r)
                    if (x.get(r)) ph.set(r, j, true);
            }
            lvl.phi[q] = std::move(ph);
        }
        out.levels.push_back(std::move(lvl));
        RVSMap d;
        if (t >= 1) {
            for (int q = 0; q <= N; ++q) {
                const auto& src = reps[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
                if (src.empty()) continue;
                std::size_t tgt_dim = reps[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(q)].size();
                F2Matrix m(tgt_dim, src.size());
                F2Matrix face0 = simplicial_map_matrix(
                    s, s.faces[static_cast<std::size_t>(t)][0], t, t - 1, q);
                for (std::size_t j = 0; j < src.size(); ++j) {
                    F2Vec x = express(t - 1, q, face0.apply(src[j]));
                    for (std::size_t r = 0; r < tgt_dim; ++r)
                        if (x.get(r)) m.set(r, j, true);
                }
                d.comps[q] = std::move(m);
            }
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

SimplicialRVS make_K(int n, int q, int N, int L) {
    return dold_kan_K(shift_complex(complex_point(q, N), n), L);
}

SimplicialRVS make_K_cell(int n, int q, int k, int N, int L) {
    return dold_kan_K(shift_complex(complex_cell(q, k, N), n), L);
}

}  // namespace f2alg

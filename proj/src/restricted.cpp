#include "f2alg/restricted.hpp"

#include <algorithm>
#include <sstream>

#include "f2alg/common.hpp"

namespace f2alg {

namespace {

// degrees of the doubling chain through p inside the window: p, 2p, ..., 2^R p
std::vector<int> chain_degrees(int p, int N) {
    std::vector<int> degs;
    for (long long d = p; d <= N; d *= 2) degs.push_back(static_cast<int>(d));
    return degs;
}

std::string deg_str(int i) { return std::to_string(i); }

}  // namespace

F2Matrix RestrictedVS::phi_at(int i) const {
    auto it = phi.find(i);
    if (it != phi.end()) return it->second;
    return F2Matrix(static_cast<std::size_t>(dim_at(2 * i)), static_cast<std::size_t>(dim_at(i)));
}

RestrictedVS make_rvs(int N, const std::map<int, int>& dims) {
    if (N < 0) throw_argument("make_rvs: window must be nonnegative, got " + std::to_string(N));
    RestrictedVS v;
    v.max_internal_degree = N;
    v.dims.assign(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& [deg, d] : dims) {
        if (deg < 0 || deg > N)
            throw_argument("make_rvs: degree " + deg_str(deg) + " outside window 0.." + deg_str(N));
        if (d < 0) throw_argument("make_rvs: negative dimension at degree " + deg_str(deg));
        v.dims[static_cast<std::size_t>(deg)] = d;
    }
    if (v.dims[0] > 0) v.phi[0] = F2Matrix::identity(static_cast<std::size_t>(v.dims[0]));
    return v;
}

ValidationReport validate(const RestrictedVS& v) {
    ValidationReport rep;
    auto bad = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.problems.push_back(msg);
    };
    const int N = v.max_internal_degree;
    if (N < 0) {
        bad("window is negative");
        return rep;
    }
    if (v.dims.size() != static_cast<std::size_t>(N) + 1) {
        bad("dims has " + std::to_string(v.dims.size()) + " entries, window needs " +
            std::to_string(N + 1));
        return rep;
    }
    for (int i = 0; i <= N; ++i)
        if (v.dims[static_cast<std::size_t>(i)] < 0) bad("negative dimension at degree " + deg_str(i));
    for (const auto& [i, m] : v.phi) {
        if (i < 0) {
            bad("phi stored at negative degree " + deg_str(i));
            continue;
        }
        if (2 * i > N) {
            bad("phi stored at degree " + deg_str(i) + " but target degree " + deg_str(2 * i) +
                " is outside the window");
            continue;
        }
        if (m.rows() != static_cast<std::size_t>(v.dim_at(2 * i)) ||
            m.cols() != static_cast<std::size_t>(v.dim_at(i)))
            bad("phi at degree " + deg_str(i) + " has shape " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()) + ", expected " + std::to_string(v.dim_at(2 * i)) + "x" +
                std::to_string(v.dim_at(i)));
    }
    // degree 0 doubles to itself, and the restriction there is the identity
    if (v.dims[0] > 0) {
        auto it = v.phi.find(0);
        if (it == v.phi.end())
            bad("phi at degree 0 is absent but dim is positive; it must be the identity");
        else if (it->second.rows() == static_cast<std::size_t>(v.dims[0]) &&
                 it->second.cols() == static_cast<std::size_t>(v.dims[0]) &&
                 !(it->second == F2Matrix::identity(static_cast<std::size_t>(v.dims[0]))))
            bad("phi at degree 0 is not the identity");
    }
    return rep;
}

void require_valid(const RestrictedVS& v) {
    ValidationReport rep = validate(v);
    if (!rep.ok) throw_validation("invalid restricted space: " + rep.problems.front());
}

void require_valid_map(const RestrictedVS& src, const RestrictedVS& tgt, const RVSMap& f,
                       const std::string& what) {
    require_valid(src);
    require_valid(tgt);
    if (src.max_internal_degree != tgt.max_internal_degree)
        throw_validation(what + ": source window " + deg_str(src.max_internal_degree) +
                         " differs from target window " + deg_str(tgt.max_internal_degree));
    const int N = src.max_internal_degree;
    for (const auto& [q, m] : f.comps) {
        if (q < 0 || q > N) throw_validation(what + ": component at degree " + deg_str(q) + " outside window");
        if (m.rows() != static_cast<std::size_t>(tgt.dim_at(q)) ||
            m.cols() != static_cast<std::size_t>(src.dim_at(q)))
            throw_validation(what + ": component at degree " + deg_str(q) + " has shape " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected " + std::to_string(tgt.dim_at(q)) + "x" +
                             std::to_string(src.dim_at(q)));
    }
    auto comp_at = [&f](int q, int rows, int cols) {
        const F2Matrix* m = f.at(q);
        if (m) return *m;
        return F2Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    };
    for (int q = 0; 2 * q <= N; ++q) {
        F2Matrix lhs = tgt.phi_at(q).multiply(comp_at(q, tgt.dim_at(q), src.dim_at(q)));
        F2Matrix rhs = comp_at(2 * q, tgt.dim_at(2 * q), src.dim_at(2 * q)).multiply(src.phi_at(q));
        if (!(lhs == rhs))
            throw_validation(what + ": does not commute with phi at degree " + deg_str(q));
    }
}

namespace {

Subspace family_at(const SubspaceFamily& fam, const RestrictedVS& w, int i) {
    auto it = fam.find(i);
    if (it == fam.end()) return Subspace(static_cast<std::size_t>(w.dim_at(i)));
    if (it->second.ambient_dim() != static_cast<std::size_t>(w.dim_at(i)))
        throw_argument("subspace family: ambient dimension at degree " + deg_str(i) + " is " +
                       std::to_string(it->second.ambient_dim()) + ", the space there has dim " +
                       std::to_string(w.dim_at(i)));
    return it->second;
}

}  // namespace

bool is_summand(const SubspaceFamily& v, const RestrictedVS& w) {
    require_valid(w);
    const int N = w.max_internal_degree;
    for (const auto& [deg, sub] : v) {
        if (deg < 0 || deg > N)
            throw_argument("is_summand: family entry at degree " + deg_str(deg) + " outside window");
        (void)family_at(v, w, deg);
    }
    for (int i = 0; 2 * i <= N; ++i) {
        Subspace vi = family_at(v, w, i);
        Subspace v2i = family_at(v, w, 2 * i);
        F2Matrix ph = w.phi_at(i);
        if (!v2i.contains(image(ph, vi)))
            throw_argument("is_summand: family is not phi-closed at degree " + deg_str(i));
        // lifting criterion: anything phi sends into V must share its image
        // with an element of V, i.e. phi(phi^{-1} V) = phi(V) degreewise
        Subspace pre = preimage(ph, v2i);
        if (!image(ph, vi).contains(image(ph, pre))) return false;
    }
    return true;
}

SubspaceFamily phi_preimage(const SubspaceFamily& v, const RestrictedVS& w) {
    require_valid(w);
    const int N = w.max_internal_degree;
    for (const auto& [deg, sub] : v) {
        if (deg < 0 || deg > N)
            throw_argument("phi_preimage: family entry at degree " + deg_str(deg) + " outside window");
        (void)family_at(v, w, deg);
    }
    SubspaceFamily out;
    // the restriction at degree 0 is the identity, so nothing new accumulates
    out[0] = family_at(v, w, 0);
    for (int p = 1; p <= N; p += 2) {
        std::vector<int> degs = chain_degrees(p, N);
        const int R = static_cast<int>(degs.size()) - 1;
        Subspace above(0);
        for (int r = R; r >= 0; --r) {
            Subspace here = family_at(v, w, degs[static_cast<std::size_t>(r)]);
            if (r < R) here = here.sum(preimage(w.phi_at(degs[static_cast<std::size_t>(r)]), above));
            out[degs[static_cast<std::size_t>(r)]] = here;
            above = here;
        }
    }
    return out;
}

namespace {

// One extracted chain: a generator at chain level `birth` together with its
// phi images through `length` consecutive window levels.
struct ExtractedChain {
    int birth = 0;
    int length = 0;
    std::vector<F2Vec> elems;
};

// Interval decomposition of one doubling chain, computed as graded Jordan
// chains of the stacked shift operator (phi past the window end counts as 0).
// W_j is a complement of K_{j-1} + phi(W_{j+1}) inside K_j, chosen greedily
// per degree from canonical kernel bases, top power first, so the output is
// deterministic.
std::vector<ExtractedChain> jordan_chains(const RestrictedVS& v, const std::vector<int>& degs) {
    const int R = static_cast<int>(degs.size()) - 1;
    std::vector<F2Matrix> f(static_cast<std::size_t>(R) + 1);
    std::vector<int> dim(static_cast<std::size_t>(R) + 1);
    for (int r = 0; r <= R; ++r) {
        dim[static_cast<std::size_t>(r)] = v.dim_at(degs[static_cast<std::size_t>(r)]);
        if (r < R) f[static_cast<std::size_t>(r)] = v.phi_at(degs[static_cast<std::size_t>(r)]);
    }
    // composites comp[r][j] : level r -> level r+j, for j <= R - r
    std::vector<std::vector<F2Matrix>> comp(static_cast<std::size_t>(R) + 1);
    for (int r = R; r >= 0; --r) {
        auto& row = comp[static_cast<std::size_t>(r)];
        row.resize(static_cast<std::size_t>(R - r) + 1);
        row[0] = F2Matrix::identity(static_cast<std::size_t>(dim[static_cast<std::size_t>(r)]));
        for (int j = 1; j <= R - r; ++j)
            row[static_cast<std::size_t>(j)] =
                comp[static_cast<std::size_t>(r) + 1][static_cast<std::size_t>(j) - 1].multiply(
                    f[static_cast<std::size_t>(r)]);
    }
    auto kernel_at = [&](int j, int r) -> Subspace {
        const auto n = static_cast<std::size_t>(dim[static_cast<std::size_t>(r)]);
        if (j <= 0) return Subspace(n);
        if (j > R - r) return Subspace::full(n);
        return Subspace(n, kernel_basis(comp[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]));
    };
    const int t = R + 1;
    // W[j][r]: fresh chain tops of height j at chain level r; Y[j][r]: every
    // chain element of height j there, i.e. the fresh tops together with the
    // images of all height j+1 elements one level down. Both use index j-1.
    std::vector<std::vector<std::vector<F2Vec>>> W(
        static_cast<std::size_t>(t), std::vector<std::vector<F2Vec>>(static_cast<std::size_t>(R) + 1));
    auto Y = W;
    for (int j = t; j >= 1; --j) {
        for (int r = 0; r <= R; ++r) {
            if (dim[static_cast<std::size_t>(r)] == 0) continue;
            std::vector<F2Vec> inner;
            Subspace klow = kernel_at(j - 1, r);
            for (const F2Vec& b : klow.basis()) inner.push_back(b);
            std::vector<F2Vec> descended;
            if (r >= 1 && j + 1 <= t)
                for (const F2Vec& y : Y[static_cast<std::size_t>(j)][static_cast<std::size_t>(r) - 1])
                    descended.push_back(f[static_cast<std::size_t>(r) - 1].apply(y));
            for (const F2Vec& d : descended) inner.push_back(d);
            Subspace kj = kernel_at(j, r);
            std::vector<std::size_t> picked = complement_indices(inner, kj.basis());
            auto& fresh = W[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(r)];
            for (std::size_t idx : picked) fresh.push_back(kj.basis()[idx]);
            auto& all = Y[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(r)];
            all = descended;
            for (const F2Vec& w : fresh) all.push_back(w);
        }
    }
    std::vector<ExtractedChain> chains;
    for (int j = t; j >= 1; --j) {
        for (int r = 0; r <= R; ++r) {
            for (const F2Vec& gen : W[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(r)]) {
                if (r + j - 1 > R)
                    throw_internal("chain extraction produced a chain past the window end");
                ExtractedChain ch;
                ch.birth = r;
                ch.length = j;
                ch.elems.push_back(gen);
                for (int m = 1; m < j; ++m)
                    ch.elems.push_back(
                        f[static_cast<std::size_t>(r + m) - 1].apply(ch.elems.back()));
                chains.push_back(std::move(ch));
            }
        }
    }
    return chains;
}

Summand label_chain(const std::vector<int>& degs, const ExtractedChain& ch) {
    const int R = static_cast<int>(degs.size()) - 1;
    const int n = degs[static_cast<std::size_t>(ch.birth)];
    if (ch.birth == R) return Summand{Summand::Kind::FreeUpToBound, n, 0};
    if (ch.birth + ch.length - 1 == R) return Summand{Summand::Kind::Free, n, 0};
    return Summand{Summand::Kind::Torsion, n, ch.length};
}

}  // namespace

std::vector<BasisElement> extract_basis(const RestrictedVS& v) {
    require_valid(v);
    const int N = v.max_internal_degree;
    std::vector<BasisElement> out;
    for (int c = 0; c < v.dims[0]; ++c)
        out.push_back(BasisElement{0, F2Vec::unit(static_cast<std::size_t>(v.dims[0]),
                                                  static_cast<std::size_t>(c)),
                                   Summand{Summand::Kind::Free, 0, 0}});
    for (int p = 1; p <= N; p += 2) {
        std::vector<int> degs = chain_degrees(p, N);
        bool any = false;
        for (int d : degs) any = any || v.dim_at(d) > 0;
        if (!any) continue;
        for (const ExtractedChain& ch : jordan_chains(v, degs))
            out.push_back(BasisElement{degs[static_cast<std::size_t>(ch.birth)], ch.elems.front(),
                                       label_chain(degs, ch)});
    }
    return out;
}

Decomposition decompose(const RestrictedVS& v) {
    Decomposition d;
    for (const BasisElement& b : extract_basis(v)) d.counts[b.summand] += 1;
    return d;
}

FreeNilpotentSplit split_free_nilpotent(const RestrictedVS& v) {
    require_valid(v);
    const int N = v.max_internal_degree;
    // per internal degree, the chosen basis vectors of each half
    std::map<int, std::vector<F2Vec>> fvecs, nvecs;

    for (int c = 0; c < v.dims[0]; ++c)
        fvecs[0].push_back(F2Vec::unit(static_cast<std::size_t>(v.dims[0]), static_cast<std::size_t>(c)));
    for (int p = 1; p <= N; p += 2) {
        std::vector<int> degs = chain_degrees(p, N);
        bool any = false;
        for (int d : degs) any = any || v.dim_at(d) > 0;
        if (!any) continue;
        const int R = static_cast<int>(degs.size()) - 1;
        for (const ExtractedChain& ch : jordan_chains(v, degs)) {
            const bool is_free = ch.birth + ch.length - 1 == R;
            auto& vecs = is_free ? fvecs : nvecs;
            for (int m = 0; m < ch.length; ++m)
                vecs[degs[static_cast<std::size_t>(ch.birth + m)]].push_back(
                    ch.elems[static_cast<std::size_t>(m)]);
        }
    }
    auto build_part = [&](std::map<int, std::vector<F2Vec>>& vecs) {
        RestrictedVS part;
        part.max_internal_degree = N;
        part.dims.assign(static_cast<std::size_t>(N) + 1, 0);
        for (auto& [d, list] : vecs) part.dims[static_cast<std::size_t>(d)] = static_cast<int>(list.size());
        for (int i = 0; 2 * i <= N; ++i) {
            const auto rows = static_cast<std::size_t>(part.dims[static_cast<std::size_t>(2 * i)]);
            const auto cols = static_cast<std::size_t>(part.dims[static_cast<std::size_t>(i)]);
            if (rows == 0 || cols == 0) continue;
            F2Matrix m(rows, cols);
            // express each phi image in the chosen basis one level up
            const std::vector<F2Vec>& up = vecs[2 * i];
            F2Matrix listm(static_cast<std::size_t>(v.dim_at(2 * i)), up.size());
            for (std::size_t j = 0; j < up.size(); ++j)
                for (std::size_t rr = 0; rr < listm.rows(); ++rr)
                    if (up[j].get(rr)) listm.set(rr, j, true);
            for (std::size_t c = 0; c < cols; ++c) {
                F2Vec img = v.phi_at(i).apply(vecs[i][c]);
                if (img.is_zero()) continue;
                auto x = solve(listm, img);
                if (!x) throw_internal("phi image escapes its half at degree " + deg_str(i));
                for (std::size_t j = 0; j < up.size(); ++j)
                    if (x->get(j)) m.set(j, c, true);
            }
            part.phi[i] = std::move(m);
        }
        return part;
    };
    FreeNilpotentSplit split;
    split.free_part = build_part(fvecs);
    split.nilpotent_part = build_part(nvecs);
    auto build_incl = [&](std::map<int, std::vector<F2Vec>>& vecs) {
        RVSMap f;
        for (auto& [d, list] : vecs) {
            F2Matrix m(static_cast<std::size_t>(v.dim_at(d)), list.size());
            for (std::size_t c = 0; c < list.size(); ++c)
                for (std::size_t r = 0; r < m.rows(); ++r)
                    if (list[c].get(r)) m.set(r, c, true);
            f.comps[d] = std::move(m);
        }
        return f;
    };
    split.include_free = build_incl(fvecs);
    split.include_nilpotent = build_incl(nvecs);
    return split;
}

std::map<std::pair<int, int>, int> rank_family(const RestrictedVS& v) {
    require_valid(v);
    const int N = v.max_internal_degree;
    std::map<std::pair<int, int>, int> out;
    // degree 0: the restriction is the identity forever, record s = 0 only
    out[{0, 0}] = v.dims[0];
    for (int i = 1; i <= N; ++i) {
        F2Matrix m = F2Matrix::identity(static_cast<std::size_t>(v.dim_at(i)));
        long long deg = i;
        int s = 0;
        while (deg <= N) {
            out[{i, s}] = static_cast<int>(rank(m));
            if (2 * deg > N) break;
            m = v.phi_at(static_cast<int>(deg)).multiply(m);
            deg *= 2;
            ++s;
        }
    }
    return out;
}

RestrictedVS direct_sum(const std::vector<RestrictedVS>& parts) {
    if (parts.empty()) throw_argument("direct_sum: needs at least one part");
    const int N = parts.front().max_internal_degree;
    for (const RestrictedVS& p : parts) {
        require_valid(p);
        if (p.max_internal_degree != N)
            throw_argument("direct_sum: parts live in different windows");
    }
    RestrictedVS v;
    v.max_internal_degree = N;
    v.dims.assign(static_cast<std::size_t>(N) + 1, 0);
    for (int i = 0; i <= N; ++i)
        for (const RestrictedVS& p : parts) v.dims[static_cast<std::size_t>(i)] += p.dim_at(i);
    for (int i = 0; 2 * i <= N; ++i) {
        const auto rows = static_cast<std::size_t>(v.dim_at(2 * i));
        const auto cols = static_cast<std::size_t>(v.dim_at(i));
        if (rows == 0 || cols == 0) continue;
        F2Matrix m(rows, cols);
        std::size_t ro = 0, co = 0;
        for (const RestrictedVS& p : parts) {
            F2Matrix blk = p.phi_at(i);
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c)
                    if (blk.get(r, c)) m.set(ro + r, co + c, true);
            ro += blk.rows();
            co += blk.cols();
        }
        v.phi[i] = std::move(m);
    }
    return v;
}

RestrictedVS summand_rvs(const Summand& s, int N) {
    if (N < 0) throw_argument("summand_rvs: window must be nonnegative");
    auto line_chain = [&](int n, int levels) {
        // `levels` lines at n, 2n, ..., with phi = [1] between consecutive ones
        std::map<int, int> dims;
        long long d = n;
        for (int r = 0; r < levels; ++r, d *= 2) dims[static_cast<int>(d)] = 1;
        RestrictedVS v = make_rvs(N, dims);
        d = n;
        for (int r = 0; r + 1 < levels; ++r, d *= 2) {
            F2Matrix one(1, 1);
            one.set(0, 0, true);
            v.phi[static_cast<int>(d)] = std::move(one);
        }
        return v;
    };
    switch (s.kind) {
        case Summand::Kind::Free: {
            if (s.n < 0 || s.n > N)
                throw_argument("summand_rvs: free generator degree outside window");
            if (s.n == 0) return make_rvs(N, {{0, 1}});
            return line_chain(s.n, static_cast<int>(chain_degrees(s.n, N).size()));
        }
        case Summand::Kind::Torsion: {
            if (s.n < 1) throw_argument("summand_rvs: torsion generator degree must be positive");
            if (s.k < 1) throw_argument("summand_rvs: torsion length must be positive");
            long long top = s.n;
            for (int r = 0; r < s.k; ++r) top *= 2;
            if (top > N)
                throw_argument("summand_rvs: torsion T(" + std::to_string(s.n) + "," +
                               std::to_string(s.k) + ") does not vanish inside window " +
                               std::to_string(N));
            return line_chain(s.n, s.k);
        }
        case Summand::Kind::FreeUpToBound: {
            if (s.n < 1 || s.n > N || 2LL * s.n <= N)
                throw_argument("summand_rvs: boundary-free degree must satisfy N/2 < n <= N");
            return make_rvs(N, {{s.n, 1}});
        }
    }
    throw_internal("summand_rvs: unreachable");
}

std::string to_string(const Summand& s) {
    switch (s.kind) {
        case Summand::Kind::Free:
            return "F(" + std::to_string(s.n) + ")";
        case Summand::Kind::Torsion:
            return "T(" + std::to_string(s.n) + "," + std::to_string(s.k) + ")";
        case Summand::Kind::FreeUpToBound:
            return "F?(" + std::to_string(s.n) + ")";
    }
    return "?";
}

long long Decomposition::total() const {
    long long t = 0;
    for (const auto& [s, c] : counts) t += c;
    return t;
}

std::string to_string(const Decomposition& d) {
    if (d.counts.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : d.counts) {
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c > 1) os << c << "*";
        os << to_string(s);
    }
    if (first) return "0";
    return os.str();
}



bool equal_rvs(const RestrictedVS& a, const RestrictedVS& b) {
    if (a.max_internal_degree != b.max_internal_degree) return false;
    int N = a.max_internal_degree;
    for (int i = 0; i <= N; ++i)
        if (a.dim_at(i) != b.dim_at(i)) return false;
    for (int i = 0; 2 * i <= N; ++i) {
        F2Matrix pa = a.phi_at(i);
        F2Matrix pb = b.phi_at(i);
        if (!(pa == pb)) return false;
    }
    return true;
}

bool equal_map(const RVSMap& f, const RVSMap& g, const RestrictedVS& src, const RestrictedVS& tgt) {
    int N = src.max_internal_degree;
    for (int q = 0; q <= N; ++q) {
        int rows = tgt.dim_at(q);
        int cols = src.dim_at(q);
        F2Matrix mf(rows, cols);
        F2Matrix mg(rows, cols);
        if (const F2Matrix* p = f.at(q)) mf = *p;
        if (const F2Matrix* p = g.at(q)) mg = *p;
        if (!(mf == mg)) return false;
    }
    return true;
}

}  // namespace f2alg

#include "f2alg/delta.hpp"

#include <algorithm>
#include <sstream>

#include "f2alg/common.hpp"

namespace f2alg {

namespace {

void require_positive_entries(const IndexSeq& seq) {
    for (int e : seq)
        if (e < 1) throw_argument("index sequence entries must be positive");
}

}  // namespace

bool is_admissible(const IndexSeq& seq) {
    require_positive_entries(seq);
    for (std::size_t t = 0; t + 1 < seq.size(); ++t)
        if (seq[t] < 2 * seq[t + 1]) return false;
    return true;
}

long long excess(const IndexSeq& seq) {
    require_positive_entries(seq);
    if (seq.empty()) return 0;
    long long e = seq[0];
    for (std::size_t t = 1; t < seq.size(); ++t) e -= seq[t];
    return e;
}

long long weight(const IndexSeq& seq) {
    require_positive_entries(seq);
    if (seq.size() >= 62) throw_size("sequence too long for a 64-bit weight");
    return 1LL << seq.size();
}

bool odd_binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return false;
    return (n & k) == k;
}

DeltaPolynomial adem_rewrite(int i, int j) {
    if (i < 1 || j < 1) throw_argument("operation indices must be positive");
    if (i >= 2 * j) throw_argument("the pair is already admissible, nothing to rewrite");
    DeltaPolynomial out;
    // integers s in the closed rational interval [(i+1)/2, (i+j)/3]
    int lo = (i + 2) / 2;  // ceil((i+1)/2)
    int hi = (i + j) / 3;  // floor
    for (int s = lo; s <= hi; ++s) {
        if (!odd_binomial(j - i + s - 1, j - s)) continue;
        IndexSeq term = {i + j - s, s};
        if (!is_admissible(term)) throw_internal("rewrite produced an inadmissible pair");
        if (!out.insert(term).second) out.erase(term);
    }
    return out;
}

DeltaPolynomial normal_form(const IndexSeq& word) {
    require_positive_entries(word);
    DeltaPolynomial done;
    DeltaPolynomial pending;
    pending.insert(word);
    auto toggle = [](DeltaPolynomial& p, const IndexSeq& w) {
        auto [it, inserted] = p.insert(w);
        if (!inserted) p.erase(it);
    };
    long long fuel = 1'000'000;
    while (!pending.empty()) {
        IndexSeq w = *pending.begin();
        pending.erase(pending.begin());
        std::size_t bad = w.size();
        for (std::size_t t = 0; t + 1 < w.size(); ++t)
            if (w[t] < 2 * w[t + 1]) {
                bad = t;
                break;
            }
        if (bad == w.size()) {
            toggle(done, w);
            continue;
        }
        if (--fuel < 0)
            throw_internal("rewriting failed to terminate within the fuel bound");
        for (const IndexSeq& pair : adem_rewrite(w[bad], w[bad + 1])) {
            IndexSeq nw;
            nw.reserve(w.size());
            nw.insert(nw.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(bad));
            nw.push_back(pair[0]);
            nw.push_back(pair[1]);
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(bad) + 2, w.end());
            toggle(pending, nw);
        }
    }
    return done;
}

std::string to_string(const IndexSeq& seq) {
    if (seq.empty()) return "1";
    std::ostringstream os;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        if (t) os << ' ';
        os << 'd' << seq[t];
    }
    return os.str();
}

std::string to_string(const DeltaPolynomial& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const IndexSeq& term : p) {
        if (!first) os << " + ";
        first = false;
        os << to_string(term);
    }
    return os.str();
}

namespace {

struct Symbol {
    GradedKey key;
    bool polynomial = false;
};

// enumerate admissible sequences from the right, pruning by the bounds; the
// excess 2*leftmost - sum never decreases when extending to the left
void collect_symbols_rec(int n, int q, int min_last, int max_homotopy, int max_internal,
                         long long max_weight, int leftmost, long long sum, int len,
                         bool symmetric, std::vector<Symbol>& out) {
    long long wt = len >= 62 ? max_weight + 1 : (1LL << len);
    if (wt > max_weight) return;
    long long internal = 0;
    if (q > 0) internal = len >= 31 ? static_cast<long long>(max_internal) + 1
                                    : (static_cast<long long>(q) << len);
    if (internal > max_internal) return;
    if (len > 0 && 2LL * leftmost - sum > n) return;
    long long homotopy = n + sum;
    if (homotopy > max_homotopy) return;
    Symbol s;
    s.key = GradedKey{static_cast<int>(homotopy), static_cast<int>(internal), wt};
    s.polynomial = symmetric && homotopy == 0;
    out.push_back(s);
    int lo = len == 0 ? min_last : 2 * leftmost;
    for (long long next = lo; n + sum + next <= max_homotopy; ++next)
        collect_symbols_rec(n, q, min_last, max_homotopy, max_internal, max_weight,
                            static_cast<int>(next), sum + next, len + 1, symmetric, out);
}

MonomialBasisCounts enum_core(const std::map<std::pair<int, int>, int>& dims, AlgebraFlavor flavor,
                              int max_homotopy, int max_internal, long long max_weight) {
    if (max_homotopy < 0) throw_argument("homotopy bound must be nonnegative");
    if (max_internal < 0) throw_argument("internal bound must be nonnegative");
    if (max_weight < 0) throw_argument("weight bound must be nonnegative");
    bool symmetric = flavor == AlgebraFlavor::Symmetric;
    int min_last = symmetric ? 2 : 1;
    std::vector<std::pair<Symbol, int>> symbols;
    for (const auto& [key, d] : dims) {
        auto [n, q] = key;
        if (n < 0) throw_argument("generator homotopy degrees must be nonnegative");
        if (q < 0) throw_argument("generator internal degrees must be nonnegative");
        if (d < 0) throw_argument("generator multiplicities must be nonnegative");
        if (d == 0) continue;
        std::vector<Symbol> here;
        collect_symbols_rec(n, q, min_last, max_homotopy, max_internal, max_weight,
                            0, 0, 0, symmetric, here);
        for (const Symbol& s : here) symbols.push_back({s, d});
    }

    MonomialBasisCounts counts;
    counts[GradedKey{0, 0, 0}] = 1;
    auto in_bounds = [&](const GradedKey& k) {
        return k.homotopy <= max_homotopy && k.internal <= max_internal && k.weight <= max_weight;
    };
    auto shifted = [](const GradedKey& k, const GradedKey& s) {
        return GradedKey{k.homotopy + s.homotopy, k.internal + s.internal, k.weight + s.weight};
    };
    for (const auto& [sym, d] : symbols) {
        if (sym.polynomial) {
            // unbounded exponent; the ascending map walk cascades because the
            // shifted key is strictly larger (its weight grows by one)
            for (int rep = 0; rep < d; ++rep)
                for (auto it = counts.begin(); it != counts.end(); ++it) {
                    GradedKey nk = shifted(it->first, sym.key);
                    if (in_bounds(nk)) counts[nk] += it->second;
                }
        } else {
            for (int rep = 0; rep < d; ++rep) {
                MonomialBasisCounts bump;
                for (const auto& [k, c] : counts) {
                    GradedKey nk = shifted(k, sym.key);
                    if (in_bounds(nk)) bump[nk] += c;
                }
                for (const auto& [k, c] : bump) counts[k] += c;
            }
        }
        if (counts.size() > 4'000'000)
            throw_size("basis count table exceeded the size budget");
    }
    return counts;
}

}  // namespace

MonomialBasisCounts enum_frak_s(const std::map<int, int>& dims, AlgebraFlavor flavor,
                                int max_homotopy, long long max_weight) {
    std::map<std::pair<int, int>, int> bigraded;
    for (const auto& [n, d] : dims) bigraded[{n, 0}] = d;
    return enum_core(bigraded, flavor, max_homotopy, 0, max_weight);
}

MonomialBasisCounts enum_frak_S(const std::map<std::pair<int, int>, int>& dims,
                                AlgebraFlavor flavor, int max_homotopy, int max_internal,
                                long long max_weight) {
    return enum_core(dims, flavor, max_homotopy, max_internal, max_weight);
}

}  // namespace f2alg

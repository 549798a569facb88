#include "hopfstab/sac.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace hopfstab {

SAC SAC::empty(const CoeffRing& r) {
    SAC x;
    x.ring = r;
    x.I_plus = IntMat(0, 0);
    x.I_minus = IntMat(0, 0);
    return x;
}

static size_t find_label(const std::vector<std::string>& v, const std::string& l, const char* kind) {
    auto it = std::find(v.begin(), v.end(), l);
    if (it == v.end()) throw std::invalid_argument(std::string("unknown ") + kind + " cell: " + l);
    return static_cast<size_t>(it - v.begin());
}

size_t SAC::index_plus(const std::string& l) const { return find_label(plus, l, "plus"); }
size_t SAC::index_circ(const std::string& l) const { return find_label(circ, l, "circ"); }
size_t SAC::index_minus(const std::string& l) const { return find_label(minus, l, "minus"); }

static bool all_distinct(const std::vector<std::string>& v) {
    auto s = v;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

ValidationReport validate(const SAC& x) {
    if (x.I_plus.rows() != x.plus.size() || x.I_plus.cols() != x.circ.size() ||
        x.I_minus.rows() != x.circ.size() || x.I_minus.cols() != x.minus.size())
        throw std::invalid_argument("incidence matrix dimensions do not match cell lists");
    if (!all_distinct(x.plus) || !all_distinct(x.circ) || !all_distinct(x.minus))
        return {false, "duplicate cell labels"};
    for (size_t p = 0; p < x.plus.size(); ++p)
        for (size_t m = 0; m < x.minus.size(); ++m) {
            mpz_class s = 0;
            for (size_t c = 0; c < x.circ.size(); ++c) s += x.I_plus.at(p, c) * x.I_minus.at(c, m);
            if (!x.ring.is_zero(s))
                return {false, "composite incidence nonzero at (" + x.plus[p] + ", " + x.minus[m] + ")"};
        }
    return {};
}

SAC product(const SAC& x, const SAC& y) {
    if (!(x.ring == y.ring)) throw std::invalid_argument("product of complexes over different rings");
    SAC r;
    r.ring = x.ring;
    auto join = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        std::vector<std::string> out;
        for (const auto& l : a) out.push_back("L:" + l);
        for (const auto& l : b) out.push_back("R:" + l);
        return out;
    };
    r.plus = join(x.plus, y.plus);
    r.circ = join(x.circ, y.circ);
    r.minus = join(x.minus, y.minus);
    r.I_plus = IntMat(r.plus.size(), r.circ.size());
    r.I_minus = IntMat(r.circ.size(), r.minus.size());
    for (size_t i = 0; i < x.plus.size(); ++i)
        for (size_t j = 0; j < x.circ.size(); ++j) r.I_plus.at(i, j) = x.I_plus.at(i, j);
    for (size_t i = 0; i < y.plus.size(); ++i)
        for (size_t j = 0; j < y.circ.size(); ++j)
            r.I_plus.at(x.plus.size() + i, x.circ.size() + j) = y.I_plus.at(i, j);
    for (size_t i = 0; i < x.circ.size(); ++i)
        for (size_t j = 0; j < x.minus.size(); ++j) r.I_minus.at(i, j) = x.I_minus.at(i, j);
    for (size_t i = 0; i < y.circ.size(); ++i)
        for (size_t j = 0; j < y.minus.size(); ++j)
            r.I_minus.at(x.circ.size() + i, x.minus.size() + j) = y.I_minus.at(i, j);
    return r;
}

SAC transpose(const SAC& x) {
    SAC t;
    t.ring = x.ring;
    t.plus = x.minus;
    t.circ = x.circ;
    t.minus = x.plus;
    t.I_plus = x.I_minus.transpose();
    t.I_minus = x.I_plus.transpose();
    return t;
}

std::pair<IntMat, IntMat> boundary_matrices(const SAC& x) {
    return {x.I_plus.transpose(), x.I_minus.transpose()};
}

// ---------------------------------------------------------------------------
// Abelian groups

static std::map<long, int> factorize(long n) {
    std::map<long, int> f;
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

AbelianGroup AbelianGroup::from_cyclic_orders(const std::vector<long>& orders) {
    AbelianGroup g;
    std::map<long, std::vector<int>> by_prime;  // prime -> exponents, to be sorted desc
    for (long o : orders) {
        if (o < 0) throw std::invalid_argument("negative cyclic order");
        if (o == 0) {
            ++g.free_rank;
            continue;
        }
        for (auto [p, e] : factorize(o)) by_prime[p].push_back(e);
    }
    size_t depth = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.rbegin(), es.rend());
        depth = std::max(depth, es.size());
    }
    std::vector<long> chain(depth, 1);
    for (auto& [p, es] : by_prime)
        for (size_t i = 0; i < es.size(); ++i) {
            long pw = 1;
            for (int k = 0; k < es[i]; ++k) pw *= p;
            chain[i] *= pw;  // chain[0] = largest invariant factor
        }
    std::reverse(chain.begin(), chain.end());
    for (long m : chain)
        if (m > 1) g.invariant_factors.push_back(m);
    return g;
}

mpz_class AbelianGroup::order() const {
    if (free_rank > 0) return 0;
    mpz_class o = 1;
    for (long m : invariant_factors) o *= m;
    return o;
}

std::string AbelianGroup::str() const {
    std::string s;
    auto add = [&](const std::string& part) {
        if (!s.empty()) s += " x ";
        s += part;
    };
    if (free_rank == 1) add("Z");
    else if (free_rank > 1) add("Z^" + std::to_string(free_rank));
    for (long m : invariant_factors) add("Z/" + std::to_string(m));
    return s.empty() ? "1" : s;
}

static AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<long> orders(a.invariant_factors);
    orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
    for (long i = 0; i < a.free_rank + b.free_rank; ++i) orders.push_back(0);
    return AbelianGroup::from_cyclic_orders(orders);
}

AbelianGroup tensor_group(const AbelianGroup& a, const std::vector<long>& g) {
    std::vector<long> orders;
    for (long m : g) {
        for (long i = 0; i < a.free_rank; ++i) orders.push_back(m);
        for (long f : a.invariant_factors) orders.push_back(std::gcd(f, m));
    }
    return AbelianGroup::from_cyclic_orders(orders);
}

AbelianGroup tor_group(const AbelianGroup& a, const std::vector<long>& g) {
    std::vector<long> orders;
    for (long m : g)
        for (long f : a.invariant_factors) orders.push_back(std::gcd(f, m));
    return AbelianGroup::from_cyclic_orders(orders);
}

// ---------------------------------------------------------------------------
// Homology: enumeration oracle

namespace {

// Configurations of G^m for G = Z/g1 x ... x Z/gr, encoded in mixed radix.
struct ConfigSpace {
    std::vector<long> g;  // factor moduli
    size_t m = 0;         // number of cells
    unsigned long total = 1;
    bool fits(unsigned long limit) const { return total <= limit; }

    ConfigSpace(const std::vector<long>& factors, size_t cells, unsigned long limit)
        : g(factors), m(cells) {
        for (size_t i = 0; i < m; ++i)
            for (long gi : g) {
                if (gi < 1) throw std::invalid_argument("group factors must be >= 1");
                if (total > limit / static_cast<unsigned long>(gi) + 1) {
                    total = limit + 1;  // saturate: too large
                    return;
                }
                total *= static_cast<unsigned long>(gi);
            }
    }

    void decode(unsigned long idx, std::vector<long>& out) const {
        out.resize(m * g.size());
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k < g.size(); ++k) {
                out[i * g.size() + k] = static_cast<long>(idx % g[k]);
                idx /= g[k];
            }
    }

    unsigned long encode(const std::vector<long>& cfg) const {
        unsigned long idx = 0;
        for (size_t i = m; i-- > 0;)
            for (size_t k = g.size(); k-- > 0;) {
                long v = cfg[i * g.size() + k] % g[k];
                if (v < 0) v += g[k];
                idx = idx * g[k] + static_cast<unsigned long>(v);
            }
        return idx;
    }
};

}  // namespace

AbelianGroup group_from_order_counts(const mpz_class& order, long exponent_bound,
                                     const std::function<mpz_class(long)>& count) {
    std::vector<long> orders;
    for (auto [p, vmax_unused] : factorize(exponent_bound)) {
        // s_k = log_p count(p^k); number of cyclic p-factors with exponent >= k
        // is s_k - s_{k-1}.
        std::vector<long> sk{0};
        long pk = 1;
        while (true) {
            if (exponent_bound % (pk * p) != 0) break;
            pk *= p;
            mpz_class c = count(pk);
            long s = 0;
            while (c > 1) {
                if (c % p != 0) throw std::logic_error("order-divisor count is not a prime power");
                c /= p;
                ++s;
            }
            sk.push_back(s);
            if (s == sk[sk.size() - 2]) break;  // saturated
        }
        for (size_t k = 1; k < sk.size(); ++k) {
            long nfac = sk[k] - sk[k - 1];
            long prev = (k + 1 < sk.size()) ? sk[k + 1] - sk[k] : 0;
            // factors with exponent exactly k: (s_k - s_{k-1}) - (s_{k+1} - s_k)
            long exact = nfac - prev;
            long pw = 1;
            for (size_t t = 0; t < k; ++t) pw *= p;
            for (long j = 0; j < exact; ++j) orders.push_back(pw);
        }
    }
    AbelianGroup g = AbelianGroup::from_cyclic_orders(orders);
    if (g.order() != order) throw std::logic_error("reconstructed group order mismatch");
    return g;
}

EnumeratedQuotient enumerate_cycles_mod_boundaries(const SAC& x, const std::vector<long>& g,
                                                  unsigned long limit) {
    if (!x.ring.is_integers) {
        long exponent = 1;
        for (long gi : g) exponent = std::lcm(exponent, gi);
        if (x.ring.n % exponent != 0)
            throw std::invalid_argument("coefficient group exponent must divide the ring modulus");
    }
    ConfigSpace circ_space(g, x.circ.size(), limit);
    ConfigSpace plus_space(g, x.plus.size(), limit);
    if (!circ_space.fits(limit) || !plus_space.fits(limit))
        throw std::length_error("enumeration oracle size guard exceeded");
    size_t r = g.size();

    // Cycles: configurations killed by every minus cell.
    std::vector<unsigned long> cycles;
    std::vector<long> cfg;
    for (unsigned long idx = 0; idx < circ_space.total; ++idx) {
        circ_space.decode(idx, cfg);
        bool ok = true;
        for (size_t mcell = 0; mcell < x.minus.size() && ok; ++mcell)
            for (size_t k = 0; k < r && ok; ++k) {
                mpz_class s = 0;
                for (size_t c = 0; c < x.circ.size(); ++c)
                    s += x.I_minus.at(c, mcell) * cfg[c * r + k];
                if (s % g[k] != 0) ok = false;
            }
        if (ok) cycles.push_back(idx);
    }

    // Boundaries: image of the plus-cell configurations.
    std::unordered_set<unsigned long> boundaries;
    std::vector<long> pcfg, image(x.circ.size() * r);
    for (unsigned long idx = 0; idx < plus_space.total; ++idx) {
        plus_space.decode(idx, pcfg);
        for (size_t c = 0; c < x.circ.size(); ++c)
            for (size_t k = 0; k < r; ++k) {
                mpz_class s = 0;
                for (size_t p = 0; p < x.plus.size(); ++p) s += x.I_plus.at(p, c) * pcfg[p * r + k];
                image[c * r + k] = mpz_class(s % g[k]).get_si();
            }
        boundaries.insert(circ_space.encode(image));
    }

    mpz_class nz = cycles.size(), nb = boundaries.size();
    if (nz % nb != 0) throw std::logic_error("boundary count does not divide cycle count");
    mpz_class order = nz / nb;

    long exponent = 1;
    for (long gi : g) exponent = std::lcm(exponent, gi);
    auto count = [&](long n) -> mpz_class {
        // elements of H = Z/B of order dividing n: {z in Z : n z in B} / |B|
        unsigned long hits = 0;
        std::vector<long> zc, nzc(x.circ.size() * r);
        for (unsigned long z : cycles) {
            circ_space.decode(z, zc);
            for (size_t i = 0; i < zc.size(); ++i) {
                size_t k = i % r;
                nzc[i] = static_cast<long>((static_cast<long long>(n) * zc[i]) % g[k]);
            }
            if (boundaries.count(circ_space.encode(nzc))) ++hits;
        }
        mpz_class h = hits;
        if (h % nb != 0) throw std::logic_error("order-divisor count not divisible by |B|");
        return h / nb;
    };
    return {order, group_from_order_counts(order, exponent, count)};
}

IntegerHomology integer_homology(const SAC& x) {
    if (!x.ring.is_integers)
        throw std::invalid_argument("integer homology requires ring Z");
    auto [bp, bm] = boundary_matrices(x);  // bp: circ x plus, bm: minus x circ
    auto kernel = integer_kernel_basis(bm);
    size_t k = kernel.size();
    IntMat kmat(x.circ.size(), k);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < x.circ.size(); ++i) kmat.at(i, j) = kernel[j][i];
    // Express each plus-boundary in kernel coordinates (always possible since
    // the kernel basis from the Smith form spans the full kernel lattice).
    IntMat coords(k, x.plus.size());
    for (size_t p = 0; p < x.plus.size(); ++p) {
        std::vector<mpz_class> col(x.circ.size());
        for (size_t i = 0; i < x.circ.size(); ++i) col[i] = bp.at(i, p);
        auto y = solve_integer(kmat, col);
        if (!y) throw std::logic_error("plus boundary not contained in the minus kernel lattice");
        for (size_t i = 0; i < k; ++i) coords.at(i, p) = (*y)[i];
    }
    auto group_of = [](const SmithForm& s, size_t ambient) {
        std::vector<long> orders;
        for (size_t i = 0; i < s.rank; ++i)
            if (s.diagonal[i] > 1) orders.push_back(s.diagonal[i].get_si());
        for (size_t i = s.rank; i < ambient; ++i) orders.push_back(0);
        return AbelianGroup::from_cyclic_orders(orders);
    };
    IntegerHomology h;
    h.middle = group_of(smith_normal_form(coords), k);
    h.lower = group_of(smith_normal_form(bm.transpose()), x.minus.size());
    return h;
}

AbelianGroup homology_group(const SAC& x, const std::vector<long>& g, HomologyMethod method,
                            unsigned long enum_limit) {
    for (long gi : g)
        if (gi < 1) throw std::invalid_argument("coefficient group must be finite");
    if (method == HomologyMethod::SmithForm ||
        (method == HomologyMethod::Auto && x.ring.is_integers)) {
        if (!x.ring.is_integers)
            throw std::invalid_argument("Smith-form homology requires ring Z");
        IntegerHomology h = integer_homology(x);
        return direct_sum(tensor_group(h.middle, g), tor_group(h.lower, g));
    }
    return enumerate_cycles_mod_boundaries(x, g, enum_limit).group;
}

// ---------------------------------------------------------------------------
// Inclusions and induced chain maps

static void check_injection(const std::vector<size_t>& m, size_t src, size_t tgt, const char* kind) {
    if (m.size() != src) throw std::invalid_argument(std::string(kind) + " map has wrong source size");
    std::vector<bool> seen(tgt, false);
    for (size_t v : m) {
        if (v >= tgt) throw std::invalid_argument(std::string(kind) + " map target index out of range");
        if (seen[v]) throw std::invalid_argument(std::string(kind) + " map is not injective");
        seen[v] = true;
    }
}

void validate_inclusion(const InclusionMap& s) {
    const SAC& x = *s.source;
    const SAC& y = *s.target;
    if (!(x.ring == y.ring)) throw std::invalid_argument("inclusion between different rings");
    check_injection(s.map_plus, x.plus.size(), y.plus.size(), "plus");
    check_injection(s.map_circ, x.circ.size(), y.circ.size(), "circ");
    check_injection(s.map_minus, x.minus.size(), y.minus.size(), "minus");
    for (size_t p = 0; p < x.plus.size(); ++p)
        for (size_t c = 0; c < x.circ.size(); ++c)
            if (x.ring.reduce(x.I_plus.at(p, c)) !=
                x.ring.reduce(y.I_plus.at(s.map_plus[p], s.map_circ[c])))
                throw std::invalid_argument("inclusion does not preserve plus incidences");
    for (size_t c = 0; c < x.circ.size(); ++c)
        for (size_t m = 0; m < x.minus.size(); ++m)
            if (x.ring.reduce(x.I_minus.at(c, m)) !=
                x.ring.reduce(y.I_minus.at(s.map_circ[c], s.map_minus[m])))
                throw std::invalid_argument("inclusion does not preserve minus incidences");
    // Closedness: cells incident to image cells must themselves be hit.
    std::vector<bool> circ_hit(y.circ.size(), false), minus_hit(y.minus.size(), false);
    for (size_t v : s.map_circ) circ_hit[v] = true;
    for (size_t v : s.map_minus) minus_hit[v] = true;
    for (size_t c = 0; c < x.circ.size(); ++c)
        for (size_t m = 0; m < y.minus.size(); ++m)
            if (!y.ring.is_zero(y.I_minus.at(s.map_circ[c], m)) && !minus_hit[m])
                throw std::invalid_argument("inclusion not closed: minus cell " + y.minus[m] +
                                            " incident to an image circ cell is missing");
    for (size_t p = 0; p < x.plus.size(); ++p)
        for (size_t c = 0; c < y.circ.size(); ++c)
            if (!y.ring.is_zero(y.I_plus.at(s.map_plus[p], c)) && !circ_hit[c])
                throw std::invalid_argument("inclusion not closed: circ cell " + y.circ[c] +
                                            " incident to an image plus cell is missing");
}

RestrictionMap make_restriction(const SAC& source, const SAC& target,
                                std::vector<size_t> map_plus_of_transpose,
                                std::vector<size_t> map_circ,
                                std::vector<size_t> map_minus_of_transpose) {
    RestrictionMap r;
    r.source_t = transpose(target);
    r.target_t = transpose(source);
    r.incl.source = &r.source_t;
    r.incl.target = &r.target_t;
    r.incl.map_plus = std::move(map_plus_of_transpose);
    r.incl.map_circ = std::move(map_circ);
    r.incl.map_minus = std::move(map_minus_of_transpose);
    validate_inclusion(r.incl);
    return r;
}

ChainMaps induced_chain_map(const InclusionMap& s) {
    validate_inclusion(s);
    const SAC& x = *s.source;
    const SAC& y = *s.target;
    ChainMaps cm{IntMat(y.plus.size(), x.plus.size()), IntMat(y.circ.size(), x.circ.size()),
                 IntMat(y.minus.size(), x.minus.size())};
    for (size_t i = 0; i < x.plus.size(); ++i) cm.on_plus.at(s.map_plus[i], i) = 1;
    for (size_t i = 0; i < x.circ.size(); ++i) cm.on_circ.at(s.map_circ[i], i) = 1;
    for (size_t i = 0; i < x.minus.size(); ++i) cm.on_minus.at(s.map_minus[i], i) = 1;
    auto [xbp, xbm] = boundary_matrices(x);
    auto [ybp, ybm] = boundary_matrices(y);
    auto equal_in_ring = [&](const IntMat& a, const IntMat& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j)
                if (x.ring.reduce(a.at(i, j)) != x.ring.reduce(b.at(i, j))) return false;
        return true;
    };
    if (!equal_in_ring(cm.on_circ * xbp, ybp * cm.on_plus) ||
        !equal_in_ring(cm.on_minus * xbm, ybm * cm.on_circ))
        throw std::logic_error("induced maps do not commute with boundaries");
    return cm;
}

}  // namespace hopfstab

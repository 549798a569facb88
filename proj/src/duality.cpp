#include "hopfstab/duality.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfstab {

// ---------------------------------------------------------------------------
// Transposition duality

CheckReport transposition_duality_check(const SAC& x, const Hopf& a, const RAction& phi,
                                        unsigned long guard) {
    CheckReport rep;
    SAC xt = transpose(x);
    Hopf av = dual(a);
    RAction phiv(av, phi.ring());
    StabilizerContext ct(xt, a, phi, guard);
    StabilizerContext cd(x, av, phiv, guard);
    if (!ct.space.fits() || !cd.space.fits()) throw SizeGuard("transposition check size guard");
    for (size_t i = 0; i < xt.plus.size(); ++i) {
        if (s_plus(ct, i) == s_minus(cd, i).transpose())
            rep.note("plus " + xt.plus[i] + ": transpose identity holds");
        else
            rep.fail("plus " + xt.plus[i] + ": transpose identity fails");
    }
    for (size_t j = 0; j < xt.minus.size(); ++j) {
        if (s_minus(ct, j) == s_plus(cd, j).transpose())
            rep.note("minus " + xt.minus[j] + ": transpose identity holds");
        else
            rep.fail("minus " + xt.minus[j] + ": transpose identity fails");
    }
    if (!(elementary_operator(ct) == elementary_operator(cd).transpose()))
        rep.fail("elementary operators are not mutual transposes");
    return rep;
}

// ---------------------------------------------------------------------------
// Barycentric dual complexes

namespace {

using Edge = std::pair<size_t, size_t>;

struct SurfaceIndex {
    std::vector<Edge> edges;                       // sorted (a < b), orientation a -> b
    std::map<Edge, size_t> edge_index;
    std::map<Edge, std::vector<size_t>> adjacent;  // edge -> the two triangles
};

Edge norm_edge(size_t a, size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

int edge_direction(const std::array<size_t, 3>& t, size_t a, size_t b) {
    for (int i = 0; i < 3; ++i) {
        size_t u = t[i], v = t[(i + 1) % 3];
        if (u == a && v == b) return 1;
        if (u == b && v == a) return -1;
    }
    return 0;
}

SurfaceIndex index_surface(const SimplicialSurface& s) {
    SurfaceIndex ix;
    for (size_t t = 0; t < s.triangles.size(); ++t)
        for (int i = 0; i < 3; ++i)
            ix.adjacent[norm_edge(s.triangles[t][i], s.triangles[t][(i + 1) % 3])].push_back(t);
    for (const auto& [e, ts] : ix.adjacent) ix.edges.push_back(e);
    std::sort(ix.edges.begin(), ix.edges.end());
    for (size_t i = 0; i < ix.edges.size(); ++i) ix.edge_index[ix.edges[i]] = i;
    return ix;
}

void add_simplex(SubdivisionChain& c, FlagSimplex key, mpz_class coeff) {
    // canonical key: sorted; dimension strictly increases along a flag, so
    // sorting never needs a permutation sign beyond the 2-swap cases below
    for (size_t i = 0; i + 1 < key.size(); ++i)
        for (size_t j = 0; j + 1 < key.size() - i; ++j)
            if (key[j] > key[j + 1]) {
                std::swap(key[j], key[j + 1]);
                coeff = -coeff;
            }
    c.coeff[key] += coeff;
    if (c.coeff[key] == 0) c.coeff.erase(key);
}

SubdivisionChain boundary(const SubdivisionChain& c) {
    SubdivisionChain b;
    for (const auto& [key, coeff] : c.coeff)
        for (size_t i = 0; i < key.size(); ++i) {
            FlagSimplex face;
            for (size_t j = 0; j < key.size(); ++j)
                if (j != i) face.push_back(key[j]);
            add_simplex(b, std::move(face), (i % 2 == 0) ? coeff : -coeff);
        }
    return b;
}

void reduce_chain(SubdivisionChain& c, const CoeffRing& r) {
    for (auto it = c.coeff.begin(); it != c.coeff.end();) {
        it->second = r.reduce(it->second);
        if (it->second == 0)
            it = c.coeff.erase(it);
        else
            ++it;
    }
}

}  // namespace

DualComplex dual_complex(const SimplicialSurface& s, const CoeffRing& r) {
    if (!is_closed_surface(s)) throw std::invalid_argument("surface is not closed");
    bool mod2 = r.is_zero(2);
    DualComplex d;
    d.ring = r;
    d.primal = cw_from_surface(s);
    SurfaceIndex ix = index_surface(s);
    size_t nv = s.vertices.size(), ne = ix.edges.size(), nt = s.triangles.size();

    // the two triangles at each edge, split by induced direction
    std::vector<size_t> t_plus(ne), t_minus(ne);
    for (size_t e = 0; e < ne; ++e) {
        auto [a, b] = ix.edges[e];
        const auto& ts = ix.adjacent[ix.edges[e]];
        int d0 = edge_direction(s.triangles[ts[0]], a, b);
        int d1 = edge_direction(s.triangles[ts[1]], a, b);
        if (!mod2 && d0 + d1 != 0)
            throw std::invalid_argument(
                "triangles are not coherently oriented; integer duality needs an orientation");
        t_plus[e] = d0 == 1 ? ts[0] : ts[1];
        t_minus[e] = d0 == 1 ? ts[1] : ts[0];
    }

    // dual-cell chains
    for (size_t t = 0; t < nt; ++t) {
        SubdivisionChain c;
        add_simplex(c, {{2, t}}, 1);
        d.chain[{2, d.primal.labels(2)[t]}] = std::move(c);
    }
    for (size_t e = 0; e < ne; ++e) {
        SubdivisionChain c;
        add_simplex(c, {{1, e}, {2, t_plus[e]}}, 1);
        add_simplex(c, {{1, e}, {2, t_minus[e]}}, -1);
        d.chain[{1, d.primal.labels(1)[e]}] = std::move(c);
    }
    for (size_t v = 0; v < nv; ++v) {
        SubdivisionChain c;
        for (size_t t = 0; t < nt; ++t) {
            const auto& tri = s.triangles[t];
            for (int i = 0; i < 3; ++i) {
                if (tri[i] != v) continue;
                size_t nxt = tri[(i + 1) % 3], prv = tri[(i + 2) % 3];
                add_simplex(c, {{0, v}, {1, ix.edge_index[norm_edge(v, nxt)]}, {2, t}}, 1);
                add_simplex(c, {{0, v}, {1, ix.edge_index[norm_edge(v, prv)]}, {2, t}}, -1);
            }
        }
        d.chain[{0, s.vertices[v]}] = std::move(c);
    }

    // labels: dual of primal cell "c" is "c^", dimension flipped
    CWComplex& cw = d.cw;
    auto link = [&](int q, const std::string& primal_label_) {
        std::string dl = primal_label_ + "^";
        cw.cells[2 - q].push_back(dl);
        d.dual_label[{q, primal_label_}] = dl;
        d.primal_label[dl] = {q, primal_label_};
    };
    for (size_t t = 0; t < nt; ++t) link(2, d.primal.labels(2)[t]);
    for (size_t e = 0; e < ne; ++e) link(1, d.primal.labels(1)[e]);
    for (size_t v = 0; v < nv; ++v) link(0, s.vertices[v]);
    cw.basepoint = cw.cells[0].front();

    // incidence of dual 1-cells over dual 0-cells: boundary crosses from the
    // negative-side barycenter to the positive-side one
    IntMat d1(nt, ne);
    for (size_t e = 0; e < ne; ++e) {
        d1.at(t_plus[e], e) += 1;
        d1.at(t_minus[e], e) += r.reduce(-1);
    }
    cw.incidence[1] = std::move(d1);

    // incidence of dual 2-cells over dual 1-cells: decompose each boundary
    // chain into the dual edge chains and verify the remainder vanishes
    IntMat d2(ne, nv);
    for (size_t v = 0; v < nv; ++v) {
        SubdivisionChain b = boundary(d.chain.at({0, s.vertices[v]}));
        for (size_t e = 0; e < ne; ++e) {
            if (ix.edges[e].first != v && ix.edges[e].second != v) continue;
            auto coeff_of = [&](size_t t) {
                auto it = b.coeff.find(FlagSimplex{{1, e}, {2, t}});
                return it == b.coeff.end() ? mpz_class(0) : it->second;
            };
            // lambda kills the positive-side probe; fall back to the negative
            // side (entering D(e) with coefficient -1) when that one is absent
            mpz_class lambda = coeff_of(t_plus[e]);
            if (lambda == 0) lambda = -coeff_of(t_minus[e]);
            if (lambda == 0) continue;
            d2.at(e, v) = r.reduce(lambda);
            for (const auto& [key, coeff] : d.chain.at({1, d.primal.labels(1)[e]}).coeff)
                add_simplex(b, key, -lambda * coeff);
        }
        reduce_chain(b, r);
        if (!b.coeff.empty())
            throw std::logic_error("dual 2-cell boundary is not a sum of dual edges at vertex " +
                                   s.vertices[v]);
    }
    cw.incidence[2] = std::move(d2);

    auto val = validate_cw(cw, r);
    if (!val.ok) throw std::logic_error("dual complex invalid: " + val.message);
    return d;
}

std::vector<FlagSimplex> supplement_top_flags(const SimplicialSurface& s, const CWComplex& primal,
                                              const CellSet& k) {
    SurfaceIndex ix = index_surface(s);
    std::vector<FlagSimplex> out;
    for (size_t t = 0; t < s.triangles.size(); ++t) {
        if (k.count({2, primal.labels(2)[t]})) continue;
        const auto& tri = s.triangles[t];
        for (int i = 0; i < 3; ++i) {
            size_t a = tri[i], b = tri[(i + 1) % 3];
            size_t e = ix.edge_index[norm_edge(a, b)];
            if (k.count({1, primal.labels(1)[e]})) continue;
            for (size_t v : {a, b})
                if (!k.count({0, primal.labels(0)[v]})) out.push_back({{0, v}, {1, e}, {2, t}});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CellSet closed_star(const CWComplex& k, const std::string& vertex) {
    int md = k.max_dim();
    // upward: cells whose closure contains the vertex
    std::map<int, std::vector<bool>> touches;
    touches[0].assign(k.count(0), false);
    touches[0][k.index_of(0, vertex)] = true;
    for (int q = 1; q <= md; ++q) {
        touches[q].assign(k.count(q), false);
        for (size_t c = 0; c < k.count(q); ++c)
            for (size_t f = 0; f < k.count(q - 1); ++f)
                if (k.inc(q, f, c) != 0 && touches[q - 1][f]) touches[q][c] = true;
    }
    CellSet star;
    for (int q = 0; q <= md; ++q)
        for (size_t c = 0; c < k.count(q); ++c)
            if (touches[q][c]) star.insert({q, k.labels(q)[c]});
    // downward closure
    for (int q = md; q >= 1; --q)
        for (size_t c = 0; c < k.count(q); ++c) {
            if (!star.count({q, k.labels(q)[c]})) continue;
            for (size_t f = 0; f < k.count(q - 1); ++f)
                if (k.inc(q, f, c) != 0) star.insert({q - 1, k.labels(q - 1)[f]});
        }
    return star;
}

// ---------------------------------------------------------------------------
// Degree-complementary duality of slices

namespace {

bool equal_in_ring(const IntMat& a, const IntMat& b, const CoeffRing& r) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (r.reduce(a.at(i, j)) != r.reduce(b.at(i, j))) return false;
    return true;
}

// Sign-consistency solve: nodes are cells, constraints s_row * s_col = rel.
struct SignSolver {
    std::vector<int> sign;          // 0 unassigned, else +-1
    std::vector<std::vector<std::pair<size_t, int>>> adj;
    explicit SignSolver(size_t n) : sign(n, 0), adj(n) {}
    void constrain(size_t u, size_t v, int rel) {
        adj[u].push_back({v, rel});
        adj[v].push_back({u, rel});
    }
    bool solve() {
        for (size_t seed = 0; seed < sign.size(); ++seed) {
            if (sign[seed] != 0) continue;
            sign[seed] = 1;
            std::vector<size_t> queue{seed};
            while (!queue.empty()) {
                size_t u = queue.back();
                queue.pop_back();
                for (auto [v, rel] : adj[u]) {
                    int want = sign[u] * rel;
                    if (sign[v] == 0) {
                        sign[v] = want;
                        queue.push_back(v);
                    } else if (sign[v] != want)
                        return false;
                }
            }
        }
        return true;
    }
};

IntMat scale_rows_cols(const IntMat& m, const std::vector<int>& row_s,
                       const std::vector<int>& col_s) {
    IntMat out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j) * row_s[i] * col_s[j];
    return out;
}

}  // namespace

PDReport pd_sac_check(const SimplicialSurface& s, const CellSet& l, const CellSet& k, int q,
                      const CoeffRing& ring) {
    PDReport rep;
    DualComplex dc = dual_complex(s, ring);
    const CWComplex& m = dc.primal;
    for (const auto& c : k)
        if (!l.count(c)) {
            rep.fail("inner subcomplex is not contained in the outer one");
            return rep;
        }
    if (!is_subcomplex(m, l) || !is_subcomplex(m, k)) {
        rep.fail("given cell sets are not subcomplexes of the surface");
        return rep;
    }

    // primal side: transposed slice of (l, k) in complementary degree
    SAC x = xi_q(restrict_cw(m, l), k, 2 - q, ring);
    SAC xt = transpose(x);

    // dual side: slice of (duals outside k, duals outside l)
    auto star_set = [&](const CellSet& sub) {
        CellSet out;
        for (const auto& [dim, label] : all_cells(m))
            if (!sub.count({dim, label})) out.insert({2 - dim, dc.dual_label.at({dim, label})});
        return out;
    };
    CellSet kstar = star_set(k), lstar = star_set(l);
    SAC y = xi_q(restrict_cw(dc.cw, kstar), lstar, q, ring);
    rep.dual_slice = y;

    // align the transposed primal slice to the dual-label ordering of y
    auto align = [&](const std::vector<std::string>& primal_cells, int primal_dim,
                     const std::vector<std::string>& dual_cells,
                     std::vector<size_t>& perm) -> bool {
        if (primal_cells.size() != dual_cells.size()) return false;
        perm.resize(dual_cells.size());
        for (size_t i = 0; i < dual_cells.size(); ++i) {
            auto it = dc.primal_label.find(dual_cells[i]);
            if (it == dc.primal_label.end() || it->second.first != primal_dim) return false;
            auto pos = std::find(primal_cells.begin(), primal_cells.end(), it->second.second);
            if (pos == primal_cells.end()) return false;
            perm[i] = static_cast<size_t>(pos - primal_cells.begin());
        }
        return true;
    };
    std::vector<size_t> pp, pc, pm;
    if (!align(xt.plus, 1 - q, y.plus, pp) || !align(xt.circ, 2 - q, y.circ, pc) ||
        !align(xt.minus, 3 - q, y.minus, pm)) {
        rep.fail("dual slice cells do not correspond to the complementary primal cells");
        return rep;
    }
    SAC aligned = SAC::empty(ring);
    aligned.plus = y.plus;
    aligned.circ = y.circ;
    aligned.minus = y.minus;
    aligned.I_plus = IntMat(y.plus.size(), y.circ.size());
    for (size_t i = 0; i < y.plus.size(); ++i)
        for (size_t j = 0; j < y.circ.size(); ++j)
            aligned.I_plus.at(i, j) = xt.I_plus.at(pp[i], pc[j]);
    aligned.I_minus = IntMat(y.circ.size(), y.minus.size());
    for (size_t i = 0; i < y.circ.size(); ++i)
        for (size_t j = 0; j < y.minus.size(); ++j)
            aligned.I_minus.at(i, j) = xt.I_minus.at(pc[i], pm[j]);
    rep.primal_t = aligned;

    size_t np = y.plus.size(), nc = y.circ.size(), nm = y.minus.size();
    bool mod2 = ring.is_zero(2);
    std::vector<int> sp(np, 1), sc(nc, 1), sm(nm, 1);
    if (mod2) {
        if (!equal_in_ring(y.I_plus, aligned.I_plus, ring) ||
            !equal_in_ring(y.I_minus, aligned.I_minus, ring)) {
            rep.fail("mod-2 incidences disagree");
            return rep;
        }
    } else {
        // absolute values must agree outright; signs are the only freedom
        SignSolver solver(np + nc + nm);
        auto abs_and_constrain = [&](const IntMat& have, const IntMat& want, size_t row_base,
                                     size_t col_base) -> bool {
            for (size_t i = 0; i < have.rows(); ++i)
                for (size_t j = 0; j < have.cols(); ++j) {
                    if (abs(have.at(i, j)) != abs(want.at(i, j))) return false;
                    if (have.at(i, j) == 0) continue;
                    int rel = (have.at(i, j) == want.at(i, j)) ? 1 : -1;
                    solver.constrain(row_base + i, col_base + j, rel);
                }
            return true;
        };
        if (!abs_and_constrain(y.I_plus, aligned.I_plus, 0, np) ||
            !abs_and_constrain(y.I_minus, aligned.I_minus, np, np + nc)) {
            rep.fail("absolute incidence values disagree");
            return rep;
        }
        if (!solver.solve()) {
            rep.fail("no sign reorientation realizes the isomorphism");
            return rep;
        }
        for (size_t i = 0; i < np; ++i) sp[i] = solver.sign[i];
        for (size_t i = 0; i < nc; ++i) sc[i] = solver.sign[np + i];
        for (size_t i = 0; i < nm; ++i) sm[i] = solver.sign[np + nc + i];
    }
    for (size_t i = 0; i < np; ++i) rep.plus_signs[y.plus[i]] = sp[i];
    for (size_t i = 0; i < nc; ++i) rep.circ_signs[y.circ[i]] = sc[i];
    for (size_t i = 0; i < nm; ++i) rep.minus_signs[y.minus[i]] = sm[i];

    SAC reo = y;
    reo.I_plus = scale_rows_cols(y.I_plus, sp, sc);
    reo.I_minus = scale_rows_cols(y.I_minus, sc, sm);
    rep.reoriented = reo;
    if (!equal_in_ring(reo.I_plus, aligned.I_plus, ring) ||
        !equal_in_ring(reo.I_minus, aligned.I_minus, ring)) {
        rep.fail("reoriented incidences still disagree");
        return rep;
    }
    rep.note("isomorphism found: " + std::to_string(np) + " plus, " + std::to_string(nc) +
             " circ, " + std::to_string(nm) + " minus cells matched");
    return rep;
}

CheckReport pd_operator_check(const SimplicialSurface& s, const CellSet& l, const CellSet& k,
                              int q, const Hopf& a, const RAction& phi, unsigned long guard) {
    CheckReport rep;
    PDReport pd = pd_sac_check(s, l, k, q, phi.ring());
    if (!pd.ok) {
        for (const auto& m : pd.messages) rep.fail(m);
        return rep;
    }
    StabilizerContext cy(pd.dual_slice, a, phi, guard);
    StabilizerContext cy2(pd.reoriented, a, phi, guard);
    if (!cy.space.fits()) throw SizeGuard("dual-slice operators exceed the size guard");

    // conjugator: antipode on every sign-flipped tensor leg
    std::vector<Mat> legs;
    bool any_flip = false;
    for (const auto& c : pd.dual_slice.circ) {
        bool flip = pd.circ_signs.at(c) == -1;
        any_flip = any_flip || flip;
        legs.push_back(flip ? a.antipode : Mat::identity(a.n, a.field));
    }
    SparseOp t = legs.empty() ? SparseOp::identity(1, a.field) : kron_op(legs, guard);

    for (size_t i = 0; i < pd.dual_slice.plus.size(); ++i)
        if (!(s_plus(cy, i) == t.compose(s_plus(cy2, i)).compose(t)))
            rep.fail("plus " + pd.dual_slice.plus[i] + ": reorientation conjugation fails");
    for (size_t j = 0; j < pd.dual_slice.minus.size(); ++j)
        if (!(s_minus(cy, j) == t.compose(s_minus(cy2, j)).compose(t)))
            rep.fail("minus " + pd.dual_slice.minus[j] + ": reorientation conjugation fails");

    // transposition duality on the reoriented slice closes the square
    SAC reo_t = transpose(pd.reoriented);
    CheckReport trans = transposition_duality_check(reo_t, a, phi, guard);
    if (!trans.ok) {
        for (const auto& m : trans.messages) rep.fail("transposition leg: " + m);
        return rep;
    }

    Hopf av = dual(a);
    RAction phiv(av, phi.ring());
    StabilizerContext cx(reo_t, av, phiv, guard);
    SparseOp lhs = elementary_operator(cy);
    SparseOp rhs = t.compose(elementary_operator(cx).transpose()).compose(t);
    if (lhs == rhs)
        rep.note("elementary operators are exact conjugate transposes");
    else
        rep.fail("elementary operator conjugation fails");

    auto sy = joint_spectrum(cy);
    auto sx = joint_spectrum(cx);
    bool same = sy.entries.size() == sx.entries.size();
    for (size_t i = 0; same && i < sy.entries.size(); ++i)
        same = sy.entries[i].violations == sx.entries[i].violations &&
               sy.entries[i].dimension == sx.entries[i].dimension;
    if (same) {
        rep.note("joint-spectrum dimension profiles coincide; ground dims " +
                 std::to_string(sy.entries.empty() ? 0 : sy.entries.front().dimension) +
                 " on both sides");
    } else
        rep.fail("joint-spectrum dimension profiles differ");
    return rep;
}

}  // namespace hopfstab

#include "hopfstab/integrals.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfstab {

namespace {

// Matrix of left multiplication v -> x * v.
Mat left_mult(const Hopf& a, const std::vector<Scalar>& x) {
    Mat l(a.n, a.n, a.field);
    for (size_t i = 0; i < a.n; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < a.n; ++j)
            for (const auto& [k, c] : a.mult_sparse(i, j)) l.at(k, j) += x[i] * c;
    }
    return l;
}

// Matrix of right multiplication v -> v * x.
Mat right_mult(const Hopf& a, const std::vector<Scalar>& x) {
    Mat r(a.n, a.n, a.field);
    for (size_t j = 0; j < a.n; ++j)
        for (size_t i = 0; i < a.n; ++i) {
            if (x[i].is_zero()) continue;
            for (const auto& [k, c] : a.mult_sparse(j, i)) r.at(k, j) += x[i] * c;
        }
    return r;
}

std::vector<Scalar> basis_vec(const FieldSpec& f, size_t n, size_t i) {
    std::vector<Scalar> v(n, Scalar::zero(f));
    v[i] = Scalar::one(f);
    return v;
}

}  // namespace

std::vector<std::string> hopf_hom_violations(const HopfHom& xi) {
    std::vector<std::string> bad;
    const Hopf& a = xi.source;
    const Hopf& b = xi.target;
    const Mat& x = xi.matrix;
    if (a.field != b.field) {
        bad.push_back("source and target fields differ");
        return bad;
    }
    if (x.rows() != b.n || x.cols() != a.n) {
        bad.push_back("matrix shape does not match the algebras");
        return bad;
    }
    const FieldSpec& f = a.field;
    if (x.apply(a.unit_v) != b.unit_v) bad.push_back("unit is not preserved");
    for (size_t i = 0; i < a.n; ++i) {
        Scalar e = Scalar::zero(f);
        for (size_t k = 0; k < b.n; ++k) e += b.counit_v[k] * x.at(k, i);
        if (e != a.counit_v[i]) {
            bad.push_back("counit is not preserved on basis vector " + std::to_string(i));
            break;
        }
    }
    for (size_t i = 0; i < a.n && bad.size() < 8; ++i)
        for (size_t j = 0; j < a.n; ++j) {
            std::vector<Scalar> prod(a.n, Scalar::zero(f));
            for (const auto& [k, c] : a.mult_sparse(i, j)) prod[k] += c;
            auto lhs = x.apply(prod);
            auto rhs = b.mul_vec(x.column(i), x.column(j));
            if (lhs != rhs) {
                bad.push_back("multiplication is not preserved at basis pair (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
                break;
            }
        }
    for (size_t i = 0; i < a.n && bad.size() < 8; ++i) {
        // Delta_B(x e_i) vs (x (x) x) Delta_A(e_i), as n_B x n_B coefficient grids
        Mat lhs = b.comult_mat(x.column(i));
        Mat rhs(b.n, b.n, f);
        for (const auto& [l1, l2, c] : a.comult_sparse(i))
            for (size_t u = 0; u < b.n; ++u) {
                if (x.at(u, l1).is_zero()) continue;
                for (size_t v = 0; v < b.n; ++v) rhs.at(u, v) += c * x.at(u, l1) * x.at(v, l2);
            }
        if (!(lhs == rhs)) {
            bad.push_back("comultiplication is not preserved at basis vector " + std::to_string(i));
            break;
        }
    }
    if (!(x * a.antipode == b.antipode * x)) bad.push_back("antipodes do not commute");
    return bad;
}

Mat integral_along(const HopfHom& xi) {
    auto viol = hopf_hom_violations(xi);
    if (!viol.empty())
        throw std::invalid_argument("not a Hopf homomorphism: " + viol.front());
    const Hopf& a = xi.source;
    const Hopf& b = xi.target;
    const Mat& x = xi.matrix;
    const FieldSpec& f = a.field;
    size_t na = a.n, nb = b.n;
    size_t unknowns = na * nb;  // mu(i, j), column-major in j: u = i * nb + j
    auto u = [&](size_t i, size_t j) { return i * nb + j; };

    std::vector<std::vector<Scalar>> rows;  // homogeneous part (integral conditions)
    auto new_row = [&]() -> std::vector<Scalar>& {
        rows.emplace_back(unknowns, Scalar::zero(f));
        return rows.back();
    };

    // module absorption: P mu = mu Q for the four (left/right) x (A/B) pairs
    auto add_commutation = [&](const Mat& p, const Mat& q) {
        for (size_t r = 0; r < na; ++r)
            for (size_t c = 0; c < nb; ++c) {
                auto& row = new_row();
                for (size_t i = 0; i < na; ++i) row[u(i, c)] += p.at(r, i);
                for (size_t j = 0; j < nb; ++j) row[u(r, j)] -= q.at(j, c);
            }
    };
    for (size_t p = 0; p < na; ++p) {
        auto xp = x.column(p);
        add_commutation(right_mult(a, basis_vec(f, na, p)), right_mult(b, xp));
        add_commutation(left_mult(a, basis_vec(f, na, p)), left_mult(b, xp));
    }

    // comodule absorption, right: mu(b^(1)) (x) b^(2) = mu(b)^(1) (x) xi(mu(b)^(2))
    for (size_t q = 0; q < nb; ++q)
        for (size_t i = 0; i < na; ++i)
            for (size_t j = 0; j < nb; ++j) {
                auto& row = new_row();
                for (const auto& [l1, l2, c] : b.comult_sparse(q))
                    if (l2 == j) row[u(i, l1)] += c;
                for (size_t k = 0; k < na; ++k) {
                    Scalar s = Scalar::zero(f);
                    for (const auto& [m1, m2, d] : a.comult_sparse(k))
                        if (m1 == i) s += d * x.at(j, m2);
                    row[u(k, q)] -= s;
                }
            }

    // comodule absorption, left: b^(1) (x) mu(b^(2)) = xi(mu(b)^(1)) (x) mu(b)^(2)
    for (size_t q = 0; q < nb; ++q)
        for (size_t j = 0; j < nb; ++j)
            for (size_t i = 0; i < na; ++i) {
                auto& row = new_row();
                for (const auto& [l1, l2, c] : b.comult_sparse(q))
                    if (l1 == j) row[u(i, l2)] += c;
                for (size_t k = 0; k < na; ++k) {
                    Scalar s = Scalar::zero(f);
                    for (const auto& [m1, m2, d] : a.comult_sparse(k))
                        if (m2 == i) s += d * x.at(j, m1);
                    row[u(k, q)] -= s;
                }
            }

    size_t integral_rows = rows.size();

    // normalization: xi mu xi = xi (the only inhomogeneous block)
    std::vector<Scalar> rhs_tail;
    for (size_t r = 0; r < nb; ++r)
        for (size_t c = 0; c < na; ++c) {
            auto& row = new_row();
            for (size_t i = 0; i < na; ++i) {
                if (x.at(r, i).is_zero()) continue;
                for (size_t j = 0; j < nb; ++j) row[u(i, j)] += x.at(r, i) * x.at(j, c);
            }
            rhs_tail.push_back(x.at(r, c));
        }

    Mat sys(rows.size(), unknowns, f);
    Mat rhs(rows.size(), 1, f);
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t cidx = 0; cidx < unknowns; ++cidx) sys.at(r, cidx) = rows[r][cidx];
        if (r >= integral_rows) rhs.at(r, 0) = rhs_tail[r - integral_rows];
    }
    auto sol = sys.solve(rhs);
    if (!sol) throw std::runtime_error("no normalized integral along the homomorphism exists");
    Mat mu(na, nb, f);
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < nb; ++j) mu.at(i, j) = sol->at(u(i, j), 0);

    // generator property against the full space of integrals along xi
    Mat hom(integral_rows, unknowns, f);
    for (size_t r = 0; r < integral_rows; ++r)
        for (size_t cidx = 0; cidx < unknowns; ++cidx) hom.at(r, cidx) = rows[r][cidx];
    Mat xm = x * mu;   // nb x nb
    Mat mx = mu * x;   // na x na
    for (const auto& vec : hom.kernel_basis()) {
        Mat mp(na, nb, f);
        for (size_t i = 0; i < na; ++i)
            for (size_t j = 0; j < nb; ++j) mp.at(i, j) = vec[u(i, j)];
        if (!(mp * xm == mp) || !(mx * mp == mp))
            throw std::runtime_error("solved normalized integral is not a generator");
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Group-algebra homomorphisms

size_t group_index(const std::vector<long>& factors, const std::vector<long>& g) {
    if (g.size() != factors.size()) throw std::invalid_argument("coordinate count mismatch");
    size_t idx = 0;
    for (size_t k = factors.size(); k-- > 0;) {
        long r = ((g[k] % factors[k]) + factors[k]) % factors[k];
        idx = idx * static_cast<size_t>(factors[k]) + static_cast<size_t>(r);
    }
    return idx;
}

std::vector<long> group_element(const std::vector<long>& factors, size_t idx) {
    std::vector<long> g(factors.size());
    for (size_t k = 0; k < factors.size(); ++k) {
        g[k] = static_cast<long>(idx % static_cast<size_t>(factors[k]));
        idx /= static_cast<size_t>(factors[k]);
    }
    return g;
}

namespace {

// f applied to the element with the given source index.
size_t apply_group_hom(const std::vector<long>& src, const std::vector<long>& dst,
                       const std::vector<std::vector<long>>& images, size_t idx) {
    auto g = group_element(src, idx);
    std::vector<long> out(dst.size(), 0);
    for (size_t k = 0; k < src.size(); ++k)
        for (size_t t = 0; t < dst.size(); ++t)
            out[t] = (out[t] + g[k] * images[k][t]) % dst[t];
    return group_index(dst, out);
}

void check_group_hom(const std::vector<long>& src, const std::vector<long>& dst,
                     const std::vector<std::vector<long>>& images) {
    if (images.size() != src.size())
        throw std::invalid_argument("one generator image per source factor required");
    for (size_t k = 0; k < src.size(); ++k) {
        if (images[k].size() != dst.size())
            throw std::invalid_argument("generator image has wrong coordinate count");
        for (size_t t = 0; t < dst.size(); ++t)
            if ((src[k] * images[k][t]) % dst[t] != 0)
                throw std::invalid_argument("generator image order does not divide the source order");
    }
}

}  // namespace

HopfHom group_hom(const std::vector<long>& src_factors, const std::vector<long>& dst_factors,
                  const std::vector<std::vector<long>>& generator_images, const FieldSpec& field) {
    check_group_hom(src_factors, dst_factors, generator_images);
    HopfHom h{make_group_hopf(src_factors, field), make_group_hopf(dst_factors, field), Mat()};
    h.matrix = Mat(h.target.n, h.source.n, field);
    for (size_t i = 0; i < h.source.n; ++i)
        h.matrix.at(apply_group_hom(src_factors, dst_factors, generator_images, i), i) =
            Scalar::one(field);
    return h;
}

Mat fiber_average_matrix(const std::vector<long>& src_factors,
                         const std::vector<long>& dst_factors,
                         const std::vector<std::vector<long>>& generator_images,
                         const FieldSpec& field) {
    check_group_hom(src_factors, dst_factors, generator_images);
    size_t na = 1, nb = 1;
    for (long m : src_factors) na *= static_cast<size_t>(m);
    for (long m : dst_factors) nb *= static_cast<size_t>(m);
    std::vector<std::vector<size_t>> fiber(nb);
    for (size_t i = 0; i < na; ++i)
        fiber[apply_group_hom(src_factors, dst_factors, generator_images, i)].push_back(i);
    Mat mu(na, nb, field);
    for (size_t h = 0; h < nb; ++h) {
        if (fiber[h].empty()) continue;
        Scalar w = Scalar::from_int(field, static_cast<long>(fiber[h].size())).inv();
        for (size_t g : fiber[h]) mu.at(g, h) = w;
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Ground Hopf algebras of subcomplexes

GroundModel ground_model(const CWComplex& m, const CellSet& cells, int q, const Hopf& a,
                         const RAction& phi, unsigned long guard) {
    if (!is_subcomplex(m, cells))
        throw std::invalid_argument("given cells do not span a subcomplex");
    if (!cells.count({0, m.basepoint}))
        throw std::invalid_argument("subcomplex does not contain the basepoint");
    GroundModel gm;
    CWComplex sub = restrict_cw(m, cells);
    gm.slice = xi_q(sub, basepoint_only(sub), q, phi.ring());
    StabilizerContext ctx(gm.slice, a, phi, guard);
    GroundSpace gs = ground_space(ctx, guard);
    gm.hopf = ground_hopf(ctx, gs);
    return gm;
}

HopfHom induced_ground_hom(const GroundModel& sub, const GroundModel& sup, const Hopf& a,
                           const RAction& phi, unsigned long guard) {
    StabilizerContext csub(sub.slice, a, phi, guard);
    StabilizerContext csup(sup.slice, a, phi, guard);
    const FieldSpec& f = a.field;
    // position of each tensor leg of the larger slice inside the smaller one
    std::vector<long> src_leg(sup.slice.circ.size(), -1);
    for (size_t i = 0; i < sub.slice.circ.size(); ++i) {
        auto it = std::find(sup.slice.circ.begin(), sup.slice.circ.end(), sub.slice.circ[i]);
        if (it == sup.slice.circ.end())
            throw std::invalid_argument("inclusion does not cover a middle cell: " +
                                        sub.slice.circ[i]);
        src_leg[static_cast<size_t>(it - sup.slice.circ.begin())] = static_cast<long>(i);
    }
    auto ops = all_stabilizers(csup);
    size_t dsub = sub.hopf.space.basis.cols();
    size_t dsup = sup.hopf.space.basis.cols();
    Mat e(dsup, dsub, f);
    std::vector<size_t> digits;
    for (size_t col = 0; col < dsub; ++col) {
        std::vector<Scalar> w(csup.space.total, Scalar::zero(f));
        for (unsigned long p = 0; p < csub.space.total; ++p) {
            const Scalar& vp = sub.hopf.space.basis.at(p, col);
            if (vp.is_zero()) continue;
            csub.space.decode(p, digits);
            // extend by the unit of the coefficient algebra on the new legs
            std::vector<std::pair<unsigned long, Scalar>> acc{{0, vp}};
            for (size_t t = 0; t < csup.space.m; ++t) {
                std::vector<std::pair<unsigned long, Scalar>> next;
                if (src_leg[t] >= 0) {
                    size_t d = digits[static_cast<size_t>(src_leg[t])];
                    for (auto& [idx, c] : acc) next.push_back({idx * a.n + d, c});
                } else {
                    for (auto& [idx, c] : acc)
                        for (size_t r = 0; r < a.n; ++r)
                            if (!a.unit_v[r].is_zero())
                                next.push_back({idx * a.n + r, c * a.unit_v[r]});
                }
                acc = std::move(next);
            }
            for (const auto& [idx, c] : acc) w[idx] += c;
        }
        for (const auto& s : ops) w = s.apply_dense(w);
        auto coords = sup.hopf.space.coords(w);
        for (size_t r = 0; r < dsup; ++r) e.at(r, col) = coords[r];
    }
    HopfHom h{sub.hopf.hopf, sup.hopf.hopf, std::move(e)};
    auto bad = hopf_hom_violations(h);
    if (!bad.empty())
        throw std::logic_error("induced map is not a Hopf homomorphism: " + bad.front());
    return h;
}

Cospan make_cospan(const CWComplex& m, const CellSet& k0, const CellSet& k1, const CellSet& l,
                   int q, const Hopf& a, const RAction& phi, unsigned long guard) {
    for (const auto& c : k0)
        if (!l.count(c)) throw std::invalid_argument("left arm is not contained in the ambient");
    for (const auto& c : k1)
        if (!l.count(c)) throw std::invalid_argument("right arm is not contained in the ambient");
    Cospan out;
    out.k0 = ground_model(m, k0, q, a, phi, guard);
    out.k1 = ground_model(m, k1, q, a, phi, guard);
    out.l = ground_model(m, l, q, a, phi, guard);
    out.e0 = induced_ground_hom(out.k0, out.l, a, phi, guard);
    out.e1 = induced_ground_hom(out.k1, out.l, a, phi, guard);
    return out;
}

Mat path_integral(const Cospan& c) { return integral_along(c.e1) * c.e0.matrix; }

CompositionReport composition_scalar(const CWComplex& m, const CellSet& k0, const CellSet& k1,
                                     const CellSet& k2, const CellSet& l0, const CellSet& l1,
                                     int q, const Hopf& a, const RAction& phi,
                                     unsigned long guard) {
    // the glued ambient is the pushout of the inclusions exactly when the two
    // ambients meet in the middle complex
    CellSet glued;
    for (const auto& c : l0) {
        if (l1.count(c) && !k1.count(c))
            throw std::invalid_argument("ambients intersect outside the middle complex");
        glued.insert(c);
    }
    for (const auto& c : k1)
        if (!l0.count(c) || !l1.count(c))
            throw std::invalid_argument("middle complex is not contained in both ambients");
    for (const auto& c : l1) glued.insert(c);

    Cospan c0 = make_cospan(m, k0, k1, l0, q, a, phi, guard);
    Cospan c1 = make_cospan(m, k1, k2, l1, q, a, phi, guard);
    Cospan cc = make_cospan(m, k0, k2, glued, q, a, phi, guard);

    CompositionReport rep;
    rep.composite_of_paths = path_integral(c1) * path_integral(c0);
    rep.path_of_composite = path_integral(cc);
    const Mat& lhs = rep.composite_of_paths;
    const Mat& rhs = rep.path_of_composite;
    const FieldSpec& f = a.field;
    Scalar lambda = Scalar::zero(f);
    for (size_t i = 0; i < rhs.rows() && lambda.is_zero(); ++i)
        for (size_t j = 0; j < rhs.cols(); ++j)
            if (!rhs.at(i, j).is_zero()) {
                lambda = lhs.at(i, j) / rhs.at(i, j);
                break;
            }
    if (lambda.is_zero()) throw std::runtime_error("composition scalar vanishes");
    if (!(lhs == rhs.scaled(lambda)))
        throw std::runtime_error("composed path-integrals are not proportional");
    rep.lambda = lambda;

    rep.right_arm_epi = c1.e1.matrix.rank() == c1.l.hopf.hopf.n;
    HopfHom j2 = induced_ground_hom(c1.l, cc.l, a, phi, guard);
    rep.glued_arm_mono = j2.matrix.rank() == c1.l.hopf.hopf.n;
    if ((rep.right_arm_epi || rep.glued_arm_mono) && !lambda.is_one())
        throw std::logic_error("composition scalar differs from 1 despite epi/mono arm");
    return rep;
}

}  // namespace hopfstab

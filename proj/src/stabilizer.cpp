#include "hopfstab/stabilizer.hpp"

#include <algorithm>
#include <numeric>

namespace hopfstab {

TensorSpace::TensorSpace(size_t dim_a, size_t cells, unsigned long guard) : d(dim_a), m(cells) {
    for (size_t i = 0; i < m; ++i) {
        if (total > guard / d + 1) {
            total = SATURATED;
            return;
        }
        total *= d;
    }
    if (total > guard) total = SATURATED;
}

void TensorSpace::decode(unsigned long idx, std::vector<size_t>& out) const {
    out.resize(m);
    for (size_t i = m; i-- > 0;) {
        out[i] = idx % d;
        idx /= d;
    }
}

unsigned long TensorSpace::encode(const std::vector<size_t>& digits) const {
    unsigned long idx = 0;
    for (size_t i = 0; i < m; ++i) idx = idx * d + digits[i];
    return idx;
}

// ---------------------------------------------------------------------------
// SparseOp

SparseOp SparseOp::identity(unsigned long n, const FieldSpec& f) {
    SparseOp s(n, f);
    for (unsigned long j = 0; j < n; ++j) s.cols_[j].push_back({j, Scalar::one(f)});
    return s;
}

void SparseOp::canonicalize() {
    for (auto& c : cols_) {
        std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<unsigned long, Scalar>> out;
        for (auto& [i, v] : c) {
            if (!out.empty() && out.back().first == i)
                out.back().second += v;
            else
                out.push_back({i, v});
        }
        std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
        c = std::move(out);
    }
}

SparseOp::SparseVec SparseOp::apply(const SparseVec& v) const {
    SparseVec r;
    for (const auto& [j, c] : v)
        for (const auto& [i, m] : cols_[j]) {
            auto it = r.find(i);
            if (it == r.end())
                r.emplace(i, c * m);
            else {
                it->second += c * m;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

std::vector<Scalar> SparseOp::apply_dense(const std::vector<Scalar>& v) const {
    std::vector<Scalar> r(n_, Scalar::zero(fs_));
    for (unsigned long j = 0; j < n_; ++j) {
        if (v[j].is_zero()) continue;
        for (const auto& [i, m] : cols_[j]) r[i] += v[j] * m;
    }
    return r;
}

Mat SparseOp::apply_mat(const Mat& b) const {
    Mat r(n_, b.cols(), fs_);
    for (unsigned long j = 0; j < n_; ++j)
        for (const auto& [i, m] : cols_[j])
            for (size_t k = 0; k < b.cols(); ++k) {
                const Scalar& x = b.at(j, k);
                if (!x.is_zero()) r.at(i, k) += m * x;
            }
    return r;
}

SparseOp SparseOp::compose(const SparseOp& inner) const {
    SparseOp r(n_, fs_);
    for (unsigned long j = 0; j < n_; ++j) {
        SparseVec v;
        for (const auto& [k, c] : inner.cols_[j])
            for (const auto& [i, m] : cols_[k]) {
                auto it = v.find(i);
                if (it == v.end())
                    v.emplace(i, c * m);
                else
                    it->second += c * m;
            }
        for (auto& [i, c] : v)
            if (!c.is_zero()) r.cols_[j].push_back({i, c});
    }
    return r;
}

SparseOp SparseOp::operator+(const SparseOp& o) const {
    SparseOp r = *this;
    for (unsigned long j = 0; j < n_; ++j)
        r.cols_[j].insert(r.cols_[j].end(), o.cols_[j].begin(), o.cols_[j].end());
    r.canonicalize();
    return r;
}

SparseOp SparseOp::operator-(const SparseOp& o) const {
    SparseOp neg = o;
    for (auto& c : neg.cols_)
        for (auto& [i, v] : c) v = -v;
    return *this + neg;
}

SparseOp SparseOp::transpose() const {
    SparseOp r(n_, fs_);
    for (unsigned long j = 0; j < n_; ++j)
        for (const auto& [i, m] : cols_[j]) r.cols_[i].push_back({j, m});
    r.canonicalize();
    return r;
}

SparseOp SparseOp::conj() const {
    SparseOp r = *this;
    for (auto& c : r.cols_)
        for (auto& [i, v] : c) v = v.conj();
    return r;
}

bool SparseOp::operator==(const SparseOp& o) const {
    if (n_ != o.n_ || fs_ != o.fs_) return false;
    SparseOp a = *this, b = o;
    a.canonicalize();
    b.canonicalize();
    return a.cols_ == b.cols_;
}

Mat SparseOp::to_dense() const {
    Mat r(n_, n_, fs_);
    for (unsigned long j = 0; j < n_; ++j)
        for (const auto& [i, m] : cols_[j]) r.at(i, j) += m;
    return r;
}

size_t SparseOp::nnz() const {
    size_t s = 0;
    for (const auto& c : cols_) s += c.size();
    return s;
}

SparseOp kron_op(const std::vector<Mat>& factors, unsigned long guard) {
    unsigned long total = 1;
    FieldSpec f = factors.empty() ? FieldSpec::rationals() : factors[0].field();
    for (const auto& m : factors) {
        if (m.rows() != m.cols()) throw std::invalid_argument("kron_op factors must be square");
        if (total > guard / std::max<size_t>(m.rows(), 1) + 1) throw SizeGuard("kron_op size guard");
        total *= m.rows();
    }
    if (total > guard) throw SizeGuard("kron_op size guard");
    SparseOp op(total, f);
    // column j: tensor product of the factor columns of j's digits
    std::vector<size_t> digits(factors.size());
    for (unsigned long j = 0; j < total; ++j) {
        unsigned long t = j;
        for (size_t i = factors.size(); i-- > 0;) {
            digits[i] = t % factors[i].cols();
            t /= factors[i].cols();
        }
        std::vector<std::pair<unsigned long, Scalar>> acc{{0, Scalar::one(f)}};
        for (size_t i = 0; i < factors.size(); ++i) {
            std::vector<std::pair<unsigned long, Scalar>> next;
            for (const auto& [idx, c] : acc)
                for (size_t r = 0; r < factors[i].rows(); ++r) {
                    const Scalar& v = factors[i].at(r, digits[i]);
                    if (!v.is_zero()) next.push_back({idx * factors[i].rows() + r, c * v});
                }
            acc = std::move(next);
        }
        op.col(j) = std::move(acc);
    }
    op.canonicalize();
    return op;
}

// ---------------------------------------------------------------------------
// Stabilizers

StabilizerContext::StabilizerContext(const SAC& x_, const Hopf& a_, const RAction& phi_,
                                     unsigned long guard_)
    : x(&x_), a(&a_), phi(&phi_), space(a_.n, x_.circ.size(), guard_), guard(guard_) {
    auto v = validate(x_);
    if (!v.ok) throw std::invalid_argument("invalid complex: " + v.message);
    if (&phi_.algebra() != &a_ && phi_.algebra().mult_t != a_.mult_t)
        throw std::invalid_argument("ring action attached to a different algebra");
    if (!(phi_.ring() == x_.ring)) throw std::invalid_argument("ring action ring differs from complex ring");
}

std::vector<std::pair<unsigned long, Scalar>> iterated_comultiplication(
    const Hopf& a, const std::vector<Scalar>& v, size_t copies, unsigned long guard) {
    TensorSpace sp(a.n, copies, guard);
    if (!sp.fits()) throw SizeGuard("iterated comultiplication exceeds the size guard");
    if (copies == 0) return {{0, a.counit_of(v)}};
    std::vector<std::pair<unsigned long, Scalar>> acc;
    for (size_t i = 0; i < a.n; ++i)
        if (!v[i].is_zero()) acc.push_back({i, v[i]});
    for (size_t c = 1; c < copies; ++c) {
        // split the last leg
        std::vector<std::pair<unsigned long, Scalar>> next;
        for (const auto& [idx, coeff] : acc) {
            unsigned long head = idx / a.n, last = idx % a.n;
            for (const auto& [l1, l2, cc] : a.comult_sparse(last))
                next.push_back({(head * a.n + l1) * a.n + l2, coeff * cc});
        }
        acc = std::move(next);
    }
    // merge duplicates
    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<unsigned long, Scalar>> out;
    for (auto& [i, c] : acc) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.push_back({i, c});
    }
    std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
    return out;
}

namespace {

// Per-plus-cell data: the comultiplied integral with the incidence action
// already applied legwise: terms (multi-index T, coeff), plus the per-leg
// twisted-vector columns phi(n_i) b_t as dense vectors.
struct PlusRecipe {
    std::vector<std::pair<unsigned long, Scalar>> delta_sigma;
    std::vector<Mat> twist;  // per circ cell: phi([x_+ : x_circ])
};

PlusRecipe plus_recipe(const StabilizerContext& c, size_t p) {
    PlusRecipe r;
    r.delta_sigma = iterated_comultiplication(*c.a, c.a->integral(), c.space.m,
                                              std::max<unsigned long>(c.guard, 1u << 20));
    for (size_t i = 0; i < c.space.m; ++i) r.twist.push_back((*c.phi)(c.x->I_plus.at(p, i)));
    return r;
}

void add_scaled(SparseOp::SparseVec& r, unsigned long i, const Scalar& v) {
    auto it = r.find(i);
    if (it == r.end()) {
        if (!v.is_zero()) r.emplace(i, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) r.erase(it);
    }
}

void s_plus_column_into(const StabilizerContext& c, const PlusRecipe& rec, unsigned long j,
                        const Scalar& scale, SparseOp::SparseVec& out) {
    const Hopf& a = *c.a;
    std::vector<size_t> dj;
    c.space.decode(j, dj);
    std::vector<size_t> dt;
    for (const auto& [tidx, tc] : rec.delta_sigma) {
        c.space.decode(tidx, dt);
        // accumulate tensor factors left to right
        std::vector<std::pair<unsigned long, Scalar>> acc{{0, tc * scale}};
        for (size_t i = 0; i < c.space.m && !acc.empty(); ++i) {
            // u = phi(n_i) b_{t_i}; factor result u * b_{j_i}
            std::vector<Scalar> prod(a.n, Scalar::zero(a.field));
            for (size_t s = 0; s < a.n; ++s) {
                const Scalar& us = rec.twist[i].at(s, dt[i]);
                if (us.is_zero()) continue;
                for (const auto& [k, m] : a.mult_sparse(s, dj[i])) prod[k] += us * m;
            }
            std::vector<std::pair<unsigned long, Scalar>> next;
            for (const auto& [idx, cc] : acc)
                for (size_t k = 0; k < a.n; ++k)
                    if (!prod[k].is_zero()) next.push_back({idx * a.n + k, cc * prod[k]});
            acc = std::move(next);
        }
        for (const auto& [idx, cc] : acc) add_scaled(out, idx, cc);
    }
}

struct MinusRecipe {
    std::vector<Mat> twist;  // per circ cell: phi([x_circ : x_-])
};

MinusRecipe minus_recipe(const StabilizerContext& c, size_t mcell) {
    MinusRecipe r;
    for (size_t i = 0; i < c.space.m; ++i) r.twist.push_back((*c.phi)(c.x->I_minus.at(i, mcell)));
    return r;
}

void s_minus_column_into(const StabilizerContext& c, const MinusRecipe& rec, unsigned long j,
                         const Scalar& scale, SparseOp::SparseVec& out) {
    const Hopf& a = *c.a;
    std::vector<size_t> dj;
    c.space.decode(j, dj);
    // branches: (first-leg partial index, coefficient, running product vector)
    struct State {
        unsigned long idx;
        Scalar coeff;
        std::vector<Scalar> prod;
    };
    std::vector<State> states{{0, scale, a.unit_v}};
    for (size_t i = 0; i < c.space.m; ++i) {
        std::vector<State> next;
        for (const auto& st : states)
            for (const auto& [l1, l2, cc] : a.comult_sparse(dj[i])) {
                std::vector<Scalar> v2(a.n, Scalar::zero(a.field));
                for (size_t s = 0; s < a.n; ++s) v2[s] = rec.twist[i].at(s, l2);
                next.push_back({st.idx * a.n + l1, st.coeff * cc, a.mul_vec(st.prod, v2)});
            }
        states = std::move(next);
    }
    for (const auto& st : states) {
        Scalar v = st.coeff * a.eval_functional(a.cointegral(), st.prod);
        add_scaled(out, st.idx, v);
    }
}

}  // namespace

SparseOp::SparseVec s_plus_column(const StabilizerContext& c, size_t p, unsigned long j) {
    SparseOp::SparseVec out;
    s_plus_column_into(c, plus_recipe(c, p), j, Scalar::one(c.a->field), out);
    return out;
}

SparseOp::SparseVec s_minus_column(const StabilizerContext& c, size_t mcell, unsigned long j) {
    SparseOp::SparseVec out;
    s_minus_column_into(c, minus_recipe(c, mcell), j, Scalar::one(c.a->field), out);
    return out;
}

SparseOp::SparseVec apply_s_plus(const StabilizerContext& c, size_t p,
                                 const SparseOp::SparseVec& v) {
    PlusRecipe rec = plus_recipe(c, p);
    SparseOp::SparseVec out;
    for (const auto& [j, coeff] : v) s_plus_column_into(c, rec, j, coeff, out);
    return out;
}

SparseOp::SparseVec apply_s_minus(const StabilizerContext& c, size_t mcell,
                                  const SparseOp::SparseVec& v) {
    MinusRecipe rec = minus_recipe(c, mcell);
    SparseOp::SparseVec out;
    for (const auto& [j, coeff] : v) s_minus_column_into(c, rec, j, coeff, out);
    return out;
}

static void require_fits(const StabilizerContext& c) {
    if (!c.space.fits()) throw SizeGuard("total dimension exceeds the size guard");
}

SparseOp s_plus(const StabilizerContext& c, size_t p) {
    require_fits(c);
    PlusRecipe rec = plus_recipe(c, p);
    SparseOp op(c.space.total, c.a->field);
    for (unsigned long j = 0; j < c.space.total; ++j) {
        SparseOp::SparseVec out;
        s_plus_column_into(c, rec, j, Scalar::one(c.a->field), out);
        op.col(j).assign(out.begin(), out.end());
    }
    return op;
}

SparseOp s_minus(const StabilizerContext& c, size_t mcell) {
    require_fits(c);
    MinusRecipe rec = minus_recipe(c, mcell);
    SparseOp op(c.space.total, c.a->field);
    for (unsigned long j = 0; j < c.space.total; ++j) {
        SparseOp::SparseVec out;
        s_minus_column_into(c, rec, j, Scalar::one(c.a->field), out);
        op.col(j).assign(out.begin(), out.end());
    }
    return op;
}

std::vector<SparseOp> all_stabilizers(const StabilizerContext& c) {
    std::vector<SparseOp> ops;
    for (size_t p = 0; p < c.x->plus.size(); ++p) ops.push_back(s_plus(c, p));
    for (size_t m = 0; m < c.x->minus.size(); ++m) ops.push_back(s_minus(c, m));
    return ops;
}

SparseOp elementary_operator(const StabilizerContext& c) {
    require_fits(c);
    SparseOp h(c.space.total, c.a->field);
    SparseOp id = SparseOp::identity(c.space.total, c.a->field);
    for (const auto& s : all_stabilizers(c)) h = h + (id - s);
    return h;
}

SparseOp total_gram(const StabilizerContext& c) {
    require_fits(c);
    std::vector<Mat> gs(c.space.m, c.a->frobenius_gram());
    return kron_op(gs, c.guard);
}

bool check_operator_symmetry(const SparseOp& op, const SparseOp& gram) {
    return gram.compose(op) == op.transpose().compose(gram);
}

bool check_operator_hermitian(const SparseOp& op, const SparseOp& gram_star) {
    return gram_star.compose(op) == op.conj().transpose().compose(gram_star);
}

// ---------------------------------------------------------------------------
// Spectrum and ground space

SpectrumReport joint_spectrum(const StabilizerContext& c, unsigned long dense_guard) {
    require_fits(c);
    if (c.space.total > dense_guard) throw SizeGuard("spectrum computation exceeds the dense guard");
    auto ops = all_stabilizers(c);
    const FieldSpec& f = c.a->field;
    std::vector<std::pair<long, Mat>> parts{{0, Mat::identity(c.space.total, f)}};
    for (const auto& s : ops) {
        std::vector<std::pair<long, Mat>> next;
        for (auto& [t, b] : parts) {
            if (b.cols() == 0) continue;
            Mat sb = s.apply_mat(b);
            // fixed part: kernel of (S - id) restricted to span(b)
            Mat diff = sb - b;
            auto kfix = diff.kernel_basis();
            if (!kfix.empty())
                next.push_back({t, b * Mat::from_columns(kfix, f)});
            // violated part: kernel of S restricted to span(b)
            auto kmove = sb.kernel_basis();
            if (!kmove.empty())
                next.push_back({t + 1, b * Mat::from_columns(kmove, f)});
            size_t got = (kfix.empty() ? 0 : kfix.size()) + (kmove.empty() ? 0 : kmove.size());
            if (got != b.cols())
                throw std::logic_error("stabilizer is not idempotent on an invariant subspace");
        }
        // merge equal t
        std::sort(next.begin(), next.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<long, Mat>> merged;
        for (auto& [t, b] : next) {
            if (!merged.empty() && merged.back().first == t) {
                Mat& m = merged.back().second;
                Mat joined(m.rows(), m.cols() + b.cols(), f);
                for (size_t i = 0; i < m.rows(); ++i) {
                    for (size_t j = 0; j < m.cols(); ++j) joined.at(i, j) = m.at(i, j);
                    for (size_t j = 0; j < b.cols(); ++j) joined.at(i, m.cols() + j) = b.at(i, j);
                }
                m = std::move(joined);
            } else
                merged.push_back({t, std::move(b)});
        }
        parts = std::move(merged);
    }
    SpectrumReport rep;
    rep.total = c.space.total;
    unsigned long sum = 0;
    for (auto& [t, b] : parts) {
        rep.entries.push_back({t, Scalar::from_int(f, t), static_cast<unsigned long>(b.cols())});
        sum += b.cols();
        rep.eigenbases.push_back({t, std::move(b)});
    }
    if (sum != rep.total) throw std::logic_error("joint eigenspace dimensions do not sum to the total");
    return rep;
}

static GroundSpace ground_space_from_basis(Mat b, const FieldSpec& f, unsigned long total) {
    GroundSpace g{f, total, b, Mat()};
    // left inverse through a set of independent rows
    auto rows = b.transpose().independent_columns();
    Mat sub(rows.size(), b.cols(), f);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) sub.at(i, j) = b.at(rows[i], j);
    auto inv = sub.inverse();
    if (!inv) throw std::logic_error("ground basis has no independent row set");
    g.left_inverse = Mat(b.cols(), total, f);
    for (size_t i = 0; i < b.cols(); ++i)
        for (size_t j = 0; j < rows.size(); ++j) g.left_inverse.at(i, rows[j]) = inv->at(i, j);
    return g;
}

GroundSpace ground_space(const StabilizerContext& c, unsigned long dense_guard) {
    require_fits(c);
    if (c.space.total > dense_guard) throw SizeGuard("ground space exceeds the dense guard");
    const FieldSpec& f = c.a->field;
    Mat b = Mat::identity(c.space.total, f);
    for (const auto& s : all_stabilizers(c)) {
        if (b.cols() == 0) break;
        Mat diff = s.apply_mat(b) - b;
        auto k = diff.kernel_basis();
        b = k.empty() ? Mat(c.space.total, 0, f) : b * Mat::from_columns(k, f);
    }
    return ground_space_from_basis(std::move(b), f, c.space.total);
}

std::vector<Scalar> GroundSpace::coords(const std::vector<Scalar>& ambient) const {
    auto c = left_inverse.apply(ambient);
    if (basis.apply(c) != ambient)
        throw std::logic_error("vector does not lie in the ground space");
    return c;
}

std::vector<std::vector<Scalar>> kernel_of_h(const StabilizerContext& c,
                                             unsigned long dense_guard) {
    require_fits(c);
    if (c.space.total > dense_guard) throw SizeGuard("kernel computation exceeds the dense guard");
    return elementary_operator(c).to_dense().kernel_basis();
}

// ---------------------------------------------------------------------------
// Induced Hopf structure

GroundHopf ground_hopf(const StabilizerContext& c, const GroundSpace& given) {
    const Hopf& a = *c.a;
    const FieldSpec& f = a.field;
    auto ops = all_stabilizers(c);
    auto project = [&](std::vector<Scalar> v) {
        for (const auto& s : ops) v = s.apply_dense(v);
        return v;
    };
    // Rebuild the basis from projector columns: the image of the joint
    // projector is spanned by projected standard basis vectors, and for
    // group-like coefficient algebras these are exactly the grouplikes.
    Mat proj = Mat::identity(given.total, f);
    for (const auto& s : ops) proj = s.apply_mat(proj);
    auto keep = proj.independent_columns();
    Mat pb(given.total, keep.size(), f);
    for (size_t j = 0; j < keep.size(); ++j)
        for (unsigned long i = 0; i < given.total; ++i) pb.at(i, j) = proj.at(i, keep[j]);
    if (pb.cols() != given.basis.cols())
        throw std::logic_error("projector rank differs from the fixed-space dimension");
    GroundSpace g = ground_space_from_basis(std::move(pb), f, given.total);
    size_t dim = g.basis.cols();
    // cache of left_inverse . Pi . e_K
    std::map<unsigned long, std::vector<Scalar>> proj_coords;
    auto coords_of_projected_basis = [&](unsigned long k) -> const std::vector<Scalar>& {
        auto it = proj_coords.find(k);
        if (it != proj_coords.end()) return it->second;
        std::vector<Scalar> e(g.total, Scalar::zero(f));
        e[k] = Scalar::one(f);
        auto pe = project(e);
        return proj_coords.emplace(k, g.coords(pe)).first->second;
    };

    Hopf h;
    h.field = f;
    h.n = dim;
    for (size_t i = 0; i < dim; ++i) h.labels.push_back("w" + std::to_string(i));
    h.mult_t.assign(dim * dim * dim, Scalar::zero(f));
    h.comult_t.assign(dim * dim * dim, Scalar::zero(f));
    h.unit_v.assign(dim, Scalar::zero(f));
    h.counit_v.assign(dim, Scalar::zero(f));
    h.antipode = Mat(dim, dim, f);

    // factorwise product / counit / antipode on the ambient tensor space
    std::vector<size_t> di, dj;
    auto ambient_mul = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
        std::vector<Scalar> r(g.total, Scalar::zero(f));
        for (unsigned long p = 0; p < g.total; ++p) {
            if (x[p].is_zero()) continue;
            c.space.decode(p, di);
            for (unsigned long q = 0; q < g.total; ++q) {
                if (y[q].is_zero()) continue;
                c.space.decode(q, dj);
                std::vector<std::pair<unsigned long, Scalar>> acc{{0, x[p] * y[q]}};
                for (size_t t = 0; t < c.space.m; ++t) {
                    std::vector<std::pair<unsigned long, Scalar>> next;
                    for (const auto& [idx, cc] : acc)
                        for (const auto& [k, m] : a.mult_sparse(di[t], dj[t]))
                            next.push_back({idx * a.n + k, cc * m});
                    acc = std::move(next);
                }
                for (const auto& [idx, cc] : acc) r[idx] += cc;
            }
        }
        return r;
    };

    GroundHopf out;
    for (size_t i = 0; i < dim; ++i) {
        auto wi = g.basis.column(i);
        // multiplication: closure in the fixed space is asserted by coords()
        for (size_t j = 0; j <= i; ++j) {
            auto prod = ambient_mul(wi, g.basis.column(j));
            auto pc = g.coords(prod);
            for (size_t k = 0; k < dim; ++k) {
                h.mult(i, j, k) = pc[k];
                h.mult(j, i, k) = pc[k];
            }
        }
        // counit: factorwise counit of the ambient vector
        Scalar eps = Scalar::zero(f);
        for (unsigned long p = 0; p < g.total; ++p) {
            if (wi[p].is_zero()) continue;
            c.space.decode(p, di);
            Scalar t = wi[p];
            for (size_t q = 0; q < c.space.m; ++q) t *= a.counit_v[di[q]];
            eps += t;
        }
        h.counit_v[i] = eps;
        // antipode: factorwise antipode, then project and take coordinates
        std::vector<Scalar> sv(g.total, Scalar::zero(f));
        for (unsigned long p = 0; p < g.total; ++p) {
            if (wi[p].is_zero()) continue;
            c.space.decode(p, di);
            std::vector<std::pair<unsigned long, Scalar>> acc{{0, wi[p]}};
            for (size_t t = 0; t < c.space.m; ++t) {
                std::vector<std::pair<unsigned long, Scalar>> next;
                for (const auto& [idx, cc] : acc)
                    for (size_t r = 0; r < a.n; ++r)
                        if (!a.antipode.at(r, di[t]).is_zero())
                            next.push_back({idx * a.n + r, cc * a.antipode.at(r, di[t])});
                acc = std::move(next);
            }
            for (const auto& [idx, cc] : acc) sv[idx] += cc;
        }
        auto sc = g.coords(project(sv));  // antipode preserves the fixed space
        for (size_t k = 0; k < dim; ++k) h.antipode.at(k, i) = sc[k];
        // comultiplication: (Pi (x) Pi) Delta, legwise projections
        Mat cm(dim, dim, f);
        for (unsigned long p = 0; p < g.total; ++p) {
            if (wi[p].is_zero()) continue;
            c.space.decode(p, di);
            std::vector<std::tuple<unsigned long, unsigned long, Scalar>> acc{{0, 0, wi[p]}};
            for (size_t t = 0; t < c.space.m; ++t) {
                std::vector<std::tuple<unsigned long, unsigned long, Scalar>> next;
                for (const auto& [idx1, idx2, cc] : acc)
                    for (const auto& [l1, l2, cl] : a.comult_sparse(di[t]))
                        next.push_back({idx1 * a.n + l1, idx2 * a.n + l2, cc * cl});
                acc = std::move(next);
            }
            for (const auto& [k1, k2, cc] : acc) {
                const auto& c1 = coords_of_projected_basis(k1);
                const auto& c2 = coords_of_projected_basis(k2);
                for (size_t u = 0; u < dim; ++u) {
                    if (c1[u].is_zero()) continue;
                    for (size_t v = 0; v < dim; ++v) cm.at(u, v) += cc * c1[u] * c2[v];
                }
            }
        }
        for (size_t u = 0; u < dim; ++u)
            for (size_t v = 0; v < dim; ++v) h.comult(i, u, v) = cm.at(u, v);
    }
    // unit = Pi(eta)
    std::vector<Scalar> eta(g.total, Scalar::zero(f));
    {
        std::vector<std::pair<unsigned long, Scalar>> acc{{0, Scalar::one(f)}};
        for (size_t t = 0; t < c.space.m; ++t) {
            std::vector<std::pair<unsigned long, Scalar>> next;
            for (const auto& [idx, cc] : acc)
                for (size_t r = 0; r < a.n; ++r)
                    if (!a.unit_v[r].is_zero()) next.push_back({idx * a.n + r, cc * a.unit_v[r]});
            acc = std::move(next);
        }
        for (const auto& [idx, cc] : acc) eta[idx] += cc;
    }
    h.unit_v = g.coords(project(eta));
    h.finalize();
    auto bad = check_axioms(h);
    if (!bad.empty())
        throw std::logic_error("induced ground structure violates Hopf axioms: " + bad[0]);
    out.hopf = std::move(h);

    // grouplike enumeration: when every basis vector is grouplike the basis
    // is a finite group under multiplication.
    const Hopf& hh = out.hopf;
    bool all_grouplike = true;
    for (size_t i = 0; i < dim && all_grouplike; ++i) {
        if (!hh.counit_v[i].is_one()) {
            all_grouplike = false;
            break;
        }
        for (size_t u = 0; u < dim && all_grouplike; ++u)
            for (size_t v = 0; v < dim; ++v) {
                Scalar want = (u == i && v == i) ? Scalar::one(f) : Scalar::zero(f);
                if (hh.comult(i, u, v) != want) {
                    all_grouplike = false;
                    break;
                }
            }
    }
    if (all_grouplike && dim > 0) {
        // multiplication permutes the basis; read orders off the table
        std::vector<size_t> table(dim * dim, dim);
        bool is_group = true;
        size_t id_idx = dim;
        for (size_t i = 0; i < dim; ++i)
            if (hh.unit_v[i].is_one()) id_idx = i;
        for (size_t i = 0; i < dim && is_group; ++i)
            for (size_t j = 0; j < dim; ++j) {
                size_t target = dim;
                for (size_t k = 0; k < dim; ++k) {
                    if (hh.mult(i, j, k).is_one()) {
                        if (target != dim) {
                            is_group = false;
                            break;
                        }
                        target = k;
                    } else if (!hh.mult(i, j, k).is_zero()) {
                        is_group = false;
                        break;
                    }
                }
                if (target == dim) is_group = false;
                if (!is_group) break;
                table[i * dim + j] = target;
            }
        if (is_group && id_idx < dim) {
            std::vector<long> orders(dim, 0);
            long exponent = 1;
            for (size_t i = 0; i < dim; ++i) {
                size_t cur = i;
                long o = 1;
                while (cur != id_idx) {
                    cur = table[cur * dim + i];
                    ++o;
                }
                orders[i] = o;
                exponent = std::lcm(exponent, o);
            }
            auto count = [&](long nn) {
                mpz_class cnt = 0;
                for (long o : orders)
                    if (nn % o == 0) ++cnt;
                return cnt;
            };
            out.grouplike_group = group_from_order_counts(mpz_class(dim), exponent, count);
        } else {
            out.notes.push_back("basis is grouplike but not closed as a group");
        }
    } else if (dim > 0) {
        out.notes.push_back("ground basis contains non-grouplike vectors; group not extracted");
    }
    out.space = g;
    return out;
}

GroupGroundInfo ground_info_group_coefficients(const SAC& x, const std::vector<long>& factors,
                                               unsigned long enum_limit) {
    auto q = enumerate_cycles_mod_boundaries(x, factors, enum_limit);
    return {q.order, q.group};
}

}  // namespace hopfstab

#include "hopfstab/hopf.hpp"

#include <algorithm>
#include <numeric>

namespace hopfstab {

void Hopf::finalize() {
    mult_sp_.assign(n * n, {});
    comult_sp_.assign(n, {});
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (!mult(i, j, k).is_zero()) mult_sp_[i * n + j].push_back({k, mult(i, j, k)});
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (!comult(i, j, k).is_zero()) comult_sp_[i].push_back({j, k, comult(i, j, k)});
    }
    integral_ = normalized_integral(*this);
    cointegral_ = normalized_cointegral(*this);
    invvol_ = eval_functional(cointegral_, integral_);
    if (invvol_.is_zero())
        throw NotBisemisimple("inverse volume vanishes");
}

std::vector<Scalar> Hopf::mul_vec(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::vector<Scalar> r(n, Scalar::zero(field));
    for (size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            Scalar c = x[i] * y[j];
            for (const auto& [k, m] : mult_sp_[i * n + j]) r[k] += c * m;
        }
    }
    return r;
}

Mat Hopf::comult_mat(const std::vector<Scalar>& x) const {
    Mat r(n, n, field);
    for (size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (const auto& [j, k, c] : comult_sp_[i]) r.at(j, k) += x[i] * c;
    }
    return r;
}

Scalar Hopf::counit_of(const std::vector<Scalar>& x) const { return eval_functional(counit_v, x); }

Scalar Hopf::eval_functional(const std::vector<Scalar>& f, const std::vector<Scalar>& x) const {
    Scalar s = Scalar::zero(field);
    for (size_t i = 0; i < n; ++i) s += f[i] * x[i];
    return s;
}

Mat Hopf::convolve(const Mat& f, const Mat& g) const {
    Mat r(n, n, field);
    for (size_t i = 0; i < n; ++i) {
        std::vector<Scalar> acc(n, Scalar::zero(field));
        for (const auto& [j, k, c] : comult_sp_[i]) {
            auto v = mul_vec(f.column(j), g.column(k));
            for (size_t t = 0; t < n; ++t) acc[t] += c * v[t];
        }
        for (size_t t = 0; t < n; ++t) r.at(t, i) = acc[t];
    }
    return r;
}

Mat Hopf::frobenius_gram() const {
    Mat g(n, n, field);
    Scalar scale = invvol_.inv();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Scalar s = Scalar::zero(field);
            for (const auto& [k, m] : mult_sp_[i * n + j]) s += m * cointegral_[k];
            g.at(i, j) = scale * s;
        }
    return g;
}

Scalar Hopf::frobenius_form(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    return invvol_.inv() * eval_functional(cointegral_, mul_vec(x, y));
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

struct GroupEnum {
    std::vector<long> factors;
    size_t order = 1;
    explicit GroupEnum(const std::vector<long>& f) : factors(f) {
        for (long m : f) {
            if (m < 1) throw std::invalid_argument("group factors must be >= 1");
            order *= static_cast<size_t>(m);
        }
    }
    std::vector<long> decode(size_t idx) const {
        std::vector<long> g(factors.size());
        for (size_t k = 0; k < factors.size(); ++k) {
            g[k] = static_cast<long>(idx % factors[k]);
            idx /= factors[k];
        }
        return g;
    }
    size_t add(size_t a, size_t b) const {
        auto x = decode(a), y = decode(b);
        size_t idx = 0;
        for (size_t k = factors.size(); k-- > 0;)
            idx = idx * factors[k] + static_cast<size_t>((x[k] + y[k]) % factors[k]);
        return idx;
    }
    size_t neg(size_t a) const {
        auto x = decode(a);
        size_t idx = 0;
        for (size_t k = factors.size(); k-- > 0;)
            idx = idx * factors[k] + static_cast<size_t>((factors[k] - x[k]) % factors[k]);
        return idx;
    }
    std::string label(size_t idx) const {
        auto x = decode(idx);
        std::string s = "g(";
        for (size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + std::to_string(x[k]);
        return s + ")";
    }
};

}  // namespace

Hopf make_group_hopf(const std::vector<long>& factors, const FieldSpec& field) {
    GroupEnum G(factors);
    long ch = field.characteristic();
    if (ch != 0 && G.order % static_cast<size_t>(ch) == 0)
        throw NotBisemisimple("characteristic divides the group order");
    Hopf a;
    a.field = field;
    a.n = G.order;
    a.mult_t.assign(a.n * a.n * a.n, Scalar::zero(field));
    a.comult_t.assign(a.n * a.n * a.n, Scalar::zero(field));
    a.unit_v.assign(a.n, Scalar::zero(field));
    a.counit_v.assign(a.n, Scalar::one(field));
    a.antipode = Mat(a.n, a.n, field);
    for (size_t i = 0; i < a.n; ++i) {
        a.labels.push_back(G.label(i));
        for (size_t j = 0; j < a.n; ++j) a.mult(i, j, G.add(i, j)) = Scalar::one(field);
        a.comult(i, i, i) = Scalar::one(field);
        a.antipode.at(G.neg(i), i) = Scalar::one(field);
    }
    a.unit_v[0] = Scalar::one(field);
    a.group_factors = factors;
    a.finalize();
    return a;
}

Hopf make_function_hopf(const std::vector<long>& factors, const FieldSpec& field) {
    Hopf a = dual(make_group_hopf(factors, field));
    GroupEnum G(factors);
    a.labels.clear();
    for (size_t i = 0; i < a.n; ++i) a.labels.push_back("^" + G.label(i));
    a.group_factors.reset();
    a.function_factors = factors;
    a.finalize();
    return a;
}

Hopf dual(const Hopf& a) {
    Hopf d;
    d.field = a.field;
    d.n = a.n;
    for (const auto& l : a.labels) d.labels.push_back(l + "*");
    d.mult_t.assign(a.n * a.n * a.n, Scalar::zero(a.field));
    d.comult_t.assign(a.n * a.n * a.n, Scalar::zero(a.field));
    for (size_t i = 0; i < a.n; ++i)
        for (size_t j = 0; j < a.n; ++j)
            for (size_t k = 0; k < a.n; ++k) {
                d.mult(i, j, k) = a.comult(k, i, j);
                d.comult(i, j, k) = a.mult(j, k, i);
            }
    d.unit_v = a.counit_v;
    d.counit_v = a.unit_v;
    d.antipode = a.antipode.transpose();
    if (a.group_factors) d.function_factors = a.group_factors;
    if (a.function_factors) d.group_factors = a.function_factors;
    d.finalize();
    return d;
}

Hopf tensor_hopf(const Hopf& a, const Hopf& b) {
    if (a.field != b.field) throw FieldMismatch("tensor of Hopf algebras over different fields");
    Hopf t;
    t.field = a.field;
    t.n = a.n * b.n;
    for (size_t i = 0; i < a.n; ++i)
        for (size_t j = 0; j < b.n; ++j) t.labels.push_back("(" + a.labels[i] + "," + b.labels[j] + ")");
    t.mult_t.assign(t.n * t.n * t.n, Scalar::zero(t.field));
    t.comult_t.assign(t.n * t.n * t.n, Scalar::zero(t.field));
    auto idx = [&](size_t i, size_t j) { return i * b.n + j; };
    for (size_t i1 = 0; i1 < a.n; ++i1)
        for (size_t i2 = 0; i2 < b.n; ++i2) {
            for (size_t j1 = 0; j1 < a.n; ++j1)
                for (size_t j2 = 0; j2 < b.n; ++j2)
                    for (size_t k1 = 0; k1 < a.n; ++k1)
                        for (size_t k2 = 0; k2 < b.n; ++k2) {
                            Scalar mm = a.mult(i1, j1, k1) * b.mult(i2, j2, k2);
                            if (!mm.is_zero()) t.mult(idx(i1, i2), idx(j1, j2), idx(k1, k2)) = mm;
                            Scalar cc = a.comult(i1, j1, k1) * b.comult(i2, j2, k2);
                            if (!cc.is_zero()) t.comult(idx(i1, i2), idx(j1, j2), idx(k1, k2)) = cc;
                        }
        }
    t.unit_v.assign(t.n, Scalar::zero(t.field));
    t.counit_v.assign(t.n, Scalar::zero(t.field));
    for (size_t i = 0; i < a.n; ++i)
        for (size_t j = 0; j < b.n; ++j) {
            t.unit_v[idx(i, j)] = a.unit_v[i] * b.unit_v[j];
            t.counit_v[idx(i, j)] = a.counit_v[i] * b.counit_v[j];
        }
    t.antipode = a.antipode.kron(b.antipode);
    if (a.group_factors && b.group_factors) {
        std::vector<long> f = *a.group_factors;
        f.insert(f.end(), b.group_factors->begin(), b.group_factors->end());
        t.group_factors = f;
    }
    if (a.function_factors && b.function_factors) {
        std::vector<long> f = *a.function_factors;
        f.insert(f.end(), b.function_factors->begin(), b.function_factors->end());
        t.function_factors = f;
    }
    t.finalize();
    return t;
}

// ---------------------------------------------------------------------------
// Axiom checking

static bool vec_eq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    return a == b;
}

std::vector<std::string> check_axioms(const Hopf& a) {
    std::vector<std::string> bad;
    size_t n = a.n;
    auto basis = [&](size_t i) {
        std::vector<Scalar> v(n, Scalar::zero(a.field));
        v[i] = Scalar::one(a.field);
        return v;
    };
    // associativity + unit + commutativity
    for (size_t i = 0; i < n && bad.empty(); ++i) {
        if (!vec_eq(a.mul_vec(a.unit_v, basis(i)), basis(i)) ||
            !vec_eq(a.mul_vec(basis(i), a.unit_v), basis(i)))
            bad.push_back("unit axiom fails at basis " + std::to_string(i));
        for (size_t j = 0; j < n; ++j) {
            for (size_t k = 0; k < n; ++k)
                if (a.mult(i, j, k) != a.mult(j, i, k)) {
                    bad.push_back("commutativity fails");
                    break;
                }
            auto ij = a.mul_vec(basis(i), basis(j));
            for (size_t k = 0; k < n; ++k)
                if (!vec_eq(a.mul_vec(ij, basis(k)), a.mul_vec(basis(i), a.mul_vec(basis(j), basis(k))))) {
                    bad.push_back("associativity fails");
                    break;
                }
            if (!bad.empty()) break;
        }
    }
    // coassociativity + counit + cocommutativity
    for (size_t i = 0; i < n && bad.empty(); ++i) {
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (a.comult(i, j, k) != a.comult(i, k, j)) {
                    bad.push_back("cocommutativity fails");
                    break;
                }
        for (size_t j = 0; j < n && bad.empty(); ++j)
            for (size_t l = 0; l < n && bad.empty(); ++l)
                for (size_t k = 0; k < n; ++k) {
                    Scalar lhs = Scalar::zero(a.field), rhs = Scalar::zero(a.field);
                    for (size_t m = 0; m < n; ++m) {
                        lhs += a.comult(i, m, l) * a.comult(m, j, k);
                        rhs += a.comult(i, j, m) * a.comult(m, k, l);
                    }
                    if (lhs != rhs) {
                        bad.push_back("coassociativity fails");
                        break;
                    }
                }
        for (size_t k = 0; k < n && bad.empty(); ++k) {
            Scalar left = Scalar::zero(a.field), right = Scalar::zero(a.field);
            for (size_t j = 0; j < n; ++j) {
                left += a.counit_v[j] * a.comult(i, j, k);
                right += a.comult(i, k, j) * a.counit_v[j];
            }
            Scalar want = (i == k) ? Scalar::one(a.field) : Scalar::zero(a.field);
            if (left != want || right != want) bad.push_back("counit axiom fails");
        }
    }
    // Delta and epsilon are algebra maps
    for (size_t i = 0; i < n && bad.empty(); ++i)
        for (size_t j = 0; j < n && bad.empty(); ++j) {
            Mat lhs(n, n, a.field);
            for (const auto& [k, m] : a.mult_sparse(i, j))
                for (const auto& [p, q, c] : a.comult_sparse(k)) lhs.at(p, q) += m * c;
            Mat rhs(n, n, a.field);
            for (const auto& [p1, q1, c1] : a.comult_sparse(i))
                for (const auto& [p2, q2, c2] : a.comult_sparse(j)) {
                    Scalar c = c1 * c2;
                    for (const auto& [p, mp] : a.mult_sparse(p1, p2))
                        for (const auto& [q, mq] : a.mult_sparse(q1, q2))
                            rhs.at(p, q) += c * mp * mq;
                }
            if (!(lhs == rhs)) bad.push_back("comultiplication is not an algebra map");
            Scalar el = Scalar::zero(a.field);
            for (const auto& [k, m] : a.mult_sparse(i, j)) el += m * a.counit_v[k];
            if (el != a.counit_v[i] * a.counit_v[j]) bad.push_back("counit is not an algebra map");
        }
    if (bad.empty()) {
        if (!a.counit_of(a.unit_v).is_one()) bad.push_back("counit(unit) != 1");
        Mat du = a.comult_mat(a.unit_v);
        Mat uu(n, n, a.field);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) uu.at(i, j) = a.unit_v[i] * a.unit_v[j];
        if (!(du == uu)) bad.push_back("comultiplication(unit) != unit (x) unit");
    }
    // antipode
    for (size_t i = 0; i < n && bad.empty(); ++i) {
        std::vector<Scalar> acc1(n, Scalar::zero(a.field)), acc2(n, Scalar::zero(a.field));
        for (const auto& [j, k, c] : a.comult_sparse(i)) {
            auto bj = a.antipode.column(j);
            std::vector<Scalar> bk(n, Scalar::zero(a.field));
            bk[k] = Scalar::one(a.field);
            auto v = a.mul_vec(bj, bk);
            for (size_t t = 0; t < n; ++t) acc1[t] += c * v[t];
            std::vector<Scalar> bj2(n, Scalar::zero(a.field));
            bj2[j] = Scalar::one(a.field);
            auto w = a.mul_vec(bj2, a.antipode.column(k));
            for (size_t t = 0; t < n; ++t) acc2[t] += c * w[t];
        }
        for (size_t t = 0; t < n; ++t) {
            Scalar want = a.counit_v[i] * a.unit_v[t];
            if (acc1[t] != want || acc2[t] != want) {
                bad.push_back("antipode axiom fails at basis " + std::to_string(i));
                break;
            }
        }
    }
    // cached integral and cointegral conditions
    if (bad.empty()) {
        const auto& s = a.integral();
        for (size_t i = 0; i < n; ++i) {
            auto bi = basis(i);
            auto prod = a.mul_vec(bi, s);
            for (size_t t = 0; t < n; ++t)
                if (prod[t] != a.counit_v[i] * s[t]) {
                    bad.push_back("cached integral fails the absorption condition");
                    break;
                }
        }
        if (!a.counit_of(s).is_one()) bad.push_back("cached integral not normalized");
        const auto& cs = a.cointegral();
        for (size_t i = 0; i < n; ++i) {
            std::vector<Scalar> out(n, Scalar::zero(a.field));
            for (const auto& [j, k, c] : a.comult_sparse(i)) out[k] += c * cs[j];
            for (size_t t = 0; t < n; ++t)
                if (out[t] != a.eval_functional(cs, basis(i)) * a.unit_v[t]) {
                    bad.push_back("cached cointegral fails the absorption condition");
                    break;
                }
        }
        if (!a.eval_functional(cs, a.unit_v).is_one()) bad.push_back("cached cointegral not normalized");
    }
    return bad;
}

// ---------------------------------------------------------------------------
// Integrals

std::vector<Scalar> normalized_integral(const Hopf& a) {
    size_t n = a.n;
    // rows (i,k): sum_j mult(i,j,k) s_j = counit_i s_k
    Mat m(n * n, n, a.field);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) {
                Scalar c = a.mult(i, j, k);
                if (j == k) c -= a.counit_v[i];
                m.at(i * n + k, j) = c;
            }
    auto ker = m.kernel_basis();
    if (ker.empty()) throw NotBisemisimple("no integral exists");
    if (ker.size() > 1) throw NotBisemisimple("integral space is not one-dimensional");
    auto s = ker[0];
    Scalar e = a.eval_functional(a.counit_v, s);
    if (e.is_zero()) throw NotBisemisimple("integral cannot be normalized (counit vanishes on it)");
    Scalar inv = e.inv();
    for (auto& c : s) c *= inv;
    return s;
}

std::vector<Scalar> normalized_cointegral(const Hopf& a) {
    size_t n = a.n;
    // rows (i,k): sum_j l_j comult(i,j,k) = l_i unit_k
    Mat m(n * n, n, a.field);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) {
                Scalar c = a.comult(i, j, k);
                if (j == i) c -= a.unit_v[k];
                m.at(i * n + k, j) = c;
            }
    auto ker = m.kernel_basis();
    if (ker.empty()) throw NotBisemisimple("no cointegral exists");
    if (ker.size() > 1) throw NotBisemisimple("cointegral space is not one-dimensional");
    auto l = ker[0];
    Scalar e = a.eval_functional(l, a.unit_v);
    if (e.is_zero()) throw NotBisemisimple("cointegral cannot be normalized (it vanishes on the unit)");
    Scalar inv = e.inv();
    for (auto& c : l) c *= inv;
    return l;
}

Scalar inverse_volume(const Hopf& a) {
    Scalar v = a.eval_functional(a.cointegral(), a.integral());
    Scalar dim = Scalar::from_int(a.field, static_cast<long>(a.n));
    if (dim.is_zero() || v != dim.inv())
        throw std::logic_error("inverse volume disagrees with 1/dim in the field");
    return v;
}

// ---------------------------------------------------------------------------
// Ring action

RAction::RAction(const Hopf& a, const CoeffRing& ring) : a_(&a), ring_(ring) {
    // cache_[k] = k-th convolution power of the identity
    Mat unit_eps(a.n, a.n, a.field);
    for (size_t i = 0; i < a.n; ++i)
        for (size_t j = 0; j < a.n; ++j) unit_eps.at(i, j) = a.unit_v[i] * a.counit_v[j];
    cache_.push_back(unit_eps);
    cache_.push_back(Mat::identity(a.n, a.field));
    if (!ring.is_integers) {
        Mat pm = power(static_cast<unsigned long>(ring.n));  // may grow the cache
        if (pm != cache_[0])
            throw std::invalid_argument(
                "canonical action ill-defined: convolution order of the identity does not divide " +
                std::to_string(ring.n));
    }
}

Mat RAction::power(unsigned long k) const {
    while (cache_.size() <= k) cache_.push_back(a_->convolve(cache_.back(), cache_[1]));
    return cache_[k];
}

Mat RAction::operator()(const mpz_class& r) const {
    mpz_class v = r;
    if (!ring_.is_integers) v = ring_.reduce(v);
    if (v >= 0) return power(v.get_ui());
    return a_->antipode * power(mpz_class(-v).get_ui());
}

// ---------------------------------------------------------------------------
// Complexification

Hopf change_field(const Hopf& a, const FieldSpec& to) {
    if (a.field.kind != FieldSpec::Kind::Rationals)
        throw std::invalid_argument("field change only supported from Q");
    auto conv = [&](const Scalar& s) { return Scalar::from_mpq(to, s.re()); };
    Hopf b;
    b.field = to;
    b.n = a.n;
    b.labels = a.labels;
    b.mult_t.reserve(a.mult_t.size());
    for (const auto& s : a.mult_t) b.mult_t.push_back(conv(s));
    for (const auto& s : a.comult_t) b.comult_t.push_back(conv(s));
    for (const auto& s : a.unit_v) b.unit_v.push_back(conv(s));
    for (const auto& s : a.counit_v) b.counit_v.push_back(conv(s));
    b.antipode = Mat(a.n, a.n, to);
    for (size_t i = 0; i < a.n; ++i)
        for (size_t j = 0; j < a.n; ++j) b.antipode.at(i, j) = conv(a.antipode.at(i, j));
    b.group_factors = a.group_factors;
    b.function_factors = a.function_factors;
    b.finalize();
    return b;
}

ComplexifiedHopf complexify(const Hopf& base_over_q, StarChoice tau) {
    ComplexifiedHopf c{change_field(base_over_q, FieldSpec::gaussian()), Mat(), tau};
    c.tau = (tau == StarChoice::Identity) ? Mat::identity(c.cx.n, c.cx.field) : c.cx.antipode;
    if (!(c.tau * c.tau == Mat::identity(c.cx.n, c.cx.field)))
        throw std::logic_error("chosen star map is not an involution");
    return c;
}

std::vector<Scalar> ComplexifiedHopf::star(const std::vector<Scalar>& v) const {
    std::vector<Scalar> w(v.size(), Scalar::zero(cx.field));
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        Scalar c = v[j].conj();
        for (size_t i = 0; i < cx.n; ++i) w[i] += tau.at(i, j) * c;
    }
    return w;
}

Scalar ComplexifiedHopf::hermitian_form(const std::vector<Scalar>& v,
                                        const std::vector<Scalar>& w) const {
    return cx.frobenius_form(star(v), w);
}

Mat ComplexifiedHopf::hermitian_gram() const {
    return tau.transpose() * cx.frobenius_gram();
}

// ---------------------------------------------------------------------------
// Spec parsing

static std::vector<long> parse_factors(const std::string& s) {
    std::vector<long> f;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find('x', pos);
        if (next == std::string::npos) next = s.size();
        f.push_back(std::stol(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (f.empty()) throw std::invalid_argument("empty group factor list");
    return f;
}

Hopf parse_hopf_spec(const std::string& spec, const FieldSpec& field) {
    auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
    if (starts("group:")) return make_group_hopf(parse_factors(spec.substr(6)), field);
    if (starts("fun:")) return make_function_hopf(parse_factors(spec.substr(4)), field);
    if (starts("dual:")) return dual(parse_hopf_spec(spec.substr(5), field));
    if (starts("tensor:")) {
        std::string body = spec.substr(7);
        // find the top-level comma: every nested "tensor:" consumes one comma
        size_t depth = 0, split = std::string::npos;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body.compare(i, 7, "tensor:") == 0) ++depth;
            if (body[i] == ',') {
                if (depth == 0) {
                    split = i;
                    break;
                }
                --depth;
            }
        }
        if (split == std::string::npos) throw std::invalid_argument("tensor spec needs two arguments");
        return tensor_hopf(parse_hopf_spec(body.substr(0, split), field),
                           parse_hopf_spec(body.substr(split + 1), field));
    }
    if (starts("cx:")) {
        std::string body = spec.substr(3);
        size_t tpos = body.rfind(":tau=");
        if (tpos == std::string::npos) throw std::invalid_argument("cx spec needs :tau=id|antipode");
        std::string tau = body.substr(tpos + 5);
        StarChoice ch;
        if (tau == "id") ch = StarChoice::Identity;
        else if (tau == "antipode") ch = StarChoice::Antipode;
        else throw std::invalid_argument("unknown tau choice: " + tau);
        if (field != FieldSpec::gaussian())
            throw std::invalid_argument("complexified coefficients require field Qi");
        Hopf base = parse_hopf_spec(body.substr(0, tpos), FieldSpec::rationals());
        return complexify(base, ch).cx;
    }
    throw std::invalid_argument("unknown coefficient spec: " + spec);
}

}  // namespace hopfstab

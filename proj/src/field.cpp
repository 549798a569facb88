#include "hopfstab/field.hpp"

namespace hopfstab {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(long p) {
    if (p >= (1L << 31) || !is_prime(p))
        throw std::invalid_argument("prime field modulus must be a prime < 2^31");
    return {Kind::Prime, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s == "Qi") return gaussian();
    if (s.size() > 1 && s[0] == 'F') return prime(std::stol(s.substr(1)));
    throw std::invalid_argument("unknown field spec: " + s);
}

std::string FieldSpec::str() const {
    switch (kind) {
        case Kind::Rationals: return "Q";
        case Kind::Prime: return "F" + std::to_string(p);
        case Kind::Gaussian: return "Qi";
    }
    return "?";
}

static long mod_pos(long v, long p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

Scalar Scalar::from_int(const FieldSpec& f, long v) {
    Scalar s(f);
    if (f.kind == FieldSpec::Kind::Prime)
        s.rp_ = mod_pos(v, f.p);
    else
        s.re_ = v;
    return s;
}

Scalar Scalar::from_mpz(const FieldSpec& f, const mpz_class& v) {
    Scalar s(f);
    if (f.kind == FieldSpec::Kind::Prime) {
        mpz_class r = v % f.p;
        if (r < 0) r += f.p;
        s.rp_ = r.get_si();
    } else {
        s.re_ = v;
    }
    return s;
}

Scalar Scalar::from_mpq(const FieldSpec& f, const mpq_class& v) {
    if (f.kind == FieldSpec::Kind::Prime) {
        mpq_class c = v;
        c.canonicalize();
        Scalar den = from_mpz(f, c.get_den());
        if (den.is_zero()) throw std::domain_error("denominator vanishes in prime field");
        return from_mpz(f, c.get_num()) / den;
    }
    Scalar s(f);
    s.re_ = v;
    s.re_.canonicalize();
    return s;
}

Scalar Scalar::gaussian(const mpq_class& re, const mpq_class& im) {
    Scalar s(FieldSpec::gaussian());
    s.re_ = re;
    s.im_ = im;
    s.re_.canonicalize();
    s.im_.canonicalize();
    return s;
}

void Scalar::check_same(const Scalar& o) const {
    if (fs_ != o.fs_) throw FieldMismatch("scalar fields differ: " + fs_.str() + " vs " + o.fs_.str());
}

bool Scalar::is_zero() const {
    if (fs_.kind == FieldSpec::Kind::Prime) return rp_ == 0;
    return re_ == 0 && im_ == 0;
}

bool Scalar::is_one() const {
    if (fs_.kind == FieldSpec::Kind::Prime) return rp_ == 1;
    return re_ == 1 && im_ == 0;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar r(fs_);
    if (fs_.kind == FieldSpec::Kind::Prime)
        r.rp_ = mod_pos(rp_ + o.rp_, fs_.p);
    else {
        r.re_ = re_ + o.re_;
        r.im_ = im_ + o.im_;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar r(fs_);
    if (fs_.kind == FieldSpec::Kind::Prime)
        r.rp_ = rp_ == 0 ? 0 : fs_.p - rp_;
    else {
        r.re_ = -re_;
        r.im_ = -im_;
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar r(fs_);
    if (fs_.kind == FieldSpec::Kind::Prime) {
        r.rp_ = static_cast<long>((static_cast<__int128>(rp_) * o.rp_) % fs_.p);
    } else {
        r.re_ = re_ * o.re_ - im_ * o.im_;
        r.im_ = re_ * o.im_ + im_ * o.re_;
    }
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    Scalar r(fs_);
    switch (fs_.kind) {
        case FieldSpec::Kind::Prime: {
            mpz_class a = rp_, m = fs_.p, out;
            mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
            r.rp_ = out.get_si();
            break;
        }
        case FieldSpec::Kind::Rationals:
            r.re_ = 1 / re_;
            break;
        case FieldSpec::Kind::Gaussian: {
            mpq_class n = re_ * re_ + im_ * im_;
            r.re_ = re_ / n;
            r.im_ = -im_ / n;
            break;
        }
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::conj() const {
    Scalar r = *this;
    if (fs_.kind == FieldSpec::Kind::Gaussian) r.im_ = -r.im_;
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (fs_ != o.fs_) return false;
    if (fs_.kind == FieldSpec::Kind::Prime) return rp_ == o.rp_;
    return re_ == o.re_ && im_ == o.im_;
}

static std::string q_str(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

std::string Scalar::str() const {
    switch (fs_.kind) {
        case FieldSpec::Kind::Prime: return std::to_string(rp_);
        case FieldSpec::Kind::Rationals: return q_str(re_);
        case FieldSpec::Kind::Gaussian: {
            std::string s = q_str(re_);
            s += (im_ >= 0 ? "+" : "");
            s += q_str(im_) + "*i";
            return s;
        }
    }
    return "?";
}

}  // namespace hopfstab

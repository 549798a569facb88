#pragma once
// Exact scalar arithmetic: rationals, prime fields, Gaussian rationals.
// No floating point anywhere; every value is kept in canonical form.

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hopfstab {

struct FieldMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldSpec {
    enum class Kind { Rationals, Prime, Gaussian };
    Kind kind = Kind::Rationals;
    long p = 0;  // modulus, only for Kind::Prime

    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    static FieldSpec prime(long p);
    static FieldSpec gaussian() { return {Kind::Gaussian, 0}; }
    // Parse "Q", "F<p>", "Qi".
    static FieldSpec parse(const std::string& s);

    long characteristic() const { return kind == Kind::Prime ? p : 0; }
    bool has_conjugation() const { return kind == Kind::Gaussian; }
    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }
    std::string str() const;
};

bool is_prime(long n);

// An exact field element. Rationals and Gaussian rationals are stored as
// reduced fractions (GMP canonical form); prime-field elements as residues
// in [0, p).
class Scalar {
public:
    Scalar() : fs_(FieldSpec::rationals()) {}
    explicit Scalar(const FieldSpec& f) : fs_(f) {}
    static Scalar zero(const FieldSpec& f) { return Scalar(f); }
    static Scalar one(const FieldSpec& f) { return from_int(f, 1); }
    static Scalar from_int(const FieldSpec& f, long v);
    static Scalar from_mpz(const FieldSpec& f, const mpz_class& v);
    static Scalar from_mpq(const FieldSpec& f, const mpq_class& v);
    // a + b*i over Gaussian rationals.
    static Scalar gaussian(const mpq_class& re, const mpq_class& im);

    const FieldSpec& field() const { return fs_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inv() const;
    Scalar conj() const;  // identity unless the field has conjugation
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Canonical text form: "p/q" (denominator printed only when != 1),
    // "p/q+r/s*i" for Gaussian rationals, plain residue for prime fields.
    std::string str() const;

    // Rational parts (valid for Rationals/Gaussian kinds).
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    long residue() const { return rp_; }

private:
    FieldSpec fs_;
    mpq_class re_ = 0, im_ = 0;  // Rationals / Gaussian
    long rp_ = 0;                // Prime
    void check_same(const Scalar& o) const;
};

}  // namespace hopfstab

#pragma once
// Exact integer matrices: Smith normal form, integer solving, determinants.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace hopfstab {

// Coefficient ring for complexes: Z or Z/n.
struct CoeffRing {
    bool is_integers = true;
    long n = 0;  // modulus when !is_integers; n >= 1

    static CoeffRing integers() { return {true, 0}; }
    static CoeffRing integers_mod(long n);
    bool operator==(const CoeffRing& o) const { return is_integers == o.is_integers && n == o.n; }
    // Canonical representative of v in the ring (v itself over Z).
    mpz_class reduce(const mpz_class& v) const;
    bool is_zero(const mpz_class& v) const { return reduce(v) == 0; }
    std::string str() const { return is_integers ? "Z" : "Z/" + std::to_string(n); }
};

class IntMat {
public:
    IntMat() = default;
    IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static IntMat identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    mpz_class& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat transpose() const;
    bool operator==(const IntMat& o) const;
    bool is_zero() const;
    // Entrywise zero in the given ring.
    bool is_zero_in(const CoeffRing& r) const;

    mpz_class determinant() const;  // Bareiss fraction-free elimination
    size_t rank() const;            // rank over Q

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> a_;
};

struct SmithForm {
    IntMat U, D, V;  // U*M*V = D, U and V unimodular, D diagonal with d1|d2|...
    std::vector<mpz_class> diagonal;  // the nonneg diagonal entries, full length min(r,c)
    size_t rank = 0;                  // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMat& M);

// Integer solutions of M x = b; nullopt when none exist.
std::optional<std::vector<mpz_class>> solve_integer(const IntMat& M, const std::vector<mpz_class>& b);

// Basis of the integer null space (columns of V past the rank).
std::vector<std::vector<mpz_class>> integer_kernel_basis(const IntMat& M);

}  // namespace hopfstab

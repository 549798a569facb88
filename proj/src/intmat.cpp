#include "hopfstab/intmat.hpp"

#include <stdexcept>

namespace hopfstab {

CoeffRing CoeffRing::integers_mod(long n) {
    if (n < 1) throw std::invalid_argument("modulus must be >= 1");
    return {false, n};
}

mpz_class CoeffRing::reduce(const mpz_class& v) const {
    if (is_integers) return v;
    mpz_class r = v % n;
    if (r < 0) r += n;
    return r;
}

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("integer matrix product shape mismatch");
    IntMat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("integer matrix sum shape mismatch");
    IntMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMat::operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool IntMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool IntMat::is_zero_in(const CoeffRing& r) const {
    for (const auto& x : a_)
        if (!r.is_zero(x)) return false;
    return true;
}

mpz_class IntMat::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = rows_;
    if (n == 0) return 1;
    IntMat m = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

size_t IntMat::rank() const { return smith_normal_form(*this).rank; }

namespace {

struct SnfWork {
    IntMat D, U, V;

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < D.cols(); ++j) std::swap(D.at(a, j), D.at(b, j));
        for (size_t j = 0; j < U.cols(); ++j) std::swap(U.at(a, j), U.at(b, j));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < D.rows(); ++i) std::swap(D.at(i, a), D.at(i, b));
        for (size_t i = 0; i < V.rows(); ++i) std::swap(V.at(i, a), V.at(i, b));
    }
    // row a -= q * row b
    void row_sub(size_t a, size_t b, const mpz_class& q) {
        for (size_t j = 0; j < D.cols(); ++j) D.at(a, j) -= q * D.at(b, j);
        for (size_t j = 0; j < U.cols(); ++j) U.at(a, j) -= q * U.at(b, j);
    }
    // col a -= q * col b
    void col_sub(size_t a, size_t b, const mpz_class& q) {
        for (size_t i = 0; i < D.rows(); ++i) D.at(i, a) -= q * D.at(i, b);
        for (size_t i = 0; i < V.rows(); ++i) V.at(i, a) -= q * V.at(i, b);
    }
    void negate_row(size_t a) {
        for (size_t j = 0; j < D.cols(); ++j) D.at(a, j) = -D.at(a, j);
        for (size_t j = 0; j < U.cols(); ++j) U.at(a, j) = -U.at(a, j);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& M) {
    size_t r = M.rows(), c = M.cols();
    SnfWork w{M, IntMat::identity(r), IntMat::identity(c)};
    size_t t = 0;
    size_t steps = std::min(r, c);
    while (t < steps) {
        // Find a pivot of minimal nonzero magnitude in the trailing block.
        size_t pi = t, pj = t;
        bool found = false;
        mpz_class best;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j) {
                if (w.D.at(i, j) == 0) continue;
                mpz_class m = abs(w.D.at(i, j));
                if (!found || m < best) {
                    found = true;
                    best = m;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        // Clear the pivot row and column.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < r; ++i) {
                if (w.D.at(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w.D.at(i, t).get_mpz_t(), w.D.at(t, t).get_mpz_t());
                w.row_sub(i, t, q);
                if (w.D.at(i, t) != 0) {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < c; ++j) {
                if (w.D.at(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w.D.at(t, j).get_mpz_t(), w.D.at(t, t).get_mpz_t());
                w.col_sub(j, t, q);
                if (w.D.at(t, j) != 0) {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
        }
        if (w.D.at(t, t) < 0) w.negate_row(t);
        ++t;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < t; ++i) {
            mpz_class a = w.D.at(i, i), b = w.D.at(i + 1, i + 1);
            if (b % a == 0) continue;
            changed = true;
            // Fold the two diagonal entries into gcd/lcm position.
            w.col_sub(i, i + 1, -1);  // col i += col i+1: puts b into position (i+1, i)
            // Re-eliminate the 2x2 block [[a,0],[b,b]] at (i,i).
            bool dirty = true;
            while (dirty) {
                dirty = false;
                if (w.D.at(i + 1, i) != 0) {
                    if (w.D.at(i, i) == 0 || abs(w.D.at(i + 1, i)) < abs(w.D.at(i, i))) {
                        w.swap_rows(i, i + 1);
                    }
                    if (w.D.at(i + 1, i) != 0) {
                        mpz_class q;
                        mpz_fdiv_q(q.get_mpz_t(), w.D.at(i + 1, i).get_mpz_t(), w.D.at(i, i).get_mpz_t());
                        w.row_sub(i + 1, i, q);
                    }
                    dirty = w.D.at(i + 1, i) != 0;
                }
                if (!dirty && w.D.at(i, i + 1) != 0) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), w.D.at(i, i + 1).get_mpz_t(), w.D.at(i, i).get_mpz_t());
                    w.col_sub(i + 1, i, q);
                    dirty = w.D.at(i, i + 1) != 0;
                }
            }
            if (w.D.at(i, i) < 0) w.negate_row(i);
            if (w.D.at(i + 1, i + 1) < 0) w.negate_row(i + 1);
        }
    }
    SmithForm out;
    out.U = std::move(w.U);
    out.D = std::move(w.D);
    out.V = std::move(w.V);
    out.rank = t;
    for (size_t i = 0; i < steps; ++i) out.diagonal.push_back(out.D.at(i, i));
    return out;
}

std::optional<std::vector<mpz_class>> solve_integer(const IntMat& M, const std::vector<mpz_class>& b) {
    if (b.size() != M.rows()) throw std::invalid_argument("solve_integer shape mismatch");
    SmithForm s = smith_normal_form(M);
    // U M V = D, so M x = b iff D y = U b with x = V y.
    std::vector<mpz_class> ub(M.rows(), 0);
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.rows(); ++j) ub[i] += s.U.at(i, j) * b[j];
    std::vector<mpz_class> y(M.cols(), 0);
    for (size_t i = 0; i < M.rows(); ++i) {
        mpz_class d = (i < std::min(M.rows(), M.cols())) ? s.D.at(i, i) : mpz_class(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            if (i < M.cols()) y[i] = ub[i] / d;
        }
    }
    std::vector<mpz_class> x(M.cols(), 0);
    for (size_t i = 0; i < M.cols(); ++i)
        for (size_t j = 0; j < M.cols(); ++j) x[i] += s.V.at(i, j) * y[j];
    return x;
}

std::vector<std::vector<mpz_class>> integer_kernel_basis(const IntMat& M) {
    SmithForm s = smith_normal_form(M);
    std::vector<std::vector<mpz_class>> basis;
    for (size_t j = s.rank; j < M.cols(); ++j) {
        std::vector<mpz_class> v(M.cols());
        for (size_t i = 0; i < M.cols(); ++i) v[i] = s.V.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace hopfstab

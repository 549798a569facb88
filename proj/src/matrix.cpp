#include "hopfstab/matrix.hpp"

#include <cassert>

namespace hopfstab {

Mat Mat::identity(size_t n, const FieldSpec& f) {
    Mat m(n, n, f);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    if (fs_ != o.fs_) throw FieldMismatch("matrix product over different fields");
    Mat r(rows_, o.cols_, fs_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Scalar& y = o.at(k, j);
                if (!y.is_zero()) r.at(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const { return *this + o.scaled(-Scalar::one(fs_)); }

Mat Mat::scaled(const Scalar& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_, fs_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::conj_transpose() const {
    Mat r = transpose();
    for (auto& x : r.a_) x = x.conj();
    return r;
}

std::vector<Scalar> Mat::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply shape mismatch");
    std::vector<Scalar> r(rows_, Scalar::zero(fs_));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && fs_ == o.fs_ && a_ == o.a_;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Mat Mat::kron(const Mat& o) const {
    Mat r(rows_ * o.rows_, cols_ * o.cols_, fs_);
    for (size_t i1 = 0; i1 < rows_; ++i1)
        for (size_t j1 = 0; j1 < cols_; ++j1) {
            const Scalar& x = at(i1, j1);
            if (x.is_zero()) continue;
            for (size_t i2 = 0; i2 < o.rows_; ++i2)
                for (size_t j2 = 0; j2 < o.cols_; ++j2)
                    r.at(i1 * o.rows_ + i2, j1 * o.cols_ + j2) = x * o.at(i2, j2);
        }
    return r;
}

std::pair<Mat, std::vector<size_t>> Mat::echelon() const {
    Mat m = *this;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t piv = row;
        while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
        if (piv == rows_) continue;
        for (size_t j = 0; j < cols_; ++j) std::swap(m.at(row, j), m.at(piv, j));
        Scalar inv = m.at(row, col).inv();
        for (size_t j = col; j < cols_; ++j) m.at(row, j) *= inv;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {m, pivots};
}

size_t Mat::rank() const { return echelon().second.size(); }

std::vector<std::vector<Scalar>> Mat::kernel_basis() const {
    auto [m, pivots] = echelon();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols_, Scalar::zero(fs_));
        v[free] = Scalar::one(fs_);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Mat> Mat::solve(const Mat& B) const {
    if (B.rows_ != rows_) throw std::invalid_argument("solve shape mismatch");
    // Reduce the augmented matrix [M | B].
    Mat aug(rows_, cols_ + B.cols_, fs_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (size_t j = 0; j < B.cols_; ++j) aug.at(i, cols_ + j) = B.at(i, j);
    }
    auto [m, pivots] = aug.echelon();
    Mat x(cols_, B.cols_, fs_);
    size_t r = 0;
    for (size_t c : pivots) {
        if (c >= cols_) return std::nullopt;  // pivot in the rhs block: inconsistent
        for (size_t j = 0; j < B.cols_; ++j) x.at(c, j) = m.at(r, cols_ + j);
        ++r;
    }
    return x;
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    auto x = solve(identity(rows_, fs_));
    if (!x) return std::nullopt;
    if (!((*this) * *x == identity(rows_, fs_))) return std::nullopt;
    return x;
}

std::vector<size_t> Mat::independent_columns() const { return echelon().second; }

Mat Mat::from_columns(const std::vector<std::vector<Scalar>>& cols, const FieldSpec& f) {
    size_t r = cols.empty() ? 0 : cols[0].size();
    Mat m(r, cols.size(), f);
    for (size_t j = 0; j < cols.size(); ++j) {
        assert(cols[j].size() == r);
        for (size_t i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Scalar> Mat::column(size_t j) const {
    std::vector<Scalar> v(rows_, Scalar::zero(fs_));
    for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

}  // namespace hopfstab

#pragma once
// Dense exact linear algebra over a field: kernels, rank, solving, inverses.

#include "hopfstab/field.hpp"

#include <optional>
#include <vector>

namespace hopfstab {

class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols, const FieldSpec& f)
        : rows_(rows), cols_(cols), fs_(f), a_(rows * cols, Scalar::zero(f)) {}
    static Mat identity(size_t n, const FieldSpec& f);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldSpec& field() const { return fs_; }

    Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Scalar& c) const;
    Mat transpose() const;
    Mat conj_transpose() const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
    bool operator==(const Mat& o) const;
    bool is_zero() const;

    // Kronecker product; index (i1*r2+i2, j1*c2+j2).
    Mat kron(const Mat& o) const;

    size_t rank() const;
    // Basis of the right null space, one vector per column of the result.
    std::vector<std::vector<Scalar>> kernel_basis() const;
    // Solve M x = b for each column b of B; nullopt if any is unsolvable.
    std::optional<Mat> solve(const Mat& B) const;
    std::optional<Mat> inverse() const;
    // Indices of a maximal linearly independent subset of columns.
    std::vector<size_t> independent_columns() const;

    static Mat from_columns(const std::vector<std::vector<Scalar>>& cols, const FieldSpec& f);
    std::vector<Scalar> column(size_t j) const;

private:
    size_t rows_ = 0, cols_ = 0;
    FieldSpec fs_;
    std::vector<Scalar> a_;
    // Row echelon form with pivot column list; returns (echelon, pivots).
    std::pair<Mat, std::vector<size_t>> echelon() const;
};

}  // namespace hopfstab

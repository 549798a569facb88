#pragma once
// The total space V(X;A), the (+)/(-)-stabilizers, the elementary operator,
// joint spectra, and the ground space with its induced Hopf structure.

#include "hopfstab/hopf.hpp"
#include "hopfstab/sac.hpp"

#include <map>
#include <optional>

namespace hopfstab {

struct SizeGuard : std::length_error {
    using std::length_error::length_error;
};

// Multi-index bookkeeping for V(X;A) = A^(x) circ-cells, big-endian encoding:
// the first circ cell is the most significant digit (matching Mat::kron).
struct TensorSpace {
    size_t d = 1;            // dim A
    size_t m = 0;            // number of circ cells
    unsigned long total = 1; // d^m, saturates at guard+1

    TensorSpace(size_t dim_a, size_t cells, unsigned long guard);
    bool fits() const { return total != SATURATED; }
    static constexpr unsigned long SATURATED = ~0UL;
    void decode(unsigned long idx, std::vector<size_t>& out) const;
    unsigned long encode(const std::vector<size_t>& digits) const;
};

// Sparse exact endomorphism, stored column-wise.
class SparseOp {
public:
    SparseOp() = default;
    SparseOp(unsigned long n, const FieldSpec& f) : n_(n), fs_(f), cols_(n) {}
    static SparseOp identity(unsigned long n, const FieldSpec& f);

    unsigned long dim() const { return n_; }
    const FieldSpec& field() const { return fs_; }
    std::vector<std::pair<unsigned long, Scalar>>& col(unsigned long j) { return cols_[j]; }
    const std::vector<std::pair<unsigned long, Scalar>>& col(unsigned long j) const { return cols_[j]; }
    void canonicalize();  // sort columns, merge duplicates, drop zeros

    using SparseVec = std::map<unsigned long, Scalar>;
    SparseVec apply(const SparseVec& v) const;
    std::vector<Scalar> apply_dense(const std::vector<Scalar>& v) const;
    Mat apply_mat(const Mat& b) const;  // b: n x k dense block
    SparseOp compose(const SparseOp& inner) const;  // this after inner
    SparseOp operator+(const SparseOp& o) const;
    SparseOp operator-(const SparseOp& o) const;
    SparseOp transpose() const;
    SparseOp conj() const;
    bool operator==(const SparseOp& o) const;
    Mat to_dense() const;
    size_t nnz() const;

private:
    unsigned long n_ = 0;
    FieldSpec fs_;
    std::vector<std::vector<std::pair<unsigned long, Scalar>>> cols_;
};

// Kronecker product of small per-factor matrices as a SparseOp.
SparseOp kron_op(const std::vector<Mat>& factors, unsigned long guard);

struct StabilizerContext {
    const SAC* x = nullptr;
    const Hopf* a = nullptr;
    const RAction* phi = nullptr;
    TensorSpace space;
    unsigned long guard;

    StabilizerContext(const SAC& x, const Hopf& a, const RAction& phi,
                      unsigned long guard = 65536);
    // the context only borrows its arguments, so temporaries are rejected
    StabilizerContext(SAC&&, const Hopf&, const RAction&, unsigned long = 65536) = delete;
    StabilizerContext(const SAC&, Hopf&&, const RAction&, unsigned long = 65536) = delete;
    StabilizerContext(const SAC&, const Hopf&, RAction&&, unsigned long = 65536) = delete;
};

// Iterated comultiplication of a into `copies` tensor legs, as a sparse list
// of (encoded multi-index, coefficient) with radix dim(A).
std::vector<std::pair<unsigned long, Scalar>> iterated_comultiplication(
    const Hopf& a, const std::vector<Scalar>& v, size_t copies, unsigned long guard = 65536);

// Matrix-free single columns of the stabilizers.
SparseOp::SparseVec s_plus_column(const StabilizerContext& c, size_t plus_idx, unsigned long j);
SparseOp::SparseVec s_minus_column(const StabilizerContext& c, size_t minus_idx, unsigned long j);
SparseOp::SparseVec apply_s_plus(const StabilizerContext& c, size_t plus_idx,
                                 const SparseOp::SparseVec& v);
SparseOp::SparseVec apply_s_minus(const StabilizerContext& c, size_t minus_idx,
                                  const SparseOp::SparseVec& v);

// Materialized operators (throw SizeGuard beyond the context guard).
SparseOp s_plus(const StabilizerContext& c, size_t plus_idx);
SparseOp s_minus(const StabilizerContext& c, size_t minus_idx);
SparseOp elementary_operator(const StabilizerContext& c);
std::vector<SparseOp> all_stabilizers(const StabilizerContext& c);

// Gram matrix of the tensor Frobenius form as a sparse operator.
SparseOp total_gram(const StabilizerContext& c);
// ok iff gram.P == P^T.gram exactly.
bool check_operator_symmetry(const SparseOp& op, const SparseOp& gram);
// Hermitian variant: gram*.P == P^dagger.gram*.
bool check_operator_hermitian(const SparseOp& op, const SparseOp& gram_star);

struct SpectrumEntry {
    long violations = 0;   // integer eigenvalue t
    Scalar eigenvalue;     // image of t in the field
    unsigned long dimension = 0;
};
struct SpectrumReport {
    std::vector<SpectrumEntry> entries;          // ascending t
    std::vector<std::pair<long, Mat>> eigenbases;  // per t, ambient-coordinates basis
    unsigned long total = 0;
};

SpectrumReport joint_spectrum(const StabilizerContext& c, unsigned long dense_guard = 4096);

struct GroundSpace {
    FieldSpec field;
    unsigned long total = 0;
    Mat basis;         // total x D, columns span the joint fixed space
    Mat left_inverse;  // D x total, left_inverse * basis = identity
    std::vector<Scalar> coords(const std::vector<Scalar>& ambient) const;  // with membership check
};

GroundSpace ground_space(const StabilizerContext& c, unsigned long dense_guard = 4096);
// Independent kernel of the elementary operator.
std::vector<std::vector<Scalar>> kernel_of_h(const StabilizerContext& c,
                                             unsigned long dense_guard = 4096);

struct GroundHopf {
    Hopf hopf;  // induced structure on the ground basis, all axioms verified
    GroundSpace space;  // projector-column basis carrying that structure
    std::optional<AbelianGroup> grouplike_group;  // when grouplikes form a finite basis group
    std::vector<std::string> notes;
};

GroundHopf ground_hopf(const StabilizerContext& c, const GroundSpace& g);

// Combinatorial ground-space data for group-algebra coefficients A = kG:
// fixed vectors of the minus-stabilizers are spanned by cycle configurations,
// the plus-stabilizers average over boundary translates, so the ground space
// is the cycle/boundary quotient. Returns its order and group structure.
struct GroupGroundInfo {
    mpz_class dimension;
    AbelianGroup grouplikes;
};
GroupGroundInfo ground_info_group_coefficients(const SAC& x, const std::vector<long>& factors,
                                               unsigned long enum_limit = 1u << 22);

}  // namespace hopfstab

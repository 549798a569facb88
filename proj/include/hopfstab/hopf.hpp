#pragma once
// Finite-dimensional bicommutative Hopf algebras given by structure constants:
// group algebras, function algebras, duals, tensors, complexifications,
// integrals/cointegrals, Frobenius forms and ring actions.

#include "hopfstab/intmat.hpp"
#include "hopfstab/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hopfstab {

struct NotBisemisimple : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Hopf {
public:
    FieldSpec field;
    size_t n = 0;
    std::vector<std::string> labels;

    // Structure tensors (dense). mult(i,j,k): coefficient of b_k in b_i*b_j.
    // comult(i,j,k): coefficient of b_j (x) b_k in Delta(b_i).
    std::vector<Scalar> mult_t, comult_t;
    std::vector<Scalar> unit_v, counit_v;
    Mat antipode;

    // Provenance metadata enabling specialized fast paths and oracles.
    std::optional<std::vector<long>> group_factors;     // A = k[Z/m1 x ...]
    std::optional<std::vector<long>> function_factors;  // A = k^{Z/m1 x ...}

    const Scalar& mult(size_t i, size_t j, size_t k) const { return mult_t[(i * n + j) * n + k]; }
    const Scalar& comult(size_t i, size_t j, size_t k) const { return comult_t[(i * n + j) * n + k]; }
    Scalar& mult(size_t i, size_t j, size_t k) { return mult_t[(i * n + j) * n + k]; }
    Scalar& comult(size_t i, size_t j, size_t k) { return comult_t[(i * n + j) * n + k]; }

    // Sparse views, built by finalize().
    const std::vector<std::pair<size_t, Scalar>>& mult_sparse(size_t i, size_t j) const {
        return mult_sp_[i * n + j];
    }
    const std::vector<std::tuple<size_t, size_t, Scalar>>& comult_sparse(size_t i) const {
        return comult_sp_[i];
    }

    // Computes sparse views and solves for the cached (co)integral; throws
    // NotBisemisimple when the normalized (co)integral does not exist.
    void finalize();

    std::vector<Scalar> mul_vec(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
    // Delta(x) as an n x n coefficient matrix (row = left leg).
    Mat comult_mat(const std::vector<Scalar>& x) const;
    Scalar counit_of(const std::vector<Scalar>& x) const;
    Scalar eval_functional(const std::vector<Scalar>& f, const std::vector<Scalar>& x) const;

    const std::vector<Scalar>& integral() const { return integral_; }
    const std::vector<Scalar>& cointegral() const { return cointegral_; }
    const Scalar& inverse_volume() const { return invvol_; }

    // Convolution product of endomorphisms.
    Mat convolve(const Mat& f, const Mat& g) const;
    // Gram matrix of the Frobenius form e(x,y) = invvol^{-1} cointegral(xy).
    Mat frobenius_gram() const;
    Scalar frobenius_form(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;

    Scalar sc(long v) const { return Scalar::from_int(field, v); }

private:
    std::vector<std::vector<std::pair<size_t, Scalar>>> mult_sp_;
    std::vector<std::vector<std::tuple<size_t, size_t, Scalar>>> comult_sp_;
    std::vector<Scalar> integral_, cointegral_;
    Scalar invvol_;
};

// Constructors ---------------------------------------------------------------

Hopf make_group_hopf(const std::vector<long>& factors, const FieldSpec& field);
Hopf make_function_hopf(const std::vector<long>& factors, const FieldSpec& field);
Hopf dual(const Hopf& a);
Hopf tensor_hopf(const Hopf& a, const Hopf& b);

// Parse CLI coefficient specs: "group:2x4", "fun:3", "dual:<s>",
// "tensor:<s>,<s>", "cx:<s>:tau=id|antipode" (forces field Qi).
Hopf parse_hopf_spec(const std::string& spec, const FieldSpec& field);

// Axioms ---------------------------------------------------------------------

// Empty result means every bialgebra/antipode/bicommutativity axiom and the
// cached (co)integral conditions hold exactly.
std::vector<std::string> check_axioms(const Hopf& a);

std::vector<Scalar> normalized_integral(const Hopf& a);    // solves the linear conditions
std::vector<Scalar> normalized_cointegral(const Hopf& a);  // ditto, in the dual
Scalar inverse_volume(const Hopf& a);  // cointegral(integral); compared with 1/(dim * 1_k)

// Ring action ----------------------------------------------------------------

class RAction {
public:
    // Canonical action of Z (or Z/m) by convolution powers of the identity;
    // for ring Z/m requires the convolution order of id to divide m.
    RAction(const Hopf& a, const CoeffRing& ring);
    const Hopf& algebra() const { return *a_; }
    const CoeffRing& ring() const { return ring_; }
    Mat operator()(const mpz_class& r) const;

private:
    const Hopf* a_;
    CoeffRing ring_;
    mutable std::vector<Mat> cache_;  // nonnegative convolution powers of id
    Mat power(unsigned long k) const;
};

// Complexification -----------------------------------------------------------

enum class StarChoice { Identity, Antipode };

struct ComplexifiedHopf {
    Hopf cx;        // scalars extended to Q(i)
    Mat tau;        // the chosen involution on the Q(i)-basis
    StarChoice choice;
    // star(v) = tau * conj(v), an antilinear involution
    std::vector<Scalar> star(const std::vector<Scalar>& v) const;
    // e*(v, w) = e(star(v), w); conjugate-symmetric
    Scalar hermitian_form(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const;
    Mat hermitian_gram() const;  // G*[i][j] = e*(b_i, b_j)
};

ComplexifiedHopf complexify(const Hopf& base_over_q, StarChoice tau);

// Utility: map all structure constants through a field embedding (Q -> Qi or
// Q -> F_p when denominators permit).
Hopf change_field(const Hopf& a, const FieldSpec& to);

}  // namespace hopfstab

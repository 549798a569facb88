#pragma once
// CW complexes, the relative three-term slices feeding the stabilizer model,
// preset spaces, closed-form local operators, and locality/homotopy checkers.

#include "hopfstab/sac.hpp"
#include "hopfstab/stabilizer.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hopfstab {

struct CWComplex {
    // cells[q] lists the q-cell labels; incidence[q] is a count(q-1) x count(q)
    // integer matrix of incidence numbers [c_q : c_{q-1}].
    std::map<int, std::vector<std::string>> cells;
    std::map<int, IntMat> incidence;
    std::string basepoint;  // a 0-cell label

    int max_dim() const;
    size_t count(int q) const;
    const std::vector<std::string>& labels(int q) const;
    size_t index_of(int q, const std::string& label) const;  // throws if absent
    long inc(int q, size_t row_qm1, size_t col_q) const;     // 0 when no matrix
};

// Checks label uniqueness per dimension, matrix shapes, basepoint existence
// and the vanishing composite of consecutive incidence matrices (composite
// vanishing is tested in the given coefficient ring).
ValidationReport validate_cw(const CWComplex& k, const CoeffRing& r = CoeffRing::integers());

using CellSet = std::set<std::pair<int, std::string>>;  // (dimension, label)

CellSet all_cells(const CWComplex& k);
CellSet basepoint_only(const CWComplex& k);
bool is_subcomplex(const CWComplex& l, const CellSet& k);
// The CW complex spanned by a subcomplex cell set; keeps the ambient
// basepoint when present, otherwise adopts the first kept 0-cell.
CWComplex restrict_cw(const CWComplex& l, const CellSet& k);

// Relative three-term slice of the pair (l, k) around dimension q:
// plus = (q+1)-cells, circ = q-cells, minus = (q-1)-cells outside k, with
// incidence numbers copied into the ring r.
SAC xi_q(const CWComplex& l, const CellSet& k, int q,
         const CoeffRing& r = CoeffRing::integers());
// The transposed slice.
SAC xi_upper_q(const CWComplex& l, const CellSet& k, int q,
               const CoeffRing& r = CoeffRing::integers());

// Product complex; per dimension the cells are ordered fiber-major (fiber
// dimension ascending, then fiber order, then base order); signs follow
// [c x d : c x d'] = (-1)^{dim c} [d : d'].
CWComplex product_cw(const CWComplex& k, const CWComplex& f);
std::string product_label(const std::string& base, const std::string& fiber);

// Slice of the product pair (K x F, K x {*_F} u {*_K} x F) in dimension q.
SAC xi_f_q(const CWComplex& k, const CWComplex& f, int q,
           const CoeffRing& r = CoeffRing::integers());

// Preset names: point, circle1, circle2, sphere(n), qn(n), disk, wedge(a,b),
// torus_tri.
CWComplex preset_space(const std::string& name);

// Closed oriented/unoriented triangulated surfaces -----------------------------

struct SimplicialSurface {
    std::vector<std::string> vertices;
    std::vector<std::array<size_t, 3>> triangles;  // listed order = orientation
};

// Coherently reorients all triangles when possible; nullopt if non-orientable.
std::optional<SimplicialSurface> orient_surface(const SimplicialSurface& s);
// Every edge must bound exactly two triangles.
bool is_closed_surface(const SimplicialSurface& s);
// Cellular model: edges labeled "a-b" with a < b oriented a -> b; triangle
// boundaries by the alternating-sum rule. Basepoint = first vertex.
CWComplex cw_from_surface(const SimplicialSurface& s);

SimplicialSurface tetrahedron_surface();
SimplicialSurface torus_surface();  // 7-vertex triangulation
SimplicialSurface projective_plane_surface();  // 6-vertex triangulation

// Closed-form local operators -------------------------------------------------
// All act on the tensor space over the non-basepoint q-cells of k, ordered as
// listed (big-endian).

// Legwise comultiplied w, twisted by the incidence action of c_{q+1}, then
// multiplied onto each factor.
Mat closed_a(const CWComplex& k, int q, const std::vector<Scalar>& w,
             const std::string& c_qp1, const Hopf& a, const RAction& phi);
// Comultiply each factor, twist the second legs by the incidence action of
// c_{q-1}, multiply them, evaluate the functional z, keep the first legs.
Mat closed_b(const CWComplex& k, int q, const std::vector<Scalar>& z,
             const std::string& c_qm1, const Hopf& a, const RAction& phi);
// Single-factor variants with an explicit ring twist n.
Mat closed_a_n(const CWComplex& k, int q, const std::vector<Scalar>& w,
               const mpz_class& n, const std::string& c_q, const Hopf& a,
               const RAction& phi);
Mat closed_b_n(const CWComplex& k, int q, const std::vector<Scalar>& z,
               const mpz_class& n, const std::string& c_q, const Hopf& a,
               const RAction& phi);

struct CheckReport {
    bool ok = true;
    std::vector<std::string> messages;
    void fail(const std::string& m) {
        ok = false;
        messages.push_back(m);
    }
    void note(const std::string& m) { messages.push_back(m); }
};

// Asserts exact matrix equality between every generic stabilizer on the
// product slice and its closed-form tensor factorization. Supported fibers:
// point, sphere(n), circle2, qn(n).
CheckReport compare_closed_forms(const CWComplex& k, const std::string& fiber,
                                 int q, const Hopf& a, const RAction& phi);

// Degreewise exactness over Z of
// 0 -> C(slice(K0 n K1)) -> C(slice(K0)) + C(slice(K1)) -> C(slice(L)) -> 0.
CheckReport mayer_vietoris_check(const CWComplex& l, const CellSet& k0,
                                 const CellSet& k1, int q);

// Sorted canonical diagonal of a symmetric bilinear form after exact
// orthogonalization (deterministic pivoting).
std::vector<std::string> form_diagonal_invariant(const Mat& gram);

// Compares ground Hopf data of homotopy-equivalent presets:
// circle1 vs circle2, disk vs point, plus the 2-sphere degree-1 collapse.
CheckReport homotopy_invariance_check(const Hopf& a);

}  // namespace hopfstab

#pragma once
// Transposition duality of stabilizers, barycentric dual complexes of closed
// triangulated surfaces, and the degree-complementary duality of relative
// slices and operators.

#include "hopfstab/topology.hpp"

namespace hopfstab {

// Under the dual-basis identification, every (+)-stabilizer of the transposed
// complex equals the matrix transpose of the corresponding (-)-stabilizer over
// the dual coefficient algebra (and symmetrically), hence the elementary
// operators are mutual transposes. Asserts these identities exactly.
CheckReport transposition_duality_check(const SAC& x, const Hopf& a, const RAction& phi,
                                        unsigned long guard = 65536);

// Barycentric machinery -------------------------------------------------------

// A barycentric-subdivision simplex is a strictly increasing chain of primal
// cells, each recorded by (dimension, index); chains carry signed coefficients
// with simplex keys kept sorted.
using FlagSimplex = std::vector<std::pair<int, size_t>>;
struct SubdivisionChain {
    std::map<FlagSimplex, mpz_class> coeff;
};

struct DualComplex {
    CWComplex primal;  // cellular model of the surface (cw_from_surface)
    CWComplex cw;      // dual cells as a CW complex; dim q dual of dim 2-q primal
    CoeffRing ring;    // Z (needs coherent orientation) or Z/2
    std::map<std::pair<int, std::string>, std::string> dual_label;    // primal -> dual
    std::map<std::string, std::pair<int, std::string>> primal_label;  // dual -> primal
    std::map<std::pair<int, std::string>, SubdivisionChain> chain;    // dual-cell chains
};

// Dual cells as signed chains of flag simplices: the dual of a triangle is its
// barycenter, the dual of an edge crosses it between the two adjacent triangle
// barycenters, the dual of a vertex is the signed sum of the flags through it.
// Dual incidence numbers are extracted from boundary-chain decompositions
// (which also certifies that every dual cell boundary is a sum of dual cells).
// Over Z the triangles must be coherently oriented; any closed surface works
// over Z/2.
DualComplex dual_complex(const SimplicialSurface& s,
                         const CoeffRing& r = CoeffRing::integers());

// Top simplices (full flags vertex < edge < triangle) of the full subcomplex
// of the barycentric subdivision spanned by barycenters of cells outside k.
std::vector<FlagSimplex> supplement_top_flags(const SimplicialSurface& s, const CWComplex& primal,
                                              const CellSet& k);

// The subcomplex of all cells whose closure meets the given vertex, closed
// under faces (the closed star).
CellSet closed_star(const CWComplex& k, const std::string& vertex);

// Degree-complementary duality ------------------------------------------------

struct PDReport {
    bool ok = true;
    std::vector<std::string> messages;
    // reorientation signs realizing the isomorphism, keyed by dual-cell label
    std::map<std::string, int> plus_signs, circ_signs, minus_signs;
    SAC dual_slice;     // slice of the dual pair, original dual orientations
    SAC reoriented;     // dual slice after applying the signs
    SAC primal_t;       // transposed primal slice aligned to the dual ordering
    void fail(const std::string& m) {
        ok = false;
        messages.push_back(m);
    }
    void note(const std::string& m) { messages.push_back(m); }
};

// For subcomplex cell sets k inside l of the surface, compares the degree-q
// slice of the dual pair (duals of cells outside k, duals of cells outside l)
// with the transposed degree-(2-q) slice of (l, k): checks that absolute
// incidence values match under c -> dual(c) and searches for per-cell signs
// realizing exact equality. Over Z/2 the signs are trivial.
PDReport pd_sac_check(const SimplicialSurface& s, const CellSet& l, const CellSet& k, int q,
                      const CoeffRing& ring = CoeffRing::integers());

// Composes the slice isomorphism with transposition duality: the stabilizers
// of the dual slice are conjugate (by antipodes on the sign-flipped legs) to
// the transposes of the opposite stabilizers of the primal slice over the dual
// coefficients; elementary operators correspond exactly and the joint-spectrum
// dimension profiles agree.
CheckReport pd_operator_check(const SimplicialSurface& s, const CellSet& l, const CellSet& k,
                              int q, const Hopf& a, const RAction& phi,
                              unsigned long guard = 65536);

}  // namespace hopfstab

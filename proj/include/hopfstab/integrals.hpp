#pragma once
// Integrals along Hopf homomorphisms, inclusion-induced homomorphisms between
// ground Hopf algebras, and path-integrals along cospans of embeddings.

#include "hopfstab/topology.hpp"

namespace hopfstab {

struct HopfHom {
    Hopf source, target;  // owned copies
    Mat matrix;           // target.n x source.n
};

// Empty result iff the matrix intertwines unit, counit, multiplication,
// comultiplication and the antipodes exactly.
std::vector<std::string> hopf_hom_violations(const HopfHom& xi);

// The unique normalized generator integral along xi: the two-sided
// module/comodule absorption identities together with the normalization
// xi . mu . xi = xi are solved as one exact linear system; the generator
// property is then verified against a basis of the space of all integrals
// along xi (mu' . xi . mu = mu = mu . xi . mu' for every basis integral mu').
// Returns the source.n x target.n matrix of mu. Throws std::runtime_error if
// no solution exists or the solved integral fails the generator property.
Mat integral_along(const HopfHom& xi);

// Group-algebra homomorphisms ------------------------------------------------

// Mixed-radix element indexing of Z/m1 x ... x Z/mr (first factor least
// significant), matching the basis order of the group-algebra constructor.
size_t group_index(const std::vector<long>& factors, const std::vector<long>& g);
std::vector<long> group_element(const std::vector<long>& factors, size_t idx);

// The linearization of the group homomorphism sending the i-th standard
// generator to the given element of the destination group; throws unless the
// assignment extends to a homomorphism (order compatibility).
HopfHom group_hom(const std::vector<long>& src_factors, const std::vector<long>& dst_factors,
                  const std::vector<std::vector<long>>& generator_images, const FieldSpec& field);

// Brute-force oracle for the integral along a group-algebra homomorphism:
// each element of the destination group is sent to the average of its fiber,
// and to zero when the fiber is empty.
Mat fiber_average_matrix(const std::vector<long>& src_factors,
                         const std::vector<long>& dst_factors,
                         const std::vector<std::vector<long>>& generator_images,
                         const FieldSpec& field);

// Ground Hopf algebras of subcomplexes and induced maps -----------------------

struct GroundModel {
    SAC slice;         // degree-q slice of (cells, basepoint)
    GroundHopf hopf;   // induced structure, with its projector-column basis
};

// Ground Hopf data of the degree-q slice of the subcomplex spanned by the
// given cells of m.
GroundModel ground_model(const CWComplex& m, const CellSet& cells, int q, const Hopf& a,
                         const RAction& phi, unsigned long guard = 65536);

// The homomorphism induced by an inclusion of subcomplexes: ground vectors
// are extended by the unit of the coefficient algebra on the new tensor legs
// and projected onto the joint fixed space of the larger slice. The result is
// validated as a Hopf homomorphism (throws std::logic_error on failure).
HopfHom induced_ground_hom(const GroundModel& sub, const GroundModel& sup, const Hopf& a,
                           const RAction& phi, unsigned long guard = 65536);

struct Cospan {
    GroundModel k0, k1, l;
    HopfHom e0;  // induced by k0 into l
    HopfHom e1;  // induced by k1 into l
};

// Cospan of the embeddings of k0 and k1 into the ambient subcomplex l (all
// cell sets of m; k0 and k1 must be contained in l).
Cospan make_cospan(const CWComplex& m, const CellSet& k0, const CellSet& k1, const CellSet& l,
                   int q, const Hopf& a, const RAction& phi, unsigned long guard = 65536);

// The path-integral along the cospan: integral_along(e1) composed with e0.
Mat path_integral(const Cospan& c);

struct CompositionReport {
    Scalar lambda;
    bool right_arm_epi = false;    // second cospan's right arm surjective
    bool glued_arm_mono = false;   // second ambient's inclusion into the gluing injective
    Mat composite_of_paths;        // Y(c1) . Y(c0)
    Mat path_of_composite;         // Y(c1 . c0)
};

// Composes the cospans (l0; k0, k1) and (l1; k1, k2) by gluing the ambients
// along k1 (their intersection must equal k1; the union of cell sets is then
// the pushout) and extracts the unique scalar lambda with
// Y(c1) . Y(c0) = lambda . Y(c1 . c0). Throws std::runtime_error when the two
// sides are not proportional or lambda = 0, and std::logic_error when lambda
// differs from 1 although the right arm is epi or the glued inclusion is mono.
CompositionReport composition_scalar(const CWComplex& m, const CellSet& k0, const CellSet& k1,
                                     const CellSet& k2, const CellSet& l0, const CellSet& l1,
                                     int q, const Hopf& a, const RAction& phi,
                                     unsigned long guard = 65536);

}  // namespace hopfstab

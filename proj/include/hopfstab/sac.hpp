#pragma once
// Short abstract complexes over Z or Z/n: three cell lists, two incidence
// matrices with vanishing composite, their maps, and a homology oracle.

#include "hopfstab/intmat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hopfstab {

struct SAC {
    CoeffRing ring;
    std::vector<std::string> plus, circ, minus;
    IntMat I_plus;   // plus x circ
    IntMat I_minus;  // circ x minus

    static SAC empty(const CoeffRing& r = CoeffRing::integers());
    size_t index_plus(const std::string& label) const;
    size_t index_circ(const std::string& label) const;
    size_t index_minus(const std::string& label) const;
};

struct ValidationReport {
    bool ok = true;
    std::string message;  // first violation, when not ok
};

// Checks shapes, label uniqueness and the vanishing-composite axiom.
ValidationReport validate(const SAC& x);

// Disjoint union; labels namespaced with "L:" / "R:".
SAC product(const SAC& x, const SAC& y);

// Swap the roles of plus and minus cells, transposing incidences.
SAC transpose(const SAC& x);

// (boundary_plus: circ x plus, boundary_minus: minus x circ);
// boundary_minus * boundary_plus vanishes in the ring.
std::pair<IntMat, IntMat> boundary_matrices(const SAC& x);

struct AbelianGroup {
    std::vector<long> invariant_factors;  // m_1 | m_2 | ..., each >= 2
    long free_rank = 0;

    // Canonicalize an arbitrary multiset of cyclic orders (0 meaning Z).
    static AbelianGroup from_cyclic_orders(const std::vector<long>& orders);
    mpz_class order() const;  // 0 when infinite
    bool operator==(const AbelianGroup& o) const {
        return invariant_factors == o.invariant_factors && free_rank == o.free_rank;
    }
    std::string str() const;
};

// Invariant factors of a finite abelian group known only through
// count(n) = number of elements whose order divides n.
AbelianGroup group_from_order_counts(const mpz_class& order, long exponent_bound,
                                     const std::function<mpz_class(long)>& count);

AbelianGroup tensor_group(const AbelianGroup& a, const std::vector<long>& g_factors);
AbelianGroup tor_group(const AbelianGroup& a, const std::vector<long>& g_factors);

enum class HomologyMethod { Auto, Enumeration, SmithForm };

// Brute-force quotient of cycle configurations by boundary translates in
// G^{circ}; order and invariant-factor structure by order-divisor counting.
struct EnumeratedQuotient {
    mpz_class order;
    AbelianGroup group;
};
EnumeratedQuotient enumerate_cycles_mod_boundaries(const SAC& x, const std::vector<long>& g_factors,
                                                   unsigned long enum_limit);

// Middle homology ker(b_minus x G)/im(b_plus x G) for the finite abelian
// group G = Z/g1 x ... x Z/gr.
AbelianGroup homology_group(const SAC& x, const std::vector<long>& g_factors,
                            HomologyMethod method = HomologyMethod::Auto,
                            unsigned long enum_limit = 1000000);

// Integer homology data read from Smith normal forms (ring must be Z).
struct IntegerHomology {
    AbelianGroup middle;  // ker(b_minus)/im(b_plus)
    AbelianGroup lower;   // coker(b_minus)
};
IntegerHomology integer_homology(const SAC& x);

struct InclusionMap {
    const SAC* source = nullptr;
    const SAC* target = nullptr;
    std::vector<size_t> map_plus, map_circ, map_minus;  // source index -> target index
};

// Injectivity, incidence preservation and closedness; throws on failure.
void validate_inclusion(const InclusionMap& s);

struct RestrictionMap {
    // An inclusion between the transposed complexes (stored transposes owned here).
    SAC source_t, target_t;
    InclusionMap incl;
};

RestrictionMap make_restriction(const SAC& source, const SAC& target,
                                std::vector<size_t> map_plus_of_transpose,
                                std::vector<size_t> map_circ,
                                std::vector<size_t> map_minus_of_transpose);

struct ChainMaps {
    IntMat on_plus, on_circ, on_minus;  // target x source coordinate injections
};

ChainMaps induced_chain_map(const InclusionMap& s);

}  // namespace hopfstab

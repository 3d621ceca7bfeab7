#pragma once

#include "excouple/couple.hpp"

#include <map>
#include <vector>

namespace excouple {

/// Bounded chain complex of free groups with a bounded decreasing filtration.
/// Each generator carries a filtration level; F^q is spanned by the
/// generators of level >= q, so F^{q+1} <= F^q is automatic and the
/// subcomplex condition is a per-generator check on the boundary matrices.
/// F^{q_min} is the whole complex and F^{q_max+1} = 0.
struct FilteredComplex {
    std::map<long, std::vector<long>> levels;  ///< degree -> per-generator level
    std::map<long, IntMat> boundary;           ///< degree n -> matrix of d_n: C_n -> C_{n-1}

    std::size_t rank(long n) const;
    IntMat boundary_matrix(long n) const;  ///< zero-shaped when absent
    long q_min() const;
    long q_max() const;
    long deg_min() const;
    long deg_max() const;

    /// Generator indices of degree n with level >= q, as columns of an
    /// inclusion matrix C(F^q_n) -> C_n.
    IntMat level_inclusion(long n, long q) const;

    /// Throws invalid_input naming the offending degree/generator when
    /// boundary shapes are wrong, d∘d != 0, or d leaves some F^q.
    void check() const;
};

/// A filtered complex's exact couple together with the chain-level
/// realizations of its groups: D_1^{p,q} = H_p(F^q) and E_1^{p,q} =
/// H_p(F^q/F^{q+1}), both as subquotients of the free group C_p. The
/// realizations let later stages (pairings, abutment comparison) name
/// classes by chain representatives.
struct ComplexCouple {
    FilteredComplex fc;
    ExactCouple couple;  // level 1, d_floor = q_min
    std::map<Bidegree, Subquotient> d_rep;
    std::map<Bidegree, Subquotient> e_rep;
};

/// Builds the couple of the filtration's homology long exact sequences:
/// i and j are induced by inclusion/projection, kappa is the connecting map
/// [x] -> [dx] (sign-free; orientation bookkeeping lives in signcalc).
/// The result always validates; the input is checked first.
ComplexCouple from_filtered_complex(const FilteredComplex& fc);

/// Hand-entered E1/D1 data for a tower, in the same shape ExactCouple::build
/// takes. Unlike from_filtered_complex output, nothing guarantees exactness,
/// so from_augmented_tower validates and rejects with the failing spots.
struct AugmentedTowerData {
    long d_floor = 0;
    BigradedFamily d, e;
    std::map<Bidegree, GroupHom> i, j, kappa;
};

ExactCouple from_augmented_tower(const AugmentedTowerData& data);

/// Grid conventions: colim-Adams is the native one (D^{p,q} is the homology
/// of the q-th filtration stage); lim-Adams relabels so that D^{p,q} sits
/// where the (p+1, q-1) entry was.
enum class IndexingConvention { colim_adams, lim_adams };

/// Bijective relabeling between the conventions; round-trip is the identity
/// and all groups, differentials, and page structure are carried along.
ExactCouple reindex(const ExactCouple& c, IndexingConvention from, IndexingConvention to);

}  // namespace excouple

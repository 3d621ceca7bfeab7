#pragma once

#include "excouple/convergence.hpp"
#include "excouple/signcalc.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace excouple {

/// Chain-level pairing mu: C_a(W) x C_b(X) -> C_{a+b}(Y), stored per degree
/// pair as an exact integer 3-tensor: mu[{a,b}][g](t, h) is the coefficient
/// of the t-th degree-(a+b) Y-generator in mu(g-th a-gen, h-th b-gen).
/// Absent keys are zero maps.
struct TowerPairing {
    FilteredComplex w, x, y;
    std::map<std::pair<long, long>, std::vector<IntMat>> mu;

    /// Bilinear evaluation on chains; result in C_{a+b}(Y) coordinates.
    IntVec apply(long a, long b, const IntVec& va, const IntVec& vb) const;
};

/// Both TowerPairing invariants, with named offending generators:
///   - filtration compatibility: mu(F^m x F^n) lands in F^{m+n}
///   - graded derivation: d mu(a,b) = mu(da,b) + (-1)^{deg a} mu(a,db)
std::vector<std::string> tower_pairing_violations(const TowerPairing& tp,
                                                  const SignTable& t = SignTable::standard());

/// Page-level pairing mu_r: E_r^{p,q}(W) x E_r^{s,t}(X) -> E_r^{p+s,q+t}(Y),
/// tensors in page-entry generator coordinates, keyed by the source spots.
struct PagePairing {
    int r = 1;
    std::map<std::pair<Bidegree, Bidegree>, std::vector<IntMat>> mu;
};

struct PairedPages {
    Page w, x, y;
};
PairedPages pages_at(const ComplexCouple& w, const ComplexCouple& x, const ComplexCouple& y,
                     int r);

/// E_1 pairing induced on representatives. Checks both TowerPairing
/// invariants first and throws invalid_input with the violation certificate.
PagePairing induce_E1(const TowerPairing& tp, const SignTable& t = SignTable::standard());

struct LeibnizWitness {
    Bidegree left, right;      // spots of the generator pair
    std::size_t g = 0, h = 0;  // generator indices at those spots
    Bidegree target;           // spot of the residual
    IntVec residual;           // reduced coordinates in the target entry
    std::string to_string() const;
};
struct LeibnizReport {
    bool pass = true;
    std::vector<LeibnizWitness> witnesses;
};

/// Residual d_r(a)b + (-1)^p a d_r(b) - d_r(ab) on every generator pair;
/// pass iff all residuals vanish (bilinearity extends this to all elements).
LeibnizReport check_leibniz(const PagePairing& pp, const PairedPages& pages,
                            const SignTable& t = SignTable::standard());

/// mu_{r+1}([a][b]) = [mu_r(a b)] on representatives. Hard precondition:
/// check_leibniz passes at r -- refuses with the witness otherwise
/// (invalid_input). Well-definedness is re-verified by perturbing the
/// representatives in every boundary direction; a failure there is an engine
/// bug (internal_error).
PagePairing descend(const PagePairing& pp, const PairedPages& at_r, const PairedPages& at_next,
                    const SignTable& t = SignTable::standard());

struct EInfinityPairing {
    int page_n = 1;        // common stabilization page
    PagePairing product;   // mu_N on the stabilized entries
    PairedPages pages;     // the three pages at N, for evaluation
};

/// Iterated descent from a page-1 pairing to the common stabilization page.
EInfinityPairing einfinity_pairing(const PagePairing& e1, const ComplexCouple& w,
                                   const ComplexCouple& x, const ComplexCouple& y,
                                   const SignTable& t = SignTable::standard());

struct GrCompatibilityReport {
    bool pass = true;
    std::vector<std::string> violations;
};

/// Commutation of Gamma with the products: Gamma(a.b) = mu_inf(Gamma a, Gamma b)
/// for all filtration classes of the abutments. A violation signals an
/// implementation bug, not bad input.
GrCompatibilityReport gr_compatibility(const TowerPairing& tp,
                                       const SignTable& t = SignTable::standard());

namespace fixtures {

/// Zero pairing on the given towers.
TowerPairing zero_pairing(FilteredComplex w, FilteredComplex x, FilteredComplex y);

/// Skeletal product model of the torus: W = X = the filtered circle, Y its
/// filtered tensor square, mu the cross product. All boundaries vanish, the
/// cup-type product has rank 1 in the top degree.
TowerPairing torus_pairing();

/// Filtered tensor square of a contractible two-cell complex (v at level 1,
/// e at level 0, de = v) with the cross product. Nonzero d_1 on every page
/// entry, so Leibniz genuinely exercises the Koszul sign.
TowerPairing interval_square_pairing();

/// W = a single degree-0 class acting as the unit: mu(1, x) = x with X = Y.
/// Turns any filtered complex into a valid TowerPairing for corpus testing.
TowerPairing unit_pairing(const FilteredComplex& fc);

/// Page-1 pairing supplied without a chain-level witness: trivial on the
/// (0,0)-level pair, canonical when a level index is 1. Fails Leibniz with
/// residual twice the generator exactly when l is even.
PagePairing homotopy_pairing(int k, int l, const SignTable& t = SignTable::standard());

}  // namespace fixtures

}  // namespace excouple

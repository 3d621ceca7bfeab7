#pragma once

#include "excouple/abgroup.hpp"

#include <map>
#include <string>
#include <vector>

namespace excouple {

/// Grid position: p is the total degree column, q the filtration row.
struct Bidegree {
    long p = 0;
    long q = 0;
    auto operator<=>(const Bidegree&) const = default;
};

/// Finitely supported family of groups on the (p,q) grid; trivial outside.
class BigradedFamily {
  public:
    void set(Bidegree b, PresentedGroup g);
    const PresentedGroup& at(Bidegree b) const;
    bool has(Bidegree b) const { return groups_.count(b) > 0; }
    const std::map<Bidegree, PresentedGroup>& entries() const { return groups_; }

  private:
    std::map<Bidegree, PresentedGroup> groups_;
};

/// Exact couple in Adams indexing, at level r >= 1:
///   i: D^{p,q+1} -> D^{p,q}        bidegree (0,-1)
///   j: D^{p,q}   -> E^{p,q+r-1}    bidegree (0,r-1)
///   kappa: E^{p,q} -> D^{p-1,q+1}  bidegree (-1,+1)
/// so d_r = j o kappa has bidegree (-1, r).
///
/// Boundedness convention: everything is trivial far out on the grid, and D
/// is constant along q below `d_floor` (the maps i are identities there).
/// This models a tower whose maps are eventually the identity going down and
/// eventually zero going up; exactness on the constant region is automatic.
class ExactCouple {
  public:
    ExactCouple() = default;

    /// Assembles a couple from explicit data. Map keys are source bidegrees
    /// for j and kappa; for i the key (p,q) names the map D^{p,q+1} -> D^{p,q}.
    /// Shapes are checked against the families; mismatches throw invalid_input.
    static ExactCouple build(int level, long d_floor, BigradedFamily d, BigradedFamily e,
                             std::map<Bidegree, GroupHom> i, std::map<Bidegree, GroupHom> j,
                             std::map<Bidegree, GroupHom> kappa);

    int level() const { return level_; }
    long d_floor() const { return d_floor_; }
    const BigradedFamily& d_family() const { return d_; }
    const BigradedFamily& e_family() const { return e_; }
    const std::map<Bidegree, GroupHom>& i_maps() const { return i_; }
    const std::map<Bidegree, GroupHom>& j_maps() const { return j_; }
    const std::map<Bidegree, GroupHom>& kappa_maps() const { return kappa_; }

    /// Plateau-aware group lookups: d_group clamps to row d_floor below it.
    PresentedGroup d_group(long p, long q) const;
    PresentedGroup e_group(long p, long q) const;

    /// Structure map accessors; identity/zero maps are synthesized outside
    /// the stored support so the long exact sequence extends over the grid.
    GroupHom i_hom(long p, long q) const;      // D^{p,q+1} -> D^{p,q}
    GroupHom j_hom(long p, long q) const;      // D^{p,q} -> E^{p,q+level-1}
    GroupHom kappa_hom(long p, long q) const;  // E^{p,q} -> D^{p-1,q+1}
    GroupHom d_hom(long p, long q) const;      // j o kappa: E^{p,q} -> E^{p-1,q+level}

    /// Matrix of the composite i^{(k)}: D^{p,q_top} -> D^{p,q_top-k}.
    IntMat i_power_matrix(long p, long q_top, long k) const;

    /// Bounding box of the stored support (D and E together), for iteration.
    /// Returns false when the couple is entirely trivial.
    bool support_box(long& pmin, long& pmax, long& qmin, long& qmax) const;

  private:
    int level_ = 1;
    long d_floor_ = 0;
    BigradedFamily d_, e_;
    std::map<Bidegree, GroupHom> i_, j_, kappa_;
};

/// One failed exactness spot: kind is "ker(i)=im(kappa) at D", "ker(j)=im(i)
/// at D", or "ker(kappa)=im(j) at E".
struct ExactnessFailure {
    std::string kind;
    long p = 0, q = 0;
    std::string to_string() const;
};

/// Empty iff the couple is exact at every spot over (a margin around) its
/// support.
std::vector<ExactnessFailure> validate(const ExactCouple& c);

/// The derived couple one level up: D' = im(i), E' = ker(d)/im(d), with the
/// induced structure maps. Input must be exact (not rechecked here).
ExactCouple derive(const ExactCouple& c);

/// Z_r and B_r at (p,q) as subgroups of E_1^{p,q}:
///   Z_r = kappa^{-1}( im(i^{(r-1)}: D^{p-1,q+r} -> D^{p-1,q+1}) )
///   B_r = j( ker(i^{(r-1)}: D^{p,q} -> D^{p,q-r+1}) )
/// Requires a level-1 couple; i^{(0)} is the identity, so (Z_1,B_1) = (E_1,0).
struct CyclesBoundaries {
    Subgroup z, b;
};
CyclesBoundaries cycles_boundaries(const ExactCouple& c, int r, long p, long q);

/// Page entry Z_r/B_r together with its realization inside E_1^{p,q}
/// (project/representative name elements across pages).
struct PageEntry {
    Subquotient sq;
    const PresentedGroup& group() const { return sq.group(); }
};

struct Page {
    int r = 1;
    std::map<Bidegree, PageEntry> entries;
    /// d_r keyed by source bidegree; target entry is (p-1, q+r).
    std::map<Bidegree, GroupHom> differentials;
};

/// The r-th page of a level-1 couple, computed directly from the Z_r/B_r
/// subgroup towers; d_r[z] = [j y] where i^{(r-1)} y = kappa z.
Page page(const ExactCouple& c, int r);

struct EInfinityResult {
    PresentedGroup group;
    int stabilization_page = 1;  // minimal N with (Z_N,B_N) = (Z_{N+1},B_{N+1}) = ...
    Subquotient sq;              // Z_N/B_N inside E_1^{p,q}
};

/// Stable value of the (p,q) entry of a bounded level-1 couple.
EInfinityResult e_infinity(const ExactCouple& c, long p, long q);

}  // namespace excouple

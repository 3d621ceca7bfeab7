#pragma once

#include "excouple/intmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace excouple {

/// Finitely generated abelian group presented as Z^n modulo the row lattice
/// of a relation matrix. The relation lattice is stored in Hermite normal
/// form, so equal groups compare equal.
class PresentedGroup {
  public:
    PresentedGroup() = default;
    PresentedGroup(std::size_t num_generators, const IntMat& relations);

    static PresentedGroup free(std::size_t n) { return PresentedGroup(n, IntMat(0, n)); }
    static PresentedGroup trivial() { return free(0); }
    static PresentedGroup cyclic(const Int& n);  // Z/n, or Z when n == 0

    std::size_t num_generators() const { return n_; }
    const IntMat& relations() const { return rel_; }

    bool is_trivial() const;
    IntVec reduce(const IntVec& coords) const;
    bool is_zero_element(const IntVec& coords) const { return vec_is_zero(reduce(coords)); }

    bool operator==(const PresentedGroup& o) const = default;

  private:
    std::size_t n_ = 0;
    IntMat rel_;  // HNF rows, n_ columns
};

/// Isomorphism invariants: G ~ Z^rank + sum Z/torsion_i with torsion_i > 1
/// and torsion_i | torsion_{i+1}.
struct GroupInvariants {
    std::size_t rank = 0;
    std::vector<Int> torsion;
    bool operator==(const GroupInvariants&) const = default;
    std::string to_string() const;  // "Z + Z/2" style, "0" for trivial
};

GroupInvariants invariants(const PresentedGroup& g);

/// Element of a presented group, kept in canonical reduced form.
struct GroupElement {
    PresentedGroup parent;
    IntVec coordinates;  // reduced

    GroupElement(const PresentedGroup& g, IntVec coords)
        : parent(g), coordinates(g.reduce(std::move(coords))) {}
    bool is_zero() const { return vec_is_zero(coordinates); }
    bool operator==(const GroupElement&) const = default;
};

/// Homomorphism between presented groups as an integer matrix on generators
/// (target generators x source generators).
class GroupHom {
  public:
    GroupHom() = default;
    GroupHom(PresentedGroup source, PresentedGroup target, IntMat matrix);

    static GroupHom zero(const PresentedGroup& source, const PresentedGroup& target);
    static GroupHom identity(const PresentedGroup& g);

    const PresentedGroup& source() const { return src_; }
    const PresentedGroup& target() const { return tgt_; }
    const IntMat& matrix() const { return mat_; }

    /// Carries the source relation lattice into the target relation lattice.
    bool is_well_defined() const;
    void require_well_defined(const std::string& context) const;

    IntVec apply(const IntVec& source_coords) const { return tgt_.reduce(mat_ * source_coords); }
    GroupHom compose(const GroupHom& inner) const;  // this after inner
    GroupHom negated() const { return GroupHom(src_, tgt_, -mat_); }
    bool is_zero_map() const;
    bool equals(const GroupHom& o) const;  // same source/target, equal on generators

  private:
    PresentedGroup src_, tgt_;
    IntMat mat_;
};

/// Subgroup of an ambient group, given by a generator matrix (columns are
/// generator coordinates in the ambient group). The full coset lattice
/// (generators plus ambient relations) is kept in canonical form so
/// containment and equality are exact.
struct Subgroup {
    PresentedGroup ambient;
    IntMat generators;  // ambient.num_generators() rows
    IntMat lattice;     // HNF of rows {generator columns} U {ambient relations}

    Subgroup() = default;
    Subgroup(const PresentedGroup& g, const IntMat& gens);

    bool contains(const IntVec& coords) const { return in_lattice(coords, lattice); }
    bool contains(const Subgroup& other) const;
    bool operator==(const Subgroup& o) const;  // as subgroups (lattice equality)
};

/// Z/B as a presented group, with the surjection Z -> Q realized by a partial
/// map defined on those ambient elements that lie in Z.
class Subquotient {
  public:
    Subquotient() = default;

    /// B must be contained in Z; throws invalid_input otherwise.
    Subquotient(const PresentedGroup& ambient, const IntMat& z_gens, const IntMat& b_gens);

    const PresentedGroup& ambient() const { return ambient_; }
    const PresentedGroup& group() const { return q_; }
    const IntMat& z_generators() const { return z_; }
    const IntMat& b_generators() const { return b_; }
    const Subgroup& z_subgroup() const { return zsub_; }

    /// Coordinates in Q of an ambient element lying in Z; nullopt otherwise.
    std::optional<IntVec> project(const IntVec& ambient_coords) const;

    /// Ambient representative of a Q element (a Z-combination).
    IntVec representative(const IntVec& q_coords) const;

  private:
    PresentedGroup ambient_, q_;
    IntMat z_, b_;
    Subgroup zsub_;
    IntMat solve_mat_;  // [Z | B | ambient relations^T]
};

struct KernelResult {
    PresentedGroup group;
    GroupHom inclusion;  // into the hom's source
};

struct ImageResult {
    PresentedGroup group;
    GroupHom inclusion;  // into the hom's target
};

KernelResult kernel(const GroupHom& f);
ImageResult image(const GroupHom& f);

/// Generator matrix (columns) for {x in source : f(x) in S}, as a sublattice
/// of Z^{source gens} containing the source relations.
IntMat preimage_lattice(const GroupHom& f, const Subgroup& s);

/// Exactness at B of A --f--> B --g--> C: image(f) == kernel(g) as subgroups.
bool is_exact_at(const GroupHom& f, const GroupHom& g);

Subquotient subquotient(const PresentedGroup& g, const IntMat& z_gens, const IntMat& b_gens);

}  // namespace excouple

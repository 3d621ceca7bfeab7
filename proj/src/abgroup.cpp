#include "excouple/abgroup.hpp"

#include <sstream>

namespace excouple {

namespace {

/// Rows of `extra` appended below rows of `base`.
IntMat vstack(const IntMat& base, const IntMat& extra) {
    IntMat out(base.rows() + extra.rows(), base.cols());
    for (std::size_t i = 0; i < base.rows(); ++i)
        for (std::size_t j = 0; j < base.cols(); ++j) out(i, j) = base(i, j);
    for (std::size_t i = 0; i < extra.rows(); ++i)
        for (std::size_t j = 0; j < base.cols(); ++j) out(base.rows() + i, j) = extra(i, j);
    return out;
}

/// Columns 0..take-1 of each kernel basis vector of m, as a column matrix.
IntMat projected_kernel(const IntMat& m, std::size_t take) {
    IntMat k = kernel_basis(m);
    IntMat out(take, k.cols());
    for (std::size_t i = 0; i < take; ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) out(i, j) = k(i, j);
    // canonicalize as a lattice basis
    return hermite_row_basis(out.transpose()).transpose();
}

}  // namespace

PresentedGroup::PresentedGroup(std::size_t num_generators, const IntMat& relations)
    : n_(num_generators) {
    if (relations.cols() != num_generators && relations.rows() != 0)
        throw invalid_input("relation matrix must have one column per generator");
    IntMat r = relations;
    if (r.cols() != num_generators) r = IntMat(0, num_generators);
    rel_ = hermite_row_basis(r);
}

PresentedGroup PresentedGroup::cyclic(const Int& n) {
    IntMat rel(1, 1);
    rel(0, 0) = n;
    return PresentedGroup(1, rel);
}

bool PresentedGroup::is_trivial() const {
    if (n_ == 0) return true;
    // trivial iff the relation lattice is all of Z^n
    if (rel_.rows() != n_) return false;
    for (std::size_t i = 0; i < n_; ++i)
        if (rel_(i, i) != 1) return false;
    return true;
}

IntVec PresentedGroup::reduce(const IntVec& coords) const {
    if (coords.size() != n_) throw internal_error("element coordinate length mismatch");
    return reduce_mod_lattice(coords, rel_);
}

GroupInvariants invariants(const PresentedGroup& g) {
    GroupInvariants inv;
    const IntMat& rel = g.relations();
    SmithResult s = smith_normal_form(rel);
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < g.num_generators(); ++j) {
        if (j < rel.rows() && s.d(j, j) != 0) {
            ++nonzero;
            if (s.d(j, j) > 1) inv.torsion.push_back(s.d(j, j));
        }
    }
    inv.rank = g.num_generators() - nonzero;
    return inv;
}

std::string GroupInvariants::to_string() const {
    if (rank == 0 && torsion.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < rank; ++i) {
        os << (first ? "" : " + ") << "Z";
        first = false;
    }
    for (const Int& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return os.str();
}

GroupHom::GroupHom(PresentedGroup source, PresentedGroup target, IntMat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
    if (mat_.rows() != tgt_.num_generators() || mat_.cols() != src_.num_generators())
        throw invalid_input("hom matrix shape must be target gens x source gens");
}

GroupHom GroupHom::zero(const PresentedGroup& source, const PresentedGroup& target) {
    return GroupHom(source, target, IntMat(target.num_generators(), source.num_generators()));
}

GroupHom GroupHom::identity(const PresentedGroup& g) {
    return GroupHom(g, g, IntMat::identity(g.num_generators()));
}

bool GroupHom::is_well_defined() const {
    for (std::size_t i = 0; i < src_.relations().rows(); ++i)
        if (!in_lattice(mat_ * src_.relations().row(i), tgt_.relations())) return false;
    return true;
}

void GroupHom::require_well_defined(const std::string& context) const {
    if (!is_well_defined())
        throw invalid_input(context + ": map does not respect the relation lattices");
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    if (inner.tgt_.num_generators() != src_.num_generators())
        throw internal_error("hom composition shape mismatch");
    return GroupHom(inner.src_, tgt_, mat_ * inner.mat_);
}

bool GroupHom::is_zero_map() const {
    for (std::size_t j = 0; j < mat_.cols(); ++j)
        if (!tgt_.is_zero_element(mat_.column(j))) return false;
    return true;
}

bool GroupHom::equals(const GroupHom& o) const {
    if (src_ != o.src_ || tgt_ != o.tgt_) return false;
    for (std::size_t j = 0; j < mat_.cols(); ++j)
        if (!tgt_.is_zero_element(vec_sub(mat_.column(j), o.mat_.column(j)))) return false;
    return true;
}

Subgroup::Subgroup(const PresentedGroup& g, const IntMat& gens) : ambient(g), generators(gens) {
    if (gens.rows() != g.num_generators())
        throw invalid_input("subgroup generators must live in the ambient group");
    lattice = hermite_row_basis(vstack(gens.transpose(), g.relations()));
}

bool Subgroup::contains(const Subgroup& other) const {
    for (std::size_t i = 0; i < other.lattice.rows(); ++i)
        if (!in_lattice(other.lattice.row(i), lattice)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& o) const {
    return ambient == o.ambient && lattice == o.lattice;
}

Subquotient::Subquotient(const PresentedGroup& ambient, const IntMat& z_gens, const IntMat& b_gens)
    : ambient_(ambient), z_(z_gens), b_(b_gens), zsub_(ambient, z_gens) {
    Subgroup bsub(ambient, b_gens);
    if (!zsub_.contains(bsub))
        throw invalid_input("subquotient: B is not contained in Z");

    // relations among the Z generators: {c : Z c lies in <B> + ambient relations}
    const std::size_t t = z_.cols();
    IntMat system = z_.hstack(-b_).hstack(-ambient.relations().transpose());
    IntMat rel = projected_kernel(system, t).transpose();
    q_ = PresentedGroup(t, rel);
    solve_mat_ = z_.hstack(b_).hstack(ambient.relations().transpose());
}

std::optional<IntVec> Subquotient::project(const IntVec& ambient_coords) const {
    auto sol = solve(solve_mat_, ambient_coords);
    if (!sol) return std::nullopt;
    IntVec c(z_.cols());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (*sol)[i];
    return q_.reduce(c);
}

IntVec Subquotient::representative(const IntVec& q_coords) const {
    return z_ * q_coords;
}

KernelResult kernel(const GroupHom& f) {
    f.require_well_defined("kernel");
    const std::size_t n = f.source().num_generators();
    IntMat system = f.matrix().hstack(-f.target().relations().transpose());
    IntMat gens = projected_kernel(system, n);
    // present <gens> / source relations
    Subquotient sq(f.source(), gens, f.source().relations().transpose());
    return {sq.group(), GroupHom(sq.group(), f.source(), gens)};
}

ImageResult image(const GroupHom& f) {
    f.require_well_defined("image");
    Subquotient sq(f.target(), f.matrix(), f.target().relations().transpose());
    return {sq.group(), GroupHom(sq.group(), f.target(), f.matrix())};
}

IntMat preimage_lattice(const GroupHom& f, const Subgroup& s) {
    if (s.ambient != f.target()) throw internal_error("preimage_lattice ambient mismatch");
    const std::size_t n = f.source().num_generators();
    IntMat system = f.matrix().hstack(-s.lattice.transpose());
    return projected_kernel(system, n);
}

bool is_exact_at(const GroupHom& f, const GroupHom& g) {
    if (!(f.target() == g.source())) throw internal_error("is_exact_at: maps not composable");
    Subgroup im(f.target(), f.matrix());
    KernelResult k = kernel(g);
    Subgroup ker(g.source(), k.inclusion.matrix());
    return im == ker;
}

Subquotient subquotient(const PresentedGroup& g, const IntMat& z_gens, const IntMat& b_gens) {
    return Subquotient(g, z_gens, b_gens);
}

}  // namespace excouple

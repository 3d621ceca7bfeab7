#include "excouple/tower.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace excouple {

std::size_t FilteredComplex::rank(long n) const {
    auto it = levels.find(n);
    return it == levels.end() ? 0 : it->second.size();
}

IntMat FilteredComplex::boundary_matrix(long n) const {
    auto it = boundary.find(n);
    if (it != boundary.end()) return it->second;
    return IntMat(rank(n - 1), rank(n));
}

long FilteredComplex::q_min() const {
    long q = std::numeric_limits<long>::max();
    for (const auto& [n, ls] : levels)
        for (long l : ls) q = std::min(q, l);
    return q == std::numeric_limits<long>::max() ? 0 : q;
}

long FilteredComplex::q_max() const {
    long q = std::numeric_limits<long>::min();
    for (const auto& [n, ls] : levels)
        for (long l : ls) q = std::max(q, l);
    return q == std::numeric_limits<long>::min() ? 0 : q;
}

long FilteredComplex::deg_min() const {
    for (const auto& [n, ls] : levels)
        if (!ls.empty()) return n;
    return 0;
}

long FilteredComplex::deg_max() const {
    long d = 0;
    for (const auto& [n, ls] : levels)
        if (!ls.empty()) d = n;
    return d;
}

IntMat FilteredComplex::level_inclusion(long n, long q) const {
    auto it = levels.find(n);
    std::vector<IntVec> cols;
    const std::size_t r = rank(n);
    if (it != levels.end())
        for (std::size_t g = 0; g < it->second.size(); ++g)
            if (it->second[g] >= q) {
                IntVec e(r);
                e[g] = 1;
                cols.push_back(e);
            }
    return IntMat::from_columns(r, cols);
}

void FilteredComplex::check() const {
    for (const auto& [n, d] : boundary) {
        if (d.rows() != rank(n - 1) || d.cols() != rank(n)) {
            std::ostringstream os;
            os << "boundary matrix in degree " << n << " has shape " << d.rows() << "x" << d.cols()
               << ", expected " << rank(n - 1) << "x" << rank(n);
            throw invalid_input(os.str());
        }
    }
    for (const auto& [n, ls] : levels) {
        IntMat d = boundary_matrix(n);
        if (!(boundary_matrix(n - 1) * d).is_zero()) {
            std::ostringstream os;
            os << "d o d != 0 out of degree " << n;
            throw invalid_input(os.str());
        }
        auto below = levels.find(n - 1);
        for (std::size_t g = 0; g < ls.size(); ++g)
            for (std::size_t h = 0; h < d.rows(); ++h)
                if (d(h, g) != 0 && below->second[h] < ls[g]) {
                    std::ostringstream os;
                    os << "filtration is not a subcomplex: d of generator " << g << " in degree "
                       << n << " (level " << ls[g] << ") hits generator " << h << " in degree "
                       << n - 1 << " (level " << below->second[h] << ")";
                    throw invalid_input(os.str());
                }
    }
}

namespace {

/// {x in span(S) : d x in span(T)} as ambient-coordinate generators, in
/// column-Hermite form so a chain generator that is itself a cycle shows up
/// with coefficient +1 (canonical generators keep their sign).
IntMat relative_cycles(const IntMat& d, const IntMat& s, const IntMat& t) {
    IntMat k = kernel_basis((d * s).hstack(-t));
    IntMat a(s.cols(), k.cols());
    for (std::size_t i = 0; i < s.cols(); ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) a(i, j) = k(i, j);
    return hermite_row_basis((s * a).transpose()).transpose();
}

IntVec unit_vec(std::size_t n, std::size_t g) {
    IntVec e(n);
    e[g] = 1;
    return e;
}

IntVec must_project(const Subquotient& sq, const IntVec& v, const char* what) {
    auto coords = sq.project(v);
    if (!coords) throw internal_error(std::string("from_filtered_complex: ") + what +
                                      " fell outside its cycle subgroup");
    return *coords;
}

/// Hom between subquotient groups induced by an ambient matrix on
/// representatives. Registered only between nontrivial spots.
void induced_hom(std::map<Bidegree, GroupHom>& fam, Bidegree key, const Subquotient& src,
                 const Subquotient& tgt, const IntMat& ambient_map, const char* what) {
    if (src.group().is_trivial() || tgt.group().is_trivial()) return;
    std::vector<IntVec> cols;
    const std::size_t n = src.group().num_generators();
    for (std::size_t g = 0; g < n; ++g)
        cols.push_back(must_project(tgt, ambient_map * src.representative(unit_vec(n, g)), what));
    fam.emplace(key, GroupHom(src.group(), tgt.group(),
                              IntMat::from_columns(tgt.group().num_generators(), cols)));
}

}  // namespace

ComplexCouple from_filtered_complex(const FilteredComplex& fc) {
    fc.check();
    ComplexCouple out;
    out.fc = fc;
    const long qlo = fc.q_min(), qhi = fc.q_max();

    BigradedFamily dfam, efam;
    for (const auto& [p, ls] : fc.levels) {
        if (ls.empty()) continue;
        PresentedGroup ambient = PresentedGroup::free(fc.rank(p));
        IntMat d_out = fc.boundary_matrix(p);
        IntMat d_in = fc.boundary_matrix(p + 1);
        for (long q = qlo; q <= qhi; ++q) {
            IntMat s = fc.level_inclusion(p, q);
            IntMat s_up = fc.level_inclusion(p, q + 1);
            // D^{p,q} = H_p(F^q): cycles of F^q over boundaries from F^q.
            IntMat z_abs = relative_cycles(d_out, s, IntMat(fc.rank(p - 1), 0));
            IntMat b_abs = d_in * fc.level_inclusion(p + 1, q);
            Subquotient dsq(ambient, z_abs, b_abs);
            if (!dsq.group().is_trivial()) dfam.set({p, q}, dsq.group());
            out.d_rep.emplace(Bidegree{p, q}, std::move(dsq));
            // E^{p,q} = H_p(F^q/F^{q+1}): cycles rel F^{q+1} over the same
            // boundaries together with F^{q+1} itself.
            IntMat z_rel = relative_cycles(d_out, s, fc.level_inclusion(p - 1, q + 1));
            IntMat b_rel = b_abs.hstack(s_up);
            Subquotient esq(ambient, z_rel, b_rel);
            if (!esq.group().is_trivial()) efam.set({p, q}, esq.group());
            out.e_rep.emplace(Bidegree{p, q}, std::move(esq));
        }
    }

    std::map<Bidegree, GroupHom> imaps, jmaps, kmaps;
    for (const auto& [b, dsq] : out.d_rep) {
        const long p = b.p, q = b.q;
        IntMat idmat = IntMat::identity(fc.rank(p));
        if (q > qlo)  // i: D^{p,q} -> D^{p,q-1}, keyed by its target spot
            induced_hom(imaps, {p, q - 1}, dsq, out.d_rep.at({p, q - 1}), idmat, "i image");
        induced_hom(jmaps, {p, q}, dsq, out.e_rep.at({p, q}), idmat, "j image");
    }
    for (const auto& [b, esq] : out.e_rep) {
        const long p = b.p, q = b.q;
        auto tgt = out.d_rep.find({p - 1, q + 1});
        if (tgt == out.d_rep.end()) continue;  // target trivial (q = qhi or no cells below)
        induced_hom(kmaps, {p, q}, esq, tgt->second, fc.boundary_matrix(p), "connecting image");
    }

    out.couple = ExactCouple::build(1, qlo, std::move(dfam), std::move(efam), std::move(imaps),
                                    std::move(jmaps), std::move(kmaps));
    return out;
}

ExactCouple from_augmented_tower(const AugmentedTowerData& data) {
    ExactCouple c = ExactCouple::build(1, data.d_floor, data.d, data.e, data.i, data.j, data.kappa);
    auto failures = validate(c);
    if (!failures.empty()) {
        std::ostringstream os;
        os << "augmented tower data is not an exact couple:";
        for (const auto& f : failures) os << " [" << f.to_string() << "]";
        throw invalid_input(os.str());
    }
    return c;
}

ExactCouple reindex(const ExactCouple& c, IndexingConvention from, IndexingConvention to) {
    if (from == to) return c;
    // lim-Adams puts at (p,q) what colim-Adams kept at (p+1, q-1).
    const long dp = to == IndexingConvention::lim_adams ? -1 : 1;
    const long dq = -dp;
    auto shift = [&](Bidegree b) { return Bidegree{b.p + dp, b.q + dq}; };
    BigradedFamily d2, e2;
    for (const auto& [b, g] : c.d_family().entries()) d2.set(shift(b), g);
    for (const auto& [b, g] : c.e_family().entries()) e2.set(shift(b), g);
    std::map<Bidegree, GroupHom> i2, j2, k2;
    long pmin, pmax, qmin, qmax;
    if (c.support_box(pmin, pmax, qmin, qmax)) {
        for (long p = pmin - 1; p <= pmax + 1; ++p)
            for (long q = std::min(qmin, c.d_floor()) - 1; q <= qmax + c.level() + 1; ++q) {
                GroupHom i = c.i_hom(p, q), j = c.j_hom(p, q), k = c.kappa_hom(p, q);
                if (!i.source().is_trivial() && !i.target().is_trivial())
                    i2.emplace(shift({p, q}), i);
                if (!j.source().is_trivial() && !j.target().is_trivial())
                    j2.emplace(shift({p, q}), j);
                if (!k.source().is_trivial() && !k.target().is_trivial())
                    k2.emplace(shift({p, q}), k);
            }
    }
    return ExactCouple::build(c.level(), c.d_floor() + dq, std::move(d2), std::move(e2),
                              std::move(i2), std::move(j2), std::move(k2));
}

}  // namespace excouple

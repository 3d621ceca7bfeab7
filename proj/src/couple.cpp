#include "excouple/couple.hpp"

#include <algorithm>
#include <sstream>

namespace excouple {

namespace {

const PresentedGroup kTrivial = PresentedGroup::trivial();

/// Hom assembled from the image of each source generator (columns).
GroupHom hom_from_columns(const PresentedGroup& src, const PresentedGroup& tgt,
                          const std::vector<IntVec>& cols) {
    return GroupHom(src, tgt, IntMat::from_columns(tgt.num_generators(), cols));
}

}  // namespace

void BigradedFamily::set(Bidegree b, PresentedGroup g) {
    groups_[b] = std::move(g);
}

const PresentedGroup& BigradedFamily::at(Bidegree b) const {
    auto it = groups_.find(b);
    return it == groups_.end() ? kTrivial : it->second;
}

ExactCouple ExactCouple::build(int level, long d_floor, BigradedFamily d, BigradedFamily e,
                               std::map<Bidegree, GroupHom> i, std::map<Bidegree, GroupHom> j,
                               std::map<Bidegree, GroupHom> kappa) {
    if (level < 1) throw invalid_input("couple level must be >= 1");
    ExactCouple c;
    c.level_ = level;
    c.d_floor_ = d_floor;
    c.d_ = std::move(d);
    c.e_ = std::move(e);
    c.i_ = std::move(i);
    c.j_ = std::move(j);
    c.kappa_ = std::move(kappa);
    auto check = [&](const std::map<Bidegree, GroupHom>& fam, const char* name,
                     auto src_of, auto tgt_of) {
        for (const auto& [b, h] : fam) {
            if (!(h.source() == src_of(b)) || !(h.target() == tgt_of(b))) {
                std::ostringstream os;
                os << name << " at (" << b.p << "," << b.q << ") has the wrong bidegree or groups";
                throw invalid_input(os.str());
            }
        }
    };
    check(c.i_, "i", [&](Bidegree b) { return c.d_group(b.p, b.q + 1); },
          [&](Bidegree b) { return c.d_group(b.p, b.q); });
    check(c.j_, "j", [&](Bidegree b) { return c.d_group(b.p, b.q); },
          [&](Bidegree b) { return c.e_group(b.p, b.q + level - 1); });
    check(c.kappa_, "kappa", [&](Bidegree b) { return c.e_group(b.p, b.q); },
          [&](Bidegree b) { return c.d_group(b.p - 1, b.q + 1); });
    return c;
}

PresentedGroup ExactCouple::d_group(long p, long q) const {
    if (q < d_floor_) q = d_floor_;  // constant plateau below the floor
    return d_.at({p, q});
}

PresentedGroup ExactCouple::e_group(long p, long q) const {
    return e_.at({p, q});
}

GroupHom ExactCouple::i_hom(long p, long q) const {
    auto it = i_.find({p, q});
    if (it != i_.end()) return it->second;
    if (q < d_floor_) return GroupHom::identity(d_group(p, q));
    return GroupHom::zero(d_group(p, q + 1), d_group(p, q));
}

GroupHom ExactCouple::j_hom(long p, long q) const {
    auto it = j_.find({p, q});
    if (it != j_.end()) return it->second;
    return GroupHom::zero(d_group(p, q), e_group(p, q + level_ - 1));
}

GroupHom ExactCouple::kappa_hom(long p, long q) const {
    auto it = kappa_.find({p, q});
    if (it != kappa_.end()) return it->second;
    return GroupHom::zero(e_group(p, q), d_group(p - 1, q + 1));
}

GroupHom ExactCouple::d_hom(long p, long q) const {
    return j_hom(p - 1, q + 1).compose(kappa_hom(p, q));
}

IntMat ExactCouple::i_power_matrix(long p, long q_top, long k) const {
    IntMat m = IntMat::identity(d_group(p, q_top).num_generators());
    for (long t = q_top - 1; t >= q_top - k; --t) m = i_hom(p, t).matrix() * m;
    return m;
}

bool ExactCouple::support_box(long& pmin, long& pmax, long& qmin, long& qmax) const {
    bool any = false;
    auto fold = [&](const std::map<Bidegree, PresentedGroup>& fam) {
        for (const auto& [b, g] : fam) {
            if (g.is_trivial()) continue;
            if (!any) {
                pmin = pmax = b.p;
                qmin = qmax = b.q;
                any = true;
            } else {
                pmin = std::min(pmin, b.p);
                pmax = std::max(pmax, b.p);
                qmin = std::min(qmin, b.q);
                qmax = std::max(qmax, b.q);
            }
        }
    };
    fold(d_.entries());
    fold(e_.entries());
    return any;
}

std::string ExactnessFailure::to_string() const {
    std::ostringstream os;
    os << kind << " fails at (" << p << "," << q << ")";
    return os.str();
}

std::vector<ExactnessFailure> validate(const ExactCouple& c) {
    std::vector<ExactnessFailure> out;
    long pmin, pmax, qmin, qmax;
    if (!c.support_box(pmin, pmax, qmin, qmax)) return out;
    const long r = c.level();
    // Margin of 2 around the support: one step catches maps leaving the
    // support, the second confirms the plateau/trivial fringe really is exact.
    for (long p = pmin - 2; p <= pmax + 2; ++p)
        for (long q = std::min(qmin, c.d_floor()) - 2; q <= qmax + r + 2; ++q) {
            // at D^{p,q}: im(kappa from E^{p+1,q-1}) = ker(i to D^{p,q-1})
            if (!is_exact_at(c.kappa_hom(p + 1, q - 1), c.i_hom(p, q - 1)))
                out.push_back({"ker(i)=im(kappa) at D", p, q});
            // at D^{p,q}: im(i from D^{p,q+1}) = ker(j)
            if (!is_exact_at(c.i_hom(p, q), c.j_hom(p, q)))
                out.push_back({"ker(j)=im(i) at D", p, q});
            // at E^{p,q}: im(j from D^{p,q-r+1}) = ker(kappa)
            if (!is_exact_at(c.j_hom(p, q - r + 1), c.kappa_hom(p, q)))
                out.push_back({"ker(kappa)=im(j) at E", p, q});
        }
    return out;
}

ExactCouple derive(const ExactCouple& c) {
    const long r = c.level();
    long pmin, pmax, qmin, qmax;
    if (!c.support_box(pmin, pmax, qmin, qmax)) {
        return ExactCouple::build(static_cast<int>(r) + 1, c.d_floor() - 1, {}, {}, {}, {}, {});
    }
    const long floor2 = c.d_floor() - 1;

    // D' = im(i), realized per spot as a subquotient of the old D so that
    // elements can be projected into the new presentation.
    std::map<Bidegree, Subquotient> dsq;
    auto d_prime = [&](long p, long q) -> const Subquotient& {
        Bidegree b{p, std::max(q, floor2)};
        auto it = dsq.find(b);
        if (it != dsq.end()) return it->second;
        PresentedGroup old = c.d_group(b.p, b.q);
        Subquotient sq(old, c.i_hom(b.p, b.q).matrix(), old.relations().transpose());
        return dsq.emplace(b, std::move(sq)).first->second;
    };

    // E' = ker(d)/im(d) inside the old E.
    std::map<Bidegree, Subquotient> esq;
    auto e_prime = [&](long p, long q) -> const Subquotient& {
        Bidegree b{p, q};
        auto it = esq.find(b);
        if (it != esq.end()) return it->second;
        GroupHom d_out = c.d_hom(p, q);
        GroupHom d_in = c.d_hom(p + 1, q - r);
        Subquotient sq(c.e_group(p, q), kernel(d_out).inclusion.matrix(), d_in.matrix());
        return esq.emplace(b, std::move(sq)).first->second;
    };

    auto must_project = [](const Subquotient& sq, const IntVec& v, const char* what) -> IntVec {
        auto coords = sq.project(v);
        if (!coords) throw internal_error(std::string("derive: ") + what +
                                          " left the expected subgroup; couple was not exact");
        return *coords;
    };

    BigradedFamily d2, e2;
    std::map<Bidegree, GroupHom> i2, j2, kappa2;
    // Homs touching a trivial spot are left out; the accessors synthesize the
    // zero map against the canonical trivial group there.
    auto store = [](std::map<Bidegree, GroupHom>& fam, Bidegree key, GroupHom h) {
        if (h.source().is_trivial() || h.target().is_trivial()) return;
        fam.emplace(key, std::move(h));
    };

    for (long p = pmin - 1; p <= pmax + 1; ++p)
        for (long q = std::min(floor2, qmin); q <= qmax + r + 1; ++q) {
            const Subquotient& dq = d_prime(p, q);
            if (!dq.group().is_trivial()) d2.set({p, q}, dq.group());

            // i': restriction of i to the image subgroups.
            const Subquotient& dq1 = d_prime(p, q + 1);
            {
                const IntMat imat = c.i_hom(p, q).matrix();
                std::vector<IntVec> cols;
                for (std::size_t g = 0; g < dq1.group().num_generators(); ++g) {
                    IntVec y = dq1.representative(IntMat::identity(dq1.group().num_generators()).column(g));
                    cols.push_back(must_project(dq, imat * y, "i(im i)"));
                }
                store(i2, {p, q}, hom_from_columns(dq1.group(), dq.group(), cols));
            }

            // j'(i x) = [j x]: lift a representative through i, then push with j.
            {
                const Subquotient& et = e_prime(p, q + r);
                PresentedGroup old = c.d_group(p, q);
                IntMat lift_sys = c.i_hom(p, q).matrix().hstack(old.relations().transpose());
                const GroupHom jn = c.j_hom(p, q + 1);  // D^{p,q+1} -> E^{p,q+r}
                std::vector<IntVec> cols;
                for (std::size_t g = 0; g < dq.group().num_generators(); ++g) {
                    IntVec y = dq.representative(IntMat::identity(dq.group().num_generators()).column(g));
                    auto sol = solve(lift_sys, y);
                    if (!sol) throw internal_error("derive: element of im(i) has no i-preimage");
                    IntVec x(c.d_group(p, q + 1).num_generators());
                    for (std::size_t t = 0; t < x.size(); ++t) x[t] = (*sol)[t];
                    cols.push_back(must_project(et, jn.matrix() * x, "j(lift)"));
                }
                store(j2, {p, q}, hom_from_columns(dq.group(), et.group(), cols));
            }

            // kappa': kappa on ker(d)-representatives lands in im(i).
            {
                const Subquotient& es = e_prime(p, q);
                const Subquotient& dt = d_prime(p - 1, q + 1);
                const IntMat kmat = c.kappa_hom(p, q).matrix();
                std::vector<IntVec> cols;
                for (std::size_t g = 0; g < es.group().num_generators(); ++g) {
                    IntVec z = es.representative(IntMat::identity(es.group().num_generators()).column(g));
                    cols.push_back(must_project(dt, kmat * z, "kappa(ker d)"));
                }
                if (!es.group().is_trivial()) e2.set({p, q}, es.group());
                store(kappa2, {p, q}, hom_from_columns(es.group(), dt.group(), cols));
            }
        }

    return ExactCouple::build(static_cast<int>(r) + 1, floor2, std::move(d2), std::move(e2),
                              std::move(i2), std::move(j2), std::move(kappa2));
}

CyclesBoundaries cycles_boundaries(const ExactCouple& c, int r, long p, long q) {
    if (c.level() != 1) throw invalid_input("cycles_boundaries needs a level-1 couple");
    if (r < 1) throw invalid_input("cycles_boundaries: page index must be >= 1");
    PresentedGroup e1 = c.e_group(p, q);

    // Z_r = kappa^{-1}( im(i^{(r-1)}: D^{p-1,q+r} -> D^{p-1,q+1}) )
    Subgroup target_im(c.d_group(p - 1, q + 1), c.i_power_matrix(p - 1, q + r, r - 1));
    IntMat zgens = preimage_lattice(c.kappa_hom(p, q), target_im);

    // B_r = j( ker(i^{(r-1)}: D^{p,q} -> D^{p,q-r+1}) )
    GroupHom ipow(c.d_group(p, q), c.d_group(p, q - r + 1), c.i_power_matrix(p, q, r - 1));
    IntMat bgens = c.j_hom(p, q).matrix() * kernel(ipow).inclusion.matrix();

    return {Subgroup(e1, zgens), Subgroup(e1, bgens)};
}

namespace {

/// Z_r/B_r as a subquotient, from the subgroup pair.
Subquotient entry_subquotient(const CyclesBoundaries& zb) {
    return Subquotient(zb.z.ambient, zb.z.generators, zb.b.generators);
}

}  // namespace

Page page(const ExactCouple& c, int r) {
    if (c.level() != 1) throw invalid_input("page needs a level-1 couple");
    if (r < 1) throw invalid_input("page index must be >= 1");
    Page out;
    out.r = r;
    long pmin, pmax, qmin, qmax;
    if (!c.support_box(pmin, pmax, qmin, qmax)) return out;

    for (const auto& [b, g] : c.e_family().entries()) {
        if (g.is_trivial()) continue;
        PageEntry entry{entry_subquotient(cycles_boundaries(c, r, b.p, b.q))};
        out.entries.emplace(b, std::move(entry));
    }

    // d_r[z] = [j y] where i^{(r-1)} y = kappa z.
    for (auto& [b, entry] : out.entries) {
        const long p = b.p, q = b.q;
        auto tgt_it = out.entries.find({p - 1, q + r});
        PresentedGroup tgt_group =
            tgt_it == out.entries.end() ? PresentedGroup::trivial() : tgt_it->second.group();
        const std::size_t n = entry.group().num_generators();
        std::vector<IntVec> cols;
        if (tgt_it == out.entries.end()) {
            for (std::size_t g = 0; g < n; ++g) cols.push_back(IntVec(0));
        } else {
            PresentedGroup mid = c.d_group(p - 1, q + 1);
            IntMat lift_sys = c.i_power_matrix(p - 1, q + r, r - 1).hstack(mid.relations().transpose());
            const IntMat kmat = c.kappa_hom(p, q).matrix();
            const IntMat jmat = c.j_hom(p - 1, q + r).matrix();
            for (std::size_t g = 0; g < n; ++g) {
                IntVec z = entry.sq.representative(IntMat::identity(n).column(g));
                auto sol = solve(lift_sys, kmat * z);
                if (!sol) throw internal_error("page: Z_r element's kappa-image does not lift");
                IntVec y(c.d_group(p - 1, q + r).num_generators());
                for (std::size_t t = 0; t < y.size(); ++t) y[t] = (*sol)[t];
                auto coords = tgt_it->second.sq.project(jmat * y);
                if (!coords) throw internal_error("page: d_r image is not an r-cycle");
                cols.push_back(*coords);
            }
        }
        out.differentials.emplace(b, hom_from_columns(entry.group(), tgt_group, cols));
    }
    return out;
}

EInfinityResult e_infinity(const ExactCouple& c, long p, long q) {
    if (c.level() != 1) throw invalid_input("e_infinity needs a level-1 couple");
    long pmin, pmax, qmin, qmax;
    long r_stable = 1;
    if (c.support_box(pmin, pmax, qmin, qmax)) {
        // Z_r freezes once D^{p-1,q+r} leaves the support upward; B_r freezes
        // once i^{(r-1)} has reached the constant plateau.
        r_stable = std::max({long(1), qmax - q + 1, q - c.d_floor() + 1});
    }
    std::vector<CyclesBoundaries> zb;
    for (long r = 1; r <= r_stable; ++r)
        zb.push_back(cycles_boundaries(c, static_cast<int>(r), p, q));
    const CyclesBoundaries& last = zb.back();
    int n = static_cast<int>(r_stable);
    while (n > 1 && zb[n - 2].z == last.z && zb[n - 2].b == last.b) --n;
    EInfinityResult res;
    res.sq = entry_subquotient(zb[n - 1]);
    res.group = res.sq.group();
    res.stabilization_page = n;
    return res;
}

}  // namespace excouple

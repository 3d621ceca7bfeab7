#include "excouple/pairing.hpp"

#include "excouple/fixtures.hpp"

#include <sstream>

namespace excouple {

namespace {

IntVec unit_vec(std::size_t n, std::size_t g) {
    IntVec e(n);
    e[g] = 1;
    return e;
}

/// out = sum_g a[g] * (T[g] * b), padded with zero slices past T.size().
IntVec tensor_apply(const std::vector<IntMat>& T, const IntVec& a, const IntVec& b,
                    std::size_t tgt_n) {
    IntVec out(tgt_n);
    for (std::size_t g = 0; g < a.size() && g < T.size(); ++g) {
        if (a[g] == 0) continue;
        IntVec col = T[g] * b;
        for (std::size_t t = 0; t < tgt_n; ++t) out[t] += a[g] * col[t];
    }
    return out;
}

IntVec scaled(int s, IntVec v) {
    if (s != 1)
        for (auto& c : v) c = -c;
    return v;
}

std::string gen_name(const char* tower, long deg, std::size_t g) {
    std::ostringstream os;
    os << "generator " << g << " of degree " << deg << " in " << tower;
    return os.str();
}

}  // namespace

IntVec TowerPairing::apply(long a, long b, const IntVec& va, const IntVec& vb) const {
    const std::size_t tgt_n = y.rank(a + b);
    auto it = mu.find({a, b});
    if (it == mu.end()) return IntVec(tgt_n);
    return tensor_apply(it->second, va, vb, tgt_n);
}

std::vector<std::string> tower_pairing_violations(const TowerPairing& tp, const SignTable& t) {
    std::vector<std::string> out;
    for (const auto& [key, T] : tp.mu) {
        const auto [a, b] = key;
        if (T.size() != tp.w.rank(a)) {
            out.push_back("tensor at degrees (" + std::to_string(a) + "," + std::to_string(b) +
                          ") has the wrong number of slices");
            continue;
        }
        for (std::size_t g = 0; g < T.size(); ++g)
            if (T[g].rows() != tp.y.rank(a + b) || T[g].cols() != tp.x.rank(b))
                out.push_back("tensor slice for " + gen_name("W", a, g) + " has the wrong shape");
    }
    if (!out.empty()) return out;

    for (const auto& [a, wls] : tp.w.levels)
        for (const auto& [b, xls] : tp.x.levels) {
            const auto yls = tp.y.levels.count(a + b) ? tp.y.levels.at(a + b) : std::vector<long>{};
            for (std::size_t g = 0; g < wls.size(); ++g)
                for (std::size_t h = 0; h < xls.size(); ++h) {
                    IntVec img = tp.apply(a, b, unit_vec(wls.size(), g), unit_vec(xls.size(), h));
                    const long need = wls[g] + xls[h];
                    for (std::size_t u = 0; u < img.size(); ++u)
                        if (img[u] != 0 && yls[u] < need) {
                            std::ostringstream os;
                            os << "mu(" << gen_name("W", a, g) << ", " << gen_name("X", b, h)
                               << ") leaves filtration level " << need << ": it hits "
                               << gen_name("Y", a + b, u) << " of level " << yls[u];
                            out.push_back(os.str());
                        }
                    // graded derivation: d mu(g,h) = mu(dg,h) + (-1)^a mu(g,dh)
                    IntVec lhs = tp.y.boundary_matrix(a + b) * img;
                    IntVec dg = tp.w.boundary_matrix(a).column(g);
                    IntVec dh = tp.x.boundary_matrix(b).column(h);
                    IntVec rhs = vec_add(tp.apply(a - 1, b, dg, unit_vec(xls.size(), h)),
                                         scaled(t.koszul(a), tp.apply(a, b - 1,
                                                                      unit_vec(wls.size(), g), dh)));
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "chain derivation fails on mu(" << gen_name("W", a, g) << ", "
                           << gen_name("X", b, h) << ")";
                        out.push_back(os.str());
                    }
                }
        }
    return out;
}

PairedPages pages_at(const ComplexCouple& w, const ComplexCouple& x, const ComplexCouple& y,
                     int r) {
    return {page(w.couple, r), page(x.couple, r), page(y.couple, r)};
}

PagePairing induce_E1(const TowerPairing& tp, const SignTable& t) {
    auto violations = tower_pairing_violations(tp, t);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "tower pairing rejected:";
        for (const auto& v : violations) os << " [" << v << "]";
        throw invalid_input(os.str());
    }
    ComplexCouple ccw = from_filtered_complex(tp.w);
    ComplexCouple ccx = from_filtered_complex(tp.x);
    ComplexCouple ccy = from_filtered_complex(tp.y);

    PagePairing out;
    out.r = 1;
    for (const auto& [sa, gw] : ccw.couple.e_family().entries()) {
        if (gw.is_trivial()) continue;
        const Subquotient& ew = ccw.e_rep.at(sa);
        for (const auto& [sb, gx] : ccx.couple.e_family().entries()) {
            if (gx.is_trivial()) continue;
            Bidegree tgt{sa.p + sb.p, sa.q + sb.q};
            if (ccy.couple.e_group(tgt.p, tgt.q).is_trivial()) continue;
            const Subquotient& ex = ccx.e_rep.at(sb);
            const Subquotient& ey = ccy.e_rep.at(tgt);
            const std::size_t nw = gw.num_generators(), nx = gx.num_generators();
            std::vector<IntMat> T(nw, IntMat(ey.group().num_generators(), nx));
            bool nonzero = false;
            for (std::size_t g = 0; g < nw; ++g) {
                IntVec zw = ew.representative(unit_vec(nw, g));
                for (std::size_t h = 0; h < nx; ++h) {
                    IntVec zab = tp.apply(sa.p, sb.p, zw, ex.representative(unit_vec(nx, h)));
                    auto coords = ey.project(zab);
                    if (!coords)
                        throw internal_error("induce_E1: product of relative cycles is not one");
                    for (std::size_t u = 0; u < coords->size(); ++u) {
                        T[g](u, h) = (*coords)[u];
                        if ((*coords)[u] != 0) nonzero = true;
                    }
                }
            }
            if (nonzero) out.mu.emplace(std::make_pair(sa, sb), std::move(T));
        }
    }
    return out;
}

std::string LeibnizWitness::to_string() const {
    std::ostringstream os;
    os << "pair (gen " << g << " at (" << left.p << "," << left.q << "), gen " << h << " at ("
       << right.p << "," << right.q << ")) has residual (";
    for (std::size_t u = 0; u < residual.size(); ++u) os << (u ? "," : "") << residual[u];
    os << ") at (" << target.p << "," << target.q << ")";
    return os.str();
}

namespace {

/// mu evaluated between page elements; absent keys/spots are zero.
IntVec page_mu(const PagePairing& pp, Bidegree sa, Bidegree sb, const IntVec& a, const IntVec& b,
               std::size_t tgt_n) {
    auto it = pp.mu.find({sa, sb});
    if (it == pp.mu.end()) return IntVec(tgt_n);
    return tensor_apply(it->second, a, b, tgt_n);
}

std::size_t entry_gens(const Page& pg, Bidegree s) {
    auto it = pg.entries.find(s);
    return it == pg.entries.end() ? 0 : it->second.group().num_generators();
}

}  // namespace

LeibnizReport check_leibniz(const PagePairing& pp, const PairedPages& pages, const SignTable& t) {
    const int r = pages.w.r;
    LeibnizReport rep;
    for (const auto& [sa, ea] : pages.w.entries) {
        const GroupHom& dw = pages.w.differentials.at(sa);
        const Bidegree sa1{sa.p - 1, sa.q + r};
        for (const auto& [sb, eb] : pages.x.entries) {
            const GroupHom& dx = pages.x.differentials.at(sb);
            const Bidegree sb1{sb.p - 1, sb.q + r};
            const Bidegree prod{sa.p + sb.p, sa.q + sb.q};
            const Bidegree tgt{prod.p - 1, prod.q + r};
            auto tgt_it = pages.y.entries.find(tgt);
            if (tgt_it == pages.y.entries.end()) continue;  // residual lands in 0
            const std::size_t tgt_n = tgt_it->second.group().num_generators();

            const std::size_t na = ea.group().num_generators();
            const std::size_t nb = eb.group().num_generators();
            for (std::size_t g = 0; g < na; ++g) {
                IntVec da = dw.matrix().column(g);
                for (std::size_t h = 0; h < nb; ++h) {
                    IntVec db = dx.matrix().column(h);
                    // d_r(a) b + (-1)^p a d_r(b) - d_r(a b)
                    IntVec res = page_mu(pp, sa1, sb, da, unit_vec(nb, h), tgt_n);
                    res = vec_add(res, scaled(t.koszul(sa.p),
                                              page_mu(pp, sa, sb1, unit_vec(na, g), db, tgt_n)));
                    IntVec ab = page_mu(pp, sa, sb, unit_vec(na, g), unit_vec(nb, h),
                                        entry_gens(pages.y, prod));
                    if (auto d_it = pages.y.differentials.find(prod);
                        d_it != pages.y.differentials.end())
                        res = vec_sub(res, d_it->second.matrix() * ab);
                    res = tgt_it->second.group().reduce(res);
                    if (!vec_is_zero(res)) {
                        rep.pass = false;
                        rep.witnesses.push_back({sa, sb, g, h, tgt, res});
                    }
                }
            }
        }
    }
    return rep;
}

PagePairing descend(const PagePairing& pp, const PairedPages& at_r, const PairedPages& at_next,
                    const SignTable& t) {
    if (pp.r != at_r.w.r || at_next.w.r != pp.r + 1)
        throw invalid_input("descend: page indices out of step");
    LeibnizReport rep = check_leibniz(pp, at_r, t);
    if (!rep.pass)
        throw invalid_input("refuses to descend: Leibniz fails at page " + std::to_string(pp.r) +
                            ": " + rep.witnesses.front().to_string());

    PagePairing out;
    out.r = pp.r + 1;
    for (const auto& [sa, ea] : at_next.w.entries) {
        const Subquotient& ra = at_r.w.entries.at(sa).sq;
        for (const auto& [sb, eb] : at_next.x.entries) {
            const Subquotient& rb = at_r.x.entries.at(sb).sq;
            const Bidegree tgt{sa.p + sb.p, sa.q + sb.q};
            auto tgt_next = at_next.y.entries.find(tgt);
            if (tgt_next == at_next.y.entries.end()) continue;
            const Subquotient& rt = at_r.y.entries.at(tgt).sq;

            // evaluate on E_1 representatives: project down to page r, apply
            // mu_r, lift the result back through E_1 into page r+1
            auto evaluate = [&](const IntVec& e1a, const IntVec& e1b) -> IntVec {
                auto ca = ra.project(e1a);
                auto cb = rb.project(e1b);
                if (!ca || !cb)
                    throw internal_error("descend: surviving class misses the lower page");
                IntVec cr = page_mu(pp, sa, sb, *ca, *cb, rt.group().num_generators());
                auto up = tgt_next->second.sq.project(rt.representative(cr));
                if (!up) throw internal_error("descend: product class does not survive");
                return *up;
            };

            const std::size_t na = ea.group().num_generators();
            const std::size_t nb = eb.group().num_generators();
            std::vector<IntMat> T(na, IntMat(tgt_next->second.group().num_generators(), nb));
            bool nonzero = false;
            for (std::size_t g = 0; g < na; ++g) {
                IntVec e1a = ea.sq.representative(unit_vec(na, g));
                for (std::size_t h = 0; h < nb; ++h) {
                    IntVec e1b = eb.sq.representative(unit_vec(nb, h));
                    IntVec val = evaluate(e1a, e1b);
                    // representative independence, one boundary direction at
                    // a time on each side
                    const PresentedGroup& tg = tgt_next->second.group();
                    const IntMat& ba = ea.sq.b_generators();
                    for (std::size_t u = 0; u < ba.cols(); ++u)
                        if (!tg.is_zero_element(
                                vec_sub(val, evaluate(vec_add(e1a, ba.column(u)), e1b))))
                            throw internal_error("descend: value depends on the left rep");
                    const IntMat& bb = eb.sq.b_generators();
                    for (std::size_t u = 0; u < bb.cols(); ++u)
                        if (!tg.is_zero_element(
                                vec_sub(val, evaluate(e1a, vec_add(e1b, bb.column(u))))))
                            throw internal_error("descend: value depends on the right rep");
                    for (std::size_t u = 0; u < val.size(); ++u) {
                        T[g](u, h) = val[u];
                        if (val[u] != 0) nonzero = true;
                    }
                }
            }
            if (nonzero) out.mu.emplace(std::make_pair(sa, sb), std::move(T));
        }
    }
    return out;
}

EInfinityPairing einfinity_pairing(const PagePairing& e1, const ComplexCouple& w,
                                   const ComplexCouple& x, const ComplexCouple& y,
                                   const SignTable& t) {
    if (e1.r != 1) throw invalid_input("einfinity_pairing starts from a page-1 pairing");
    int n = 1;
    for (const ComplexCouple* cc : {&w, &x, &y})
        n = std::max(n, re_infinity_check(cc->couple).max_n);

    EInfinityPairing out;
    out.page_n = n;
    out.product = e1;
    PairedPages cur = pages_at(w, x, y, 1);
    for (int r = 1; r < n; ++r) {
        PairedPages next = pages_at(w, x, y, r + 1);
        out.product = descend(out.product, cur, next, t);
        cur = std::move(next);
    }
    LeibnizReport last = check_leibniz(out.product, cur, t);
    if (!last.pass)
        throw invalid_input("refuses to descend: Leibniz fails at page " + std::to_string(n) +
                            ": " + last.witnesses.front().to_string());
    out.pages = std::move(cur);
    return out;
}

namespace {

/// Chain-level cycle in F^q representing a Gr^q class.
IntVec gr_chain_lift(const AbutmentFiltration& fil, long q, const IntVec& gr_coords) {
    IntVec v = fil.gr.at(q).representative(gr_coords);
    IntMat sys = fil.proj.at(q).hstack(fil.total.relations().transpose());
    auto sol = solve(sys, v);
    if (!sol) throw internal_error("gr_compatibility: filtration class has no lift");
    IntVec c(fil.proj.at(q).cols());
    for (std::size_t u = 0; u < c.size(); ++u) c[u] = (*sol)[u];
    return fil.chain.at(q) * c;
}

/// Coordinates of an e_infinity class in the stabilized page entry (both are
/// Z_N/B_N presentations over the same E_1 ambient).
IntVec to_page_coords(const EInfinityResult& einf, const Page& pg, Bidegree s,
                      const IntVec& coords) {
    if (einf.group.is_trivial()) return IntVec(entry_gens(pg, s));
    auto up = pg.entries.at(s).sq.project(einf.sq.representative(coords));
    if (!up) throw internal_error("gr_compatibility: E_infinity/page presentation mismatch");
    return *up;
}

}  // namespace

GrCompatibilityReport gr_compatibility(const TowerPairing& tp, const SignTable& t) {
    GrCompatibilityReport rep;
    ComplexCouple ccw = from_filtered_complex(tp.w);
    ComplexCouple ccx = from_filtered_complex(tp.x);
    ComplexCouple ccy = from_filtered_complex(tp.y);
    EInfinityPairing einf = einfinity_pairing(induce_E1(tp, t), ccw, ccx, ccy, t);

    for (const auto& [a, wls] : tp.w.levels) {
        if (wls.empty()) continue;
        AbutmentFiltration fw = filtration(ccw, a);
        for (const auto& [b, xls] : tp.x.levels) {
            if (xls.empty()) continue;
            AbutmentFiltration fx = filtration(ccx, b);
            if (!tp.y.levels.count(a + b) || tp.y.levels.at(a + b).empty()) continue;
            AbutmentFiltration fy = filtration(ccy, a + b);

            for (long m = tp.w.q_min(); m <= tp.w.q_max(); ++m) {
                GroupHom gw = gamma(fw, ccw, m);
                EInfinityResult ew = e_infinity(ccw.couple, a, m);
                const std::size_t na = gw.source().num_generators();
                for (long n = tp.x.q_min(); n <= tp.x.q_max(); ++n) {
                    GroupHom gx = gamma(fx, ccx, n);
                    EInfinityResult ex = e_infinity(ccx.couple, b, n);
                    const std::size_t nb = gx.source().num_generators();
                    if (na == 0 || nb == 0) continue;
                    const long qy = m + n;
                    EInfinityResult ey = e_infinity(ccy.couple, a + b, qy);
                    GroupHom gy = qy >= tp.y.q_min() && qy <= tp.y.q_max()
                                      ? gamma(fy, ccy, qy)
                                      : GroupHom::zero(PresentedGroup::trivial(), ey.group);

                    for (std::size_t g = 0; g < na; ++g)
                        for (std::size_t h = 0; h < nb; ++h) {
                            // left side: multiply in the abutment, regrade,
                            // then apply Gamma
                            IntVec za = gr_chain_lift(fw, m, unit_vec(na, g));
                            IntVec zb = gr_chain_lift(fx, n, unit_vec(nb, h));
                            IntVec zab = tp.apply(a, b, za, zb);
                            IntVec lhs(ey.group.num_generators());
                            if (qy >= tp.y.q_min() && qy <= tp.y.q_max()) {
                                auto v = ccy.d_rep.at({a + b, tp.y.q_min()}).project(zab);
                                if (!v)
                                    throw internal_error(
                                        "gr_compatibility: product is not a cycle");
                                auto gr = fy.gr.at(qy).project(*v);
                                if (!gr)
                                    throw internal_error(
                                        "gr_compatibility: product left its filtration level");
                                lhs = gy.matrix() * *gr;
                            } else if (!vec_is_zero(zab)) {
                                rep.pass = false;
                                rep.violations.push_back("product escapes the filtration range");
                                continue;
                            }
                            // right side: Gamma each factor, multiply at E_N
                            IntVec pa = to_page_coords(ew, einf.pages.w, {a, m},
                                                       gw.matrix().column(g));
                            IntVec pb = to_page_coords(ex, einf.pages.x, {b, n},
                                                       gx.matrix().column(h));
                            IntVec pt = page_mu(einf.product, {a, m}, {b, n}, pa, pb,
                                                entry_gens(einf.pages.y, {a + b, qy}));
                            IntVec rhs(ey.group.num_generators());
                            if (!pt.empty()) {
                                auto back = ey.sq.project(
                                    einf.pages.y.entries.at({a + b, qy}).sq.representative(pt));
                                if (!back)
                                    throw internal_error(
                                        "gr_compatibility: page/E_infinity mismatch");
                                rhs = *back;
                            }
                            if (!ey.group.is_zero_element(vec_sub(lhs, rhs))) {
                                rep.pass = false;
                                std::ostringstream os;
                                os << "Gamma(a.b) != mu(Gamma a, Gamma b) for "
                                   << gen_name("Gr W", a, g) << " level " << m << " times "
                                   << gen_name("Gr X", b, h) << " level " << n;
                                rep.violations.push_back(os.str());
                            }
                        }
                }
            }
        }
    }
    return rep;
}

namespace fixtures {

TowerPairing zero_pairing(FilteredComplex w, FilteredComplex x, FilteredComplex y) {
    TowerPairing tp;
    tp.w = std::move(w);
    tp.x = std::move(x);
    tp.y = std::move(y);
    return tp;
}

namespace {

/// Filtered tensor square of a two-generator complex (v in degree 0, e in
/// degree 1) with cross-product pairing; de = m v.
TowerPairing square_of(Int m) {
    FilteredComplex c;
    c.levels[0] = {1};
    c.levels[1] = {0};
    c.boundary[1] = IntMat{{m}};

    FilteredComplex y;
    y.levels[0] = {2};        // v x v
    y.levels[1] = {1, 1};     // e x v, v x e
    y.levels[2] = {0};        // e x e
    y.boundary[1] = IntMat(1, 2);
    y.boundary[2] = IntMat(2, 1);
    y.boundary[1](0, 0) = m;  // d(e x v) = m v x v
    y.boundary[1](0, 1) = m;
    y.boundary[2](0, 0) = -m; // d(e x e) = m v x e - m e x v
    y.boundary[2](1, 0) = m;

    TowerPairing tp;
    tp.w = c;
    tp.x = c;
    tp.y = std::move(y);
    tp.mu[{0, 0}] = {IntMat{{1}}};
    tp.mu[{0, 1}] = {IntMat{{0}, {1}}};  // v x e
    tp.mu[{1, 0}] = {IntMat{{1}, {0}}};  // e x v
    tp.mu[{1, 1}] = {IntMat{{1}}};
    return tp;
}

}  // namespace

TowerPairing torus_pairing() {
    return square_of(0);
}

TowerPairing interval_square_pairing() {
    return square_of(1);
}

TowerPairing unit_pairing(const FilteredComplex& fc) {
    TowerPairing tp;
    tp.w.levels[0] = {0};
    tp.x = fc;
    tp.y = fc;
    for (const auto& [b, ls] : fc.levels)
        if (!ls.empty()) tp.mu[{0, b}] = {IntMat::identity(ls.size())};
    return tp;
}

PagePairing homotopy_pairing(int k, int l, const SignTable& t) {
    if (k < 2 || l < 2) throw invalid_input("homotopy_pairing needs k, l >= 2");
    PagePairing pp;
    pp.r = 1;
    // trivial on the (0,0)-level generator pair; canonical coefficients,
    // wired through the sign table, whenever a level index is 1
    pp.mu[{{k - 1, 1}, {l, 0}}] = {IntMat{{1}}};
    pp.mu[{{k, 0}, {l - 1, 1}}] = {IntMat{{Int(t.homology_boundary(k + l))}}};
    pp.mu[{{k - 1, 1}, {l - 1, 1}}] = {IntMat{{Int(t.kappa_cone(k))}}};
    return pp;
}

}  // namespace fixtures

}  // namespace excouple

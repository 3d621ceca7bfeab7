#include "excouple/signcalc.hpp"

#include <sstream>

namespace excouple {

OrientedCell OrientedCell::disk(int p) {
    OrientedCell c;
    c.kind = Kind::disk;
    c.dim = p;
    return c;
}

OrientedCell OrientedCell::sphere(int p) {
    OrientedCell c;
    c.kind = Kind::sphere;
    c.dim = p;
    return c;
}

OrientedCell OrientedCell::cone(int p) {
    if (p < 1) throw invalid_input("cone CS^{p-1} needs p >= 1");
    OrientedCell c;
    c.kind = Kind::cone;
    c.dim = p;
    return c;
}

OrientedCell OrientedCell::product(OrientedCell a, OrientedCell b) {
    OrientedCell c;
    c.kind = Kind::product;
    c.dim = a.dimension() + b.dimension();
    c.factors = {std::move(a), std::move(b)};
    return c;
}

int OrientedCell::dimension() const {
    return dim;
}

std::string OrientedCell::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::disk: os << "D^" << dim; break;
        case Kind::sphere: os << "S^" << dim; break;
        case Kind::cone: os << "CS^" << dim - 1; break;
        case Kind::product: os << factors[0].name() << "x" << factors[1].name(); break;
    }
    return os.str();
}

bool OrientedCell::operator==(const OrientedCell& o) const {
    return kind == o.kind && dim == o.dim && factors == o.factors;
}

std::vector<SignedCell> boundary_sign(const OrientedCell& cell) {
    if (cell.dimension() < 1) throw invalid_input("boundary of a 0-dimensional cell");
    switch (cell.kind) {
        case OrientedCell::Kind::disk:
            // outward normal first: no frame coordinates precede the collar
            return {{1, OrientedCell::sphere(cell.dim - 1)}};
        case OrientedCell::Kind::sphere:
            return {};  // closed
        case OrientedCell::Kind::cone:
            // cone coordinate last: p-1 sphere coordinates precede it
            return {{SignTable::pow_sign(-1, cell.dim - 1), OrientedCell::sphere(cell.dim - 1)}};
        case OrientedCell::Kind::product: {
            const OrientedCell& m = cell.factors[0];
            const OrientedCell& n = cell.factors[1];
            std::vector<SignedCell> out;
            if (m.dimension() >= 1)
                for (const auto& s : boundary_sign(m))
                    out.push_back({s.sign, OrientedCell::product(s.cell, n)});
            if (n.dimension() >= 1) {
                // the boundary frame slides past all of m's coordinates
                int pass = SignTable::pow_sign(-1, m.dimension());
                for (const auto& s : boundary_sign(n))
                    out.push_back({pass * s.sign, OrientedCell::product(m, s.cell)});
            }
            return out;
        }
    }
    throw internal_error("unreachable cell kind");
}

std::pair<long, long> degree_vector(DegreeTerm term, long p, long q) {
    if (p < 1 || q < 1) throw invalid_input("degree_vector needs p, q >= 1");
    const SignTable& t = SignTable::standard();
    switch (term) {
        case DegreeTerm::jk_product: return {1, 1};
        case DegreeTerm::kx_y: return {1, 0};
        case DegreeTerm::x_ky: return {0, t.homotopy_boundary(p)};
    }
    throw internal_error("unreachable degree term");
}

int convention_sign(SignConvention c, long k) {
    const SignTable& t = SignTable::standard();
    switch (c) {
        case SignConvention::kappa_cone: return t.kappa_cone(k);
        case SignConvention::homotopy_boundary: return t.homotopy_boundary(k);
        case SignConvention::homology_boundary: return t.homology_boundary(k);
        case SignConvention::cohomology_boundary: return t.cohomology_boundary(k);
        case SignConvention::left_suspension: return t.left_suspension;
        case SignConvention::right_suspension: return t.right_suspension;
    }
    throw internal_error("unreachable convention");
}

SignConvention convention_from_name(const std::string& name) {
    if (name == "kappa-cone") return SignConvention::kappa_cone;
    if (name == "homotopy-boundary") return SignConvention::homotopy_boundary;
    if (name == "homology-boundary") return SignConvention::homology_boundary;
    if (name == "cohomology-boundary") return SignConvention::cohomology_boundary;
    if (name == "left-suspension") return SignConvention::left_suspension;
    if (name == "right-suspension") return SignConvention::right_suspension;
    throw invalid_input("unknown sign convention: " + name);
}

const SignTable& SignTable::standard() {
    static const SignTable t;
    return t;
}

bool degree_identity_holds(long bound, const SignTable& t) {
    for (long p = 1; p <= bound; ++p)
        for (long q = 1; q <= bound; ++q) {
            // (1,1) = (1,0) + (-1)^p (0, sign(p)), second coordinate built
            // from the homotopy-boundary convention
            long lhs0 = 1, lhs1 = 1;
            long rhs0 = 1 + 0;
            long rhs1 = 0 + t.koszul(p) * t.homotopy_boundary(p);
            if (lhs0 != rhs0 || lhs1 != rhs1) return false;
        }
    return true;
}

namespace {

FilteredComplex suspend(const FilteredComplex& fc, bool negate_boundary) {
    FilteredComplex out;
    for (const auto& [n, ls] : fc.levels) out.levels[n + 1] = ls;
    for (const auto& [n, d] : fc.boundary) out.boundary[n + 1] = negate_boundary ? -d : d;
    return out;
}

IntMat scale(int s, const IntMat& m) {
    return s == 1 ? m : -m;
}

}  // namespace

ShiftReport suspension_shift_check(const FilteredComplex& fc, const SignTable& t) {
    ShiftReport rep;
    auto fail = [&](const std::string& msg) {
        rep.pass = false;
        rep.failures.push_back(msg);
    };
    ComplexCouple base = from_filtered_complex(fc);
    ComplexCouple left = from_filtered_complex(suspend(fc, true));
    ComplexCouple right = from_filtered_complex(suspend(fc, false));

    const long width = fc.q_max() - fc.q_min() + 1;
    for (int r = 1; r <= static_cast<int>(width) + 1; ++r) {
        Page pb = page(base.couple, r);
        Page pl = page(left.couple, r);
        Page pr = page(right.couple, r);
        for (const auto& [b, entry] : pb.entries) {
            Bidegree s{b.p + 1, b.q};
            std::ostringstream spot;
            spot << "r=" << r << " (" << b.p << "," << b.q << ")";
            if (!pl.entries.count(s) || !(pl.entries.at(s).group() == entry.group())) {
                fail("left shift changed the entry at " + spot.str());
                continue;
            }
            if (!pr.entries.count(s) || !(pr.entries.at(s).group() == entry.group())) {
                fail("right shift changed the entry at " + spot.str());
                continue;
            }
            const IntMat& d = pb.differentials.at(b).matrix();
            if (pl.differentials.at(s).matrix() != scale(t.left_suspension, d))
                fail("left-shift differential is not " +
                     std::string(t.left_suspension == 1 ? "+" : "-") + "d_r at " + spot.str());
            if (pr.differentials.at(s).matrix() != scale(t.right_suspension, d))
                fail("right-shift differential is not " +
                     std::string(t.right_suspension == 1 ? "+" : "-") + "d_r at " + spot.str());
        }
    }
    return rep;
}

}  // namespace excouple

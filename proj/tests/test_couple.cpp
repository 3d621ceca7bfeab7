#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "excouple/couple.hpp"
#include "excouple/fixtures.hpp"
#include "excouple/tower.hpp"
#include "oracle.hpp"

#include <random>
#include <set>

using namespace excouple;

namespace {

std::vector<FilteredComplex> corpus(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<FilteredComplex> out;
    for (int t = 0; t < n; ++t) out.push_back(fixtures::random_filtered_complex(rng));
    return out;
}

/// Same couple with all j maps dropped (deliberate exactness break).
ExactCouple without_j(const ExactCouple& c) {
    return ExactCouple::build(c.level(), c.d_floor(), c.d_family(), c.e_family(), c.i_maps(), {},
                              c.kappa_maps());
}

}  // namespace

TEST_CASE("validate") {
    SUBCASE("couples from filtered complexes are exact") {
        for (const auto& fc : {fixtures::circle(), fixtures::sphere2(), fixtures::d2_jump(),
                               fixtures::counterexample_w(3), fixtures::counterexample_y(2, 3)})
            CHECK(validate(from_filtered_complex(fc).couple).empty());
        for (const auto& fc : corpus(25, 101))
            CHECK(validate(from_filtered_complex(fc).couple).empty());
    }
    SUBCASE("the all-zero couple is exact") {
        CHECK(validate(ExactCouple()).empty());
    }
    SUBCASE("dropping j on a nonzero couple is caught and located") {
        auto cc = from_filtered_complex(fixtures::circle());
        auto report = validate(without_j(cc.couple));
        REQUIRE_FALSE(report.empty());
        bool found = false;
        for (const auto& f : report)
            if (f.kind.find("E") != std::string::npos) found = true;
        CHECK(found);  // exactness at some E spot must name the missing j image
    }
}

TEST_CASE("derive") {
    SUBCASE("trivial filtration: derived couple keeps E") {
        auto cc = from_filtered_complex(fixtures::uniform_level(fixtures::circle(), 0));
        auto c2 = derive(cc.couple);
        CHECK(c2.level() == 2);
        for (const auto& [b, g] : cc.couple.e_family().entries())
            CHECK(invariants(c2.e_group(b.p, b.q)) == invariants(g));
        CHECK(validate(c2).empty());
    }
    SUBCASE("two-cell tower: d_1 is an isomorphism, E_2 = 0") {
        auto cc = from_filtered_complex(fixtures::counterexample_w(3));
        CHECK(invariants(cc.couple.e_group(3, 0)).rank == 1);
        CHECK(invariants(cc.couple.e_group(2, 1)).rank == 1);
        Int d = cc.couple.d_hom(3, 0).matrix()(0, 0);
        CHECK((d == 1 || d == -1));
        auto c2 = derive(cc.couple);
        CHECK(c2.e_family().entries().empty());
    }
    SUBCASE("derived couples validate, levels 2 and 3, random corpus") {
        for (const auto& fc : corpus(12, 202)) {
            auto c2 = derive(from_filtered_complex(fc).couple);
            CHECK(validate(c2).empty());
            CHECK(validate(derive(c2)).empty());
        }
    }
}

TEST_CASE("cycles and boundaries") {
    auto cc = from_filtered_complex(fixtures::counterexample_w(3));
    SUBCASE("r = 1 gives (E_1, 0)") {
        auto zb = cycles_boundaries(cc.couple, 1, 3, 0);
        CHECK(invariants(Subquotient(zb.z.ambient, zb.z.generators, IntMat(zb.z.generators.rows(), 0)).group()) ==
              invariants(cc.couple.e_group(3, 0)));
        CHECK(Subgroup(zb.b.ambient, IntMat(zb.b.generators.rows(), 0)) == zb.b);
    }
    SUBCASE("two-cell tower at (k,0), r = 2: Z_2 = 0") {
        auto zb = cycles_boundaries(cc.couple, 2, 3, 0);
        CHECK(Subquotient(zb.z.ambient, zb.z.generators, zb.b.generators).group().is_trivial());
    }
    SUBCASE("nesting B_r <= B_{r+1} <= Z_{r+1} <= Z_r on random corpus") {
        for (const auto& fc : corpus(10, 303)) {
            auto c = from_filtered_complex(fc).couple;
            for (const auto& [b, g] : c.e_family().entries())
                for (int r = 1; r <= 4; ++r) {
                    auto zb = cycles_boundaries(c, r, b.p, b.q);
                    auto zb2 = cycles_boundaries(c, r + 1, b.p, b.q);
                    CHECK(zb2.b.contains(zb.b));
                    CHECK(zb2.z.contains(zb2.b));
                    CHECK(zb.z.contains(zb2.z));
                }
        }
    }
}

TEST_CASE("page route agrees with iterated derive") {
    for (const auto& fc : corpus(25, 404)) {
        auto cc = from_filtered_complex(fc);
        ExactCouple derived = cc.couple;
        for (int r = 1; r <= 5; ++r) {
            Page pg = page(cc.couple, r);
            // entrywise isomorphism with the derived couple's E
            std::set<Bidegree> seen;
            for (const auto& [b, entry] : pg.entries) {
                CHECK(invariants(entry.group()) == invariants(derived.e_group(b.p, b.q)));
                seen.insert(b);
            }
            for (const auto& [b, g] : derived.e_family().entries())
                if (!g.is_trivial()) CHECK(seen.count(b) == 1);
            // d_r o d_r = 0
            for (const auto& [b, d] : pg.differentials) {
                auto next = pg.differentials.find({b.p - 1, b.q + r});
                if (next != pg.differentials.end()) CHECK(next->second.compose(d).is_zero_map());
            }
            derived = derive(derived);
        }
    }
}

TEST_CASE("nonzero d_2 fixture") {
    auto cc = from_filtered_complex(fixtures::d2_jump());
    Page p1 = page(cc.couple, 1);
    for (const auto& [b, d] : p1.differentials) CHECK(d.is_zero_map());
    Page p2 = page(cc.couple, 2);
    REQUIRE(p2.differentials.count({1, 0}) == 1);
    const GroupHom& d2 = p2.differentials.at({1, 0});
    REQUIRE(d2.matrix().rows() == 1);
    REQUIRE(d2.matrix().cols() == 1);
    CHECK(d2.matrix()(0, 0) == 1);
    Page p3 = page(cc.couple, 3);
    for (const auto& [b, entry] : p3.entries) CHECK(entry.group().is_trivial());
}

TEST_CASE("e_infinity") {
    SUBCASE("trivial filtration stabilizes at page 1") {
        auto cc = from_filtered_complex(fixtures::uniform_level(fixtures::circle(), 0));
        for (const auto& [b, g] : cc.couple.e_family().entries()) {
            auto res = e_infinity(cc.couple, b.p, b.q);
            CHECK(res.stabilization_page == 1);
            CHECK(invariants(res.group) == invariants(g));
        }
    }
    SUBCASE("two-cell tower dies at page 2") {
        auto cc = from_filtered_complex(fixtures::counterexample_w(4));
        auto res = e_infinity(cc.couple, 4, 0);
        CHECK(res.group.is_trivial());
        CHECK(res.stabilization_page == 2);
    }
    SUBCASE("skeletal sphere: E_infinity = E_2 recovers H_*(S^2)") {
        auto cc = from_filtered_complex(fixtures::sphere2());
        for (long p = 0; p <= 2; ++p) {
            std::vector<PresentedGroup> col;
            for (long q = 0; q <= 2; ++q) col.push_back(e_infinity(cc.couple, p, q).group);
            auto inv = invariants(oracle::direct_sum(col));
            CHECK(inv.rank == (p == 1 ? 0u : 1u));
            CHECK(inv.torsion.empty());
        }
    }
    SUBCASE("associated graded matches total homology on random corpus") {
        for (const auto& fc : corpus(20, 505)) {
            auto cc = from_filtered_complex(fc);
            for (long p = fc.deg_min(); p <= fc.deg_max(); ++p) {
                std::vector<PresentedGroup> col;
                for (long q = fc.q_min(); q <= fc.q_max(); ++q)
                    col.push_back(e_infinity(cc.couple, p, q).group);
                CHECK(invariants(oracle::direct_sum(col)) ==
                      oracle::homology_invariants(fc.boundary_matrix(p), fc.boundary_matrix(p + 1)));
            }
        }
    }
    SUBCASE("pages freeze beyond the filtration width") {
        for (const auto& fc : corpus(10, 606)) {
            auto cc = from_filtered_complex(fc);
            long w = fc.q_max() - fc.q_min() + 1;
            Page a = page(cc.couple, static_cast<int>(w) + 1);
            Page b = page(cc.couple, static_cast<int>(w) + 2);
            for (const auto& [bd, entry] : a.entries)
                CHECK(invariants(entry.group()) ==
                      invariants(b.entries.count(bd) ? b.entries.at(bd).group()
                                                     : PresentedGroup::trivial()));
        }
    }
}

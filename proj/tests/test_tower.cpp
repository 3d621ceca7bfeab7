#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "excouple/fixtures.hpp"
#include "excouple/tower.hpp"
#include "oracle.hpp"

#include <random>

using namespace excouple;

TEST_CASE("filtered complex checks") {
    SUBCASE("boundary shape mismatch") {
        FilteredComplex fc;
        fc.levels[0] = {0};
        fc.levels[1] = {0};
        fc.boundary[1] = IntMat(2, 1);
        CHECK_THROWS_AS(fc.check(), invalid_input);
    }
    SUBCASE("d o d != 0") {
        FilteredComplex fc;
        fc.levels[0] = {0};
        fc.levels[1] = {0};
        fc.levels[2] = {0};
        fc.boundary[1] = IntMat{{1}};
        fc.boundary[2] = IntMat{{1}};
        CHECK_THROWS_AS(fc.check(), invalid_input);
    }
    SUBCASE("filtration leaves the subcomplex, offender named") {
        FilteredComplex fc;
        fc.levels[0] = {0};  // target below the source's level
        fc.levels[1] = {1};
        fc.boundary[1] = IntMat{{1}};
        try {
            fc.check();
            FAIL("expected rejection");
        } catch (const invalid_input& e) {
            CHECK(std::string(e.what()).find("generator 0 in degree 1") != std::string::npos);
        }
    }
    SUBCASE("random corpus passes its own check") {
        std::mt19937 rng(77);
        for (int t = 0; t < 50; ++t) CHECK_NOTHROW(fixtures::random_filtered_complex(rng).check());
    }
}

TEST_CASE("from_filtered_complex E_1 layout") {
    SUBCASE("trivial filtration concentrates E_1 = H_*(C) in one column") {
        auto cc = from_filtered_complex(fixtures::uniform_level(fixtures::circle(), 0));
        CHECK(invariants(cc.couple.e_group(0, 0)).rank == 1);
        CHECK(invariants(cc.couple.e_group(1, 0)).rank == 1);
        CHECK(cc.couple.e_family().entries().size() == 2);
        for (const auto& [b, d] : page(cc.couple, 1).differentials) CHECK(d.is_zero_map());
    }
    SUBCASE("two-step circle") {
        auto cc = from_filtered_complex(fixtures::circle());
        CHECK(invariants(cc.couple.e_group(0, 1)).rank == 1);
        CHECK(invariants(cc.couple.e_group(1, 0)).rank == 1);
        CHECK(cc.couple.d_hom(1, 0).is_zero_map());
        // E_infinity recovers H_*(S^1)
        CHECK(invariants(e_infinity(cc.couple, 0, 1).group).rank == 1);
        CHECK(invariants(e_infinity(cc.couple, 1, 0).group).rank == 1);
    }
    SUBCASE("two-cell tower: columns Z with d_1 the identity on canonical generators") {
        for (int k = 2; k <= 5; ++k) {
            auto cc = from_filtered_complex(fixtures::counterexample_w(k));
            CHECK(invariants(cc.couple.e_group(k, 0)).rank == 1);
            CHECK(invariants(cc.couple.e_group(k - 1, 1)).rank == 1);
            // canonical generator goes to canonical generator, no sign
            CHECK(cc.couple.d_hom(k, 0).matrix() == IntMat{{1}});
        }
    }
    SUBCASE("homology groups are represented by chain subquotients") {
        // circle: the 1-cycle class in E_1^{1,0} is the 1-cell itself
        auto cc = from_filtered_complex(fixtures::circle());
        const Subquotient& sq = cc.e_rep.at({1, 0});
        CHECK(sq.representative(IntVec{1}) == IntVec{1});
        CHECK(sq.project(IntVec{3}).has_value());
        CHECK((*sq.project(IntVec{3}))[0] == 3);
    }
}

TEST_CASE("from_augmented_tower") {
    SUBCASE("round trip through couple data") {
        std::mt19937 rng(88);
        for (int t = 0; t < 10; ++t) {
            auto cc = from_filtered_complex(fixtures::random_filtered_complex(rng));
            AugmentedTowerData data{cc.couple.d_floor(), cc.couple.d_family(),
                                    cc.couple.e_family(), cc.couple.i_maps(), cc.couple.j_maps(),
                                    cc.couple.kappa_maps()};
            ExactCouple c2 = from_augmented_tower(data);
            for (int r = 1; r <= 3; ++r) {
                Page a = page(cc.couple, r), b = page(c2, r);
                REQUIRE(a.entries.size() == b.entries.size());
                for (const auto& [bd, entry] : a.entries)
                    CHECK(invariants(entry.group()) == invariants(b.entries.at(bd).group()));
            }
        }
    }
    SUBCASE("all-trivial tower") {
        CHECK(from_augmented_tower(AugmentedTowerData{}).e_family().entries().empty());
    }
    SUBCASE("broken kappa is rejected with the failing spot") {
        auto cc = from_filtered_complex(fixtures::counterexample_w(2));
        AugmentedTowerData data{cc.couple.d_floor(), cc.couple.d_family(), cc.couple.e_family(),
                                cc.couple.i_maps(), cc.couple.j_maps(), {}};
        try {
            from_augmented_tower(data);
            FAIL("expected rejection");
        } catch (const invalid_input& e) {
            CHECK(std::string(e.what()).find("fails at (") != std::string::npos);
        }
    }
}

TEST_CASE("reindexing") {
    std::mt19937 rng(99);
    SUBCASE("colim -> lim -> colim is the identity") {
        for (int t = 0; t < 10; ++t) {
            auto c = from_filtered_complex(fixtures::random_filtered_complex(rng)).couple;
            auto lim = reindex(c, IndexingConvention::colim_adams, IndexingConvention::lim_adams);
            auto back = reindex(lim, IndexingConvention::lim_adams, IndexingConvention::colim_adams);
            CHECK(back.d_floor() == c.d_floor());
            CHECK(back.e_family().entries().size() == c.e_family().entries().size());
            for (const auto& [b, g] : c.e_family().entries()) CHECK(back.e_family().at(b) == g);
            for (const auto& [b, g] : c.d_family().entries()) CHECK(back.d_family().at(b) == g);
        }
    }
    SUBCASE("entries move to the relabeled spot with the same groups") {
        auto c = from_filtered_complex(fixtures::sphere2()).couple;
        auto lim = reindex(c, IndexingConvention::colim_adams, IndexingConvention::lim_adams);
        CHECK(validate(lim).empty());
        for (const auto& [b, g] : c.e_family().entries())
            CHECK(invariants(lim.e_family().at({b.p - 1, b.q + 1})) == invariants(g));
        // pages are label-shifted but otherwise identical
        Page a = page(c, 2), b = page(lim, 2);
        for (const auto& [bd, entry] : a.entries)
            CHECK(invariants(entry.group()) ==
                  invariants(b.entries.at({bd.p - 1, bd.q + 1}).group()));
    }
    SUBCASE("reindexed couples stay exact on corpus") {
        for (int t = 0; t < 6; ++t) {
            auto c = from_filtered_complex(fixtures::random_filtered_complex(rng)).couple;
            CHECK(validate(reindex(c, IndexingConvention::colim_adams,
                                   IndexingConvention::lim_adams))
                      .empty());
        }
    }
}

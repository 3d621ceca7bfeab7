#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "excouple/convergence.hpp"
#include "excouple/fixtures.hpp"
#include "oracle.hpp"

#include <random>

using namespace excouple;

namespace {

bool is_iso(const GroupHom& h) {
    if (!kernel(h).group.is_trivial()) return false;
    return Subgroup(h.target(), h.matrix()) ==
           Subgroup(h.target(), IntMat::identity(h.target().num_generators()));
}

}  // namespace

TEST_CASE("abutment filtration") {
    SUBCASE("circle") {
        auto cc = from_filtered_complex(fixtures::circle());
        auto f0 = filtration(cc, 0);
        CHECK(invariants(f0.total).rank == 1);
        // the 0-cell sits at level 1, so F^0 = F^1 = everything
        CHECK(f0.f.at(0) == f0.f.at(1));
        CHECK(invariants(f0.gr.at(1).group()).rank == 1);
        CHECK(f0.gr.at(0).group().is_trivial());
        auto f1 = filtration(cc, 1);
        CHECK(invariants(f1.total).rank == 1);
        CHECK(invariants(f1.gr.at(0).group()).rank == 1);
        CHECK(f1.f.at(1).generators.cols() == 0);
    }
    SUBCASE("sphere: the 2-cell drops out of F^1") {
        auto cc = from_filtered_complex(fixtures::sphere2());
        auto f2 = filtration(cc, 2);
        CHECK(invariants(f2.gr.at(0).group()).rank == 1);
        CHECK(f2.gr.at(1).group().is_trivial());
        CHECK(f2.gr.at(2).group().is_trivial());
    }
    SUBCASE("empty degree gives the trivial filtration") {
        auto cc = from_filtered_complex(fixtures::circle());
        auto f5 = filtration(cc, 5);
        CHECK(f5.total.is_trivial());
        for (const auto& [q, g] : f5.gr) CHECK(g.group().is_trivial());
    }
    SUBCASE("mass balance against the direct homology oracle") {
        std::mt19937 rng(77);
        for (int t = 0; t < 20; ++t) {
            auto fc = fixtures::random_filtered_complex(rng);
            auto cc = from_filtered_complex(fc);
            for (const auto& [p, ls] : fc.levels) {
                auto h = oracle::homology_invariants(fc.boundary_matrix(p),
                                                     fc.boundary_matrix(p + 1));
                auto fil = filtration(cc, p);
                CHECK(invariants(fil.total) == h);
                std::size_t rank_sum = 0;
                Int torsion_order = 1;
                for (const auto& [q, gr] : fil.gr) {
                    auto inv = invariants(gr.group());
                    rank_sum += inv.rank;
                    for (const Int& d : inv.torsion) torsion_order *= d;
                }
                Int h_order = 1;
                for (const Int& d : h.torsion) h_order *= d;
                CHECK(rank_sum == h.rank);
                CHECK(torsion_order == h_order);
            }
        }
    }
}

TEST_CASE("gamma compares the graded pieces with E_infinity") {
    SUBCASE("trivial filtration concentrates in one column") {
        auto fc = fixtures::uniform_level(fixtures::circle(), 0);
        auto cc = from_filtered_complex(fc);
        for (long p = 0; p <= 1; ++p) {
            auto fil = filtration(cc, p);
            CHECK(is_iso(gamma(fil, cc, 0)));
        }
    }
    SUBCASE("acyclic tower: zero abutment, every graded piece vanishes") {
        auto cc = from_filtered_complex(fixtures::counterexample_y(3, 2));
        for (long p = 3; p <= 4; ++p) {
            auto fil = filtration(cc, p);
            CHECK(fil.total.is_trivial());
            for (const auto& [q, gr] : fil.gr) {
                GroupHom g = gamma(fil, cc, q);
                CHECK(g.source().is_trivial());
                CHECK(g.target().is_trivial());
            }
        }
    }
    SUBCASE("isomorphism across the random corpus") {
        std::mt19937 rng(501);
        for (int t = 0; t < 20; ++t) {
            auto fc = fixtures::random_filtered_complex(rng);
            auto cc = from_filtered_complex(fc);
            for (const auto& [p, ls] : fc.levels) {
                auto fil = filtration(cc, p);
                for (long q = fc.q_min(); q <= fc.q_max(); ++q) {
                    // gamma re-verifies well-definedness on perturbed lifts
                    // internally; any dependence on the lift throws
                    GroupHom g = gamma(fil, cc, q);
                    CHECK(is_iso(g));
                    CHECK(invariants(g.source()) == invariants(g.target()));
                }
            }
        }
    }
}

TEST_CASE("stabilization and Mittag-Leffler certificates") {
    SUBCASE("stabilization pages match e_infinity") {
        auto cc = from_filtered_complex(fixtures::d2_jump());
        auto rep = re_infinity_check(cc.couple);
        CHECK(rep.all_stabilize);
        CHECK(rep.max_n == 3);  // the d_2 jump needs page 3 to settle
        CHECK(rep.page_n.at({0, 2}) == 3);
        CHECK(rep.page_n.at({1, 0}) == 3);
    }
    SUBCASE("bounded towers always freeze") {
        std::mt19937 rng(902);
        for (int t = 0; t < 15; ++t) {
            auto fc = fixtures::random_filtered_complex(rng);
            auto cc = from_filtered_complex(fc);
            for (const auto& [p, ls] : fc.levels) {
                auto cert = mittag_leffler(cc.couple, p);
                CHECK(cert.lim1_zero);
                for (const auto& [q, k] : cert.stable_at)
                    CHECK(k <= fc.q_max() - q + 1);
            }
        }
    }
    SUBCASE("images freeze at zero once the source leaves the support") {
        auto cc = from_filtered_complex(fixtures::sphere2());
        auto cert = mittag_leffler(cc.couple, 0);
        // H_0(F^q) = Z for q <= 2 with identity maps, 0 above: the image
        // chain Z = Z = Z > 0 settles exactly when the source vanishes
        CHECK(cert.stable_at.at(0) == 3);
        CHECK(cert.stable_at.at(1) == 2);
        CHECK(cert.stable_at.at(2) == 1);
    }
}

TEST_CASE("convergence verdicts") {
    SUBCASE("colim-indexed clauses") {
        auto cc = from_filtered_complex(fixtures::circle());
        auto v = verdict(cc, IndexingConvention::colim_adams);
        CHECK(v.strong_convergence);
        CHECK(v.gamma_injective);
        CHECK(v.gamma_iso);
        REQUIRE(v.clauses.size() == 3);
        CHECK(v.clauses[0].substr(0, 3) == "(a)");
        CHECK(v.clauses[1].substr(0, 3) == "(b)");
        CHECK(v.clauses[2].substr(0, 3) == "(d)");
        CHECK(v.notes.empty());
    }
    SUBCASE("lim-indexed clauses check the relabeled grid") {
        auto cc = from_filtered_complex(fixtures::d2_jump());
        auto v = verdict(cc, IndexingConvention::lim_adams);
        CHECK(v.strong_convergence);
        REQUIRE(v.clauses.size() == 3);
        CHECK(v.clauses[0].substr(0, 3) == "(i)");
        CHECK(v.clauses[1].substr(0, 4) == "(ii)");
        CHECK(v.clauses[2].substr(0, 5) == "(iii)");
    }
    SUBCASE("multiple graded layers leave an extension note") {
        FilteredComplex fc;
        fc.levels[0] = {0, 2};  // H_0 = Z^2 spread over two filtration levels
        auto v = verdict(from_filtered_complex(fc));
        CHECK(v.strong_convergence);
        REQUIRE(v.notes.size() == 1);
        CHECK(v.notes[0].find("extension problem in degree 0") != std::string::npos);
    }
    SUBCASE("random corpus converges strongly under both conventions") {
        std::mt19937 rng(3131);
        for (int t = 0; t < 10; ++t) {
            auto cc = from_filtered_complex(fixtures::random_filtered_complex(rng));
            CHECK(verdict(cc, IndexingConvention::colim_adams).strong_convergence);
            CHECK(verdict(cc, IndexingConvention::lim_adams).strong_convergence);
        }
    }
}

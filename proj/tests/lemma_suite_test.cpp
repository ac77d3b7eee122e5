#include <gtest/gtest.h>

#include <vector>

#include "cohult/coherent_system.hpp"
#include "cohult/report.hpp"
#include "cohult/suites.hpp"

using namespace cohult;

namespace {

// Independent statement of coherence: the two-bullet conjunction, evaluated
// directly over all subsets without the pullback-equivalence shortcut used
// by find_coherence_violation.
bool coherent_by_two_bullets(const CoherentFilterSystem& f) {
    for (const IndexTuple& b : f.tuples()) {
        for (const IndexTuple& a : f.tuples()) {
            if (a == b || !a.subset_of(b)) continue;
            std::uint32_t ka = static_cast<std::uint32_t>(a.size());
            std::uint32_t kb = static_cast<std::uint32_t>(b.size());
            // Bullet 1: members of F_a pull back into F_b.
            std::uint64_t na = cube_size(f.base(), ka);
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << na);
                 ++bits) {
                CubeSubset x = cube_of_bits(f.base(), ka, bits);
                if (f.component(a).member(x) &&
                    !f.component(b).member(pullback(x, a, b))) {
                    return false;
                }
            }
            // Bullet 2: full-over-a members of F_b project into F_a.
            std::uint64_t nb = cube_size(f.base(), kb);
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << nb);
                 ++bits) {
                CubeSubset x = cube_of_bits(f.base(), kb, bits);
                if (f.component(b).member(x) && is_full_over(x, a, b) &&
                    !f.component(a).member(pushforward(x, b, a))) {
                    return false;
                }
            }
        }
    }
    return true;
}

TEST(CoherenceCharacterization, MatchesTwoBulletForm) {
    // Coherent families agree with the two-bullet form...
    for (const auto& sys : enumerate_proper_coherent_systems(2, 2, 2)) {
        EXPECT_EQ(check_coherence(sys), coherent_by_two_bullets(sys));
        EXPECT_TRUE(check_coherence(sys));
    }
    // ...and so do arbitrary principal assignments, coherent or not.
    for (std::uint64_t p0 = 0; p0 < 2; ++p0) {
        for (std::uint64_t p1 = 0; p1 < 2; ++p1) {
            for (std::uint64_t p01 = 0; p01 < 4; ++p01) {
                CoherentFilterSystem sys(2, 2, 2);
                sys.set_component(IndexTuple{0}, FiniteFilter::principal(
                                                     cube_point(2, 1, p0)));
                sys.set_component(IndexTuple{1}, FiniteFilter::principal(
                                                     cube_point(2, 1, p1)));
                sys.set_component(
                    IndexTuple{0, 1},
                    FiniteFilter::principal(cube_point(2, 2, p01)));
                EXPECT_EQ(check_coherence(sys), coherent_by_two_bullets(sys));
            }
        }
    }
}

TEST(LemmaSuite, DefaultGridPasses) {
    Report report;
    run_lemma_suite(report, SuiteBudgets{});
    EXPECT_TRUE(report.all_pass()) << report.to_text();
    EXPECT_EQ(report.at("lemma.nicefull.pass"), "true");
    EXPECT_EQ(report.at("lemma.duud.pass"), "true");
    EXPECT_EQ(report.at("lemma.extfip.pass"), "true");
    EXPECT_EQ(report.at("lemma.onestep.pass"), "true");
    // The grid is exhaustive, so the case counts are fixed numbers; pin
    // them to catch silent quantifier shrinkage.
    EXPECT_EQ(report.at("lemma.fullification.cases"), "100");
    EXPECT_EQ(report.at("lemma.nicefull.cases"), "242");
    EXPECT_EQ(report.at("lemma.duud.cases"), "130");
    EXPECT_EQ(report.at("lemma.extfip.cases"), "726");
    EXPECT_EQ(report.at("lemma.onestep.cases"), "192");
}

TEST(OneStepExtend, ClosurePropagatesToIncomparableTuples) {
    // F_{0,1} concentrated on the anti-diagonal, short components trivial.
    // Extending at {0} by the point (0) forces (0,1) at the top, whose
    // projection {(1)} must reach F_{1} even though {1} is incomparable
    // with {0}; the result is the principal family along g = (0,1).
    CoherentFilterSystem f(2, 2, 2);
    f.set_component(IndexTuple{0, 1},
                    FiniteFilter::principal(cube_of_bits(2, 2, 0b0110)));
    ASSERT_TRUE(check_coherence(f));
    CoherentFilterSystem ext = one_step_extend(
        f, IndexTuple{0}, FiniteFilter::principal(cube_of_bits(2, 1, 0b01)));
    EXPECT_TRUE(ext.proper());
    EXPECT_TRUE(check_coherence(ext));
    EXPECT_EQ(ext.component(IndexTuple{1}).core().bits, 0b10u);
    EXPECT_EQ(ext.component(IndexTuple{0, 1}).core().bits, 0b0100u);
    auto g = complete_to_ultra(f).witness_point();
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(*g, (std::vector<std::uint32_t>{0, 1}));
}

TEST(OneStepExtend, IsLeastCoherentExtension) {
    // Property: over the exhaustive |A| = 2, lambda = 2 grid, the one-step
    // output is below every coherent family that extends F and whose
    // a-component swallows F*_a.
    auto systems = enumerate_proper_coherent_systems(2, 2, 2);
    auto shape = all_tuples(2, 2);
    for (const auto& f : systems) {
        for (const IndexTuple& a : shape) {
            const CubeSubset& core = f.component(a).core();
            std::uint64_t n = cube_size(2, static_cast<std::uint32_t>(a.size()));
            for (std::uint64_t cb = 1; cb < (std::uint64_t{1} << n); ++cb) {
                if ((cb & ~core.bits) != 0) continue;
                FiniteFilter star = f.component(a).extended_with(
                    cube_of_bits(2, static_cast<std::uint32_t>(a.size()), cb));
                CoherentFilterSystem ext = one_step_extend(f, a, star);
                for (const auto& g : systems) {
                    if (g.extends(f) && g.component(a).extends(star)) {
                        EXPECT_TRUE(g.extends(ext));
                    }
                }
            }
        }
    }
}

TEST(OneStepExtend, ArityCappedShapeCanForceImproper) {
    // With the arity capped below lambda, incomparable top tuples can hold
    // jointly unsatisfiable cores: diagonals on {0,1} and {1,2} but the
    // anti-diagonal on {0,2}.  The family is proper and coherent, yet any
    // coherent extension deciding F_{0} past the diagonal is improper, and
    // the closure faithfully reports that.
    CoherentFilterSystem f(2, 3, 2);
    CubeSubset diag = cube_of_bits(2, 2, 0b1001);
    CubeSubset anti = cube_of_bits(2, 2, 0b0110);
    f.set_component(IndexTuple{0, 1}, FiniteFilter::principal(diag));
    f.set_component(IndexTuple{1, 2}, FiniteFilter::principal(diag));
    f.set_component(IndexTuple{0, 2}, FiniteFilter::principal(anti));
    ASSERT_TRUE(f.proper());
    ASSERT_TRUE(check_coherence(f));
    CoherentFilterSystem ext = one_step_extend(
        f, IndexTuple{0}, FiniteFilter::principal(cube_of_bits(2, 1, 0b01)));
    EXPECT_FALSE(ext.proper());
    EXPECT_TRUE(check_coherence(ext));
    // Improperness is uniform across the family.
    for (const IndexTuple& t : ext.tuples()) {
        EXPECT_EQ(ext.component(t).core().bits, 0u);
    }
}

TEST(LemmaSuite, BadFullifyMutantIsCaught) {
    Report report;
    run_lemma_suite(report, SuiteBudgets{}, SuiteHooks::bad_fullify());
    EXPECT_GT(report.failures(), 0u);
    EXPECT_EQ(report.at("lemma.fullification.pass"), "false");
    EXPECT_TRUE(report.has("lemma.fullification.counterexample"));
}

TEST(LemmaSuite, BudgetRefusal) {
    SuiteBudgets huge;
    huge.max_base = 4;
    huge.max_lambda = 4;
    huge.max_arity = 3;
    Report report;
    EXPECT_THROW(run_lemma_suite(report, huge), BudgetError);
}

TEST(CompletionSuite, CompletionsStayProperOnGrid) {
    Report report;
    run_completion_suite(report, SuiteBudgets{});
    EXPECT_TRUE(report.all_pass()) << report.to_text();
    EXPECT_EQ(report.at("completion.count.base1"), "1");
    EXPECT_EQ(report.at("completion.count.base2"), "4");
    EXPECT_EQ(report.at("completion.count.base3"), "9");
}

TEST(ProductSuite, MatchesSectionsOracle) {
    Report report;
    run_product_suite(report, SuiteBudgets{});
    EXPECT_TRUE(report.all_pass()) << report.to_text();
    EXPECT_GT(std::stoull(report.at("product.comparisons")), 100000u);
}

TEST(Suites, ReportsAreDeterministic) {
    Report r1, r2;
    run_lemma_suite(r1, SuiteBudgets{});
    run_lemma_suite(r2, SuiteBudgets{});
    run_product_suite(r1, SuiteBudgets{});
    run_product_suite(r2, SuiteBudgets{});
    EXPECT_EQ(r1.to_text(), r2.to_text());
}

}  // namespace

#include <gtest/gtest.h>

#include <optional>
#include <string>
#include <vector>

#include "cohult/corpus.hpp"
#include "cohult/linear.hpp"
#include "cohult/parser.hpp"
#include "cohult/prng.hpp"
#include "lp_oracle.hpp"

using namespace cohult;

namespace {

Structure line() { return Structure::vector_space({"one"}); }
Structure plane() { return Structure::vector_space({"one", "eps"}); }

// ---------------------------------------------------------------------------
// Affine forms and the formula translation
// ---------------------------------------------------------------------------

TEST(AffineTest, TermToAffine) {
    Structure m = line();
    Affine a = term_to_affine(m, parse_term("(+ (scl 2 x) one)"));
    EXPECT_EQ(a.coeffs.size(), 1u);
    EXPECT_EQ(a.coeffs.at("x"), Rat(2));
    EXPECT_EQ(a.cst, el_basis(0));

    // coefficients cancel exactly
    Affine b = term_to_affine(m, parse_term("(+ x (- x))"));
    EXPECT_TRUE(b.coeffs.empty());
    EXPECT_EQ(b.cst, el_zero());

    EXPECT_THROW(term_to_affine(m, parse_term("(f x)")), VocabularyError);
}

TEST(AffineTest, EvalMatchesTermEval) {
    Structure n = plane();
    Prng rng(kDefaultSeed);
    for (int i = 0; i < 50; ++i) {
        TermPtr t = random_ovs_term(ovs_constant_pool(n), {"x", "y"}, 3, rng);
        ElemMap w{{"x", el_basis(1, rat(1, 2))},
                  {"y", el_add(el_basis(0), el_basis(1, Rat(-2)))}};
        EXPECT_EQ(af_eval(term_to_affine(n, t), w), eval_term(n, t, w))
            << term_str(t);
    }
}

TEST(AffineTest, FormulaToSystemsShape) {
    Structure m = line();
    // one conjunctive disjunct
    auto sys = formula_to_systems(m, parse_formula("(and (< 0 x) (< x one))"));
    ASSERT_EQ(sys.size(), 1u);
    EXPECT_EQ(sys[0].vars, std::vector<std::string>{"x"});
    EXPECT_EQ(sys[0].constraints.size(), 2u);

    // or splits, negated equality splits
    EXPECT_EQ(formula_to_systems(m, parse_formula("(or (< x 0) (< one x))")).size(),
              2u);
    EXPECT_EQ(formula_to_systems(m, parse_formula("(not (= x 0))")).size(), 2u);
    // (A or B) and (C or D) -> four disjuncts
    EXPECT_EQ(formula_to_systems(
                  m, parse_formula("(and (or (< x 0) (< 0 x)) (or (= x x) (< x one)))"))
                  .size(),
              4u);
    // negated < weakens
    auto le = formula_to_systems(m, parse_formula("(not (< x 0))"));
    ASSERT_EQ(le.size(), 1u);
    EXPECT_EQ(le[0].constraints[0].rel, Rel::Le);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin: pinned witnesses
// ---------------------------------------------------------------------------

// The documented determinism rules: equalities substitute first, two-sided
// intervals take the midpoint, one-sided bounds step by the leading basis
// vector, unconstrained variables take 0.
struct Pinned {
    const char* formula;
    const char* witness;  // "var=elem var=elem" or "UNSAT"
};

const Pinned kPinned[] = {
    {"(and (< 0 x) (< x one))", "x=1/2*one"},
    {"(and (< one x) (< x 0))", "UNSAT"},
    {"(= x (+ one one))", "x=2*one"},
    {"(< one x)", "x=2*one"},
    {"(< x 0)", "x=-1*one"},
    {"(and (not (< x one)) (not (< one x)))", "x=1*one"},
    {"(and (= x y) (= y (+ one one)))", "x=2*one y=2*one"},
    {"(and (< x y) (< y (+ x one)))", "x=-1/2*one y=0"},
    {"(and (< x y) (< y x))", "UNSAT"},
    {"(or (< x 0) (< one x))", "x=-1*one"},
    {"(and (< (scl 2/3 x) one) (not (< x 0)))", "x=3/4*one"},
    {"(= x x)", "x=0"},
};

std::string witness_str(const std::optional<ElemMap>& w,
                        const std::vector<std::string>& basis) {
    if (!w.has_value()) return "UNSAT";
    std::string out;
    for (const auto& [v, e] : *w) {
        if (!out.empty()) out += " ";
        out += v + "=" + element_str(e, basis);
    }
    return out;
}

TEST(FmSolveTest, PinnedWitnesses) {
    Structure m = line();
    for (const auto& p : kPinned) {
        auto w = solve_qf_formula(m, parse_formula(p.formula));
        EXPECT_EQ(witness_str(w, m.basis()), p.witness) << p.formula;
    }
}

TEST(FmSolveTest, WitnessesAreExactOverThePlane) {
    // bounds involving a second, infinitesimal basis vector
    Structure n = plane();
    auto w = solve_qf_formula(n, parse_formula("(and (< 0 x) (< x eps))"));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->at("x"), el_basis(1, rat(1, 2)));  // midpoint of (0, eps)

    // no rational multiple of one fits below every eps-bound; fm must not
    // fall back to inexact arithmetic
    auto u = solve_qf_formula(n, parse_formula("(and (< eps x) (< x (scl 2 eps)))"));
    ASSERT_TRUE(u.has_value());
    EXPECT_EQ(u->at("x"), el_basis(1, rat(3, 2)));
}

TEST(FmSolveTest, RejectsUndeclaredVariables) {
    LinearSystem sys;
    sys.vars = {"x"};
    sys.constraints.push_back({af_var("y"), Rel::Le});
    EXPECT_THROW(fm_solve(sys, line()), PreconditionError);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin vs the vertex-enumeration oracle
// ---------------------------------------------------------------------------

// Seeded random systems: up to 3 variables, up to 5 constraints, rational
// coefficients with numerator in [-3,3] and denominator in [1,3], constants
// rational multiples of the leading basis vector.
LinearSystem random_system(Prng& rng) {
    LinearSystem sys;
    uint32_t nvars = 1 + static_cast<uint32_t>(rng.below(3));
    for (uint32_t i = 0; i < nvars; ++i)
        sys.vars.push_back("x" + std::to_string(i));
    uint32_t rows = 1 + static_cast<uint32_t>(rng.below(5));
    for (uint32_t r = 0; r < rows; ++r) {
        Affine lhs = af_const(
            el_basis(0, rat(rng.range(-3, 3), rng.range(1, 3))));
        for (const auto& v : sys.vars)
            lhs = af_add(lhs, af_scale(rat(rng.range(-3, 3), rng.range(1, 3)),
                                       af_var(v)));
        Rel rel = static_cast<Rel>(rng.below(3));
        sys.constraints.push_back({std::move(lhs), rel});
    }
    return sys;
}

TEST(FmSolveTest, AgreesWithVertexOracle) {
    Structure m = line();
    Prng rng(kDefaultSeed);
    uint64_t sat = 0, unsat = 0;
    for (int i = 0; i < 100; ++i) {
        LinearSystem sys = random_system(rng);
        auto w = fm_solve(sys, m);
        bool oracle = lp_oracle::feasible(sys);
        ASSERT_EQ(w.has_value(), oracle) << "system " << i;
        if (w.has_value()) {
            ++sat;
            // independent witness re-verification, constraint by constraint
            for (const auto& c : sys.constraints)
                EXPECT_TRUE(constraint_holds(c, *w)) << "system " << i;
            for (const auto& [v, e] : *w) {
                bool declared = false;
                for (const auto& sv : sys.vars) declared = declared || sv == v;
                EXPECT_TRUE(declared);
            }
        } else {
            ++unsat;
        }
    }
    // the generator must exercise both verdicts
    EXPECT_GT(sat, 10u);
    EXPECT_GT(unsat, 10u);
}

TEST(FmSolveTest, EqualityChainsAgainstOracle) {
    // chains force substitution cascades with denominators the grid-style
    // oracles miss; the vertex oracle handles them exactly
    Structure m = line();
    auto phi = parse_formula(
        "(and (= (scl 3 x) (+ y one)) (and (= (scl 3 y) (+ z one)) (= (scl 3 z) (+ x one))))");
    for (const auto& sys : formula_to_systems(m, phi)) {
        auto w = fm_solve(sys, m);
        ASSERT_TRUE(w.has_value());
        EXPECT_TRUE(lp_oracle::feasible(sys));
        // x = y = z = 1/2 one is the unique solution
        EXPECT_EQ(w->at("x"), el_basis(0, rat(1, 2)));
        EXPECT_EQ(w->at("y"), el_basis(0, rat(1, 2)));
        EXPECT_EQ(w->at("z"), el_basis(0, rat(1, 2)));
    }
}

// ---------------------------------------------------------------------------
// Span decomposition
// ---------------------------------------------------------------------------

TEST(DecomposeTest, ExactCoordinates) {
    Element one = el_basis(0), eps = el_basis(1);
    auto c = decompose_in_span({el_add(one, eps), eps}, one);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ((*c)[0], Rat(1));
    EXPECT_EQ((*c)[1], Rat(-1));

    EXPECT_FALSE(decompose_in_span({one}, eps).has_value());
    EXPECT_FALSE(decompose_in_span({}, one).has_value());

    // dependent generators: free coefficients stay 0
    auto d = decompose_in_span({one, el_scale(Rat(2), one)}, el_scale(Rat(3), one));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ((*d)[0], Rat(3));
    EXPECT_EQ((*d)[1], Rat(0));

    // zero target decomposes with all-zero coefficients
    auto z = decompose_in_span({one, eps}, el_zero());
    ASSERT_TRUE(z.has_value());
    EXPECT_EQ((*z)[0], Rat(0));
    EXPECT_EQ((*z)[1], Rat(0));
}

TEST(DecomposeTest, RandomRoundTrip) {
    Prng rng(kDefaultSeed);
    for (int i = 0; i < 50; ++i) {
        std::vector<Element> vecs;
        for (int v = 0; v < 3; ++v) {
            Coords c;
            for (uint32_t d = 0; d < 3; ++d) {
                Rat q = rat(rng.range(-3, 3), rng.range(1, 3));
                if (q != 0) c[d] = q;
            }
            vecs.push_back(el_vec(std::move(c)));
        }
        std::vector<Rat> mix;
        Element target = el_zero();
        for (int v = 0; v < 3; ++v) {
            mix.push_back(rat(rng.range(-2, 2), 1));
            target = el_add(target, el_scale(mix.back(), vecs[v]));
        }
        auto c = decompose_in_span(vecs, target);
        ASSERT_TRUE(c.has_value());
        Element back = el_zero();
        for (int v = 0; v < 3; ++v)
            back = el_add(back, el_scale((*c)[v], vecs[v]));
        EXPECT_EQ(back, target);
    }
}

}  // namespace

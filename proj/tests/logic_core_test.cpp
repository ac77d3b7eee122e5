#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "cohult/ast.hpp"
#include "cohult/corpus.hpp"
#include "cohult/definable.hpp"
#include "cohult/element.hpp"
#include "cohult/embedding.hpp"
#include "cohult/eval.hpp"
#include "cohult/formula_pool.hpp"
#include "cohult/fragment.hpp"
#include "cohult/parser.hpp"
#include "cohult/structure.hpp"

using namespace cohult;

namespace {

Structure line() { return Structure::vector_space({"one"}); }
Structure plane() { return Structure::vector_space({"one", "eps"}); }

// size-3 structure with a cycle f = (1 2 0), R = {1}, constant c0 = 1
Structure cycle3() {
    Vocabulary vocab;
    vocab.functions["f"] = 1;
    vocab.relations["R"] = 1;
    vocab.constants.push_back("c0");
    FiniteStructureData d;
    d.size = 3;
    d.constants["c0"] = 1;
    d.functions["f"] = {1, 2, 0};
    d.relations["R"] = {1};
    return Structure::finite(vocab, d);
}

// ---------------------------------------------------------------------------
// Terms and formulas
// ---------------------------------------------------------------------------

TEST(AstTest, PrintingIsCanonical) {
    TermPtr t = t_add(t_scl(rat(2, 3), t_var("x")), t_const("one"));
    EXPECT_EQ(term_str(t), "(+ (scl 2/3 x) one)");
    EXPECT_EQ(term_str(t_neg(t_param("a"))), "(- #a)");
    EXPECT_EQ(term_str(t_app("f", {t_var("x0")})), "(f x0)");

    FormulaPtr f = f_exists("y", f_and({f_lt(t_var("y"), t_var("x")),
                                        f_not(f_eq(t_var("y"), t_const("0")))}));
    EXPECT_EQ(formula_str(f),
              "(exists y (and (< y x) (not (= y 0))))");
    EXPECT_THROW(f_and({}), PreconditionError);
}

TEST(AstTest, FreeVariablesRespectBinding) {
    FormulaPtr f = parse_formula("(and (< x y) (exists y (= y x)))");
    EXPECT_EQ(free_vars(f), (std::set<std::string>{"x", "y"}));
    EXPECT_EQ(free_vars(parse_formula("(exists x (exists y (< x y)))")),
              std::set<std::string>{});
    EXPECT_EQ(term_vars(parse_term("(+ (scl 2 x) (f y x))")),
              (std::set<std::string>{"x", "y"}));
    EXPECT_TRUE(quantifier_free(parse_formula("(not (< x y))")));
    EXPECT_FALSE(quantifier_free(parse_formula("(not (exists x (< x x)))")));
}

TEST(AstTest, SubstitutionShadowsBoundVariables) {
    TermSubst sub{{"x", t_const("one")}};
    EXPECT_EQ(formula_str(substitute(parse_formula("(< x y)"), sub)),
              "(< one y)");
    // bound occurrences are untouched
    EXPECT_EQ(formula_str(substitute(parse_formula("(exists x (< x y))"), sub)),
              "(exists x (< x y))");
    EXPECT_EQ(formula_str(substitute(
                  parse_formula("(and (< x 0) (exists x (< x 0)))"), sub)),
              "(and (< one 0) (exists x (< x 0)))");
}

TEST(AstTest, SubformulaClosure) {
    FormulaPtr f = parse_formula("(not (and (< x 0) (= x 0)))");
    std::vector<std::string> got;
    for (const auto& s : subformulas(f)) got.push_back(formula_str(s));
    EXPECT_EQ(got, (std::vector<std::string>{
                       "(not (and (< x 0) (= x 0)))",
                       "(and (< x 0) (= x 0))", "(< x 0)", "(= x 0)"}));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

TEST(ParserTest, RoundTrips) {
    for (const char* src : {
             "(+ (scl -2/3 x) (- one))", "(f (g x0 x1) 0)", "x17", "#p",
         }) {
        EXPECT_EQ(term_str(parse_term(src)), src);
    }
    for (const char* src : {
             "(exists y (and (< y x) (not (= y 0))))",
             "(or (R x) (= (f x) x))",
             "(< (+ x (scl 1/2 y)) one)",
         }) {
        EXPECT_EQ(formula_str(parse_formula(src)), src);
    }
}

TEST(ParserTest, VariableNameConvention) {
    // [s-z][0-9]* is a variable, anything else a constant
    EXPECT_TRUE(is_variable_name("x"));
    EXPECT_TRUE(is_variable_name("s12"));
    EXPECT_TRUE(is_variable_name("z0"));
    EXPECT_FALSE(is_variable_name("a"));
    EXPECT_FALSE(is_variable_name("one"));
    EXPECT_FALSE(is_variable_name("x1b"));
    EXPECT_FALSE(is_variable_name(""));

    EXPECT_EQ(parse_term("x0")->kind, TermKind::Var);
    EXPECT_EQ(parse_term("one")->kind, TermKind::Const);
    EXPECT_EQ(parse_term("#q")->kind, TermKind::Param);
}

TEST(ParserTest, ErrorsCarryOffsets) {
    try {
        parse_formula("(exists one (< x 0))");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 8u);  // points at 'one'
    }
    // an unterminated list is reported at its opening paren
    try {
        parse_formula("(and (< x 0) (< y )");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("unterminated"), std::string::npos);
    }
    EXPECT_THROW(parse_formula("(< x 0) trailing"), ParseError);
    EXPECT_THROW(parse_term("(+ x)"), ParseError);
    EXPECT_THROW(parse_term("(scl x y)"), ParseError);
    EXPECT_THROW(parse_formula("(and)"), ParseError);
}

// ---------------------------------------------------------------------------
// Elements of the symbolic profile
// ---------------------------------------------------------------------------

TEST(ElementTest, LexicographicOrder) {
    Element one = el_basis(0), eps = el_basis(1);
    // index 0 dominates: any positive multiple of one exceeds any multiple
    // of eps
    EXPECT_LT(el_cmp(el_zero(), eps), 0);
    EXPECT_LT(el_cmp(eps, el_scale(rat(1, 1000), one)), 0);
    EXPECT_LT(el_cmp(el_neg(one), el_neg(eps)), 0);
    EXPECT_LT(el_cmp(el_sub(one, eps), one), 0);
    EXPECT_EQ(el_cmp(el_add(one, eps), el_add(eps, one)), 0);
    EXPECT_LT(el_cmp(one, el_add(one, eps)), 0);

    // zero coordinates are dropped, so equality is structural
    EXPECT_EQ(el_sub(eps, eps), el_zero());
    EXPECT_EQ(el_add(one, el_neg(one)), el_zero());
}

TEST(ElementTest, TextRoundTrip) {
    std::vector<std::string> basis{"one", "eps"};
    for (const auto& e : {el_zero(), el_basis(0), el_basis(1, rat(-2, 3)),
                          el_add(el_basis(0, Rat(3)), el_basis(1, rat(1, 2)))}) {
        EXPECT_EQ(element_parse(element_str(e, basis), basis), e);
    }
    EXPECT_EQ(element_str(el_add(el_basis(0), el_basis(1, Rat(-2))), basis),
              "1*one + -2*eps");
    EXPECT_EQ(element_parse(" 1*one + 1/2*eps ", basis),
              el_add(el_basis(0), el_basis(1, rat(1, 2))));
    EXPECT_THROW(element_parse("1*two", basis), ParseError);
    EXPECT_THROW(element_parse("1*one + 2*one", basis), ParseError);
    EXPECT_THROW(element_parse("", basis), ParseError);
}

// ---------------------------------------------------------------------------
// Structures and their text form
// ---------------------------------------------------------------------------

TEST(StructureTest, FiniteValidation) {
    Vocabulary vocab;
    vocab.functions["f"] = 1;
    FiniteStructureData d;
    d.size = 2;
    d.functions["f"] = {1};  // half a table
    EXPECT_THROW(Structure::finite(vocab, d), PreconditionError);
    d.functions["f"] = {1, 2};  // value out of range
    EXPECT_THROW(Structure::finite(vocab, d), PreconditionError);
    d.functions["f"] = {1, 0};
    Structure s = Structure::finite(vocab, d);
    EXPECT_EQ(s.fn_apply("f", {1}), 0u);
    EXPECT_THROW(s.fn_apply("g", {0}), VocabularyError);
    EXPECT_THROW(s.constant("c"), VocabularyError);
}

TEST(StructureTest, SymbolicConstants) {
    Structure n = plane();
    EXPECT_EQ(n.constant("0"), el_zero());
    EXPECT_EQ(n.constant("one"), el_basis(0));
    EXPECT_EQ(n.constant("eps"), el_basis(1));
    EXPECT_THROW(n.constant("two"), VocabularyError);
    EXPECT_THROW(Structure::vector_space({}), PreconditionError);
    EXPECT_THROW(Structure::vector_space({"one", "one"}), PreconditionError);
    EXPECT_THROW(Structure::vector_space({"0"}), PreconditionError);
}

TEST(StructureTest, TextRoundTripIsByteExact) {
    Structure s = cycle3();
    std::string text = structure_to_text(s);
    EXPECT_EQ(text,
              "structure v1\n"
              "profile finite\n"
              "size 3\n"
              "constant c0 = 1\n"
              "function f/1 = 1 2 0\n"
              "relation R/1 = 1\n");
    Structure back = structure_from_text(text);
    EXPECT_EQ(back, s);
    EXPECT_EQ(structure_to_text(back), text);

    Structure n = plane();
    std::string vtext = structure_to_text(n);
    EXPECT_EQ(vtext,
              "structure v1\n"
              "profile ordered-vector-space\n"
              "basis one eps\n");
    EXPECT_EQ(structure_from_text(vtext), n);

    // comments and blank lines are tolerated on input
    EXPECT_EQ(structure_from_text("# header\nstructure v1\n\nprofile "
                                  "ordered-vector-space\nbasis one eps\n"),
              n);
    EXPECT_THROW(structure_from_text("structure v2\n"), ParseError);
    EXPECT_THROW(structure_from_text("structure v1\nprofile finite\nsize x\n"),
                 ParseError);
    // well-formed text with a short table still fails factory validation
    EXPECT_THROW(structure_from_text("structure v1\nprofile finite\nsize 2\n"
                                     "function f/1 = 0\n"),
                 PreconditionError);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

TEST(EvalTest, SymbolicTermValues) {
    Structure n = plane();
    EXPECT_EQ(eval_term(n, parse_term("(+ one eps)"), {}),
              el_add(el_basis(0), el_basis(1)));
    EXPECT_EQ(eval_term(n, parse_term("(scl 2/3 one)"), {}),
              el_basis(0, rat(2, 3)));
    EXPECT_EQ(eval_term(n, parse_term("(- (+ one (- one)))"), {}), el_zero());
    EXPECT_EQ(eval_term(n, parse_term("#p"), {}, {{"p", el_basis(1)}}),
              el_basis(1));
    EXPECT_THROW(eval_term(n, parse_term("x"), {}), PreconditionError);
    EXPECT_THROW(eval_term(n, parse_term("#p"), {}), PreconditionError);
    EXPECT_THROW(eval_term(n, parse_term("(f x)"), {{"x", el_zero()}}),
                 VocabularyError);
}

TEST(EvalTest, SymbolicOrderFacts) {
    Structure n = plane();
    EXPECT_TRUE(eval_formula(n, parse_formula("(< 0 eps)"), {}));
    EXPECT_TRUE(eval_formula(n, parse_formula("(< eps (scl 1/1000 one))"), {}));
    EXPECT_TRUE(eval_formula(n, parse_formula("(< (- one) eps)"), {}));
    EXPECT_FALSE(eval_formula(n, parse_formula("(< eps eps)"), {}));
    EXPECT_TRUE(eval_formula(n, parse_formula("(= (+ eps one) (+ one eps))"), {}));
    // no quantifiers over the symbolic profile
    EXPECT_THROW(eval_formula(n, parse_formula("(exists x (< x 0))"), {}),
                 PreconditionError);
}

TEST(EvalTest, FiniteEvaluation) {
    Structure s = cycle3();
    ElemMap at0{{"x", el_fin(0)}};
    EXPECT_EQ(eval_term(s, parse_term("(f (f x))"), at0), el_fin(2));
    EXPECT_EQ(eval_term(s, parse_term("c0"), {}), el_fin(1));
    EXPECT_TRUE(eval_formula(s, parse_formula("(R (f x))"), at0));
    EXPECT_FALSE(eval_formula(s, parse_formula("(R x)"), at0));
    // finite order is the id order
    EXPECT_TRUE(eval_formula(s, parse_formula("(< x c0)"), at0));
    EXPECT_TRUE(eval_formula(s, parse_formula("(exists y (= (f y) x))"), at0));
    EXPECT_FALSE(eval_formula(s, parse_formula("(exists y (< y x))"), at0));
}

// A few sampled ordered-vector-space facts: the order is total, transitive,
// translation invariant, and divisible.
TEST(EvalTest, OrderedSpaceAxiomSamples) {
    Structure n = plane();
    Prng rng(kDefaultSeed);
    std::vector<Element> xs = sample_elements(n, 24, 3, rng);
    for (const auto& a : xs)
        for (const auto& b : xs) {
            int ab = el_cmp(a, b), ba = el_cmp(b, a);
            EXPECT_EQ(ab, -ba);
            EXPECT_EQ(ab == 0, a == b);
            for (const auto& c : xs) {
                if (el_cmp(a, b) < 0 && el_cmp(b, c) < 0) {
                    EXPECT_LT(el_cmp(a, c), 0);
                }
                // translation invariance
                if (el_cmp(a, b) < 0) {
                    EXPECT_LT(el_cmp(el_add(a, c), el_add(b, c)), 0);
                }
            }
            // divisibility: the midpoint sits strictly between
            if (el_cmp(a, b) < 0) {
                Element mid = el_scale(rat(1, 2), el_add(a, b));
                EXPECT_LT(el_cmp(a, mid), 0);
                EXPECT_LT(el_cmp(mid, b), 0);
            }
        }
}

// ---------------------------------------------------------------------------
// Definable functions and sets
// ---------------------------------------------------------------------------

TEST(DefinableTest, BodiesAgree) {
    Structure s = cycle3();
    // same function three ways: f(s0) as a term, a table, and a graph
    DefinableFunction ft = DefinableFunction::from_term(
        1, parse_term("(f s0)"));
    DefinableFunction fb = DefinableFunction::from_table(1, 3, {1, 2, 0});
    DefinableFunction fg = DefinableFunction::from_graph(
        1, parse_formula("(= y (f s0))"));
    for (uint32_t v = 0; v < 3; ++v) {
        EXPECT_EQ(ft.apply(s, {el_fin(v)}), el_fin((v + 1) % 3));
        EXPECT_EQ(fb.apply(s, {el_fin(v)}), ft.apply(s, {el_fin(v)}));
        EXPECT_EQ(fg.apply(s, {el_fin(v)}), ft.apply(s, {el_fin(v)}));
    }
    // a graph that is not functional is rejected on application
    DefinableFunction bad = DefinableFunction::from_graph(
        1, parse_formula("(= y y)"));
    EXPECT_THROW(bad.apply(s, {el_fin(0)}), PreconditionError);

    EXPECT_EQ(DefinableFunction::constant(2, el_fin(2)).apply(
                  s, {el_fin(0), el_fin(1)}),
              el_fin(2));
    EXPECT_EQ(DefinableFunction::projection(2, 1).apply(s, {el_fin(0), el_fin(2)}),
              el_fin(2));
    EXPECT_THROW(DefinableFunction::from_term(1, parse_term("(+ s0 s1)")),
                 PreconditionError);
}

TEST(DefinableTest, CompositionAndSupport) {
    Structure s = cycle3();
    // F(s0) = f(s0) over {1}; composed over {0,1,2} it reads position 1
    DefinableFunction f1 = DefinableFunction::from_term(1, parse_term("(f s0)"));
    ProjectionMap pm = projection_map(IndexTuple{1}, IndexTuple{0, 1, 2});
    DefinableFunction f3 = f1.compose_projection(pm);
    EXPECT_EQ(f3.arity(), 3u);
    EXPECT_EQ(f3.apply(s, {el_fin(2), el_fin(0), el_fin(1)}), el_fin(1));
    EXPECT_EQ(f3.used_positions(), std::set<uint32_t>{1});

    // restrict_support inverts the composition
    EXPECT_EQ(f3.restrict_support({1}), f1);
    EXPECT_THROW(f3.restrict_support({0}), PreconditionError);

    // table route agrees with the term route
    DefinableFunction t1 = DefinableFunction::from_table(1, 3, {1, 2, 0});
    DefinableFunction t3 = t1.compose_projection(pm);
    for (uint32_t p = 0; p < 27; ++p) {
        auto d = decode_point(p, 3, 3);
        std::vector<Element> args{el_fin(d[0]), el_fin(d[1]), el_fin(d[2])};
        EXPECT_EQ(t3.apply(s, args), f3.apply(s, args));
    }
    EXPECT_EQ(t3.used_positions(), std::set<uint32_t>{1});
    EXPECT_EQ(t3.restrict_support({1}), t1);

    // a constant table depends on nothing
    EXPECT_EQ(DefinableFunction::from_table(2, 2, {1, 1, 1, 1}).used_positions(),
              std::set<uint32_t>{});
}

TEST(DefinableTest, MaterializedSetsMatchNaiveEvaluation) {
    Structure s = cycle3();
    // x0 < f(x1): check against a direct double loop
    auto D = definable_set(parse_formula("(< x0 (f x1))"),
                           {DefinableFunction::projection(2, 0),
                            DefinableFunction::projection(2, 1)});
    CubeSubset got = materialize_definable_set(s, D);
    CubeSubset want = cube_empty(3, 2);
    for (uint32_t a = 0; a < 3; ++a)
        for (uint32_t b = 0; b < 3; ++b)
            if (a < (b + 1) % 3)
                want.bits |= uint64_t{1} << encode_point({a, b}, 3);
    EXPECT_EQ(got, want);

    // trivial and empty sets
    EXPECT_EQ(materialize_definable_set(
                  s, definable_set(parse_formula("(= x0 x0)"),
                                   {DefinableFunction::projection(1, 0)})),
              cube_full(3, 1));
    EXPECT_EQ(materialize_definable_set(
                  s, definable_set(parse_formula("(< x0 x0)"),
                                   {DefinableFunction::projection(1, 0)})),
              cube_empty(3, 1));

    // chi restricts the domain: members of R are {1}, so the cube shrinks
    auto DR = definable_set(parse_formula("(R x0)"),
                            {DefinableFunction::projection(1, 0)},
                            parse_formula("(R z)"));
    EXPECT_EQ(chi_members(s, DR.chi), std::vector<uint32_t>{1});
    EXPECT_EQ(materialize_definable_set(s, DR), cube_full(1, 1));

    EXPECT_THROW(definable_set(parse_formula("(< x0 x1)"),
                               {DefinableFunction::projection(1, 0)}),
                 PreconditionError);
}

// ---------------------------------------------------------------------------
// Formula pools
// ---------------------------------------------------------------------------

TEST(PoolTest, MasksMatchTheAstEvaluator) {
    PoolSpec spec;
    spec.vars = {"x0", "x1"};
    spec.functions["f"] = 1;
    spec.relations["R"] = 1;
    FormulaPool pool = build_pool(spec);
    Structure s = cycle3();
    std::vector<uint64_t> mask = pool_truth_masks(pool, s);

    Prng rng(kDefaultSeed);
    for (int i = 0; i < 300; ++i) {
        uint32_t n = static_cast<uint32_t>(rng.below(pool.nodes.size()));
        uint64_t p = rng.below(9);
        ElemMap vars{{"x0", el_fin(point_digit(p, 3, 0))},
                     {"x1", el_fin(point_digit(p, 3, 1))}};
        EXPECT_EQ((mask[n] >> p) & 1,
                  eval_formula(s, pool.formula(n), vars) ? 1u : 0u)
            << formula_str(pool.formula(n)) << " at " << p;
    }
}

TEST(PoolTest, BinaryAtomsOnlyLayerSizes) {
    PoolSpec spec;
    spec.vars = {"x0", "x1"};
    spec.functions["f"] = 1;
    spec.relations["R"] = 1;
    spec.binary_atoms_only = true;
    FormulaPool pool = build_pool(spec);
    // terms x0, x1, f(x0), f(x1); atoms <, = over pairs plus R over terms
    EXPECT_EQ(pool.terms.size(), 4u);
    EXPECT_EQ(pool.atoms.size(), 36u);
    ASSERT_EQ(pool.layer_end.size(), 3u);
    EXPECT_EQ(pool.layer_end[0], 36u);
    // layer 1: not (36) + exists (72) + and/or over atom pairs (2 * 36^2)
    EXPECT_EQ(pool.layer_end[1] - pool.layer_end[0], 36u + 72u + 2u * 36u * 36u);
    // layer 2: not + exists over layer 1 only
    EXPECT_EQ(pool.layer_end[2] - pool.layer_end[1], 3u * 2700u);
    EXPECT_EQ(pool.nodes.size(), 10836u);

    // without the restriction the pool grows and/or pairs at depth 2 as well
    spec.binary_atoms_only = false;
    EXPECT_GT(build_pool(spec).nodes.size(), pool.nodes.size());
}

// ---------------------------------------------------------------------------
// Fragments and Skolem search
// ---------------------------------------------------------------------------

TEST(FragmentTest, MembershipAndClosure) {
    Fragment qf = Fragment::quantifier_free();
    EXPECT_TRUE(qf.is_quantifier_free());
    EXPECT_TRUE(qf.contains(parse_formula("(and (< x 0) (= x y))")));
    EXPECT_FALSE(qf.contains(parse_formula("(exists x (< x 0))")));
    EXPECT_TRUE(qf.closed_under_negation());
    EXPECT_TRUE(has_definable_skolem(qf));

    Fragment gen = Fragment::generated({parse_formula("(not (exists y (< y x)))")});
    EXPECT_FALSE(gen.is_quantifier_free());
    EXPECT_TRUE(gen.contains(parse_formula("(exists y (< y x))")));
    EXPECT_TRUE(gen.contains(parse_formula("(< y x)")));
    // atoms are members by fiat, other formulas only via the closure
    EXPECT_TRUE(gen.contains(parse_formula("(= x y)")));
    EXPECT_FALSE(gen.contains(parse_formula("(and (< y x) (< y x))")));
    EXPECT_EQ(gen.existential_members().size(), 1u);
    EXPECT_FALSE(has_definable_skolem(gen));
}

TEST(FragmentTest, SkolemSearchOverFiniteStructures) {
    // R = {1}: the graph R(y) is a definable choice for (exists y (R y))
    Structure s = cycle3();
    Fragment frag = Fragment::generated({parse_formula("(exists y (R y))")});
    SkolemVerdict v = has_definable_skolem(frag, s, 0);
    EXPECT_TRUE(v.has);

    // R = everything: every candidate graph is symmetric in the members, so
    // nothing with few connectives is functional
    Vocabulary vocab;
    vocab.relations["R"] = 1;
    FiniteStructureData d;
    d.size = 2;
    d.relations["R"] = {0, 1};
    Structure full = Structure::finite(vocab, d);
    SkolemVerdict w = has_definable_skolem(frag, full, 2);
    EXPECT_FALSE(w.has);
    EXPECT_EQ(w.searched_connectives, 2u);
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

TEST(EmbeddingTest, InclusionOfTheLineIntoThePlane) {
    Structure m = line(), n = plane();
    Embedding inc = Embedding::linear({el_basis(0)});
    EXPECT_EQ(inc.apply(el_basis(0, rat(-2, 3))), el_basis(0, rat(-2, 3)));

    Prng rng(kDefaultSeed);
    auto corpus = make_qf_corpus(m, 60, 2, 3, 3, rng);
    EXPECT_TRUE(is_qf_embedding(m, n, inc, corpus));
    EXPECT_TRUE(is_qf_embedding(n, n, Embedding::identity_linear(n), corpus));

    // negation flips the order, so (< 0 x) separates it from an embedding
    Embedding neg = Embedding::linear({el_basis(0, Rat(-1))});
    EXPECT_FALSE(is_qf_embedding(m, m, neg, {parse_formula("(< 0 x)")}));
}

TEST(EmbeddingTest, FiniteMapsCheckedExhaustively) {
    Structure s = cycle3();
    Embedding id = Embedding::finite({0, 1, 2});
    Prng rng(kDefaultSeed);
    std::vector<FormulaPtr> corpus{parse_formula("(R x)"),
                                   parse_formula("(= (f x) y)")};
    EXPECT_TRUE(is_qf_embedding(s, s, id, corpus));
    // the swap 0 <-> 1 moves R but not f, so R(x) separates it
    EXPECT_FALSE(is_qf_embedding(s, s, Embedding::finite({1, 0, 2}), corpus));
}

}  // namespace

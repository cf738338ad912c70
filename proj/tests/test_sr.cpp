#include <gtest/gtest.h>

#include "common.hpp"
#include "ctrs/rewrite.hpp"
#include "ctrs/sr.hpp"
#include "ctrs/unravel.hpp"

using namespace ctrs;
using testing_util::corpus;
using testing_util::golden;
using testing_util::term;

TEST(Sr, GoldenDisplays) {
    EXPECT_TRUE(alpha_u_equal(sr_transform(corpus("R7")).system, golden("SR_R7")));
    EXPECT_TRUE(alpha_u_equal(sr_transform(corpus("R6")).system, golden("SR_R6")));
}

TEST(Sr, Names) {
    EXPECT_EQ(sr_bar("split"), "split^bar");
    EXPECT_EQ(sr_stack(2), "stk2");
    auto ctx = sr_transform(corpus("R7")).ctx;
    EXPECT_EQ(ctx.n_f("split"), 2u);
    EXPECT_EQ(ctx.n_f("le"), 0u);
    EXPECT_EQ(ctx.unbar("split^bar"), std::optional<std::string>("split"));
}

TEST(Sr, RejectsReservedNames) {
    EXPECT_THROW(sr_transform(parse_system("(RULES\n  curly(a) -> a\n)\n")), DomainError);
}

TEST(Sr, HatInvertsTranslate) {
    auto r7 = corpus("R7");
    auto ctx = sr_transform(r7).ctx;
    for (const auto& t : ground_terms(r7.signature(), 2, 2000)) {
        auto h = hat(ctx, sr_translate(ctx, t));
        ASSERT_TRUE(h.has_value()) << t.str();
        EXPECT_EQ(*h, t);
    }
}

TEST(Sr, StructuralPositions) {
    auto sr = sr_transform(corpus("R7"));
    EXPECT_EQ(*structural_positions(sr.ctx, Term::var("x")), (std::set<Position>{{}}));
    EXPECT_FALSE(structural_positions(sr.ctx, Term::app("bot")).has_value());
    Term t = parse_term(
        "curly(split^bar(s(0),cons(0,cons(s(s(0)),nil)),stk2(curly(split^bar(s(0),cons(s(s(0)),nil),bot,bot)),bot),bot))",
        sr.system);
    auto ps = structural_positions(sr.ctx, t);
    ASSERT_TRUE(ps.has_value());
    EXPECT_EQ(ps->size(), 10u);
    EXPECT_TRUE(ps->count({1, 2, 2, 1, 1, 1}));
    EXPECT_FALSE(ps->count({1, 3}));
}

TEST(Sr, UoptLLIffSrLL) {
    std::vector<RewriteSystem> systems;
    for (const auto& n : testing_util::oriented_corpus()) {
        auto s = corpus(n);
        if (classify(s).system.deterministic) systems.push_back(s);
    }
    suite::Rng rng(61);
    suite::GenShape shape;
    shape.symbols = {{"f", 2}, {"g", 1}, {"c", 1}, {"a", 0}, {"b", 0}};
    for (int i = 0; i < 300; ++i) {
        RewriteSystem s;
        s.variables = shape.variables;
        for (int j = 0; j < 2; ++j) s.rules.push_back(suite::random_deterministic_rule(rng, shape, "rho_" + std::to_string(j + 1)));
        systems.push_back(s);
    }
    int done = 0;
    for (const auto& s : systems) {
        RewriteSystem sr;
        try {
            sr = sr_transform(s).system;
        } catch (const DomainError&) {
            continue;
        }
        ++done;
        bool uopt_ll = ultra_check(s, UltraProperty::LL, UltraMethod::Syntactic, Unraveling::Uopt);
        EXPECT_EQ(uopt_ll, classify(sr).system.ll) << render_system(s);
    }
    EXPECT_GT(done, 250);
}

// C[{t}] ->* {C[t]} within depth(C)+1 steps when the hole is structural.
TEST(Sr, BraceFloating) {
    auto r7 = corpus("R7");
    auto sr = sr_transform(r7);
    suite::Rng rng(62);
    suite::GenShape cons_shape;
    cons_shape.symbols = {{"cons", 2}, {"s", 1}, {"tp2", 2}, {"0", 0}, {"nil", 0}};
    suite::GenShape any_shape;
    any_shape.symbols = {{"cons", 2}, {"s", 1}, {"le", 2}, {"split", 2}, {"0", 0}, {"nil", 0}};
    int tested = 0;
    for (int i = 0; i < 300; ++i) {
        // a constructor context with one hole
        Term ctx_term = suite::random_term(rng, cons_shape, {"HOLE"}, 3);
        if (occurrences(ctx_term, "HOLE") != 1) continue;
        Term t = overline(sr.ctx, suite::random_term(rng, any_shape, {}, 2));
        Substitution plug{{"HOLE", Term::app(kCurly, {t})}};
        Term start = substitute(ctx_term, plug);
        Term goal = Term::app(kCurly, {substitute(ctx_term, Substitution{{"HOLE", t}})});
        Bounds b;
        b.steps = static_cast<int>(ctx_term.depth()) + 1;
        b.term_size = 200;
        auto c = reachable(sr.system, start, b);
        EXPECT_TRUE(c.contains(goal)) << start.str();
        ++tested;
    }
    EXPECT_GT(tested, 30);
}

TEST(Sr, ReachableShapeInvariant) {
    auto r7 = corpus("R7");
    auto sr = sr_transform(r7);
    Bounds b;
    b.steps = 12;
    for (const auto& s : {"split(s(0),cons(0,cons(s(s(0)),nil)))", "split(0,cons(s(0),nil))", "le(s(0),s(s(0)))"}) {
        auto c = reachable(sr.system, sr_translate(sr.ctx, term(s, r7)), b);
        for (const auto& t : c.terms) EXPECT_TRUE(reachable_shape(sr.ctx, t)) << t.str();
    }
}

TEST(Sr, SimulatesUDerivations) {
    auto r7 = corpus("R7");
    auto u = unravel_U(r7);
    auto sr = sr_transform(r7);
    Term s = term("split(s(0),cons(0,cons(s(s(0)),nil)))", r7);
    auto c = reachable(u, s, Bounds{});
    int n = 0;
    for (const auto& t : c.terms) {
        auto d = *c.derivation_to(t);
        auto sd = sr_simulate_u_derivation(sr.ctx, sr.system, d);
        EXPECT_TRUE(verify_derivation(sd, sr.system).ok);
        if (!contains_symbol(t, u.generated)) {
            EXPECT_EQ(sd.end(), sr_translate(sr.ctx, t));
            ++n;
        } else {
            EXPECT_EQ(sd.end(), Term::app(kCurly, {overline_u(sr.ctx, t)}));
        }
    }
    EXPECT_GT(n, 1);
}

#include <gtest/gtest.h>

#include "common.hpp"
#include "ctrs/term.hpp"

using namespace ctrs;
using ctrs::suite::Rng;

namespace {

suite::GenShape shape() {
    suite::GenShape s;
    s.variables = {"x", "y", "z"};
    return s;
}

Term rand_term(Rng& rng, int depth = 3) { return suite::random_term(rng, shape(), {"x", "y", "z"}, depth); }

Substitution rand_subst(Rng& rng, const std::vector<std::string>& vars, const std::vector<std::string>& range_vars) {
    Substitution s;
    for (const auto& x : vars)
        if (rng() % 2) s[x] = suite::random_term(rng, shape(), range_vars, 2);
    return s;
}

}  // namespace

TEST(Term, PositionsAndPrinting) {
    Term t = Term::app("f", {Term::app("g", {Term::var("x")}), Term::app("a")});
    EXPECT_EQ(positions(t).size(), 4u);
    EXPECT_EQ(position_str({}), "e");
    EXPECT_EQ(position_str({1, 2, 1}), "1.2.1");
    EXPECT_EQ(subterm_at(t, {1, 1}), Term::var("x"));
    EXPECT_THROW(subterm_at(t, {3}), PositionError);
    EXPECT_TRUE(is_prefix({1}, {1, 2}));
    EXPECT_TRUE(parallel({1}, {2, 1}));
    EXPECT_FALSE(parallel({1}, {1, 1}));
    EXPECT_EQ(t.size(), 4u);
    EXPECT_EQ(t.depth(), 2u);
    EXPECT_FALSE(t.ground());
}

TEST(Term, ReplaceAtProperty) {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Term t = rand_term(rng), u = rand_term(rng, 2);
        auto ps = positions(t);
        const Position& p = ps[rng() % ps.size()];
        Term r = replace_at(t, p, u);
        EXPECT_EQ(subterm_at(r, p), u);
        for (const auto& q : ps)
            if (parallel(p, q)) EXPECT_EQ(subterm_at(r, q), subterm_at(t, q));
    }
}

TEST(Term, MatchProperty) {
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
        Term l = rand_term(rng);
        Substitution s = rand_subst(rng, {"x", "y", "z"}, {"u", "v"});
        auto m = match(l, substitute(l, s));
        ASSERT_TRUE(m.has_value()) << l.str();
        EXPECT_EQ(substitute(l, *m), substitute(l, s));
    }
    // nonlinear: consistent bindings only
    Term l = Term::app("f", {Term::var("x"), Term::var("x")});
    EXPECT_TRUE(match(l, Term::app("f", {Term::app("a"), Term::app("a")})));
    EXPECT_FALSE(match(l, Term::app("f", {Term::app("a"), Term::app("b")})));
}

TEST(Term, UnifyIsMostGeneral) {
    Rng rng(13);
    int tested = 0;
    while (tested < 1000) {
        Term s = rand_term(rng);
        Substitution th;
        for (const auto& x : var_set(s)) th[x] = suite::random_term(rng, shape(), {"u", "v"}, 2);
        Term st = substitute(s, th);
        // generalize a few subterms of s.th into fresh variables
        Term t = st;
        Substitution tau = th;
        int fresh = 0;
        for (const auto& p : positions(st))
            if (!p.empty() && rng() % 4 == 0 && has_position(t, p)) {
                std::string z = "w" + std::to_string(fresh++);
                tau[z] = subterm_at(t, p);
                t = replace_at(t, p, Term::var(z));
            }
        ASSERT_EQ(substitute(s, tau), substitute(t, tau));
        auto sigma = unify(s, t);
        ASSERT_TRUE(sigma.has_value());
        EXPECT_EQ(substitute(s, *sigma), substitute(t, *sigma));
        std::set<std::string> vs = var_set(s);
        collect_vars(t, vs);
        std::vector<Term> a, b;
        for (const auto& x : vs) {
            a.push_back(substitute(Term::var(x), *sigma));
            b.push_back(substitute(Term::var(x), tau));
        }
        EXPECT_TRUE(match(Term::app("tup", a), Term::app("tup", b)).has_value());
        ++tested;
    }
}

TEST(Term, UnifyFailures) {
    Term x = Term::var("x");
    EXPECT_FALSE(unify(x, Term::app("f", {x})));  // occurs check
    EXPECT_FALSE(unify(Term::app("a"), Term::app("b")));
}

TEST(Term, CompositionProperty) {
    Rng rng(14);
    for (int i = 0; i < 500; ++i) {
        Term t = rand_term(rng);
        Substitution s = rand_subst(rng, {"x", "y", "z"}, {"x", "y", "z"});
        Substitution th = rand_subst(rng, {"x", "y", "z"}, {"x", "y"});
        EXPECT_EQ(substitute(t, compose(s, th)), substitute(substitute(t, s), th));
    }
}

TEST(Term, Variant) {
    Term a = Term::app("f", {Term::var("x"), Term::var("y")});
    Term b = Term::app("f", {Term::var("u"), Term::var("v")});
    Term c = Term::app("f", {Term::var("u"), Term::var("u")});
    EXPECT_TRUE(variant(a, b));
    EXPECT_FALSE(variant(a, c));
}

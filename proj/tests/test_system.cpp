#include <algorithm>

#include <gtest/gtest.h>

#include "common.hpp"
#include "ctrs/unravel.hpp"

using namespace ctrs;
using testing_util::corpus;
using testing_util::term;

namespace {

std::set<std::string> vars_of(const std::vector<Term>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) collect_vars(t, out);
    return out;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST(System, SignatureAndDefined) {
    auto r7 = corpus("R7");
    auto sig = r7.signature();
    EXPECT_EQ(sig.at("split"), 2);
    EXPECT_EQ(sig.at("nil"), 0);
    EXPECT_EQ(r7.defined(), (std::set<std::string>{"le", "split"}));
    EXPECT_TRUE(r7.constructors().count("cons"));
}

TEST(System, ClassifyCorpus) {
    auto r2 = classify(corpus("R2"));
    EXPECT_TRUE(r2.system.deterministic);
    EXPECT_EQ(r2.system.type, 4);  // mult^-1(0) -> tp2(0,y)
    auto r3 = classify(corpus("R3"));
    EXPECT_TRUE(r3.system.deterministic);
    EXPECT_TRUE(classify(corpus("R12p")).system.normal);
    EXPECT_EQ(classify(corpus("R12")).flavor, Flavor::Join);
    auto empty = classify(parse_system("(RULES\n)\n"));
    EXPECT_TRUE(empty.rules.empty());
    EXPECT_TRUE(empty.system.deterministic);
}

TEST(System, XYZSets) {
    auto r2 = corpus("R2");
    const Rule* r = nullptr;
    for (const auto& rule : r2.rules)
        if (rule.conds.size() == 2) r = &rule;
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(x_set(*r, 1), var_set(r->lhs));
    auto x2 = x_set(*r, 2);
    EXPECT_TRUE(subset(var_set(r->conds[0].rhs), x2));
}

TEST(System, CorollaryURLImpliesUoptRL) {
    suite::Rng rng(21);
    suite::GenShape shape;
    for (int i = 0; i < 1000; ++i) {
        Rule r = suite::random_deterministic_rule(rng, shape);
        if (ultra_syntactic(r, UltraProperty::RL, Unraveling::U))
            EXPECT_TRUE(ultra_syntactic(r, UltraProperty::RL, Unraveling::Uopt)) << r.str();
        if (ultra_syntactic(r, UltraProperty::NE, Unraveling::U))
            EXPECT_TRUE(ultra_syntactic(r, UltraProperty::NE, Unraveling::Uopt)) << r.str();
    }
}

TEST(System, InversionRuleLemma) {
    suite::Rng rng(22);
    suite::GenShape shape;
    RewriteSystem ctx;
    ctx.variables = shape.variables;
    for (int i = 0; i < 1000; ++i) {
        Rule r = suite::random_deterministic_rule(rng, shape);
        Rule inv = invert_rule(r);
        std::size_t k = r.conds.size();
        bool lhs_cond = true;
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<Term> later{r.rhs};
            for (std::size_t m = j + 1; m < k; ++m) later.push_back(r.conds[m].lhs);
            lhs_cond = lhs_cond && subset(var_set(r.conds[j].rhs), vars_of(later));
        }
        auto ic = classify_rule(inv, ctx);
        auto rc = classify_rule(r, ctx);
        EXPECT_EQ(lhs_cond, ic.deterministic) << r.str();
        std::vector<Term> rs{r.rhs};
        for (const auto& c : r.conds) rs.push_back(c.lhs);
        if (ic.deterministic) EXPECT_EQ(subset(var_set(r.lhs), vars_of(rs)), ic.type <= 3) << r.str();
        EXPECT_EQ(rc.non_lv, ic.non_rv) << r.str();
        EXPECT_EQ(rc.non_rv, ic.non_lv) << r.str();
    }
}

TEST(System, InvertIsInvolution) {
    for (const auto& name : testing_util::oriented_corpus()) {
        auto r = corpus(name);
        auto back = invert(invert(r));
        ASSERT_EQ(back.rules.size(), r.rules.size());
        for (std::size_t i = 0; i < r.rules.size(); ++i) EXPECT_TRUE(back.rules[i].same_shape(r.rules[i]));
    }
    EXPECT_THROW(invert(corpus("R12")), DomainError);
}

TEST(System, ClassifyStableUnderReorderAndRenaming) {
    suite::Rng rng(23);
    suite::GenShape shape;
    for (int i = 0; i < 200; ++i) {
        RewriteSystem s;
        s.variables = shape.variables;
        for (int j = 0; j < 3; ++j) s.rules.push_back(suite::random_deterministic_rule(rng, shape, "r" + std::to_string(j)));
        RewriteSystem t = s;
        std::reverse(t.rules.begin(), t.rules.end());
        std::map<std::string, std::string> ren{{"x", "p"}, {"y", "q"}, {"z", "r"}, {"w", "s"}, {"v", "t"}};
        t.variables = {"p", "q", "r", "s", "t"};
        for (auto& r : t.rules) {
            r.lhs = rename_vars(r.lhs, ren);
            r.rhs = rename_vars(r.rhs, ren);
            for (auto& c : r.conds) c = {rename_vars(c.lhs, ren), rename_vars(c.rhs, ren)};
        }
        auto a = classify(s), b = classify(t);
        auto key = [](const RuleClass& c) {
            return std::vector<int>{c.deterministic, c.type, c.ll, c.rl, c.ne, c.non_lv, c.non_rv, c.normal,
                                    c.ground_conditional, c.wll_normal1, c.wll_3dctrs, c.right_stable,
                                    c.right_separated};
        };
        EXPECT_EQ(key(a.system), key(b.system));
        EXPECT_EQ(a.constructor_system, b.constructor_system);
        EXPECT_EQ(a.overlay, b.overlay);
        EXPECT_EQ(a.non_overlapping, b.non_overlapping);
        for (const auto& [label, c] : a.rules) {
            auto it = std::find_if(b.rules.begin(), b.rules.end(), [&](const auto& p) { return p.first == label; });
            ASSERT_NE(it, b.rules.end());
            EXPECT_EQ(key(c), key(it->second));
        }
    }
}

TEST(System, CriticalPairsReplay) {
    std::size_t seen = 0;
    for (const auto& name : testing_util::oriented_corpus()) {
        for (const auto& cp : critical_pairs(corpus(name))) {
            ++seen;
            const auto& o = cp.outer_renamed;
            const auto& in = cp.inner_renamed;
            Term outer_l = substitute(o.lhs, cp.mgu);
            EXPECT_EQ(subterm_at(outer_l, cp.pos), substitute(in.lhs, cp.mgu));
            EXPECT_EQ(cp.left, replace_at(outer_l, cp.pos, substitute(in.rhs, cp.mgu)));
            EXPECT_EQ(cp.right, substitute(o.rhs, cp.mgu));
            EXPECT_FALSE(cp.pos.empty() && cp.outer == cp.inner);
        }
    }
    EXPECT_GT(seen, 0u);
    // R0: a -> c, a -> d, b -> c, ... overlap only at the root of distinct rules
    auto r0 = critical_pairs(corpus("R0"));
    for (const auto& cp : r0) EXPECT_TRUE(cp.pos.empty());
}

TEST(System, AlphaUEqual) {
    auto u = parse_system("(VAR x y)\n(RULES\n  f(x) -> U1(g(x),x)\n  U1(y,x) -> y\n)\n");
    auto v = parse_system("(VAR a b)\n(RULES\n  U9(b,a) -> b\n  f(a) -> U9(g(a),a)\n)\n");
    EXPECT_TRUE(alpha_u_equal(u, v, {"f", "g"}));
    auto w = parse_system("(VAR a b)\n(RULES\n  U9(b,a) -> a\n  f(a) -> U9(g(a),a)\n)\n");
    EXPECT_FALSE(alpha_u_equal(u, w, {"f", "g"}));
    // a fixed symbol may not be renamed
    auto z = parse_system("(VAR a b)\n(RULES\n  U9(b,a) -> b\n  h(a) -> U9(g(a),a)\n)\n");
    EXPECT_FALSE(alpha_u_equal(u, z, {"f", "g", "h"}));
}

TEST(System, NormalForms) {
    auto r0 = corpus("R0");
    EXPECT_TRUE(is_normal_form(term("e", r0), r0));
    EXPECT_FALSE(is_normal_form(term("a", r0), r0));
}

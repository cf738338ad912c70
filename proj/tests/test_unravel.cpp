#include <gtest/gtest.h>

#include "common.hpp"
#include "ctrs/unravel.hpp"

using namespace ctrs;
using testing_util::corpus;
using testing_util::golden;

namespace {

bool has_extra_vars(const RewriteSystem& s) {
    for (const auto& r : s.rules)
        if (!r.extra_vars().empty()) return true;
    return false;
}

std::set<std::string> fixed_symbols(const RewriteSystem& computed) {
    std::set<std::string> out;
    for (const auto& [f, n] : computed.signature())
        if (f.rfind("U_", 0) != 0) out.insert(f);
    return out;
}

std::vector<RewriteSystem> deterministic_corpus() {
    std::vector<RewriteSystem> out;
    for (const auto& n : testing_util::oriented_corpus()) {
        auto s = corpus(n);
        if (classify(s).system.deterministic) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(Unravel, GoldenDisplays) {
    struct Case {
        std::string golden;
        RewriteSystem computed;
    };
    auto r8 = corpus("R8");
    std::vector<Case> cases{{"U_R2", unravel_U(corpus("R2"))},       {"Uopt_R2", unravel_Uopt(corpus("R2"))},
                            {"UJ_R12", unravel_UJ(corpus("R12"))},    {"UN_R12p", unravel_UN(corpus("R12p"))},
                            {"UN_R3p", unravel_UN(corpus("R3p"))},    {"U_R3p", unravel_U(corpus("R3p"))},
                            {"Uopt_R8_inv", unravel_Uopt(invert(r8))}, {"U_R8_inv", unravel_U(invert(r8))}};
    for (const auto& c : cases)
        EXPECT_TRUE(alpha_u_equal(c.computed, golden(c.golden), fixed_symbols(c.computed))) << c.golden;
}

TEST(Unravel, Symbols) {
    EXPECT_EQ(u_symbol("rho_2", 1), "U_rho_2_1");
    EXPECT_EQ(u_symbol("rho_2"), "U_rho_2");
    EXPECT_EQ(u_symbol("a/b", 3), "U_a_b_3");
}

TEST(Unravel, Rejections) {
    EXPECT_THROW(unravel_U(corpus("R12")), DomainError);
    EXPECT_THROW(unravel_UJ(corpus("R12p")), DomainError);
    auto nd = parse_system("(VAR x y)\n(RULES\n  f(x) -> x | g(y) == x\n)\n");
    EXPECT_THROW(unravel_Uopt(nd), DomainError);
}

TEST(Unravel, RuleCounts) {
    suite::Rng rng(41);
    suite::GenShape shape;
    VarOrder order(shape.variables);
    for (int i = 0; i < 500; ++i) {
        Rule r = suite::random_deterministic_rule(rng, shape);
        std::size_t k = r.conds.size();
        EXPECT_EQ(unravel_rule(r, Unraveling::U, order).size(), k + 1);
        EXPECT_EQ(unravel_rule(r, Unraveling::Uopt, order).size(), k + 1);
        if (k == 0) EXPECT_TRUE(unravel_rule(r, Unraveling::U, order)[0].same_shape(r));
    }
}

TEST(Unravel, DirectAgreesWithSyntactic) {
    suite::Rng rng(42);
    suite::GenShape shape;
    VarOrder order(shape.variables);
    const std::vector<UltraProperty> props{UltraProperty::LL, UltraProperty::RL, UltraProperty::NE, UltraProperty::NonLV,
                                           UltraProperty::NonRV};
    auto check = [&](const Rule& r, const VarOrder& o) {
        for (auto u : {Unraveling::U, Unraveling::Uopt})
            for (auto p : props)
                EXPECT_EQ(ultra_check(r, p, UltraMethod::Direct, u, o), ultra_check(r, p, UltraMethod::Syntactic, u, o))
                    << r.str() << " " << to_string(u) << "-" << to_string(p);
    };
    for (const auto& s : deterministic_corpus())
        for (const auto& r : s.rules) check(r, VarOrder(s.variables));
    for (int i = 0; i < 1000; ++i) check(suite::random_deterministic_rule(rng, shape), order);
}

TEST(Unravel, ULLIffUoptLL) {
    suite::Rng rng(43);
    suite::GenShape shape;
    for (int i = 0; i < 1000; ++i) {
        Rule r = suite::random_deterministic_rule(rng, shape);
        EXPECT_EQ(ultra_syntactic(r, UltraProperty::LL, Unraveling::U), ultra_syntactic(r, UltraProperty::LL, Unraveling::Uopt))
            << r.str();
    }
}

TEST(Unravel, Type3IffNoExtraVariables) {
    std::vector<RewriteSystem> systems = deterministic_corpus();
    suite::Rng rng(44);
    suite::GenShape shape;
    for (int i = 0; i < 300; ++i) {
        RewriteSystem s;
        s.variables = shape.variables;
        for (int j = 0; j < 2; ++j) s.rules.push_back(suite::random_deterministic_rule(rng, shape, "rho_" + std::to_string(j + 1)));
        systems.push_back(s);
    }
    int type4 = 0;
    for (const auto& s : systems) {
        bool t3 = classify(s).system.type <= 3;
        type4 += !t3;
        EXPECT_EQ(t3, !has_extra_vars(unravel_U(s))) << render_system(s);
        EXPECT_EQ(t3, !has_extra_vars(unravel_Uopt(s))) << render_system(s);
    }
    EXPECT_GT(type4, 0);  // the generator does reach type 4
}

TEST(Unravel, InversionDuality) {
    auto pairing = [](const RewriteSystem& r) {
        std::map<std::string, std::string> m;
        for (const auto& rule : r.rules)
            for (std::size_t i = 1; i <= rule.conds.size(); ++i)
                m[u_symbol(rule.label, i)] = u_symbol(rule.label, rule.conds.size() - i + 1);
        return m;
    };
    std::vector<RewriteSystem> systems;
    for (const auto& s : deterministic_corpus())
        if (ultra_check(s, UltraProperty::NE, UltraMethod::Syntactic, Unraveling::Uopt)) systems.push_back(s);
    EXPECT_GE(systems.size(), 2u);
    suite::Rng rng(45);
    for (int i = 0; i < 200; ++i) systems.push_back(suite::random_uopt_ne_system(rng));
    for (const auto& s : systems) {
        auto a = unravel_Uopt(invert(s));
        auto b = invert(unravel_Uopt(s));
        EXPECT_TRUE(alpha_u_equal(a, b)) << render_system(s);
        EXPECT_TRUE(equal_under_renaming(a, b, pairing(s))) << render_system(s);
    }
    auto r8 = corpus("R8");
    EXPECT_FALSE(alpha_u_equal(unravel_U(invert(r8)), invert(unravel_U(r8))));
}

TEST(Unravel, R2UltraReport) {
    auto r2 = corpus("R2");
    auto q = [&](UltraProperty p, Unraveling u) { return ultra_check(r2, p, UltraMethod::Syntactic, u); };
    EXPECT_TRUE(q(UltraProperty::NonLV, Unraveling::U));
    EXPECT_TRUE(q(UltraProperty::NonRV, Unraveling::U));
    EXPECT_FALSE(q(UltraProperty::LL, Unraveling::U));
    EXPECT_FALSE(q(UltraProperty::RL, Unraveling::U));
    EXPECT_FALSE(q(UltraProperty::NE, Unraveling::U));
    EXPECT_FALSE(q(UltraProperty::LL, Unraveling::Uopt));
    EXPECT_TRUE(q(UltraProperty::RL, Unraveling::Uopt));
    EXPECT_TRUE(q(UltraProperty::NE, Unraveling::Uopt));
}

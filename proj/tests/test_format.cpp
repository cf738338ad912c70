#include <gtest/gtest.h>

#include "common.hpp"

using namespace ctrs;
using testing_util::corpus;

namespace {

void expect_same(const RewriteSystem& a, const RewriteSystem& b) {
    ASSERT_EQ(a.rules.size(), b.rules.size());
    EXPECT_EQ(a.flavor, b.flavor);
    EXPECT_EQ(a.variables, b.variables);
    for (std::size_t i = 0; i < a.rules.size(); ++i) EXPECT_TRUE(a.rules[i].same_shape(b.rules[i])) << a.rules[i].str();
}

ParseError::Kind kind_of(const std::string& text) {
    try {
        parse_system(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ParseError::Kind::Syntax;
}

}  // namespace

TEST(Format, RoundTripCorpus) {
    auto names = testing_util::oriented_corpus();
    names.push_back("R12");
    for (const auto& n : names) {
        auto s = corpus(n);
        expect_same(s, parse_system(render_system(s)));
    }
}

TEST(Format, RoundTripRandom) {
    suite::Rng rng(31);
    suite::GenShape shape;
    for (int i = 0; i < 300; ++i) {
        RewriteSystem s;
        s.variables = shape.variables;
        s.flavor = i % 3 == 0 ? Flavor::Join : Flavor::Oriented;
        for (int j = 0; j < 3; ++j) s.rules.push_back(suite::random_deterministic_rule(rng, shape, "rho_" + std::to_string(j + 1)));
        expect_same(s, parse_system(render_system(s)));
    }
}

TEST(Format, TermRoundTrip) {
    auto r2 = corpus("R2");
    Term t = parse_term("mult^-1(s(s(0)))", r2);
    EXPECT_EQ(render_term(t), "mult^-1(s(s(0)))");
    EXPECT_EQ(parse_term(render_term(t), r2), t);
}

TEST(Format, ErrorClasses) {
    EXPECT_EQ(kind_of("(RULES\n  f(x) -> $\n)\n"), ParseError::Kind::Lexical);
    EXPECT_EQ(kind_of("(RULES\n  f(a -> a\n)\n"), ParseError::Kind::Syntax);
    EXPECT_EQ(kind_of("(RULES\n  f(a) -> f(a,a)\n)\n"), ParseError::Kind::ArityClash);
    EXPECT_EQ(kind_of("(VAR x)\n(RULES\n  x(a) -> a\n)\n"), ParseError::Kind::VariableAsFunction);
    EXPECT_EQ(kind_of("(RULES\n  f(a#1) -> a\n)\n"), ParseError::Kind::Reserved);
}

TEST(Format, FuzzNeverAborts) {
    suite::Rng rng(32);
    const std::string alphabet = "()|=->,abfxVARULES \n^'#$";
    for (int i = 0; i < 3000; ++i) {
        std::string text;
        std::size_t n = rng() % 60;
        for (std::size_t j = 0; j < n; ++j) text += alphabet[rng() % alphabet.size()];
        if (i % 2) text = "(VAR x)\n(RULES\n" + text + "\n)\n";
        try {
            parse_system(text);
        } catch (const ParseError&) {
        } catch (const DomainError&) {
        }
    }
    SUCCEED();
}

TEST(Format, MapBlock) {
    auto src = parse_source("(MAP\n  U(x1,x2) -> U(x1,true,x2)\n)\n");
    ASSERT_EQ(src.maps.size(), 1u);
    EXPECT_EQ(src.maps[0].symbol, "U");
    EXPECT_EQ(src.maps[0].params.size(), 2u);
}

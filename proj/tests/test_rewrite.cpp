#include <gtest/gtest.h>

#include "common.hpp"
#include "ctrs/rewrite.hpp"
#include "ctrs/suite/oracle.hpp"
#include "ctrs/unravel.hpp"

using namespace ctrs;
using testing_util::corpus;
using testing_util::term;

namespace {

Bounds small(int steps) {
    Bounds b;
    b.steps = steps;
    return b;
}

TermSet as_set(const Closure& c) { return TermSet(c.terms.begin(), c.terms.end()); }

}  // namespace

TEST(Rewrite, R0Reach) {
    auto r0 = corpus("R0");
    auto c = reachable(r0, term("a", r0), small(3));
    ASSERT_TRUE(c.contains(term("e", r0)));
    EXPECT_EQ(c.derivation_to(term("e", r0))->steps.size(), 2u);
    EXPECT_TRUE(c.exhaustive());
}

TEST(Rewrite, LevelZeroIsEmpty) {
    auto r3 = corpus("R3");
    Engine e(r3);
    EXPECT_TRUE(e.successors(term("f(e)", r3), 0).empty());
    EXPECT_TRUE(e.successors(term("f(e)", r3), 1).size() == 1);
    // the condition a ->* e is decided by the level 1 closure, which has no conditional steps to take
    EXPECT_EQ(e.successors(term("f(a)", r3), 1).size(), 2u);
}

// Engine closures agree with the depth-first oracle, term for term.
TEST(Rewrite, EngineMatchesOracle) {
    struct Case {
        std::string sys;
        std::vector<std::string> starts;
        int steps;
    };
    std::vector<Case> cases{
        {"R0", {"a", "b", "k"}, 6},
        {"R3", {"h(f(a),f(b))", "f(a)", "h(a,a)"}, 6},
        {"R5", {"f(a)", "f(b)"}, 5},
        {"R7", {"split(s(0),cons(0,cons(s(s(0)),nil)))", "le(s(0),s(s(0)))"}, 6},
        {"R12p", {"odd(s(s(s(0))))", "even(s(s(0)))"}, 5},
        {"R12", {"odd(s(s(s(0))))", "even(s(0))"}, 5},
        {"R4", {"f(a,b)", "g(a)"}, 4},
        {"R8", {"f(a)", "g(a)"}, 4},
    };
    for (const auto& c : cases) {
        auto sys = corpus(c.sys);
        Bounds b = small(c.steps);
        b.level = 3;
        suite::DfsOracle oracle(sys, c.steps, b.term_size);
        for (const auto& s : c.starts) {
            Term t = term(s, sys);
            Engine e(sys, b);
            Closure cl = e.reach(t);
            EXPECT_EQ(as_set(cl), oracle.reach(t, b.level)) << c.sys << " " << s;
            if (!cl.size_pruned && !cl.state_capped) EXPECT_EQ(cl.converged, oracle.converged(t, b.level)) << c.sys << " " << s;
        }
    }
}

TEST(Rewrite, MonotoneInLevel) {
    for (const auto& name : {"R3", "R7", "R12p", "R2"}) {
        auto sys = corpus(name);
        Engine e(sys, small(6));
        for (const auto& t : ground_terms(sys.signature(), 2, 300)) {
            for (int n = 0; n < 4; ++n) {
                auto a = e.successors(t, n), b = e.successors(t, n + 1);
                for (const auto& st : a) {
                    bool found = false;
                    for (const auto& u : b) found = found || (u.result == st.result && u.pos == st.pos && u.rule == st.rule);
                    EXPECT_TRUE(found) << name << " " << t.str();
                }
            }
        }
    }
}

TEST(Rewrite, ParallelWithinSequential) {
    for (const auto& name : {"R0", "R1", "R9"}) {
        auto sys = corpus(name);
        for (const auto& t : ground_terms(sys.signature(), 2, 200)) {
            auto c = reachable(sys, t, small(static_cast<int>(t.size())));
            for (const auto& u : parallel_successors(sys, t)) EXPECT_TRUE(c.contains(u)) << name << " " << t.str();
        }
    }
}

TEST(Rewrite, UnravelingsAreComplete) {
    struct Case {
        std::string sys;
        std::string start;
    };
    std::vector<Case> cases{{"R2", "mult^-1(s(s(0)))"}, {"R3", "h(f(a),f(b))"},
                            {"R7", "split(s(0),cons(0,cons(s(s(0)),nil)))"}, {"R12p", "odd(s(s(s(0))))"}};
    for (const auto& c : cases) {
        auto sys = corpus(c.sys);
        Term s = term(c.start, sys);
        auto base = reachable(sys, s, small(3));
        for (auto kind : {Unraveling::U, Unraveling::Uopt}) {
            auto u = unravel(sys, kind);
            auto big = reachable(u, s, small(30));
            for (const auto& t : base.terms) EXPECT_TRUE(big.contains(t)) << c.sys << " " << t.str();
        }
    }
    auto r12 = corpus("R12");
    Term s = term("odd(s(s(s(0))))", r12);
    auto base = reachable(r12, s, small(3));
    auto big = reachable(unravel_UJ(r12), s, small(30));
    for (const auto& t : base.terms) EXPECT_TRUE(big.contains(t)) << t.str();
}

TEST(Rewrite, EvSafeWithinPlain) {
    auto ri = invert(corpus("R10"));
    auto u = unravel_Uopt(ri);
    Term s = term("A", ri);
    Engine e(u, small(4));
    auto plain = e.reach(s);
    auto safe = e.ev_safe_reach(s, function_positions(s));
    for (const auto& st : safe.states) EXPECT_TRUE(plain.contains(st.term)) << st.term.str();
    EXPECT_LT(safe.states.size(), plain.terms.size() + 1);
}

TEST(Rewrite, InverseIsConverse) {
    for (const auto& name : {"R0", "R8"}) {
        auto r = corpus(name);
        auto ri = invert(r);
        Bounds b = small(4);
        b.term_size = 6;
        auto terms = ground_terms(r.signature(), 2, 400);
        std::vector<Term> small_terms;
        for (const auto& t : terms)
            if (t.size() <= 5) small_terms.push_back(t);
        Engine fwd(r, b, {}, small_terms), bwd(ri, b, {}, small_terms);
        std::map<Term, TermSet, TermLess> reach_f, reach_b;
        for (const auto& t : small_terms) {
            reach_f[t] = as_set(fwd.reach(t));
            reach_b[t] = as_set(bwd.reach(t));
        }
        for (const auto& s : small_terms)
            for (const auto& t : small_terms) {
                if (!reach_f[s].count(t) || !reach_b.count(t)) continue;
                EXPECT_TRUE(reach_b[t].count(s)) << name << ": " << s.str() << " ->* " << t.str();
            }
    }
}

TEST(Rewrite, RestrictionsOnlyRemoveSteps) {
    auto r4 = corpus("R4");
    auto u = unravel_Uopt(r4);
    Term s = term("f(a,b)", r4);
    auto full = reachable(u, s, small(8));
    auto cs = reachable(u, s, small(8),
                        Policy::context_sensitive({{u_symbol("rho_1", 1), {1}}, {u_symbol("rho_1", 2), {1}}}));
    for (const auto& t : cs.terms) EXPECT_TRUE(full.contains(t));
    auto r5 = corpus("R5");
    auto u5 = unravel_Uopt(r5);
    Term s5 = term("f(a)", r5);
    auto full5 = reachable(u5, s5, small(8));
    auto mem = reachable(u5, s5, small(8), Policy::membership());
    for (const auto& t : mem.terms) EXPECT_TRUE(full5.contains(t));
    EXPECT_LE(mem.terms.size(), full5.terms.size());
}

TEST(Rewrite, VerifyRejectsTampering) {
    auto r0 = corpus("R0");
    auto c = reachable(r0, term("a", r0), small(3));
    auto d = *c.derivation_to(term("e", r0));
    EXPECT_TRUE(verify_derivation(d, r0).ok);
    auto bad = d;
    bad.steps[0].rule = "nope";
    EXPECT_FALSE(verify_derivation(bad, r0).ok);
    bad = d;
    bad.steps.back().result = term("m", r0);
    auto v = verify_derivation(bad, r0);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.failed_step, 1);
}

TEST(Rewrite, GroundTermsCount) {
    Signature sig{{"0", 0}, {"s", 1}};
    EXPECT_EQ(ground_terms(sig, 0).size(), 1u);
    EXPECT_EQ(ground_terms(sig, 3).size(), 4u);
}

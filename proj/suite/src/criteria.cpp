#include "ctrs/suite/criteria.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "ctrs/format.hpp"
#include "ctrs/homo.hpp"
#include "ctrs/rewrite.hpp"
#include "ctrs/soundness.hpp"
#include "ctrs/sr.hpp"
#include "ctrs/suite/generators.hpp"
#include "ctrs/suite/oracle.hpp"
#include "ctrs/unravel.hpp"

namespace ctrs::suite {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
    const SuiteConfig& cfg;
    RewriteSystem load(const std::string& name) const { return load_system(cfg.corpus_dir + "/" + name + ".ctrs"); }
    RewriteSystem golden(const std::string& name) const {
        return load_system(cfg.corpus_dir + "/golden/" + name + ".ctrs");
    }
};

const char* yn(bool b) { return b ? "yes" : "no"; }

std::set<std::string> fixed_symbols(const RewriteSystem& computed) {
    std::set<std::string> out;
    for (const auto& [f, n] : computed.signature())
        if (f.rfind("U_", 0) != 0) out.insert(f);
    return out;
}

bool original_only(const Term& t, const RewriteSystem& transformed) {
    return !contains_symbol(t, transformed.generated);
}

// ---------------------------------------------------------------- 1

Outcome golden_transformations(const Ctx& c) {
    auto r2 = c.load("R2"), r12 = c.load("R12"), r12p = c.load("R12p"), r3p = c.load("R3p"), r8 = c.load("R8");
    auto r6 = c.load("R6"), r7 = c.load("R7");
    std::vector<std::pair<std::string, std::function<RewriteSystem()>>> cases{
        {"U_R2", [&] { return unravel_U(r2); }},
        {"Uopt_R2", [&] { return unravel_Uopt(r2); }},
        {"UJ_R12", [&] { return unravel_UJ(r12); }},
        {"UN_R12p", [&] { return unravel_UN(r12p); }},
        {"UN_R3p", [&] { return unravel_UN(r3p); }},
        {"U_R3p", [&] { return unravel_U(r3p); }},
        {"Norm_R12", [&] { return norm_transform(r12); }},
        {"R8_inv", [&] { return invert(r8); }},
        {"Uopt_R8_inv", [&] { return unravel_Uopt(invert(r8)); }},
        {"U_R8_inv", [&] { return unravel_U(invert(r8)); }},
        {"SR_R6", [&] { return sr_transform(r6).system; }},
        {"SR_R7", [&] { return sr_transform(r7).system; }},
    };
    Outcome o;
    int ok = 0;
    std::ostringstream bad;
    for (const auto& [name, make] : cases) {
        auto computed = make();
        bool eq = alpha_u_equal(computed, c.golden(name), fixed_symbols(computed));
        ok += eq;
        if (!eq) bad << " " << name;
    }
    o.pass = ok == static_cast<int>(cases.size());
    o.detail = std::to_string(ok) + "/" + std::to_string(cases.size()) + " equal";
    if (!o.pass) o.detail += ", differ:" + bad.str();
    return o;
}

// ---------------------------------------------------------------- 2

Outcome ultra_report_r2(const Ctx& c) {
    auto r2 = c.load("R2");
    auto q = [&](UltraProperty p, Unraveling u) {
        bool s = ultra_check(r2, p, UltraMethod::Syntactic, u);
        bool d = ultra_check(r2, p, UltraMethod::Direct, u);
        return std::make_pair(s, s == d);
    };
    struct Want {
        UltraProperty p;
        Unraveling u;
        bool value;
    };
    std::vector<Want> want{
        {UltraProperty::NonLV, Unraveling::U, true},  {UltraProperty::NonRV, Unraveling::U, true},
        {UltraProperty::LL, Unraveling::U, false},    {UltraProperty::RL, Unraveling::U, false},
        {UltraProperty::NE, Unraveling::U, false},    {UltraProperty::LL, Unraveling::Uopt, false},
        {UltraProperty::RL, Unraveling::Uopt, true},  {UltraProperty::NE, Unraveling::Uopt, true},
    };
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    for (const auto& w : want) {
        auto [v, agree] = q(w.p, w.u);
        bool good = v == w.value && agree;
        o.pass = o.pass && good;
        d << to_string(w.u) << "-" << to_string(w.p) << "=" << yn(v) << (good ? "" : "(!)") << " ";
    }
    o.detail = d.str();
    o.detail.pop_back();
    return o;
}

// ---------------------------------------------------------------- 3

Outcome ultra_cross_check(const Ctx& c) {
    const std::vector<UltraProperty> props{UltraProperty::LL, UltraProperty::RL, UltraProperty::NE, UltraProperty::NonLV,
                                           UltraProperty::NonRV};
    std::size_t checks = 0, agree = 0, corpus_rules = 0;
    auto run = [&](const Rule& r, const VarOrder& order) {
        for (auto u : {Unraveling::U, Unraveling::Uopt})
            for (auto p : props) {
                ++checks;
                agree += ultra_check(r, p, UltraMethod::Direct, u, order) ==
                         ultra_check(r, p, UltraMethod::Syntactic, u, order);
            }
    };
    for (const auto& name : {"R1", "R2", "R3", "R3p", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "R10p", "R10quad",
                             "R11", "R12p", "R20"}) {
        auto sys = c.load(name);
        if (sys.flavor != Flavor::Oriented || !classify(sys).system.deterministic) continue;
        VarOrder order(sys.variables);
        for (const auto& r : sys.rules) {
            ++corpus_rules;
            run(r, order);
        }
    }
    Rng rng(kUltraSeed);
    GenShape shape;
    VarOrder order(shape.variables);
    const int random_rules = 1000;
    for (int i = 0; i < random_rules; ++i) run(random_deterministic_rule(rng, shape), order);
    Outcome o;
    o.pass = checks > 0 && agree == checks;
    o.detail = std::to_string(agree) + "/" + std::to_string(checks) + " agree (" + std::to_string(corpus_rules) +
               " corpus rules, " + std::to_string(random_rules) + " random rules)";
    return o;
}

// ---------------------------------------------------------------- 4, 5

struct Replay {
    std::string label;
    RewriteSystem system;
    std::string transformation;
    std::string start;
    std::string target;  // empty: expect no counterexample
    Policy policy;
    bool ev_safe = false;
};

bool same_bounds(const Bounds& a, const Bounds& b) {
    return a.level == b.level && a.steps == b.steps && a.term_size == b.term_size;
}

// Replays the search and re-derives every piece of evidence.
std::string replay(const Replay& rp, bool& ok) {
    auto h = make_transformation(rp.transformation, rp.system);
    SearchOptions opt;
    opt.policy = rp.policy;
    opt.ev_safe = rp.ev_safe;
    Term s = parse_term(rp.start, rp.system);
    if (!rp.target.empty()) opt.targets = {parse_term(rp.target, rp.system)};
    auto v = search_unsoundness(h, {s}, opt);
    std::string out = rp.label + ": " + to_string(v.status);
    if (rp.target.empty()) {
        ok = v.status == SoundnessStatus::NoneWithinBounds;
        return out;
    }
    if (!v.counterexample) {
        ok = false;
        return out;
    }
    const auto& ce = *v.counterexample;
    Term t = parse_term(rp.target, rp.system);
    bool pair = ce.s == s && ce.t == t;
    Engine te(h.transformed, opt.bounds, rp.policy);
    bool witness = te.verify(ce.witness).ok && ce.witness.start == h.translate(s) && ce.witness.end() == h.translate(t);
    const auto& cert = ce.certificate;
    Bounds rb = reference_bounds();
    Engine re(cert.system, rb);
    Closure cl = re.reach(cert.from);
    // second opinion from the depth-first oracle
    DfsOracle oracle(cert.system, rb.steps, rb.term_size);
    TermSet listed(cert.closure.begin(), cert.closure.end());
    bool oracle_ok = oracle.reach(cert.from, rb.level) == listed && oracle.converged(cert.from, rb.level) &&
                     !listed.count(cert.excluded);
    bool certified = same_bounds(cert.bounds, rb) && cl.exhaustive() && !cl.nested_incomplete &&
                     !cl.contains(cert.excluded) && cl.terms.size() == cert.closure.size() && oracle_ok;
    ok = pair && witness && certified;
    out += " (" + render_term(ce.s) + " ->* " + render_term(ce.t) + ", " + std::to_string(ce.witness.steps.size()) +
           " steps, " + (cert.direction == AbsenceCertificate::Direction::Forward ? "forward" : "backward") +
           " certificate of " + std::to_string(cert.closure.size()) + " terms)";
    if (!pair) out += " [pair differs]";
    if (!witness) out += " [witness fails]";
    if (!certified) out += " [certificate fails]";
    return out;
}

Outcome counterexample_replays(const Ctx& c) {
    auto r10 = c.load("R10");
    std::vector<Replay> cases{
        {"R3/Uopt", c.load("R3"), "Uopt", "h(f(a),f(b))", "A", {}, false},
        {"R6/U", c.load("R6"), "U", "h(f(a),f(b))", "A", {}, false},
        {"R6/Uopt", c.load("R6"), "Uopt", "h(f(a),f(b))", "A", {}, false},
        {"R8/Uopt", c.load("R8"), "Uopt", "f(a)", "c(b,h(b))", {}, false},
        {"R10/Uopt", r10, "Uopt", "h(f(a),f(b))", "A", {}, false},
        {"R10inv/Uopt", invert(r10), "Uopt", "A", "h(f(a),f(b))", {}, false},
        {"R4/Uopt/cs", c.load("R4"), "Uopt", "f(a,b)", "a",
         Policy::context_sensitive({{u_symbol("rho_1", 1), {1}}, {u_symbol("rho_1", 2), {1}}}), false},
        {"R5/Uopt/membership", c.load("R5"), "Uopt", "f(a)", "b", Policy::membership(), false},
        {"R10/U", r10, "U", "h(f(a),f(b))", "", {}, false},
    };
    Outcome o;
    o.pass = true;
    std::string sep;
    for (const auto& rp : cases) {
        bool ok = false;
        std::string line = replay(rp, ok);
        o.pass = o.pass && ok;
        o.detail += sep + line + (ok ? "" : " FAIL");
        sep = "; ";
    }
    return o;
}

Outcome ev_safe_flip(const Ctx& c) {
    auto ri = invert(c.load("R10"));
    auto h = make_transformation("Uopt", ri);
    Term s = parse_term("A", ri), t = parse_term("h(f(a),f(b))", ri);
    SearchOptions plain;
    plain.targets = {t};
    SearchOptions safe = plain;
    safe.ev_safe = true;
    auto vp = search_unsoundness(h, {s}, plain);
    auto vs = search_unsoundness(h, {s}, safe);
    Outcome o;
    o.pass = vp.status == SoundnessStatus::CounterexampleFound && vs.status == SoundnessStatus::NoneWithinBounds;
    o.detail = std::string("plain=") + to_string(vp.status) + " ev_safe=" + to_string(vs.status);
    return o;
}

// ---------------------------------------------------------------- 6

std::map<std::string, std::string> reversed_u_symbols(const RewriteSystem& r) {
    std::map<std::string, std::string> m;
    for (const auto& rule : r.rules) {
        std::size_t k = rule.conds.size();
        for (std::size_t i = 1; i <= k; ++i) m[u_symbol(rule.label, i)] = u_symbol(rule.label, k - i + 1);
    }
    return m;
}

bool duality_holds(const RewriteSystem& r) {
    auto a = unravel_Uopt(invert(r));
    auto b = invert(unravel_Uopt(r));
    return alpha_u_equal(a, b) && equal_under_renaming(a, b, reversed_u_symbols(r));
}

Outcome inversion_duality(const Ctx& c) {
    auto r8 = c.load("R8");
    bool r8_uopt = duality_holds(r8);
    bool r8_u = alpha_u_equal(unravel_U(invert(r8)), invert(unravel_U(r8)));
    Rng rng(kDualitySeed);
    const int n = 200;
    int ok = 0, errors = 0;
    for (int i = 0; i < n; ++i) {
        auto sys = random_uopt_ne_system(rng);
        try {
            ok += duality_holds(sys);
        } catch (const DomainError&) {
            ++errors;
        }
    }
    Outcome o;
    o.pass = r8_uopt && !r8_u && ok == n;
    o.detail = std::string("R8 Uopt dual=") + yn(r8_uopt) + ", R8 U dual=" + yn(r8_u) + ", random " +
               std::to_string(ok) + "/" + std::to_string(n);
    if (errors) o.detail += " (" + std::to_string(errors) + " rejected)";
    return o;
}

// ---------------------------------------------------------------- 7

bool flags_ok(const SimulationVerdict& v, PhiTheorem th) {
    auto req = phi_requirements(th);
    return v.flags.f_identical && (!req.non_erasing || v.flags.non_erasing) &&
           (!req.ev_preserving || v.flags.ev_preserving);
}

Outcome simulation_equalities(const Ctx& c) {
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    int corpus = 0, corpus_ok = 0;
    for (const auto& name : {"R1", "R2", "R3", "R3p", "R4", "R5", "R6", "R7", "R8", "R9", "R10", "R10p", "R10quad",
                             "R11", "R12p", "R20"}) {
        auto r = c.load(name);
        if (r.flavor != Flavor::Oriented || !r.conditional() || !classify(r).system.deterministic) continue;
        ++corpus;
        auto phi = canonical_phi(PhiTheorem::UToUopt, r);
        auto v = check_simulation(unravel_Uopt(r), unravel_U(r), phi, false);
        if (v.equal && flags_ok(v, PhiTheorem::UToUopt))
            ++corpus_ok;
        else
            d << "u_to_uopt(" << name << ") different; ";
    }
    o.pass = corpus_ok == corpus;
    d << "u_to_uopt " << corpus_ok << "/" << corpus;

    auto r12 = c.load("R12"), r12p = c.load("R12p");
    struct Check {
        std::string label;
        PhiTheorem th;
        std::function<RewriteSystem()> lhs, rhs;
        const RewriteSystem* base;
    };
    std::vector<Check> checks{
        {"UN(Norm(R12)) vs UJ(R12)", PhiTheorem::UjToUnNorm,
         [&] { return make_transformation("UN∘Norm", r12).transformed; }, [&] { return unravel_UJ(r12); }, &r12},
        {"UN(R12') vs UJ(R12)", PhiTheorem::UjToUnNormalJoin, [&] { return unravel_UN(r12p); },
         [&] { return unravel_UJ(r12); }, &r12},
        {"U(Det(R12)) vs UJ(R12)", PhiTheorem::UjToUDet, [&] { return unravel_U(det_transform(r12)); },
         [&] { return unravel_UJ(r12); }, &r12},
        {"UN(R12') vs U(R12')", PhiTheorem::UToUn, [&] { return unravel_UN(r12p); }, [&] { return unravel_U(r12p); },
         &r12p},
    };
    for (const auto& ch : checks) {
        auto phi = canonical_phi(ch.th, *ch.base);
        auto v = check_simulation(ch.lhs(), ch.rhs(), phi, phi_requirements(ch.th).modulo_identity);
        bool ok = v.equal && flags_ok(v, ch.th);
        o.pass = o.pass && ok;
        d << "; " << ch.label << " " << to_string(ch.th) << "=" << (v.equal ? "equal" : "different");
        if (!v.equal) d << " (" << v.missing.size() << " missing, " << v.extra.size() << " extra)";
        if (!flags_ok(v, ch.th)) d << " [flags]";
    }
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------- 8

Outcome sr_execution(const Ctx& c) {
    auto r7 = c.load("R7");
    auto sr = sr_transform(r7);
    Term start = sr_translate(sr.ctx, parse_term("split(s(0),cons(0,cons(s(s(0)),nil)))", r7));
    Term expected = parse_term("curly(tp2(cons(0,nil),cons(s(s(0)),nil)))", std::vector<std::string>{});
    Policy li;
    li.strategy = Policy::Strategy::LeftmostInnermostTop;
    Engine e(sr.system, Bounds{}, li);
    Term cur = start;
    int steps = 0;
    const int limit = 60;
    for (; steps <= limit; ++steps) {
        auto next = e.successors(cur);
        if (next.empty()) break;
        cur = next.front().result;
    }
    auto h = hat(sr.ctx, cur);
    bool nf = h && is_normal_form(*h, r7) && reachable(r7, parse_term("split(s(0),cons(0,cons(s(s(0)),nil)))", r7),
                                                         Bounds{}).contains(*h);
    Outcome o;
    o.pass = steps <= limit && cur == expected && nf;
    o.detail = "normal form " + render_term(cur) + " after " + std::to_string(steps) + " steps; hat " +
               (h ? render_term(*h) : std::string("undefined")) + (nf ? " is an R7 normal form" : " is not an R7 normal form");
    return o;
}

// ---------------------------------------------------------------- 9

Outcome sr_simulates_u(const Ctx& c) {
    auto r7 = c.load("R7");
    auto u7 = unravel_U(r7);
    auto sr = sr_transform(r7);
    const std::vector<std::string> nums{"0", "s(0)", "s(s(0))"};
    std::vector<std::string> lists{"nil"};
    for (const auto& a : nums) lists.push_back("cons(" + a + ",nil)");
    for (const auto& a : nums)
        for (const auto& b : nums) lists.push_back("cons(" + a + ",cons(" + b + ",nil))");

    std::vector<Derivation> samples;
    Rng rng(0x5eed0009);
    Bounds b;
    b.steps = 24;
    Engine eu(u7, b);
    std::size_t starts = 0;
    for (const auto& m : nums)
        for (const auto& l : lists) {
            ++starts;
            Term s = parse_term("split(" + m + "," + l + ")", r7);
            Closure cl = eu.reach(s);
            for (const auto& t : cl.terms)
                if (t != s && original_only(t, u7)) samples.push_back(*cl.derivation_to(t));
            for (int walk = 0; walk < 3; ++walk) {
                Derivation d{s, {}, false, {}};
                for (int k = 0; k < 40; ++k) {
                    auto next = eu.successors(d.end());
                    if (next.empty()) break;
                    d.steps.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
                    if (original_only(d.end(), u7)) samples.push_back(d);
                }
            }
        }
    std::size_t ok = 0;
    for (const auto& d : samples) {
        try {
            auto sd = sr_simulate_u_derivation(sr.ctx, sr.system, d);
            ok += verify_derivation(sd, sr.system).ok && sd.start == sr_translate(sr.ctx, d.start) &&
                  sd.end() == sr_translate(sr.ctx, d.end());
        } catch (const DomainError&) {
        }
    }
    Outcome o;
    o.pass = !samples.empty() && ok == samples.size();
    o.detail = std::to_string(ok) + "/" + std::to_string(samples.size()) + " simulated derivations verify (" +
               std::to_string(starts) + " start terms)";
    return o;
}

// ---------------------------------------------------------------- 10

Outcome semantic_equalities(const Ctx& c) {
    auto r12 = c.load("R12");
    Bounds b;
    b.steps = 8;
    auto restricted = [&](const RewriteSystem& sys, const Term& s) {
        TermSet out;
        Engine e(sys, b);
        for (const auto& t : e.reach(s).terms)
            if (original_only(t, sys)) out.insert(t);
        return out;
    };
    auto norm = norm_transform(r12);
    auto det = det_transform(r12);
    auto starts = ground_terms(r12.signature(), 3);
    std::size_t norm_eq = 0, det_eq = 0;
    for (const auto& s : starts) {
        TermSet base = restricted(r12, s);
        norm_eq += base == restricted(norm, s);
        det_eq += base == restricted(det, s);
    }
    Outcome o;
    o.pass = norm_eq == starts.size() && det_eq == starts.size();
    o.detail = "Norm " + std::to_string(norm_eq) + "/" + std::to_string(starts.size()) + ", Det " +
               std::to_string(det_eq) + "/" + std::to_string(starts.size()) + " start terms with equal reachable sets";
    return o;
}

// ---------------------------------------------------------------- 11

Outcome structural_positions_example(const Ctx& c) {
    auto r7 = c.load("R7");
    auto sr = sr_transform(r7);
    Term t = parse_term(
        "curly(split^bar(s(0),cons(0,cons(s(s(0)),nil)),stk2(curly(split^bar(s(0),cons(s(s(0)),nil),bot,bot)),bot),bot))",
        sr.system);
    std::set<Position> want{{1}, {1, 1}, {1, 1, 1}, {1, 2}, {1, 2, 1}, {1, 2, 2}, {1, 2, 2, 1}, {1, 2, 2, 1, 1},
                            {1, 2, 2, 1, 1, 1}, {1, 2, 2, 2}};
    auto got = structural_positions(sr.ctx, t);
    Outcome o;
    o.pass = got && *got == want;
    std::string list;
    if (got)
        for (const auto& p : *got) list += (list.empty() ? "" : " ") + position_str(p);
    o.detail = got ? std::to_string(got->size()) + " positions: " + list : "undefined";
    return o;
}

// ---------------------------------------------------------------- 12

Outcome condition_reports(const Ctx& c) {
    struct Want {
        std::string system;
        std::vector<std::string> ids;
    };
    std::vector<Want> wants{{"R2", {"uopt-rlne-soundness", "u-from-uopt-transfer"}},
                            {"R7", {"uopt-ll-soundness"}},
                            {"R10p", {"uopt-rlne-soundness"}}};
    Outcome o;
    o.pass = true;
    std::string sep;
    for (const auto& w : wants) {
        auto rep = soundness_condition_report(c.load(w.system));
        o.detail += sep + w.system + ":";
        for (const auto& id : w.ids) {
            bool cited = rep.cites(id);
            o.pass = o.pass && cited;
            o.detail += " " + id + (cited ? "" : "(missing)");
        }
        sep = "; ";
    }
    return o;
}

}  // namespace

std::string criterion_title(int id) {
    switch (id) {
        case 1: return "golden transformations";
        case 2: return "ultra-property report for R2";
        case 3: return "characterization cross-check";
        case 4: return "counterexample replays";
        case 5: return "EV-safe flip";
        case 6: return "inversion duality";
        case 7: return "simulation equalities";
        case 8: return "SR execution";
        case 9: return "SR simulates U";
        case 10: return "bounded semantic equalities";
        case 11: return "structural positions";
        case 12: return "condition report";
        case 13: return "determinism and time budget";
    }
    return "unknown";
}

Outcome run_criterion(int id, const SuiteConfig& cfg) {
    Ctx c{cfg};
    static const std::map<int, Outcome (*)(const Ctx&)> table{
        {1, golden_transformations}, {2, ultra_report_r2},     {3, ultra_cross_check},
        {4, counterexample_replays}, {5, ev_safe_flip},        {6, inversion_duality},
        {7, simulation_equalities},  {8, sr_execution},        {9, sr_simulates_u},
        {10, semantic_equalities},   {11, structural_positions_example}, {12, condition_reports},
    };
    auto it = table.find(id);
    if (it == table.end()) throw std::invalid_argument("no criterion " + std::to_string(id));
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = it->second(c);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("error: ") + e.what();
    }
    o.id = id;
    o.title = criterion_title(id);
    o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return o;
}

std::vector<Outcome> run_all(const SuiteConfig& cfg) {
    std::vector<Outcome> out;
    double total = 0;
    for (int i = 1; i < kCriteria; ++i) {
        out.push_back(run_criterion(i, cfg));
        total += out.back().seconds;
    }
    Outcome det;
    det.id = kCriteria;
    det.title = criterion_title(kCriteria);
    auto t0 = Clock::now();
    int same = 0;
    for (int i = 1; i < kCriteria; ++i) {
        auto again = run_criterion(i, cfg);
        same += again.pass == out[static_cast<std::size_t>(i - 1)].pass &&
                again.detail == out[static_cast<std::size_t>(i - 1)].detail;
    }
    det.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    det.pass = same == kCriteria - 1 && total <= cfg.budget_seconds;
    std::ostringstream d;
    d << same << "/" << kCriteria - 1 << " outputs reproduced; first pass "
      << (total <= cfg.budget_seconds ? "within" : "over") << " the " << cfg.budget_seconds << " s budget";
    det.detail = d.str();
    out.push_back(det);
    return out;
}

std::string format_outcome(const Outcome& o) {
    std::ostringstream s;
    s << "criterion " << (o.id < 10 ? " " : "") << o.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.title << ": "
      << o.detail;
    return s.str();
}

}  // namespace ctrs::suite

#include "ctrs/json_io.hpp"

namespace ctrs {

namespace {

Json strings(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

Json terms(const std::vector<Term>& ts) {
    Json a = Json::array();
    for (const auto& t : ts) a.push_back(encode(t));
    return a;
}

Json bounds(const Bounds& b) {
    return Json{{"level", b.level}, {"steps", b.steps}, {"term_size", b.term_size}, {"ev_depth", b.ev_depth},
                {"max_states", b.max_states}};
}

Position decode_position(const Json& j) {
    if (!j.is_array()) throw DomainError("json: position must be an array");
    Position p;
    for (const auto& i : j) {
        if (!i.is_number_integer()) throw DomainError("json: position entries must be integers");
        p.push_back(i.get<int>());
    }
    return p;
}

}  // namespace

Json encode(const Term& t) {
    if (t.is_var()) return Json{{"var", t.name()}};
    Json args = Json::array();
    for (const auto& a : t.args()) args.push_back(encode(a));
    return Json{{"sym", t.name()}, {"args", std::move(args)}};
}

Json encode(const Position& p) {
    Json a = Json::array();
    for (int i : p) a.push_back(i);
    return a;
}

Json encode(const Substitution& s) {
    Json o = Json::object();
    for (const auto& [x, t] : s) o[x] = encode(t);
    return o;
}

Json encode_step(const Term& before, const Step& st) {
    return Json{{"term", encode(before)},
                {"pos", encode(st.pos)},
                {"rule", st.rule},
                {"subst", encode(st.subst)},
                {"result", encode(st.result)}};
}

Json encode(const Derivation& d) {
    Json steps = Json::array();
    Term cur = d.start;
    for (const auto& st : d.steps) {
        Json js = encode_step(cur, st);
        if (d.ev_safe) {
            Json b = Json::array();
            for (const auto& p : st.basic) b.push_back(encode(p));
            js["basic"] = std::move(b);
        }
        steps.push_back(std::move(js));
        cur = st.result;
    }
    Json o{{"start", encode(d.start)}, {"steps", std::move(steps)}, {"end", encode(d.end())},
           {"length", d.steps.size()}, {"ev_safe", d.ev_safe}};
    if (d.ev_safe) {
        Json b = Json::array();
        for (const auto& p : d.basic0) b.push_back(encode(p));
        o["basic0"] = std::move(b);
    }
    return o;
}

Json encode(const Rule& r, Flavor f) {
    Json conds = Json::array();
    for (const auto& c : r.conds) conds.push_back(Json{{"lhs", encode(c.lhs)}, {"rhs", encode(c.rhs)}});
    return Json{{"label", r.label}, {"text", r.str(f)}, {"lhs", encode(r.lhs)}, {"rhs", encode(r.rhs)},
                {"conds", std::move(conds)}};
}

Json encode(const RewriteSystem& s) {
    Json rules = Json::array();
    for (const auto& r : s.rules) rules.push_back(encode(r, s.flavor));
    Json gen = Json::array();
    for (const auto& g : s.generated) gen.push_back(g);
    return Json{{"flavor", s.flavor == Flavor::Oriented ? "oriented" : "join"},
                {"variables", strings(s.variables)},
                {"generated", std::move(gen)},
                {"rules", std::move(rules)}};
}

Json encode(const RuleClass& c) {
    return Json{{"deterministic", c.deterministic},
                {"type", c.type},
                {"ll", c.ll},
                {"rl", c.rl},
                {"ne", c.ne},
                {"non_lv", c.non_lv},
                {"non_rv", c.non_rv},
                {"normal", c.normal},
                {"ground_conditional", c.ground_conditional},
                {"wll_normal1", c.wll_normal1},
                {"wll_3dctrs", c.wll_3dctrs},
                {"right_stable", c.right_stable},
                {"right_separated", c.right_separated},
                {"syntactically_deterministic", c.syntactically_deterministic}};
}

Json encode(const ClassificationReport& r) {
    Json rules = Json::array();
    for (const auto& [label, c] : r.rules) {
        Json o = encode(c);
        o["label"] = label;
        rules.push_back(std::move(o));
    }
    Json def = Json::array(), con = Json::array();
    for (const auto& f : r.defined) def.push_back(f);
    for (const auto& f : r.constructors) con.push_back(f);
    return Json{{"flavor", r.flavor == Flavor::Oriented ? "oriented" : "join"},
                {"system", encode(r.system)},
                {"constructor_system", r.constructor_system},
                {"overlay", r.overlay},
                {"non_overlapping", r.non_overlapping},
                {"strongly_deterministic", r.strongly_deterministic},
                {"max_conditions", r.max_conditions},
                {"defined", std::move(def)},
                {"constructors", std::move(con)},
                {"rules", std::move(rules)}};
}

Json encode(const CriticalPair& cp) {
    Json conds = Json::array();
    for (const auto& c : cp.conds) conds.push_back(Json{{"lhs", encode(c.lhs)}, {"rhs", encode(c.rhs)}});
    return Json{{"outer", cp.outer}, {"inner", cp.inner}, {"pos", encode(cp.pos)},  {"left", encode(cp.left)},
                {"right", encode(cp.right)}, {"conds", std::move(conds)}, {"trivial", cp.trivial}};
}

Json encode(const HomoProperties& p) {
    return Json{{"linear", p.linear}, {"non_erasing", p.non_erasing}, {"f_identical", p.f_identical},
                {"ev_preserving", p.ev_preserving}};
}

Json encode(const SimulationVerdict& v) {
    auto rules = [](const std::vector<Rule>& rs) {
        Json a = Json::array();
        for (const auto& r : rs) a.push_back(r.str());
        return a;
    };
    return Json{{"verdict", v.equal ? "equal" : "different"},
                {"missing", rules(v.missing)},
                {"extra", rules(v.extra)},
                {"dropped", rules(v.dropped)},
                {"flags", encode(v.flags)}};
}

Json encode(const Closure& c) {
    return Json{{"size", c.terms.size()},  {"exhaustive", c.exhaustive()},
                {"converged", c.converged}, {"size_pruned", c.size_pruned},
                {"state_capped", c.state_capped}, {"ev_enumerated", c.ev_enumerated},
                {"nested_incomplete", c.nested_incomplete}};
}

Json encode(const SoundnessVerdict& v) {
    Json o{{"status", to_string(v.status)},
           {"ev_safe", v.ev_safe},
           {"bounds", bounds(v.bounds)},
           {"r_bounds", bounds(v.r_bounds)},
           {"starts", v.starts},
           {"candidates", v.candidates},
           {"transformed_exhaustive", v.transformed_exhaustive}};
    Json un = Json::array();
    for (const auto& [s, t] : v.unresolved) un.push_back(Json{{"s", encode(s)}, {"t", encode(t)}});
    o["unresolved"] = std::move(un);
    if (v.counterexample) {
        const auto& c = *v.counterexample;
        const auto& cert = c.certificate;
        o["counterexample"] = Json{
            {"s", encode(c.s)},
            {"t", encode(c.t)},
            {"witness", encode(c.witness)},
            {"certificate",
             Json{{"direction", cert.direction == AbsenceCertificate::Direction::Forward ? "forward" : "backward"},
                  {"from", encode(cert.from)},
                  {"excluded", encode(cert.excluded)},
                  {"bounds", bounds(cert.bounds)},
                  {"closure", terms(cert.closure)}}}};
    } else {
        o["counterexample"] = nullptr;
    }
    return o;
}

Json encode(const ComparisonReport& r) {
    Json vs = Json::array();
    for (const auto& v : r.violations)
        vs.push_back(Json{{"s", encode(v.s)}, {"t", encode(v.t)}, {"certified", v.certified}, {"witness", encode(v.witness)}});
    return Json{{"first", r.first},
                {"second", r.second},
                {"pairs", r.pairs},
                {"first_exhaustive", r.first_exhaustive},
                {"second_exhaustive", r.second_exhaustive},
                {"violations", std::move(vs)}};
}

Json encode(const ConditionReport& r) {
    Json conds = Json::array();
    for (const auto& c : r.conditions) {
        Json o{{"name", c.name}, {"value", c.value}};
        if (!c.note.empty()) o["note"] = c.note;
        conds.push_back(std::move(o));
    }
    Json th = Json::array();
    for (const auto& t : r.theorems)
        th.push_back(Json{{"id", t.id},
                          {"transformation", t.transformation},
                          {"condition", t.condition},
                          {"applies", t.applies},
                          {"external", t.external},
                          {"undecided", t.undecided}});
    Json sm = Json::array();
    for (const auto& s : r.summary)
        sm.push_back(Json{{"transformation", s.transformation},
                          {"status", s.status},
                          {"sound_by", strings(s.sound_by)},
                          {"undecided", strings(s.undecided)},
                          {"insufficient", strings(s.insufficient)}});
    return Json{{"conditions", std::move(conds)},
                {"theorems", std::move(th)},
                {"summary", std::move(sm)},
                {"critical_pairs", r.critical_pairs},
                {"joinable_pairs", r.joinable_pairs}};
}

Term decode_term(const Json& j) {
    if (!j.is_object()) throw DomainError("json: term must be an object");
    if (j.contains("var")) {
        if (!j["var"].is_string()) throw DomainError("json: var must be a string");
        return Term::var(j["var"].get<std::string>());
    }
    if (!j.contains("sym") || !j["sym"].is_string()) throw DomainError("json: term needs \"sym\" or \"var\"");
    std::vector<Term> args;
    if (j.contains("args")) {
        if (!j["args"].is_array()) throw DomainError("json: args must be an array");
        for (const auto& a : j["args"]) args.push_back(decode_term(a));
    }
    return Term::app(j["sym"].get<std::string>(), std::move(args));
}

Derivation decode_derivation(const Json& j) {
    if (!j.is_object() || !j.contains("start") || !j.contains("steps")) throw DomainError("json: not a derivation");
    Derivation d;
    d.start = decode_term(j["start"]);
    d.ev_safe = j.value("ev_safe", false);
    if (d.ev_safe && j.contains("basic0"))
        for (const auto& p : j["basic0"]) d.basic0.insert(decode_position(p));
    for (const auto& js : j["steps"]) {
        Step st;
        st.pos = decode_position(js.at("pos"));
        st.rule = js.at("rule").get<std::string>();
        for (const auto& [x, t] : js.at("subst").items()) st.subst[x] = decode_term(t);
        st.result = decode_term(js.at("result"));
        if (js.contains("basic"))
            for (const auto& p : js["basic"]) st.basic.insert(decode_position(p));
        d.steps.push_back(std::move(st));
    }
    return d;
}

std::string emit_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ctrs

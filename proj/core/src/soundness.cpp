#include "ctrs/soundness.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctrs/homo.hpp"
#include "ctrs/unravel.hpp"

namespace ctrs {

namespace {

std::set<std::string> new_symbols(const RewriteSystem& original, const RewriteSystem& transformed) {
    std::set<std::string> out = transformed.generated;
    const Signature before = original.signature();
    for (const auto& [f, n] : transformed.signature())
        if (!before.count(f)) out.insert(f);
    return out;
}

TransformationHandle plain(std::string name, const RewriteSystem& r, RewriteSystem t) {
    TransformationHandle h;
    h.name = std::move(name);
    h.original = r;
    h.transformed = std::move(t);
    const auto foreign = new_symbols(r, h.transformed);
    h.translate = [](const Term& x) { return x; };
    h.back = [foreign](const Term& x) -> std::optional<Term> {
        if (contains_symbol(x, foreign)) return std::nullopt;
        return x;
    };
    return h;
}

std::string normalize_name(const std::string& n) {
    if (n == "UN-Norm" || n == "UNNorm" || n == "UN∘Norm" || n == "un-norm") return "UN∘Norm";
    if (n == "U-Det" || n == "UDet" || n == "U∘Det" || n == "u-det") return "U∘Det";
    static const std::map<std::string, std::string> lower{
        {"u", "U"}, {"uopt", "Uopt"}, {"uj", "UJ"}, {"un", "UN"}, {"sr", "SR"}};
    auto it = lower.find(n);
    return it == lower.end() ? n : it->second;
}

Signature extend(Signature sig, const std::vector<Term>& ts) {
    for (const auto& t : ts) sig = merge_signature(std::move(sig), t);
    return sig;
}

bool certified(const Closure& c) { return c.exhaustive() && !c.nested_incomplete; }

std::vector<Term> sorted_unique(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return compare(a, b) < 0; });
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

bool needs_guessing(const RewriteSystem& r) {
    for (const auto& rule : r.rules) {
        const auto c = classify_rule(rule, r);
        if (!c.deterministic || c.type == 4) return true;
    }
    return false;
}

}  // namespace

std::vector<std::string> transformation_names() { return {"U", "Uopt", "UJ", "UN", "UN∘Norm", "U∘Det", "SR"}; }

TransformationHandle make_transformation(const std::string& name, const RewriteSystem& system) {
    const std::string n = normalize_name(name);
    if (n == "U") return plain(n, system, unravel_U(system));
    if (n == "Uopt") return plain(n, system, unravel_Uopt(system));
    if (n == "UJ") return plain(n, system, unravel_UJ(system));
    if (n == "UN") return plain(n, system, unravel_UN(system));
    if (n == "UN∘Norm") return plain(n, system, unravel_UN(norm_transform(system), false, false));
    if (n == "U∘Det") return plain(n, system, unravel_U(det_transform(system)));
    if (n == "SR") {
        auto sr = std::make_shared<SrResult>(sr_transform(system));
        TransformationHandle h;
        h.name = n;
        h.original = system;
        h.transformed = sr->system;
        h.translate = [sr](const Term& t) { return sr_translate(sr->ctx, t); };
        h.back = [sr](const Term& t) -> std::optional<Term> {
            if (t.is_var() || t.name() != kCurly) return std::nullopt;
            auto o = hat(sr->ctx, t);
            if (!o) return std::nullopt;
            try {
                if (sr_translate(sr->ctx, *o) != t) return std::nullopt;
            } catch (const DomainError&) {
                return std::nullopt;
            }
            return o;
        };
        return h;
    }
    throw DomainError("unknown transformation '" + name + "'");
}

Bounds reference_bounds() {
    Bounds b;
    b.level = 6;
    b.steps = 24;
    b.term_size = 40;
    return b;
}

const char* to_string(SoundnessStatus s) {
    return s == SoundnessStatus::CounterexampleFound ? "counterexample_found" : "none_within_bounds";
}

SoundnessVerdict search_unsoundness(const TransformationHandle& t, const std::vector<Term>& start_terms,
                                    const SearchOptions& opt) {
    SoundnessVerdict v;
    v.bounds = opt.bounds;
    v.r_bounds = opt.r_bounds;
    v.ev_safe = opt.ev_safe;

    const std::vector<Term> starts = sorted_unique(start_terms);
    std::vector<Term> originals = starts;
    originals.insert(originals.end(), opt.targets.begin(), opt.targets.end());
    std::vector<Term> translated;
    for (const auto& s : originals) translated.push_back(t.translate(s));

    Engine te(t.transformed, opt.bounds, opt.policy,
              ground_terms(extend(t.transformed.signature(), translated), opt.bounds.ev_depth));
    const auto r_universe = ground_terms(extend(t.original.signature(), originals), opt.r_bounds.ev_depth);
    Engine re(t.original, opt.r_bounds, {}, r_universe);
    std::unique_ptr<Engine> inv;
    if (t.original.flavor == Flavor::Oriented) inv = std::make_unique<Engine>(invert(t.original), opt.r_bounds, Policy{}, r_universe);

    const TermHashSet targets(opt.targets.begin(), opt.targets.end());
    // forward R-closures that must guess extra variables are never exhaustive
    const bool guessing = inv && needs_guessing(t.original);
    std::unique_ptr<Engine> probe;
    if (guessing) {
        Bounds pb = opt.r_bounds;
        pb.max_states = std::min<std::size_t>(pb.max_states, 20000);
        probe = std::make_unique<Engine>(t.original, pb, Policy{}, r_universe);
    }

    for (const auto& s : starts) {
        ++v.starts;
        const Term ts = t.translate(s);
        std::vector<Term> reached;
        std::optional<Closure> fwd_t;
        std::optional<EvClosure> ev_t;
        if (opt.ev_safe) {
            ev_t = te.ev_safe_reach(ts, function_positions(ts));
            if (!ev_t->exhaustive()) v.transformed_exhaustive = false;
            TermHashSet seen;
            for (const auto& st : ev_t->states)
                if (seen.insert(st.term).second) reached.push_back(st.term);
        } else if (!opt.targets.empty()) {
            TermHashSet pending;
            for (const auto& x : opt.targets) pending.insert(t.translate(x));
            pending.erase(ts);
            fwd_t = te.reach_until(ts, [&](const Term& u) { return pending.erase(u) > 0 && pending.empty(); });
            if (!fwd_t->exhaustive() && !fwd_t->stopped) v.transformed_exhaustive = false;
            reached = fwd_t->terms;
        } else {
            fwd_t = te.reach(ts);
            if (!fwd_t->exhaustive()) v.transformed_exhaustive = false;
            reached = fwd_t->terms;
        }

        std::optional<Closure> fwd_r;
        for (const auto& u : reached) {
            auto o = t.back(u);
            if (!o || *o == s) continue;
            if (!targets.empty() && !targets.count(*o)) continue;
            ++v.candidates;
            if (!guessing && !fwd_r) fwd_r = re.reach(s);
            if (fwd_r && fwd_r->contains(*o)) continue;
            // a forward hit is a witness even when the closure is not exhaustive
            if (probe && probe->reach_until(s, [&](const Term& u) { return u == *o; }).contains(*o)) continue;

            AbsenceCertificate cert;
            cert.bounds = opt.r_bounds;
            bool ok = false;
            if (fwd_r && certified(*fwd_r)) {
                cert.direction = AbsenceCertificate::Direction::Forward;
                cert.from = s;
                cert.excluded = *o;
                cert.system = t.original;
                cert.closure = fwd_r->terms;
                ok = true;
            } else if (inv) {
                Closure bwd = inv->reach(*o);
                if (bwd.contains(s)) continue;
                if (certified(bwd)) {
                    cert.direction = AbsenceCertificate::Direction::Backward;
                    cert.from = *o;
                    cert.excluded = s;
                    cert.system = inv->system();
                    cert.closure = bwd.terms;
                    ok = true;
                }
            }
            if (!ok) {
                v.unresolved.emplace_back(s, *o);
                continue;
            }

            Derivation w = opt.ev_safe ? *ev_t->derivation_to(u) : *fwd_t->derivation_to(u);
            auto check = te.verify(w);
            if (!check) throw std::logic_error("search_unsoundness: witness does not verify: " + check.message);
            v.status = SoundnessStatus::CounterexampleFound;
            v.counterexample = Counterexample{s, *o, std::move(w), std::move(cert)};
            return v;
        }
    }
    return v;
}

std::vector<Term> default_start_terms(const Signature& sig, int depth, std::size_t max_vars, std::size_t cap) {
    Signature ext = sig;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < max_vars; ++i) vars.push_back(i == 0 ? "x" : i == 1 ? "y" : "x" + std::to_string(i));
    // layer by layer; variables are leaves like constants
    std::vector<Term> all;
    TermHashSet seen;
    for (const auto& x : vars) {
        Term v = Term::var(x);
        if (seen.insert(v).second) all.push_back(v);
    }
    for (const auto& g : ground_terms(sig, 0, cap))
        if (seen.insert(g).second) all.push_back(g);
    for (int d = 1; d <= depth && all.size() < cap; ++d) {
        const std::vector<Term> prev = all;
        for (const auto& [f, n] : sig) {
            if (n == 0) continue;
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            for (;;) {
                std::vector<Term> args;
                for (auto i : idx) args.push_back(prev[i]);
                Term u = Term::app(f, std::move(args));
                if (seen.insert(u).second) all.push_back(std::move(u));
                if (all.size() >= cap) break;
                std::size_t k = idx.size();
                while (k > 0 && ++idx[k - 1] == prev.size()) idx[--k] = 0;
                if (k == 0) break;
            }
            if (all.size() >= cap) break;
        }
    }
    return sorted_unique(std::move(all));
}

ComparisonReport compare_transformations(const TransformationHandle& t1, const TransformationHandle& t2,
                                         const std::vector<Term>& start_terms, const Bounds& bounds, int scale) {
    ComparisonReport rep;
    rep.first = t1.name;
    rep.second = t2.name;
    const auto starts = sorted_unique(start_terms);
    std::vector<Term> x1, x2;
    for (const auto& s : starts) {
        x1.push_back(t1.translate(s));
        x2.push_back(t2.translate(s));
    }
    Bounds scaled = bounds;
    scaled.steps = bounds.steps * scale;
    Engine e1(t1.transformed, bounds, {}, ground_terms(extend(t1.transformed.signature(), x1), bounds.ev_depth));
    Engine e2(t2.transformed, scaled, {}, ground_terms(extend(t2.transformed.signature(), x2), bounds.ev_depth));
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const Term& s = starts[i];
        Closure c1 = e1.reach(x1[i]);
        if (!c1.exhaustive()) rep.first_exhaustive = false;
        std::optional<Closure> c2;
        for (const auto& u : c1.terms) {
            auto o = t1.back(u);
            if (!o || *o == s) continue;
            ++rep.pairs;
            if (!c2) {
                c2 = e2.reach(x2[i]);
                if (!c2->exhaustive()) rep.second_exhaustive = false;
            }
            if (c2->contains(t2.translate(*o))) continue;
            rep.violations.push_back({s, *o, *c1.derivation_to(u), certified(*c2)});
        }
    }
    return rep;
}

// ---------------------------------------------------------------- condition report

namespace {

const char* yn(bool b) { return b ? "yes" : "no"; }

bool ultra(const RewriteSystem& r, UltraProperty p, Unraveling k) {
    try {
        return ultra_check(r, p, UltraMethod::Direct, k);
    } catch (const DomainError&) {
        return false;
    }
}

struct Facts {
    ClassificationReport cls;
    bool oriented = true, det = true, normal = true;
    bool uopt_ll = false, uopt_rl = false, uopt_ne = false;
    bool u_ll = false, u_rl = false, u_ne = false;
};

Facts facts_of(const RewriteSystem& r) {
    Facts f;
    f.cls = classify(r);
    f.oriented = r.flavor == Flavor::Oriented;
    f.det = f.oriented && f.cls.system.deterministic;
    f.normal = f.oriented && f.cls.system.normal;
    if (f.det) {
        f.uopt_ll = ultra(r, UltraProperty::LL, Unraveling::Uopt);
        f.uopt_rl = ultra(r, UltraProperty::RL, Unraveling::Uopt);
        f.uopt_ne = ultra(r, UltraProperty::NE, Unraveling::Uopt);
        f.u_ll = ultra(r, UltraProperty::LL, Unraveling::U);
        f.u_rl = ultra(r, UltraProperty::RL, Unraveling::U);
        f.u_ne = ultra(r, UltraProperty::NE, Unraveling::U);
    }
    return f;
}

struct Rows {
    std::vector<TheoremRow> rows;

    void add(std::string id, std::string tr, std::string cond, bool applies, bool external = false,
             bool undecided = false) {
        rows.push_back({std::move(id), std::move(tr), std::move(cond), applies && !undecided, external, undecided});
    }
    bool sound(const std::string& tr) const {
        return std::any_of(rows.begin(), rows.end(), [&](const TheoremRow& r) { return r.transformation == tr && r.applies; });
    }
};

// depth limits the look into Norm(R), Det(R) and the other reading of R
Rows theorem_rows(const RewriteSystem& r, int depth) {
    const Facts f = facts_of(r);
    const auto& s = f.cls.system;
    Rows out;
    const bool t3 = s.type <= 3;

    // Uopt
    out.add("uopt-ll-soundness", "Uopt", "Uopt-LL 3-DCTRS", f.det && t3 && f.uopt_ll);
    out.add("uopt-rlne-soundness", "Uopt", "Uopt-RL and Uopt-NE DCTRS", f.det && f.uopt_rl && f.uopt_ne);
    out.add("uopt-ll-ev-safe-soundness", "Uopt", "Uopt-LL, w.r.t. EV-safe reduction", f.det && f.uopt_ll);
    out.add("uopt-ne-rsep-type2", "Uopt", "Uopt-NE, right-separated, Type 2", f.det && f.uopt_ne && s.right_separated && s.type <= 2,
            true);

    // SR
    out.add("sr-uopt-ll", "SR", "Uopt-LL DCTRS", f.det && f.uopt_ll, true);
    out.add("sr-confluence", "SR", "confluent DCTRS", false, true, f.det);

    // UN
    out.add("un-wll-soundness", "UN", "WLL normal 1-CTRS", f.normal && s.type == 1 && s.wll_normal1);
    out.add("un-ne-soundness", "UN", "NE normal 1-CTRS", f.normal && s.type == 1 && s.ne, true);
    out.add("un-ground-conditions", "UN", "normal CTRS with ground conditions", f.normal && s.ground_conditional, true);
    out.add("un-confluence", "UN", "confluent normal CTRS", false, true, f.normal);
    if (depth > 0 && f.normal) {
        Rows j = theorem_rows(as_join(r), depth - 1);
        out.add("un-from-uj", "UN", "UJ sound for the join reading", j.sound("UJ"));
    }

    // UJ
    const bool join = r.flavor == Flavor::Join;
    out.add("uj-ll-soundness", "UJ", "LL join 3-CTRS", join && s.ll && t3);
    if (depth > 0 && join) {
        bool via_norm = false, via_nj = false, via_det = false;
        try {
            via_norm = theorem_rows(norm_transform(r), depth - 1).sound("UN");
        } catch (const DomainError&) {
        }
        if (s.normal) via_nj = theorem_rows(as_oriented(r), depth - 1).sound("UN");
        try {
            via_det = theorem_rows(det_transform(r), depth - 1).sound("U");
        } catch (const DomainError&) {
        }
        out.add("uj-from-un-norm", "UJ", "UN∘Norm sound", via_norm);
        out.add("uj-from-un-normaljoin", "UJ", "normal join CTRS with UN sound", via_nj);
        out.add("uj-from-u-det", "UJ", "U∘Det sound", via_det);
    }

    // U
    out.add("u-from-uopt-transfer", "U", "Uopt sound", f.det && out.sound("Uopt"));
    out.add("u-from-un", "U", "UN sound for a normal CTRS", f.normal && out.sound("UN"));
    out.add("u-from-sr", "U", "SR sound", f.det && out.sound("SR"));
    out.add("u-url", "U", "U-RL DCTRS", f.det && f.u_rl, true);
    out.add("u-wll-3dctrs", "U", "WLL 3-DCTRS", f.det && s.wll_3dctrs, true);
    out.add("u-confluent-right-stable", "U", "confluent and right-stable DCTRS", false, true, f.det && s.right_stable);
    return out;
}

}  // namespace

const TransformationSummary* ConditionReport::find(const std::string& tr) const {
    for (const auto& s : summary)
        if (s.transformation == tr) return &s;
    return nullptr;
}

bool ConditionReport::cites(const std::string& id) const {
    return std::any_of(theorems.begin(), theorems.end(), [&](const TheoremRow& r) { return r.id == id && r.applies; });
}

ConditionReport soundness_condition_report(const RewriteSystem& r) {
    ConditionReport rep;
    const Facts f = facts_of(r);
    const auto& s = f.cls.system;

    auto cond = [&](std::string n, bool b, std::string note = "") { rep.conditions.push_back({std::move(n), yn(b), std::move(note)}); };
    cond("oriented", f.oriented);
    cond("deterministic", s.deterministic);
    rep.conditions.push_back({"type", std::to_string(s.type), ""});
    cond("normal", f.normal);
    cond("Uopt-LL", f.uopt_ll);
    cond("Uopt-RL", f.uopt_rl);
    cond("Uopt-NE", f.uopt_ne);
    cond("U-LL", f.u_ll);
    cond("U-RL", f.u_rl);
    cond("U-NE", f.u_ne);
    cond("LL", s.ll);
    cond("RL", s.rl);
    cond("NE", s.ne);
    cond("non-LV", s.non_lv);
    cond("non-RV", s.non_rv);
    cond("WLL (normal 1-CTRS)", f.normal && s.type == 1 && s.wll_normal1);
    cond("WLL (3-DCTRS)", s.wll_3dctrs);
    cond("ground-conditional", s.ground_conditional);
    cond("right-stable", s.right_stable);
    cond("right-separated", s.right_separated);
    cond("constructor-system", f.cls.constructor_system);
    cond("overlay", f.cls.overlay);
    cond("non-overlapping", f.cls.non_overlapping);

    // advisory evidence for the confluence rows
    Bounds cb;
    cb.level = 3;
    cb.steps = 8;
    cb.term_size = 30;
    std::string note;
    try {
        const auto cps = critical_pairs(r);
        Engine e(r, cb);
        for (const auto& cp : cps) {
            if (cp.trivial) {
                ++rep.critical_pairs;
                ++rep.joinable_pairs;
                continue;
            }
            ++rep.critical_pairs;
            if (cp.conds.empty() && e.joinable(cp.left, cp.right, cb.level)) ++rep.joinable_pairs;
        }
        note = std::to_string(rep.joinable_pairs) + "/" + std::to_string(rep.critical_pairs) +
               " critical pairs joinable within bounds (advisory)";
    } catch (const DomainError& ex) {
        note = ex.what();
    }
    rep.conditions.push_back({"confluence", "undecided", note});

    Rows rows = theorem_rows(r, 1);
    rep.theorems = rows.rows;

    struct Insuff {
        const char* tr;
        const char* name;
        bool holds;
    };
    const std::vector<Insuff> ins{
        {"Uopt", "LL", s.ll},
        {"Uopt", "Uopt-NE", f.uopt_ne},
        {"Uopt", "WLL", s.wll_3dctrs},
        {"Uopt", "Uopt-RL", f.uopt_rl},
        {"Uopt", "soundness of U", rows.sound("U")},
        {"U", "U-NE", f.u_ne},
        {"UN", "constructor-system", f.cls.constructor_system},
        {"UN", "overlay", f.cls.overlay},
        {"UN", "non-RV", s.non_rv},
        {"UN", "RL", s.rl},
        {"SR", "LL", s.ll},
    };
    for (const auto& tr : transformation_names()) {
        if (tr == "UN∘Norm" || tr == "U∘Det") continue;
        TransformationSummary sm;
        sm.transformation = tr;
        for (const auto& row : rows.rows) {
            if (row.transformation != tr) continue;
            if (row.applies) sm.sound_by.push_back(row.id);
            if (row.undecided) sm.undecided.push_back(row.id);
        }
        for (const auto& i : ins)
            if (tr == i.tr && i.holds) sm.insufficient.push_back(i.name);
        sm.status = sm.sound_by.empty() ? "unknown" : "sound";
        rep.summary.push_back(std::move(sm));
    }
    return rep;
}

}  // namespace ctrs

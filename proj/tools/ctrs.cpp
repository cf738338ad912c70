// Command-line front end.  Exit status: 0 ok, 1 domain error, 2 usage error.

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ctrs/format.hpp"
#include "ctrs/homo.hpp"
#include "ctrs/json_io.hpp"
#include "ctrs/rewrite.hpp"
#include "ctrs/soundness.hpp"
#include "ctrs/sr.hpp"
#include "ctrs/suite/criteria.hpp"
#include "ctrs/unravel.hpp"

#ifndef CTRS_CORPUS_DIR
#define CTRS_CORPUS_DIR "corpus"
#endif

using namespace ctrs;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool color() {
    const char* c = std::getenv("CTRS_COLOR");
    if (c && std::string(c) == "0") return false;
    return isatty(STDOUT_FILENO);
}

std::string paint(const std::string& s, const char* code) {
    return color() ? std::string("\033[") + code + "m" + s + "\033[0m" : s;
}

struct BoundOpts {
    int level = Bounds{}.level;
    int steps = Bounds{}.steps;
    std::size_t size = Bounds{}.term_size;
    int ev_depth = Bounds{}.ev_depth;
    std::size_t max_states = Bounds{}.max_states;

    void add(CLI::App* app) {
        app->add_option("--level", level, "conditional level n of ->(n)")->check(CLI::NonNegativeNumber);
        app->add_option("--steps", steps, "step bound")->check(CLI::NonNegativeNumber);
        app->add_option("--size", size, "term size bound");
        app->add_option("--ev-depth", ev_depth, "depth of the extra-variable universe")->check(CLI::NonNegativeNumber);
        app->add_option("--max-states", max_states, "state cap per closure");
    }
    Bounds get() const { return Bounds{level, steps, size, ev_depth, max_states}; }
};

struct PolicyOpts {
    std::string restrict = "none";
    std::string mu;
    std::vector<std::string> marked;
    std::string strategy = "full";

    void add(CLI::App* app, bool with_strategy) {
        app->add_option("--restrict", restrict, "none|cs|membership")
            ->check(CLI::IsMember({"none", "cs", "membership"}));
        app->add_option("--mu", mu, "replacement map for cs, e.g. \"U_rho_1_1:1;g:1,2\"");
        app->add_option("--marked", marked, "symbols barred below a redex in membership mode");
        if (with_strategy)
            app->add_option("--strategy", strategy, "full|li|li-top")->check(CLI::IsMember({"full", "li", "li-top"}));
    }

    Policy get() const {
        Policy p;
        if (restrict == "cs") {
            std::map<std::string, std::set<int>> m;
            std::stringstream ss(mu);
            std::string entry;
            while (std::getline(ss, entry, ';')) {
                if (entry.empty()) continue;
                auto colon = entry.find(':');
                if (colon == std::string::npos) throw UsageError("--mu entry without ':': " + entry);
                auto& args = m[entry.substr(0, colon)];
                std::stringstream as(entry.substr(colon + 1));
                std::string a;
                while (std::getline(as, a, ','))
                    if (!a.empty()) args.insert(std::stoi(a));
            }
            p = Policy::context_sensitive(std::move(m));
        } else if (restrict == "membership") {
            p = Policy::membership({marked.begin(), marked.end()});
        }
        if (strategy == "li") p.strategy = Policy::Strategy::LeftmostInnermost;
        if (strategy == "li-top") p.strategy = Policy::Strategy::LeftmostInnermostTop;
        return p;
    }
};

void print_json(const Json& j) { std::cout << emit_json(j); }

std::string flavor_name(Flavor f) { return f == Flavor::Oriented ? "oriented" : "join"; }

void print_steps(const Derivation& d, const RewriteSystem& sys) {
    (void)sys;
    std::cout << "  " << render_term(d.start) << "\n";
    for (const auto& st : d.steps)
        std::cout << "  -> " << render_term(st.result) << "    [" << st.rule << " @ " << position_str(st.pos) << "]\n";
}

// ---------------------------------------------------------------- subcommands

int cmd_classify(const std::string& file, bool json) {
    auto rep = classify(load_system(file));
    if (json) {
        print_json(encode(rep));
        return 0;
    }
    const auto& s = rep.system;
    std::cout << "flavor: " << flavor_name(rep.flavor) << "\n"
              << "rules: " << rep.rules.size() << ", max conditions: " << rep.max_conditions << "\n"
              << "deterministic: " << (s.deterministic ? "yes" : "no") << ", type " << s.type << "\n"
              << "LL " << s.ll << "  RL " << s.rl << "  NE " << s.ne << "  non-LV " << s.non_lv << "  non-RV "
              << s.non_rv << "\n"
              << "normal " << s.normal << "  ground-conditional " << s.ground_conditional << "  right-stable "
              << s.right_stable << "  right-separated " << s.right_separated << "\n"
              << "constructor system " << rep.constructor_system << "  overlay " << rep.overlay
              << "  non-overlapping " << rep.non_overlapping << "  strongly deterministic "
              << rep.strongly_deterministic << "\n";
    for (const auto& [label, c] : rep.rules)
        std::cout << "  " << label << ": type " << c.type << (c.deterministic ? "" : " non-deterministic")
                  << (c.ll ? "" : " non-LL") << (c.rl ? "" : " non-RL") << (c.ne ? "" : " erasing") << "\n";
    return 0;
}

void print_system(const RewriteSystem& s, bool json) {
    if (json)
        print_json(encode(s));
    else {
        std::string text = render_system(s);
        std::cout << text << (text.empty() || text.back() != '\n' ? "\n" : "");
    }
}

int cmd_unravel(const std::string& file, const std::string& method, bool json) {
    auto sys = load_system(file);
    RewriteSystem out;
    if (method == "u")
        out = unravel_U(sys);
    else if (method == "uopt")
        out = unravel_Uopt(sys);
    else if (method == "uj")
        out = unravel_UJ(sys);
    else
        out = unravel_UN(sys);
    print_system(out, json);
    return 0;
}

int cmd_transform(const std::string& file, const std::string& method, bool json) {
    auto sys = load_system(file);
    if (method == "invert")
        print_system(invert(sys), json);
    else if (method == "norm")
        print_system(norm_transform(sys), json);
    else if (method == "det")
        print_system(det_transform(sys), json);
    else
        print_system(sr_transform(sys).system, json);
    return 0;
}

int cmd_rewrite(const std::string& file, const std::string& term, const BoundOpts& b, const PolicyOpts& p, bool ev_safe,
                bool json) {
    auto sys = load_system(file);
    Term t = parse_term(term, sys);
    Engine e(sys, b.get(), p.get());
    Derivation d{t, {}, ev_safe, {}};
    if (ev_safe) {
        EvState st{t, function_positions(t)};
        d.basic0 = st.basic;
        for (int i = 0; i < b.steps; ++i) {
            auto next = e.ev_safe_successors(st);
            if (next.empty()) break;
            st = EvState{next.front().result, next.front().basic};
            d.steps.push_back(next.front());
        }
    } else {
        for (int i = 0; i < b.steps; ++i) {
            auto next = e.successors(d.end());
            if (next.empty()) break;
            d.steps.push_back(next.front());
        }
    }
    bool normal = ev_safe ? e.ev_safe_successors(EvState{d.end(), d.steps.empty() ? d.basic0 : d.steps.back().basic}).empty()
                          : e.successors(d.end()).empty();
    if (json) {
        Json j = encode(d);
        j["normal_form"] = normal;
        print_json(j);
        return 0;
    }
    print_steps(d, sys);
    std::cout << (normal ? "normal form" : "step bound reached") << " after " << d.steps.size() << " steps\n";
    return 0;
}

int cmd_reach(const std::string& file, const std::string& from, const std::string& to, const BoundOpts& b,
              const PolicyOpts& p, bool trace, bool json) {
    auto sys = load_system(file);
    Term s = parse_term(from, sys), t = parse_term(to, sys);
    Signature sig = merge_signature(merge_signature(sys.signature(), s), t);
    std::optional<std::vector<Term>> universe;
    if (!sys.conditional()) universe = ground_terms(sig, b.ev_depth);
    Engine e(sys, b.get(), p.get(), universe);
    Closure c = e.reach_until(s, [&](const Term& u) { return u == t; });
    bool found = c.contains(t);
    std::optional<Derivation> d;
    if (found) d = c.derivation_to(t);
    if (json) {
        Json j{{"reachable", found}, {"explored", c.terms.size()}, {"exhaustive", c.exhaustive()}};
        if (d) j["derivation"] = encode(*d);
        print_json(j);
        return 0;
    }
    if (found) {
        std::cout << "reachable (" << d->steps.size() << " steps)\n";
        if (trace) print_steps(*d, sys);
    } else if (c.exhaustive() && !c.nested_incomplete) {
        std::cout << "unreachable (closure of " << c.terms.size() << " terms is complete)\n";
    } else {
        std::cout << "not reachable within bounds (" << c.terms.size() << " terms explored)\n";
    }
    return 0;
}

int cmd_cp(const std::string& file, bool json) {
    auto sys = load_system(file);
    auto cps = critical_pairs(sys);
    if (json) {
        Json a = Json::array();
        for (const auto& cp : cps) a.push_back(encode(cp));
        print_json(a);
        return 0;
    }
    for (const auto& cp : cps) {
        std::cout << "<" << render_term(cp.left) << ", " << render_term(cp.right) << ">";
        for (std::size_t i = 0; i < cp.conds.size(); ++i)
            std::cout << (i ? ", " : " | ") << render_term(cp.conds[i].lhs) << " == " << render_term(cp.conds[i].rhs);
        std::cout << "    [" << cp.outer << " @ " << position_str(cp.pos) << " / " << cp.inner << "]"
                  << (cp.trivial ? " trivial" : "") << "\n";
    }
    std::cout << cps.size() << " critical pairs\n";
    return 0;
}

int cmd_check_homo(const std::string& lhs_file, const std::string& rhs_file, const std::string& phi_file,
                   const std::string& canonical, const std::string& system_file, bool modulo_identity, bool json) {
    auto lhs = load_system(lhs_file), rhs = load_system(rhs_file);
    TreeHomomorphism phi;
    bool mod = modulo_identity;
    if (!canonical.empty()) {
        if (system_file.empty()) throw UsageError("--canonical needs --system (the untransformed system)");
        auto th = phi_theorem_from_string(canonical);
        phi = canonical_phi(th, load_system(system_file));
        mod = mod || phi_requirements(th).modulo_identity;
    } else {
        auto src = parse_source(read_file(phi_file));
        phi = TreeHomomorphism::from_entries(src.maps);
    }
    auto v = check_simulation(lhs, rhs, phi, mod);
    if (json) {
        print_json(encode(v));
        return 0;
    }
    std::cout << "verdict: " << (v.equal ? "equal" : "different") << "\n"
              << "linear " << v.flags.linear << "  non-erasing " << v.flags.non_erasing << "  F-identical "
              << v.flags.f_identical << "  EV-preserving " << v.flags.ev_preserving << "\n";
    for (const auto& r : v.missing) std::cout << "  missing  " << r.str() << "\n";
    for (const auto& r : v.extra) std::cout << "  extra    " << r.str() << "\n";
    for (const auto& r : v.dropped) std::cout << "  dropped  " << r.str() << "\n";
    return 0;
}

int cmd_search(const std::string& file, const std::string& method, const std::vector<std::string>& starts,
               const std::vector<std::string>& targets, const BoundOpts& b, const PolicyOpts& p, bool ev_safe,
               bool json) {
    auto sys = load_system(file);
    auto h = make_transformation(method, sys);
    SearchOptions opt;
    opt.bounds = b.get();
    opt.policy = p.get();
    opt.ev_safe = ev_safe;
    for (const auto& t : targets) opt.targets.push_back(parse_term(t, sys));
    std::vector<Term> ss;
    for (const auto& s : starts) ss.push_back(parse_term(s, sys));
    if (ss.empty()) ss = default_start_terms(sys.signature());
    auto v = search_unsoundness(h, ss, opt);
    if (json) {
        print_json(encode(v));
        return 0;
    }
    std::cout << "status: " << to_string(v.status) << "\n"
              << "start terms: " << v.starts << ", candidates checked: " << v.candidates << "\n";
    if (v.counterexample) {
        const auto& c = *v.counterexample;
        std::cout << "counterexample: " << render_term(c.s) << " ->* " << render_term(c.t) << " in " << h.name
                  << " but not in R\n";
        print_steps(c.witness, h.transformed);
        std::cout << "certificate: "
                  << (c.certificate.direction == AbsenceCertificate::Direction::Forward ? "forward" : "backward")
                  << " closure of " << render_term(c.certificate.from) << ", " << c.certificate.closure.size()
                  << " terms\n";
    }
    if (!v.unresolved.empty()) std::cout << "unresolved pairs: " << v.unresolved.size() << "\n";
    return 0;
}

int cmd_report(const std::string& file, bool json) {
    auto rep = soundness_condition_report(load_system(file));
    if (json) {
        print_json(encode(rep));
        return 0;
    }
    std::cout << "conditions:\n";
    for (const auto& c : rep.conditions)
        std::cout << "  " << c.name << ": " << c.value << (c.note.empty() ? "" : "  (" + c.note + ")") << "\n";
    std::cout << "theorems that apply:\n";
    for (const auto& t : rep.theorems)
        if (t.applies)
            std::cout << "  " << t.id << " [" << t.transformation << "] " << t.condition
                      << (t.external ? " (external)" : "") << (t.undecided ? " (undecided)" : "") << "\n";
    std::cout << "summary:\n";
    for (const auto& s : rep.summary) {
        std::cout << "  " << s.transformation << ": " << s.status;
        if (!s.sound_by.empty()) {
            std::cout << " by";
            for (const auto& id : s.sound_by) std::cout << " " << id;
        }
        if (!s.undecided.empty()) {
            std::cout << "; undecided:";
            for (const auto& id : s.undecided) std::cout << " " << id;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_corpus_verify(const std::string& dir, bool json) {
    suite::SuiteConfig cfg;
    cfg.corpus_dir = dir;
    auto outs = suite::run_all(cfg);
    bool all = true;
    Json arr = Json::array();
    for (const auto& o : outs) {
        all = all && o.pass;
        if (json) {
            arr.push_back(Json{{"criterion", o.id}, {"title", o.title}, {"pass", o.pass}, {"detail", o.detail}});
            continue;
        }
        std::string line = suite::format_outcome(o);
        std::string tag = o.pass ? "PASS" : "FAIL";
        auto at = line.find(tag);
        line.replace(at, 4, paint(tag, o.pass ? "32" : "31"));
        std::cout << line << "\n";
    }
    if (json) print_json(Json{{"pass", all}, {"criteria", std::move(arr)}});
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional term rewriting: unravelings, SR transformation and soundness search"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "JSON output");

    std::string file, method, term, from, to, lhs, rhs, phi, canonical, system_file, corpus = CTRS_CORPUS_DIR;
    std::vector<std::string> starts, targets;
    bool ev_safe = false, modulo_identity = false, trace = false;
    BoundOpts bounds;
    PolicyOpts policy;

    auto* classify_cmd = app.add_subcommand("classify", "classify a system");
    classify_cmd->add_option("FILE", file)->required();

    auto* unravel_cmd = app.add_subcommand("unravel", "print an unraveling");
    unravel_cmd->add_option("FILE", file)->required();
    unravel_cmd->add_option("--method", method)->required()->check(CLI::IsMember({"u", "uopt", "uj", "un"}));

    auto* transform_cmd = app.add_subcommand("transform", "print a transformed system");
    transform_cmd->add_option("FILE", file)->required();
    transform_cmd->add_option("--method", method)->required()->check(CLI::IsMember({"invert", "norm", "det", "sr"}));

    auto* rewrite_cmd = app.add_subcommand("rewrite", "rewrite a term, first redex first");
    rewrite_cmd->add_option("FILE", file)->required();
    rewrite_cmd->add_option("--term", term)->required();
    rewrite_cmd->add_flag("--ev-safe", ev_safe);
    bounds.add(rewrite_cmd);
    policy.add(rewrite_cmd, true);

    auto* reach_cmd = app.add_subcommand("reach", "bounded reachability");
    reach_cmd->add_option("FILE", file)->required();
    reach_cmd->add_option("--from", from)->required();
    reach_cmd->add_option("--to", to)->required();
    reach_cmd->add_flag("--trace", trace, "print the derivation");
    bounds.add(reach_cmd);
    policy.add(reach_cmd, false);

    auto* cp_cmd = app.add_subcommand("cp", "critical pairs");
    cp_cmd->add_option("FILE", file)->required();

    auto* homo_cmd = app.add_subcommand("check-homo", "compare lhs with phi(rhs)");
    homo_cmd->add_option("--lhs", lhs)->required();
    homo_cmd->add_option("--rhs", rhs)->required();
    auto* phi_opt = homo_cmd->add_option("--phi", phi, "file with a MAP block");
    auto* can_opt = homo_cmd->add_option("--canonical", canonical, "u_to_uopt, uj_to_unnorm, ...");
    phi_opt->excludes(can_opt);
    homo_cmd->add_option("--system", system_file, "untransformed system for --canonical");
    homo_cmd->add_flag("--modulo-identity", modulo_identity);

    auto* search_cmd = app.add_subcommand("search-unsound", "bounded counterexample search");
    search_cmd->add_option("FILE", file)->required();
    search_cmd->add_option("--method", method)->required();
    search_cmd->add_option("--start", starts, "start term (repeatable)");
    search_cmd->add_option("--target", targets, "only check these end terms (repeatable)");
    search_cmd->add_flag("--ev-safe", ev_safe);
    bounds.add(search_cmd);
    policy.add(search_cmd, false);

    auto* report_cmd = app.add_subcommand("report", "soundness condition report");
    report_cmd->add_option("FILE", file)->required();

    auto* verify_cmd = app.add_subcommand("corpus-verify", "run the acceptance criteria");
    verify_cmd->add_option("--corpus", corpus, "corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify_cmd) return cmd_classify(file, json);
        if (*unravel_cmd) return cmd_unravel(file, method, json);
        if (*transform_cmd) return cmd_transform(file, method, json);
        if (*rewrite_cmd) return cmd_rewrite(file, term, bounds, policy, ev_safe, json);
        if (*reach_cmd) return cmd_reach(file, from, to, bounds, policy, trace, json);
        if (*cp_cmd) return cmd_cp(file, json);
        if (*homo_cmd) {
            if (phi.empty() && canonical.empty()) throw UsageError("check-homo needs --phi or --canonical");
            return cmd_check_homo(lhs, rhs, phi, canonical, system_file, modulo_identity, json);
        }
        if (*search_cmd) return cmd_search(file, method, starts, targets, bounds, policy, ev_safe, json);
        if (*report_cmd) return cmd_report(file, json);
        if (*verify_cmd) return cmd_corpus_verify(corpus, json);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

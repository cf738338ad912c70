#include "ctrs/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ctrs {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t col, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      kind_(kind),
      line_(line),
      col_(col) {}

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '^' || c == '-';
}

enum class Tok { LParen, RParen, Comma, Bar, Eq, Arrow, Ident, Comment, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col, offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws();
            Token t{Tok::End, "", line_, col_, i_};
            if (i_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            char c = s_[i_];
            if (c == '(') {
                t.kind = Tok::LParen;
                bump(1);
            } else if (c == ')') {
                t.kind = Tok::RParen;
                bump(1);
            } else if (c == ',') {
                t.kind = Tok::Comma;
                bump(1);
            } else if (c == '|') {
                t.kind = Tok::Bar;
                bump(1);
            } else if (c == '=' && peek(1) == '=') {
                t.kind = Tok::Eq;
                bump(2);
            } else if (c == '-' && peek(1) == '>') {
                t.kind = Tok::Arrow;
                bump(2);
            } else if (c == '#') {
                throw ParseError(ParseError::Kind::Reserved, line_, col_, "reserved character '#'");
            } else if (ident_char(c)) {
                std::size_t start = i_;
                while (i_ < s_.size() && ident_char(s_[i_]) && !(s_[i_] == '-' && peek(1) == '>')) bump(1);
                if (i_ < s_.size() && s_[i_] == '#')
                    throw ParseError(ParseError::Kind::Reserved, line_, col_, "reserved character '#' in identifier");
                t.kind = Tok::Ident;
                t.text = std::string(s_.substr(start, i_ - start));
                if (t.text == "COMMENT" && !out.empty() && out.back().kind == Tok::LParen) {
                    out.push_back(t);
                    out.push_back(comment_body());
                    continue;
                }
            } else {
                throw ParseError(ParseError::Kind::Lexical, line_, col_, std::string("unexpected character '") + c + "'");
            }
            out.push_back(t);
        }
    }

private:
    char peek(std::size_t k) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
    void bump(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }
    }
    // Raw text up to the matching ')', which is left for the parser.
    Token comment_body() {
        skip_ws();
        Token t{Tok::Comment, "", line_, col_, i_};
        std::size_t start = i_;
        int depth = 0;
        for (;;) {
            if (i_ >= s_.size()) throw ParseError(ParseError::Kind::Syntax, t.line, t.col, "unterminated COMMENT");
            char c = s_[i_];
            if (c == '(') ++depth;
            if (c == ')' && depth-- == 0) break;
            bump(1);
        }
        t.text = std::string(s_.substr(start, i_ - start));
        while (!t.text.empty() && std::isspace(static_cast<unsigned char>(t.text.back()))) t.text.pop_back();
        return t;
    }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) bump(1);
    }

    std::string_view s_;
    std::size_t i_ = 0, line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, std::string_view src) : t_(std::move(toks)), src_(src) {}

    SourceFile file() {
        prescan();
        SourceFile out;
        out.system.variables = vars_;
        out.system.flavor = flavor_;
        while (cur().kind != Tok::End) {
            expect(Tok::LParen, "'('");
            const Token kw = expect(Tok::Ident, "declaration keyword");
            if (kw.text == "CONDITIONTYPE") {
                next();
                expect(Tok::RParen, "')'");
            } else if (kw.text == "VAR") {
                while (cur().kind == Tok::Ident) next();
                expect(Tok::RParen, "')'");
            } else if (kw.text == "COMMENT") {
                out.system.origin = expect(Tok::Comment, "comment text").text;
                expect(Tok::RParen, "')'");
            } else if (kw.text == "RULES") {
                while (cur().kind != Tok::RParen) {
                    Rule r = rule();
                    r.label = "rho_" + std::to_string(out.system.rules.size() + 1);
                    if (r.lhs.is_var()) out.system.extended = true;
                    out.system.rules.push_back(std::move(r));
                }
                next();
            } else if (kw.text == "MAP") {
                while (cur().kind != Tok::RParen) out.maps.push_back(map_entry());
                next();
            } else {
                fail(ParseError::Kind::Syntax, kw, "unknown declaration '" + kw.text + "'");
            }
        }
        return out;
    }

    Term lone_term() {
        Term t = term();
        if (cur().kind != Tok::End) fail(ParseError::Kind::Syntax, cur(), "trailing input after term");
        return t;
    }

    void set_variables(std::vector<std::string> v) { vars_ = std::move(v); }
    void set_signature(const Signature& s) { sig_ = s; }

private:
    const Token& cur() const { return t_[pos_]; }
    const Token& next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(ParseError::Kind k, const Token& at, const std::string& msg) const {
        throw ParseError(k, at.line, at.col, msg);
    }

    Token expect(Tok k, const char* what) {
        if (cur().kind != k) {
            std::string got = cur().kind == Tok::End ? "end of input" : "'" + describe(cur()) + "'";
            fail(ParseError::Kind::Syntax, cur(), std::string("expected ") + what + ", got " + got);
        }
        return next();
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::LParen: return "(";
            case Tok::RParen: return ")";
            case Tok::Comma: return ",";
            case Tok::Bar: return "|";
            case Tok::Eq: return "==";
            case Tok::Arrow: return "->";
            case Tok::Ident:
            case Tok::Comment: return t.text;
            case Tok::End: return "";
        }
        return "";
    }

    // Variables and the condition type may be declared after the rules that use them.
    void prescan() {
        int depth = 0;
        for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
            if (t_[i].kind == Tok::LParen) {
                if (depth == 0 && t_[i + 1].kind == Tok::Ident) {
                    const auto& kw = t_[i + 1].text;
                    if (kw == "VAR") {
                        for (std::size_t j = i + 2; j < t_.size() && t_[j].kind == Tok::Ident; ++j)
                            if (std::find(vars_.begin(), vars_.end(), t_[j].text) == vars_.end())
                                vars_.push_back(t_[j].text);
                    } else if (kw == "CONDITIONTYPE") {
                        if (seen_ctype_) fail(ParseError::Kind::Syntax, t_[i + 1], "duplicate CONDITIONTYPE");
                        seen_ctype_ = true;
                        const Token& v = t_[i + 2];
                        if (v.kind == Tok::Ident && v.text == "ORIENTED")
                            flavor_ = Flavor::Oriented;
                        else if (v.kind == Tok::Ident && v.text == "JOIN")
                            flavor_ = Flavor::Join;
                        else
                            fail(ParseError::Kind::Syntax, v, "CONDITIONTYPE must be ORIENTED or JOIN");
                    }
                }
                ++depth;
            } else if (t_[i].kind == Tok::RParen) {
                --depth;
            }
        }
    }

    bool is_var(const std::string& n) const {
        if (local_vars_ && std::find(local_vars_->begin(), local_vars_->end(), n) != local_vars_->end()) return true;
        return std::find(vars_.begin(), vars_.end(), n) != vars_.end();
    }

    Term term() {
        const Token id = expect(Tok::Ident, "identifier");
        if (cur().kind == Tok::LParen) {
            if (is_var(id.text))
                fail(ParseError::Kind::VariableAsFunction, id, "variable '" + id.text + "' used as a function symbol");
            next();
            std::vector<Term> args;
            args.push_back(term());
            while (cur().kind == Tok::Comma) {
                next();
                args.push_back(term());
            }
            expect(Tok::RParen, "')' or ','");
            note_arity(id, args.size());
            return Term::app(id.text, std::move(args));
        }
        if (is_var(id.text)) return Term::var(id.text);
        note_arity(id, 0);
        return Term::app(id.text);
    }

    void note_arity(const Token& id, std::size_t n) {
        auto [it, fresh] = sig_.emplace(id.text, static_cast<int>(n));
        if (!fresh && it->second != static_cast<int>(n))
            fail(ParseError::Kind::ArityClash, id,
                 "symbol '" + id.text + "' used with arity " + std::to_string(n) + " and " + std::to_string(it->second));
    }

    Rule rule() {
        Rule r;
        r.lhs = term();
        expect(Tok::Arrow, "'->'");
        r.rhs = term();
        if (cur().kind == Tok::Bar) {
            next();
            r.conds.push_back(cond());
            while (cur().kind == Tok::Comma) {
                next();
                r.conds.push_back(cond());
            }
        }
        return r;
    }

    Condition cond() {
        Condition c;
        c.lhs = term();
        expect(Tok::Eq, "'=='");
        c.rhs = term();
        return c;
    }

    MapEntry map_entry() {
        MapEntry e;
        const Token id = expect(Tok::Ident, "symbol");
        e.symbol = id.text;
        if (cur().kind == Tok::LParen) {
            next();
            e.params.push_back(expect(Tok::Ident, "parameter").text);
            while (cur().kind == Tok::Comma) {
                next();
                e.params.push_back(expect(Tok::Ident, "parameter").text);
            }
            expect(Tok::RParen, "')'");
        }
        expect(Tok::Arrow, "'->'");
        // patterns may mention symbols of both systems at any arity, so they get their own signature
        Signature saved = std::move(sig_);
        sig_.clear();
        local_vars_ = &e.params;
        e.pattern = term();
        local_vars_ = nullptr;
        sig_ = std::move(saved);
        return e;
    }

    std::vector<Token> t_;
    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<std::string> vars_;
    const std::vector<std::string>* local_vars_ = nullptr;
    Flavor flavor_ = Flavor::Oriented;
    bool seen_ctype_ = false;
    Signature sig_;
};

}  // namespace

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!ident_char(s[i])) return false;
        if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '>') return false;
    }
    return true;
}

SourceFile parse_source(std::string_view text) {
    Parser p(Lexer(text).run(), text);
    return p.file();
}

RewriteSystem parse_system(std::string_view text) { return parse_source(text).system; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RewriteSystem load_system(const std::string& path) { return parse_system(read_file(path)); }

Term parse_term(std::string_view text, const std::vector<std::string>& variables, const Signature* sig) {
    Parser p(Lexer(text).run(), text);
    p.set_variables(variables);
    if (sig) p.set_signature(*sig);
    return p.lone_term();
}

Term parse_term(std::string_view text, const RewriteSystem& system) {
    Signature sig = system.signature();
    return parse_term(text, system.variables, &sig);
}

std::string render_term(const Term& t) { return t.str(); }

std::string render_rule(const Rule& r) {
    std::string s = render_term(r.lhs) + " -> " + render_term(r.rhs);
    for (std::size_t i = 0; i < r.conds.size(); ++i) {
        s += i ? ", " : " | ";
        s += render_term(r.conds[i].lhs) + " == " + render_term(r.conds[i].rhs);
    }
    return s;
}

std::string render_system(const RewriteSystem& system) {
    std::string out;
    if (!system.origin.empty()) out += "(COMMENT " + system.origin + ")\n";
    if (system.flavor == Flavor::Join) out += "(CONDITIONTYPE JOIN)\n";
    std::vector<std::string> vars = system.variables;
    std::set<std::string> used;
    for (const auto& r : system.rules)
        for (const auto& x : r.vars()) used.insert(x);
    for (const auto& x : used)
        if (std::find(vars.begin(), vars.end(), x) == vars.end()) vars.push_back(x);
    if (!vars.empty()) {
        out += "(VAR";
        for (const auto& v : vars) out += " " + v;
        out += ")\n";
    }
    out += "(RULES\n";
    for (const auto& r : system.rules) out += "  " + render_rule(r) + "\n";
    out += ")";
    return out;
}

}  // namespace ctrs

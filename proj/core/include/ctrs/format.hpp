#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctrs/system.hpp"

namespace ctrs {

class ParseError : public std::runtime_error {
public:
    enum class Kind { Lexical, Syntax, ArityClash, VariableAsFunction, Reserved };
    ParseError(Kind kind, std::size_t line, std::size_t col, const std::string& msg);
    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

private:
    Kind kind_;
    std::size_t line_, col_;
};

/// One "f(x1,...,xn) -> pattern" entry of a MAP block, parameters as written.
struct MapEntry {
    std::string symbol;
    std::vector<std::string> params;
    Term pattern;
};

struct SourceFile {
    RewriteSystem system;
    std::vector<MapEntry> maps;
};

SourceFile parse_source(std::string_view text);
RewriteSystem parse_system(std::string_view text);
RewriteSystem load_system(const std::string& path);
std::string read_file(const std::string& path);

/// Identifiers listed in `variables` are variables, everything else is a symbol.
/// A symbol already in `sig` must be used at its recorded arity.
Term parse_term(std::string_view text, const std::vector<std::string>& variables, const Signature* sig = nullptr);
Term parse_term(std::string_view text, const RewriteSystem& system);

std::string render_term(const Term& t);
std::string render_rule(const Rule& r);
/// parse_system(render_system(S)) has the same rules, flavor and variables as S.
std::string render_system(const RewriteSystem& system);

bool valid_identifier(std::string_view s);

}  // namespace ctrs

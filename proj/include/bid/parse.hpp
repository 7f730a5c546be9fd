#ifndef BID_PARSE_HPP
#define BID_PARSE_HPP

#include <string>
#include <vector>

#include "bid/ast.hpp"

namespace bid {

// Parses a single formula in the concrete syntax of docs/grammar.ebnf.
// Throws ParseError (with span and expected tokens) or SortError.
FormulaPtr parse_formula(const std::string& text);

// A named definition "def name(params) := formula". Parameter sorts follow
// the case convention (lowercase number, uppercase string).
struct Def {
    std::string name;
    std::vector<SortedVar> params;
    FormulaPtr body;
    SourceSpan span;
};

// Parses a file of definitions ('#' starts a line comment).
std::vector<Def> parse_defs(const std::string& text);

}  // namespace bid

#endif

#ifndef BID_PRINT_HPP
#define BID_PRINT_HPP

#include <string>

#include "bid/ast.hpp"

namespace bid {

// Canonical concrete syntax; parse(pretty_print(f)) is structurally equal
// to f. The grammar lives in docs/grammar.ebnf.
std::string pretty_print(const FormulaPtr& f);
std::string pretty_print(const NumTermPtr& t);
std::string pretty_print(const StrTermPtr& t);

}  // namespace bid

#endif

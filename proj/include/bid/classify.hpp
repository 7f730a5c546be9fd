#ifndef BID_CLASSIFY_HPP
#define BID_CLASSIFY_HPP

#include <optional>
#include <string>

#include "bid/ast.hpp"

namespace bid {

// Minimal class of a formula in the string-quantifier alternation hierarchy.
// level counts string-quantifier block alternations after negations are
// pushed to atoms; level 0 means bounded number quantifiers only. A formula
// can lie in both classes at its level (any level-0 formula does; so does
// e.g. a conjunction of a Sigma and a Pi formula one level down) — then
// in_dual is set and the Sigma/Pi tag is a canonical choice, not a claim of
// strictness.
struct FormulaClass {
    enum class Kind { Sigma, Pi, Unbounded };
    Kind kind = Kind::Sigma;
    unsigned level = 0;
    bool in_dual = false;

    static FormulaClass sigma(unsigned i) { return {Kind::Sigma, i, i == 0}; }
    static FormulaClass pi(unsigned i) { return {Kind::Pi, i, i == 0}; }
    static FormulaClass unbounded() { return {Kind::Unbounded, 0, false}; }

    FormulaClass dual() const;
    bool operator==(const FormulaClass& o) const;
    std::string to_string() const;  // canonical: "SigmaB(i)" / "PiB(i)" / "Unbounded"
};

// Minimal class containing f. Fixed-point atoms count as atomic literals.
FormulaClass classify(const FormulaPtr& f);

// First quantifier (leftmost, outermost-first) whose bound term mentions its
// own bound variable, or nullopt when every bound is independent.
struct BoundViolation {
    std::string var;
    SourceSpan span;
};
std::optional<BoundViolation> check_bound_independence(const FormulaPtr& f);

}  // namespace bid

#endif

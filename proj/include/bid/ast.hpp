#ifndef BID_AST_HPP
#define BID_AST_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bid/bitstr.hpp"
#include "bid/errors.hpp"
#include "bid/nat.hpp"

namespace bid {

// ── Sorts and variables ─────────────────────────────────────────────────────
// Number variables are lowercase identifiers, string variables uppercase.
// Every variable occurrence carries its sort explicitly; the case convention
// is only a parser rule.

enum class Sort { Num, Str };

struct SortedVar {
    std::string name;
    Sort sort;
    auto operator<=>(const SortedVar&) const = default;
};

struct NumTerm;
struct StrTerm;
struct Formula;
using NumTermPtr = std::shared_ptr<const NumTerm>;
using StrTermPtr = std::shared_ptr<const StrTerm>;
using FormulaPtr = std::shared_ptr<const Formula>;

// ── Number terms ────────────────────────────────────────────────────────────
// 0, 1 (and numeral sugar), +, ·, |X|, and the defined numeric functions:
// <x,y> pairing, monus, Exp(x,y) = min{2^x, y}, val(x, X), numones(x, X).

struct NumTerm {
    enum class Kind { Const, Var, Add, Mul, Monus, Pair, Exp, Len, Val, NumOnes };
    Kind kind;
    Nat value;          // Const
    std::string var;    // Var
    NumTermPtr a, b;    // binary children / first arg of Val, NumOnes
    StrTermPtr str;     // Len, Val, NumOnes
    SourceSpan span;
};

// ── String terms ────────────────────────────────────────────────────────────
// Variables, literals, and the defined string functions from the base theory:
// successor S, predecessor P, addition, monus, One, Last, complement,
// component Z^[x], and the string pair.

struct StrTerm {
    enum class Kind { Var, Lit, Succ, Pred, Add, Monus, One, Last, Complement, Component, StrPair };
    Kind kind;
    std::string var;    // Var
    BitStr lit;         // Lit
    StrTermPtr s, t;    // string children
    NumTermPtr n;       // numeric argument (One, Last, Complement, Component)
    SourceSpan span;
};

// ── Formulas ────────────────────────────────────────────────────────────────

// Bounded quantifier: (Q v <= t) or (Q v < t). The bound term must not
// mention the quantified variable itself (checked separately, not here).
struct Quantifier {
    std::string var;
    bool strict = false;  // true for the "< t" form
    NumTermPtr bound;
};

// Fixed-point atom P[phi](i, x, X) or relativized P[phi](i, x, X, Y).
// phi is referenced by name; its body lives in the evaluation registry.
struct FpAtom {
    std::string name;
    NumTermPtr bit;    // i
    NumTermPtr width;  // x
    StrTermPtr count;  // X, the iteration counter string
    StrTermPtr start;  // Y in the relativized form, null otherwise
};

struct Formula {
    enum class Kind {
        BoolConst,
        NumEq, NumLe, NumLt,
        StrEq, StrLe, StrLt,
        Mem,                     // X(t)
        Not, And, Or, Imp, Iff,
        ExistsNum, ForallNum, ExistsStr, ForallStr,
        Fp,
    };
    Kind kind;
    bool bval = false;                     // BoolConst
    NumTermPtr na, nb;                     // numeric comparisons; Mem index in nb
    StrTermPtr sa, sb;                     // string comparisons; Mem subject in sa
    FormulaPtr f, g;                       // connective children
    std::optional<Quantifier> quant;       // quantifier head
    std::optional<FpAtom> fp;              // fixed-point atom
    SourceSpan span;
};

// ── Builders ────────────────────────────────────────────────────────────────

NumTermPtr num_const(Nat v);
NumTermPtr num_var(const std::string& name);
NumTermPtr num_add(NumTermPtr a, NumTermPtr b);
NumTermPtr num_mul(NumTermPtr a, NumTermPtr b);
NumTermPtr num_monus(NumTermPtr a, NumTermPtr b);
NumTermPtr num_pair(NumTermPtr a, NumTermPtr b);
NumTermPtr num_exp(NumTermPtr a, NumTermPtr b);
NumTermPtr num_len(StrTermPtr s);
NumTermPtr num_val(NumTermPtr a, StrTermPtr s);
NumTermPtr num_numones(NumTermPtr a, StrTermPtr s);

StrTermPtr str_var(const std::string& name);
StrTermPtr str_lit(BitStr v);
StrTermPtr str_empty();
StrTermPtr str_succ(StrTermPtr s);
StrTermPtr str_pred(StrTermPtr s);
StrTermPtr str_add(StrTermPtr a, StrTermPtr b);
StrTermPtr str_monus(StrTermPtr a, StrTermPtr b);
StrTermPtr str_one(NumTermPtr n);
StrTermPtr str_last(NumTermPtr n, StrTermPtr s);
StrTermPtr str_complement(StrTermPtr s, NumTermPtr n);
StrTermPtr str_component(StrTermPtr s, NumTermPtr n);
StrTermPtr str_pair_term(StrTermPtr a, StrTermPtr b);

FormulaPtr f_bool(bool v);
FormulaPtr f_num_eq(NumTermPtr a, NumTermPtr b);
FormulaPtr f_num_le(NumTermPtr a, NumTermPtr b);
FormulaPtr f_num_lt(NumTermPtr a, NumTermPtr b);
FormulaPtr f_str_eq(StrTermPtr a, StrTermPtr b);
FormulaPtr f_str_le(StrTermPtr a, StrTermPtr b);
FormulaPtr f_str_lt(StrTermPtr a, StrTermPtr b);
FormulaPtr f_mem(StrTermPtr s, NumTermPtr i);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists_num(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body);
FormulaPtr f_forall_num(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body);
FormulaPtr f_exists_str(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body);
FormulaPtr f_forall_str(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body);
FormulaPtr f_fp(FpAtom atom);

// n-ary convenience folds; and/or of an empty list is the unit constant
FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs);
FormulaPtr f_or_all(const std::vector<FormulaPtr>& fs);

// ── Structural operations ───────────────────────────────────────────────────

// Deep structural equality, ignoring spans.
bool struct_eq(const NumTermPtr& a, const NumTermPtr& b);
bool struct_eq(const StrTermPtr& a, const StrTermPtr& b);
bool struct_eq(const FormulaPtr& a, const FormulaPtr& b);

// Exactly the variables with a free occurrence, tagged with their sort.
// Fixed-point atoms contribute the variables of their argument terms; the
// referenced phi is closed under its registry environment.
std::set<SortedVar> free_vars(const FormulaPtr& f);
std::set<SortedVar> free_vars(const NumTermPtr& t);
std::set<SortedVar> free_vars(const StrTermPtr& t);

// Capture-avoiding substitution of free variable occurrences. Throws Error
// if a substituted term would be captured by a bound variable (callers keep
// bound-variable names disjoint from substitution images).
struct Substitution {
    std::vector<std::pair<std::string, NumTermPtr>> nums;
    std::vector<std::pair<std::string, StrTermPtr>> strs;
};
FormulaPtr substitute(const FormulaPtr& f, const Substitution& sub);
NumTermPtr substitute(const NumTermPtr& t, const Substitution& sub);
StrTermPtr substitute(const StrTermPtr& t, const Substitution& sub);

}  // namespace bid

#endif

#ifndef BID_EVAL_HPP
#define BID_EVAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "bid/ast.hpp"
#include "bid/bitstr.hpp"
#include "bid/nat.hpp"

namespace bid {

// A named generating formula for fixed-point atoms: phi(bit_var, state_var)
// with any extra free variables closed by `closure`.
struct PhiDef {
    std::string bit_var = "i";
    std::string state_var = "Y";
    FormulaPtr body;
    std::map<std::string, Nat> closure_nums;
    std::map<std::string, BitStr> closure_strs;
};

using PhiRegistry = std::map<std::string, PhiDef>;

struct EvalLimits {
    // candidates enumerated per string quantifier (2^bound values)
    std::uint64_t str_candidates = std::uint64_t{1} << 24;
    // same cap applied per number quantifier, purely as a hang guard
    std::uint64_t num_candidates = std::uint64_t{1} << 32;
    // fixed-point atom iteration count cap
    Nat iterations = Nat(1) << 24;
};

struct Env {
    std::map<std::string, Nat> nums;
    std::map<std::string, BitStr> strs;
    std::map<std::string, HyperStr> hypers;
    std::shared_ptr<const PhiRegistry> registry;
    EvalLimits limits;
};

// Standard-model evaluation. Bounded number quantifiers enumerate values up
// to the bound; bounded string quantifiers (QX <= t) enumerate all strings
// with |X| <= t, guarded by limits.str_candidates. Fixed-point atoms
// P[phi](i, x, X[, Y]) iterate phi's operator val_full(X) times from the
// empty string (or from Y clipped to x).
Nat eval_num(const NumTermPtr& t, const Env& env);
BitStr eval_str(const StrTermPtr& t, const Env& env);
bool eval_formula(const FormulaPtr& f, const Env& env);

// One operator application { i < x : phi(i, state) } with the state clipped
// to width x before any read. Shared by eval_formula's fixed-point case and
// the inductive engine's reference path.
BitStr phi_step(const FormulaPtr& phi, const std::string& bit_var, const std::string& state_var,
                std::size_t width, const BitStr& state, const Env& env);

}  // namespace bid

#endif

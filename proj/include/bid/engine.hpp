#ifndef BID_ENGINE_HPP
#define BID_ENGINE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bid/ast.hpp"
#include "bid/bitstr.hpp"
#include "bid/eval.hpp"

namespace bid {

// An inductive operator: the map Phi(Y) = { i < width : phi(i, Y) } induced
// by a SigmaB(0) formula phi(bit_var, state_var) whose other free variables
// are closed by env. States are clipped to width before every read.
struct Operator {
    std::string name;
    FormulaPtr phi;
    std::string bit_var = "i";
    std::string state_var = "Y";
    std::size_t width = 0;
    Env env;
};

// Validates the SigmaB(0) requirement and that every free variable of phi
// other than (bit_var, state_var) is closed by env. Throws Error.
Operator make_operator(std::string name, FormulaPtr phi, std::size_t width, Env env = {},
                       std::string bit_var = "i", std::string state_var = "Y");

struct IterationTrace {
    std::size_t width = 0;
    std::vector<BitStr> states;  // states[0] = start, states[j+1] = Phi(states[j])
};

struct PeriodReport {
    Nat u;  // tail length (minimal)
    Nat v;  // period length (minimal, >= 1)
    BitStr state_at_u;
};

// One operator application. `compiled` selects the specialized evaluator;
// both paths are bit-identical.
BitStr step(const Operator& op, const BitStr& state, bool compiled = true);

// n-fold application of step to start; ResourceLimit past env.limits.iterations.
BitStr iterate(const Operator& op, const BitStr& start, const Nat& n);

// Like iterate but recording every state (n+1 entries including the start).
IterationTrace iterate_with_trace(const Operator& op, const BitStr& start, const Nat& n);

enum class InflMode { Exhaustive, Syntactic, Sampled };
struct InflReport {
    enum class Verdict { Yes, No, Unknown } verdict;
    BitStr counter_state;        // No only
    std::size_t counter_bit = 0; // No only
};
// Does Y subseteq Phi(Y) hold for all Y? Exhaustive checks all 2^width
// states (width capped), syntactic answers yes only for the shape
// Y(i) || psi (possibly under a guard i < ...+|Y|+...), sampled tries
// random states and never answers yes.
InflReport is_inflationary(const Operator& op, InflMode mode, std::size_t exhaustive_cap = 20,
                           std::size_t samples = 256, std::uint64_t seed = 1);

// Least k with iterate(empty, k+1) = iterate(empty, k); k <= width for
// inflationary operators. Throws NotInflationary on a dropped bit.
struct FixpointResult {
    std::size_t k = 0;
    BitStr fixpoint;
};
FixpointResult find_fixpoint_inflationary(const Operator& op);

// Minimal u, then minimal v >= 1, with iterate(start, u+v) = iterate(start, u).
PeriodReport find_period(const Operator& op, const BitStr& start);
PeriodReport find_period_hash(const Operator& op, const BitStr& start);   // visited map
PeriodReport find_period_brent(const Operator& op, const BitStr& start);  // constant memory

// { iterate(start, m) : m < n }
HyperStr visited_states(const Operator& op, const BitStr& start, const Nat& n);

// nullopt when the trace starts at the clipped start and every consecutive
// pair satisfies the step relation; otherwise the first faulting index.
std::optional<std::size_t> verify_trace(const Operator& op, const IterationTrace& trace,
                                        const BitStr& start);

// iterate(iterate(Z, m), n) == iterate(Z, m+n)
bool check_composition(const Operator& op, const BitStr& z, const Nat& m, const Nat& n);

// Line-delimited trace format, documented in docs/trace-format.md.
void write_trace(std::ostream& os, const IterationTrace& trace);
IterationTrace read_trace(std::istream& is);

}  // namespace bid

#endif

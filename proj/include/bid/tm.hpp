#ifndef BID_TM_HPP
#define BID_TM_HPP

#include <map>
#include <string>
#include <vector>

#include "bid/bitstr.hpp"
#include "bid/engine.hpp"
#include "bid/nat.hpp"

namespace bid {

// A deterministic single-tape Turing machine with a declared polynomial
// bound (time or space). Symbol/state codes are indices into alphabet/states;
// the blank is alphabet[0], and "0"/"1" must be present for input/output.
struct TMTransition {
    int next_state;
    int write;
    int move;  // -1 left, 0 stay, +1 right
    bool operator==(const TMTransition&) const = default;
};

struct TMSpec {
    std::string name;
    std::vector<std::string> states;
    int start = 0;
    int final_state = 0;
    std::vector<std::string> alphabet;  // [0] is the blank
    std::map<std::pair<int, int>, TMTransition> delta;
    bool time_bounded = true;
    std::vector<Nat> poly;  // p(n) = poly[0] + poly[1]*n + ... (low order first)

    int symbol(const std::string& s) const;  // index, or throws
    int state_of(const std::string& s) const;

    // configuration layout: [pad 0][cells: sym_bits + head flag][state][sentinel]
    std::size_t sym_bits() const;    // s = bits per symbol
    std::size_t cell_bits() const;   // c = s + 1 (head flag on top)
    std::size_t state_bits() const;  // k
    Nat p_of(const Nat& n) const;    // declared bound
    Nat q_of(const Nat& n) const;    // config length c*p(n) + k + 2
};

// JSON interchange (fields: name, states, start, final, alphabet,
// transitions, bound{kind, poly}); validates determinism, final-state
// sink-ness, and bound well-formedness.
TMSpec tm_from_json(const std::string& json_text);
TMSpec tm_from_file(const std::string& path);
std::string tm_to_json(const TMSpec& m);

// ── direct simulation (the oracle) ──────────────────────────────────────────

struct MachineState {
    int state = 0;
    std::size_t head = 0;
    std::vector<int> tape;  // exactly p(n) cells of symbol codes
};

MachineState initial_state(const TMSpec& m, const BitStr& input);
// One transition; false when already in the final state. Throws OutOfSpace
// when the head would leave the p(n) cells, Error on a missing transition.
bool step_direct(const TMSpec& m, MachineState& ms);
// Tape prefix of 0/1 symbols from cell 0, MSB first, canonicalized.
BitStr output_of(const TMSpec& m, const MachineState& ms);
BitStr run_direct(const TMSpec& m, const BitStr& input,
                  const Nat& max_steps = Nat(1) << 22);

// ── configuration encoding ──────────────────────────────────────────────────

BitStr encode_config(const TMSpec& m, const MachineState& ms, std::size_t n);
MachineState decode_config(const TMSpec& m, const BitStr& config, std::size_t n);

// ── bit-graph formulas (free variables i, X and i, X, Y) ────────────────────

FormulaPtr init_formula(const TMSpec& m);        // bit i of the initial config on X
FormulaPtr next_formula(const TMSpec& m);        // bit i of the successor of config Y
FormulaPtr next_prime_formula(const TMSpec& m);  // like next, but final configs are fixed
FormulaPtr is_config_formula(const TMSpec& m);   // Y encodes a configuration (free X, Y)

// ── compilation to operators ────────────────────────────────────────────────

enum class Flavor { ptime_trace, pspace_inplace };

struct CompiledOperator {
    Operator op;
    Flavor flavor;
    TMSpec machine;
    std::size_t input_len = 0;
    Nat p;          // p(|X|)
    std::size_t q;  // q(|X|)
};

// Trace-appending operator of width q(|X|)*(p(|X|)+1); inflationary.
CompiledOperator compile_ptime(const TMSpec& m, const BitStr& input);
// In-place operator of width q(|X|)+1.
CompiledOperator compile_pspace(const TMSpec& m, const BitStr& input);

// Output(Z): requires Z to encode a final configuration (NotFinal otherwise).
BitStr output_from_config(const TMSpec& m, const BitStr& config, std::size_t n);

struct RunResult {
    BitStr output;
    Nat iterations;     // engine steps used (fixpoint k, or period tail u)
    std::size_t width;  // operator width
};
// Compile, iterate to the fixed point (ptime) or the period (pspace), and
// extract the output; equals run_direct by the capture theorems.
RunResult run_via_id(const TMSpec& m, const BitStr& input, Flavor flavor);

}  // namespace bid

#endif

#ifndef BID_COMPILED_HPP
#define BID_COMPILED_HPP

#include <memory>
#include <string>

#include "bid/ast.hpp"
#include "bid/eval.hpp"

namespace bid {

// Specialized evaluator for the operator step { i < x : phi(i, Y) }.
// Guaranteed bit-identical to phi_step; the speedups are mechanical:
//   - subexpressions free of the bit variable (and of quantified variables)
//     are evaluated lazily at most once per step instead of once per bit;
//   - number arithmetic runs in overflow-checked machine words, falling back
//     to the reference evaluator for any bit where a value does not fit;
//   - a bounded (exists j <= t) whose body conjoins an equation linear in j
//     is solved by division instead of enumerating j.
class CompiledStepper {
public:
    // base_env closes phi's extra free variables; it must not bind state_var.
    CompiledStepper(FormulaPtr phi, std::string bit_var, std::string state_var, std::size_t width,
                    Env base_env);
    ~CompiledStepper();
    CompiledStepper(CompiledStepper&&) noexcept;
    CompiledStepper& operator=(CompiledStepper&&) noexcept;

    BitStr step(const BitStr& state) const;

    struct Impl;  // public so the node types in the implementation can use it

private:
    std::unique_ptr<Impl> impl_;
};

}  // namespace bid

#endif

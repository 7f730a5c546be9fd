#ifndef BID_CORPUS_HPP
#define BID_CORPUS_HPP

#include <vector>

#include "bid/tm.hpp"

namespace bid {

// The bundled example machines. Time-bounded: halt (identity), inc (binary
// increment), palindrome (decider, output 0b1/0b0). Space-bounded: counter
// (counts 0..2^n in n cells), qbf (alternating or/and pairwise reduction of
// the input, an exists/forall game tree evaluator).
TMSpec machine_halt();
TMSpec machine_inc();
TMSpec machine_palindrome();
TMSpec machine_counter();
TMSpec machine_qbf();

std::vector<TMSpec> all_machines();

}  // namespace bid

#endif

#ifndef TESTS_AST_FUZZ_HPP
#define TESTS_AST_FUZZ_HPP

// Random AST generators shared by the parser round-trip tests and the
// property suites. Two flavors:
//   - random_formula: exercises the whole grammar (round-trip fuzzing);
//   - random_sigma0_operator: cheap-to-evaluate SigmaB(0) bodies over the
//     operator variables (i, Y), for engine property sweeps.

#include <random>
#include <string>
#include <vector>

#include "bid/ast.hpp"

namespace fuzz {

using bid::FormulaPtr;
using bid::Nat;
using bid::NumTermPtr;
using bid::StrTermPtr;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
    bool coin() { return rng() & 1; }
};

// variable pools respecting the case convention
inline const std::vector<std::string>& num_pool() {
    static const std::vector<std::string> p = {"i", "j", "x", "y", "k", "n"};
    return p;
}
inline const std::vector<std::string>& str_pool() {
    static const std::vector<std::string> p = {"X", "Y", "Z", "U", "V", "W"};
    return p;
}

inline NumTermPtr random_num(Gen& g, int depth);
inline StrTermPtr random_str_term(Gen& g, int depth);

inline NumTermPtr random_num(Gen& g, int depth) {
    using bid::num_add;
    using bid::num_const;
    using bid::num_var;
    if (depth <= 0 || g.pick(3) == 0) {
        if (g.coin()) return num_const(Nat(g.pick(12)));
        return num_var(num_pool()[g.pick(num_pool().size())]);
    }
    switch (g.pick(8)) {
        case 0: return num_add(random_num(g, depth - 1), random_num(g, depth - 1));
        case 1: return bid::num_mul(random_num(g, depth - 1), random_num(g, depth - 1));
        case 2: return bid::num_monus(random_num(g, depth - 1), random_num(g, depth - 1));
        case 3: return bid::num_pair(random_num(g, depth - 1), random_num(g, depth - 1));
        case 4: return bid::num_exp(random_num(g, depth - 1), random_num(g, depth - 1));
        case 5: return bid::num_len(random_str_term(g, depth - 1));
        case 6: return bid::num_val(random_num(g, depth - 1), random_str_term(g, depth - 1));
        default:
            return bid::num_numones(random_num(g, depth - 1), random_str_term(g, depth - 1));
    }
}

inline StrTermPtr random_str_term(Gen& g, int depth) {
    if (depth <= 0 || g.pick(3) == 0) {
        if (g.pick(4) == 0) {
            bid::BitStr lit;
            std::size_t bits = g.pick(6);
            for (std::size_t b = 0; b < bits; ++b)
                if (g.coin()) lit.set(b);
            return bid::str_lit(lit);
        }
        return bid::str_var(str_pool()[g.pick(str_pool().size())]);
    }
    switch (g.pick(9)) {
        case 0: return bid::str_succ(random_str_term(g, depth - 1));
        case 1: return bid::str_pred(random_str_term(g, depth - 1));
        case 2: return bid::str_add(random_str_term(g, depth - 1), random_str_term(g, depth - 1));
        case 3:
            return bid::str_monus(random_str_term(g, depth - 1), random_str_term(g, depth - 1));
        case 4: return bid::str_one(random_num(g, depth - 1));
        case 5: return bid::str_last(random_num(g, depth - 1), random_str_term(g, depth - 1));
        case 6:
            return bid::str_complement(random_str_term(g, depth - 1), random_num(g, depth - 1));
        case 7:
            return bid::str_component(random_str_term(g, depth - 1), random_num(g, depth - 1));
        default:
            return bid::str_pair_term(random_str_term(g, depth - 1),
                                      random_str_term(g, depth - 1));
    }
}

// Full-grammar formula for round-trip fuzzing; may be semantically absurd,
// only the syntax matters.
inline FormulaPtr random_formula(Gen& g, int depth) {
    if (depth <= 0 || g.pick(4) == 0) {
        switch (g.pick(9)) {
            case 0: return bid::f_bool(g.coin());
            case 1: return bid::f_num_eq(random_num(g, 1), random_num(g, 1));
            case 2: return bid::f_num_le(random_num(g, 1), random_num(g, 1));
            case 3: return bid::f_num_lt(random_num(g, 1), random_num(g, 1));
            case 4: return bid::f_str_eq(random_str_term(g, 1), random_str_term(g, 1));
            case 5: return bid::f_str_le(random_str_term(g, 1), random_str_term(g, 1));
            case 6: return bid::f_str_lt(random_str_term(g, 1), random_str_term(g, 1));
            case 7: {
                bid::FpAtom atom;
                atom.name = "phi";
                atom.bit = random_num(g, 1);
                atom.width = random_num(g, 1);
                atom.count = random_str_term(g, 1);
                if (g.coin()) atom.start = random_str_term(g, 1);
                return bid::f_fp(std::move(atom));
            }
            default: return bid::f_mem(random_str_term(g, 1), random_num(g, 1));
        }
    }
    switch (g.pick(9)) {
        case 0: return bid::f_not(random_formula(g, depth - 1));
        case 1: return bid::f_and(random_formula(g, depth - 1), random_formula(g, depth - 1));
        case 2: return bid::f_or(random_formula(g, depth - 1), random_formula(g, depth - 1));
        case 3: return bid::f_imp(random_formula(g, depth - 1), random_formula(g, depth - 1));
        case 4: return bid::f_iff(random_formula(g, depth - 1), random_formula(g, depth - 1));
        case 5:
        case 6: {
            const auto& v = num_pool()[g.pick(num_pool().size())];
            auto body = random_formula(g, depth - 1);
            auto bound = random_num(g, 1);
            return g.coin() ? bid::f_exists_num(v, g.coin(), bound, body)
                            : bid::f_forall_num(v, g.coin(), bound, body);
        }
        default: {
            const auto& v = str_pool()[g.pick(str_pool().size())];
            auto body = random_formula(g, depth - 1);
            auto bound = random_num(g, 1);
            return g.coin() ? bid::f_exists_str(v, g.coin(), bound, body)
                            : bid::f_forall_str(v, g.coin(), bound, body);
        }
    }
}

// SigmaB(0) body over exactly (i, Y) plus locally bound number variables;
// every quantifier bound is a constant <= 6, so evaluation stays cheap at
// any operator width.
inline FormulaPtr random_sigma0(Gen& g, int depth, std::vector<std::string> scope = {"i"}) {
    auto term = [&]() -> NumTermPtr {
        switch (g.pick(4)) {
            case 0: return bid::num_const(Nat(g.pick(7)));
            case 1: return bid::num_var(scope[g.pick(scope.size())]);
            case 2:
                return bid::num_add(bid::num_var(scope[g.pick(scope.size())]),
                                    bid::num_const(Nat(g.pick(4))));
            default:
                return bid::num_monus(bid::num_var(scope[g.pick(scope.size())]),
                                      bid::num_const(Nat(1 + g.pick(3))));
        }
    };
    if (depth <= 0 || g.pick(3) == 0) {
        switch (g.pick(4)) {
            case 0: return bid::f_mem(bid::str_var("Y"), term());
            case 1: return bid::f_num_eq(term(), term());
            case 2: return bid::f_num_lt(term(), term());
            default: return bid::f_num_le(term(), term());
        }
    }
    switch (g.pick(6)) {
        case 0: return bid::f_not(random_sigma0(g, depth - 1, scope));
        case 1:
            return bid::f_and(random_sigma0(g, depth - 1, scope),
                              random_sigma0(g, depth - 1, scope));
        case 2:
            return bid::f_or(random_sigma0(g, depth - 1, scope),
                             random_sigma0(g, depth - 1, scope));
        case 3:
            return bid::f_imp(random_sigma0(g, depth - 1, scope),
                              random_sigma0(g, depth - 1, scope));
        case 4:
            return bid::f_iff(random_sigma0(g, depth - 1, scope),
                              random_sigma0(g, depth - 1, scope));
        default: {
            std::string v = g.coin() ? "j" : "k";
            auto inner = scope;
            bool fresh = true;
            for (const auto& s : inner) fresh = fresh && s != v;
            if (fresh) inner.push_back(v);
            auto bound = bid::num_const(Nat(g.pick(7)));
            auto body = random_sigma0(g, depth - 1, inner);
            return g.coin() ? bid::f_exists_num(v, g.coin(), bound, body)
                            : bid::f_forall_num(v, g.coin(), bound, body);
        }
    }
}

}  // namespace fuzz

#endif

#include "bid/eval.hpp"

#include "bid/errors.hpp"
#include "bid/funcs.hpp"

namespace bid {

namespace {

using NK = NumTerm::Kind;
using SK = StrTerm::Kind;
using FK = Formula::Kind;

const Nat& lookup_num(const Env& env, const std::string& v) {
    auto it = env.nums.find(v);
    if (it == env.nums.end()) throw UnboundVariable("unbound number variable " + v);
    return it->second;
}

const BitStr& lookup_str(const Env& env, const std::string& v) {
    auto it = env.strs.find(v);
    if (it == env.strs.end()) throw UnboundVariable("unbound string variable " + v);
    return it->second;
}

bool eval_fp(const FpAtom& atom, const Env& env);

}  // namespace

Nat eval_num(const NumTermPtr& t, const Env& env) {
    switch (t->kind) {
        case NK::Const: return t->value;
        case NK::Var: return lookup_num(env, t->var);
        case NK::Add: return eval_num(t->a, env) + eval_num(t->b, env);
        case NK::Mul: return eval_num(t->a, env) * eval_num(t->b, env);
        case NK::Monus: return limited_sub(eval_num(t->a, env), eval_num(t->b, env));
        case NK::Pair: return pair(eval_num(t->a, env), eval_num(t->b, env));
        case NK::Exp: return exp_min(eval_num(t->a, env), eval_num(t->b, env));
        case NK::Len: return Nat(eval_str(t->str, env).length());
        case NK::Val: return val(eval_num(t->a, env), eval_str(t->str, env));
        case NK::NumOnes: {
            // numones(x, X): how many of the bits below x are set
            Nat x = eval_num(t->a, env);
            BitStr s = eval_str(t->str, env);
            if (x >= s.length()) return Nat(s.popcount());
            return Nat(s.clipped(to_u64_checked(x, "numones cutoff")).popcount());
        }
    }
    throw Error("eval_num: bad node");
}

BitStr eval_str(const StrTermPtr& t, const Env& env) {
    switch (t->kind) {
        case SK::Var: return lookup_str(env, t->var);
        case SK::Lit: return t->lit;
        case SK::Succ: return string_succ(eval_str(t->s, env));
        case SK::Pred: return string_pred(eval_str(t->s, env));
        case SK::Add: return string_add(eval_str(t->s, env), eval_str(t->t, env));
        case SK::Monus: return string_sub(eval_str(t->s, env), eval_str(t->t, env));
        case SK::One: return one_string(eval_num(t->n, env));
        case SK::Last: return last_bits(eval_num(t->n, env), eval_str(t->s, env));
        case SK::Complement: return complement(eval_str(t->s, env), eval_num(t->n, env));
        case SK::Component: return component(eval_str(t->s, env), eval_num(t->n, env));
        case SK::StrPair: return string_pair(eval_str(t->s, env), eval_str(t->t, env));
    }
    throw Error("eval_str: bad node");
}

namespace {

bool eval_num_quant(const Formula& f, const Env& env, bool exists) {
    Nat bound = eval_num(f.quant->bound, env);
    Nat last = f.quant->strict ? limited_sub(bound, 1) : bound;
    if (f.quant->strict && bound == 0) return !exists;
    if (last + 1 > Nat(env.limits.num_candidates))
        throw ResourceLimit("number quantifier range exceeds budget");
    Env inner = env;
    Nat& slot = inner.nums[f.quant->var];
    for (Nat v = 0; v <= last; ++v) {
        slot = v;
        if (eval_formula(f.f, inner) == exists) return exists;
    }
    return !exists;
}

bool eval_str_quant(const Formula& f, const Env& env, bool exists) {
    Nat bound = eval_num(f.quant->bound, env);
    // (QX <= t) ranges over |X| <= t, i.e. values 0 .. 2^t - 1
    Nat len = f.quant->strict ? limited_sub(bound, 1) : bound;
    if (len >= 64 || (Nat(1) << static_cast<unsigned>(len)) > Nat(env.limits.str_candidates))
        throw ResourceLimit("string quantifier enumeration exceeds budget");
    std::uint64_t count = std::uint64_t{1} << static_cast<unsigned>(len);
    Env inner = env;
    BitStr& slot = inner.strs[f.quant->var];
    for (std::uint64_t v = 0; v < count; ++v) {
        slot = BitStr::from_nat(Nat(v));
        if (eval_formula(f.f, inner) == exists) return exists;
    }
    return !exists;
}

bool eval_fp(const FpAtom& atom, const Env& env) {
    if (!env.registry) throw UnboundVariable("no phi registry for P[" + atom.name + "]");
    auto it = env.registry->find(atom.name);
    if (it == env.registry->end()) throw UnboundVariable("unknown phi name " + atom.name);
    const PhiDef& phi = it->second;

    Nat xval = eval_num(atom.width, env);
    std::size_t width = to_u64_checked(xval, "fixed-point width");
    Nat n = eval_str(atom.count, env).to_nat();
    if (n > env.limits.iterations) throw ResourceLimit("fixed-point iteration count exceeds budget");

    Env phi_env;
    phi_env.nums = phi.closure_nums;
    phi_env.strs = phi.closure_strs;
    phi_env.registry = env.registry;
    phi_env.limits = env.limits;

    BitStr state = atom.start ? eval_str(atom.start, env).clipped(width) : BitStr{};
    for (Nat step = 0; step < n; ++step)
        state = phi_step(phi.body, phi.bit_var, phi.state_var, width, state, phi_env);

    Nat i = eval_num(atom.bit, env);
    if (i >= Nat(width)) return false;
    return state.test(to_u64_checked(i, "fixed-point bit"));
}

}  // namespace

BitStr phi_step(const FormulaPtr& phi, const std::string& bit_var, const std::string& state_var,
                std::size_t width, const BitStr& state, const Env& env) {
    Env inner = env;
    inner.strs[state_var] = state.clipped(width);
    Nat& bit = inner.nums[bit_var];
    BitStr next;
    for (std::size_t i = 0; i < width; ++i) {
        bit = i;
        if (eval_formula(phi, inner)) next.set(i);
    }
    return next;
}

bool eval_formula(const FormulaPtr& f, const Env& env) {
    switch (f->kind) {
        case FK::BoolConst: return f->bval;
        case FK::NumEq: return eval_num(f->na, env) == eval_num(f->nb, env);
        case FK::NumLe: return eval_num(f->na, env) <= eval_num(f->nb, env);
        case FK::NumLt: return eval_num(f->na, env) < eval_num(f->nb, env);
        case FK::StrEq: return eval_str(f->sa, env) == eval_str(f->sb, env);
        case FK::StrLe: return eval_str(f->sa, env) <= eval_str(f->sb, env);
        case FK::StrLt: return eval_str(f->sa, env) < eval_str(f->sb, env);
        case FK::Mem: {
            BitStr s = eval_str(f->sa, env);
            Nat i = eval_num(f->nb, env);
            if (i >= Nat(s.length())) return false;
            return s.test(to_u64_checked(i, "membership index"));
        }
        case FK::Not: return !eval_formula(f->f, env);
        case FK::And: return eval_formula(f->f, env) && eval_formula(f->g, env);
        case FK::Or: return eval_formula(f->f, env) || eval_formula(f->g, env);
        case FK::Imp: return !eval_formula(f->f, env) || eval_formula(f->g, env);
        case FK::Iff: return eval_formula(f->f, env) == eval_formula(f->g, env);
        case FK::ExistsNum: return eval_num_quant(*f, env, true);
        case FK::ForallNum: return eval_num_quant(*f, env, false);
        case FK::ExistsStr: return eval_str_quant(*f, env, true);
        case FK::ForallStr: return eval_str_quant(*f, env, false);
        case FK::Fp: return eval_fp(*f->fp, env);
    }
    throw Error("eval_formula: bad node");
}

}  // namespace bid

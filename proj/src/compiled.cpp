#include "bid/compiled.hpp"

#include <cstdint>
#include <optional>
#include <vector>

#include "bid/errors.hpp"
#include "bid/funcs.hpp"

namespace bid {

namespace {

using NK = NumTerm::Kind;
using SK = StrTerm::Kind;
using FK = Formula::Kind;
using u64 = std::uint64_t;

// Thrown when a machine-word computation would overflow; the step loop
// catches it and re-evaluates that one bit with the reference evaluator.
struct Overflow {};

u64 add_ck(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
u64 mul_ck(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}

struct Ctx {
    const Env* step_env = nullptr;  // base env + state binding, for reference paths
    const BitStr* state = nullptr;  // already clipped to the operator width
    u64 bit = 0;
    std::vector<u64> slots;

    // lazy per-step caches (lazy so that short-circuiting matches the
    // reference evaluator: an unused subexpression must never raise)
    std::vector<char> str_done, num_done, bool_done;
    std::vector<BitStr> str_vals;
    std::vector<u64> num_vals;
    std::vector<char> num_fits;
    std::vector<char> bool_vals;
};

struct NNode {
    virtual ~NNode() = default;
    virtual u64 eval(Ctx&) const = 0;
};
struct BNode {
    virtual ~BNode() = default;
    virtual bool eval(Ctx&) const = 0;
};
using NPtr = std::unique_ptr<NNode>;
using BPtr = std::unique_ptr<BNode>;

}  // namespace

struct CompiledStepper::Impl {
    FormulaPtr phi;
    std::string bit_var, state_var;
    std::size_t width = 0;
    Env base;
    std::size_t nslots = 0;

    // hoisted bit-variable-free subformulas run compiled too, with the
    // reference evaluator kept as the overflow fallback
    struct BoolEntry {
        FormulaPtr src;
        BPtr code;
    };
    std::vector<StrTermPtr> str_src;
    std::vector<NumTermPtr> num_src;
    std::vector<BoolEntry> bool_src;
    // shared subterms (same node pointer) reuse one cache entry
    std::map<const void*, int> str_index, num_index, bool_index;
    BPtr root;

    const BitStr& cached_str(Ctx& ctx, int idx) const {
        if (!ctx.str_done[idx]) {
            ctx.str_vals[idx] = eval_str(str_src[idx], *ctx.step_env);
            ctx.str_done[idx] = 1;
        }
        return ctx.str_vals[idx];
    }
    u64 cached_num(Ctx& ctx, int idx) const {
        if (!ctx.num_done[idx]) {
            Nat v = eval_num(num_src[idx], *ctx.step_env);
            ctx.num_done[idx] = 1;
            if (v <= Nat(UINT64_MAX)) {
                ctx.num_vals[idx] = static_cast<u64>(v);
                ctx.num_fits[idx] = 1;
            } else {
                ctx.num_fits[idx] = 0;
            }
        }
        if (!ctx.num_fits[idx]) throw Overflow{};
        return ctx.num_vals[idx];
    }
    bool cached_bool(Ctx& ctx, int idx) const {
        if (!ctx.bool_done[idx]) {
            bool v;
            try {
                v = bool_src[idx].code->eval(ctx);
            } catch (const Overflow&) {
                v = eval_formula(bool_src[idx].src, *ctx.step_env);
            }
            ctx.bool_vals[idx] = v;
            ctx.bool_done[idx] = 1;
        }
        return ctx.bool_vals[idx];
    }
};

namespace {

// ── node types ──────────────────────────────────────────────────────────────

using Impl = CompiledStepper::Impl;

struct NConst : NNode {
    u64 v;
    explicit NConst(u64 x) : v(x) {}
    u64 eval(Ctx&) const override { return v; }
};
struct NHuge : NNode {
    u64 eval(Ctx&) const override { throw Overflow{}; }
};
struct NBit : NNode {
    u64 eval(Ctx& c) const override { return c.bit; }
};
struct NSlot : NNode {
    std::size_t k;
    explicit NSlot(std::size_t i) : k(i) {}
    u64 eval(Ctx& c) const override { return c.slots[k]; }
};
struct NCached : NNode {
    const Impl* impl;
    int idx;
    NCached(const Impl* im, int i) : impl(im), idx(i) {}
    u64 eval(Ctx& c) const override { return impl->cached_num(c, idx); }
};
struct NBin : NNode {
    NK op;
    NPtr a, b;
    NBin(NK k, NPtr x, NPtr y) : op(k), a(std::move(x)), b(std::move(y)) {}
    u64 eval(Ctx& c) const override {
        u64 x = a->eval(c), y = b->eval(c);
        switch (op) {
            case NK::Add: return add_ck(x, y);
            case NK::Mul: return mul_ck(x, y);
            case NK::Monus: return x > y ? x - y : 0;
            case NK::Pair: {
                u64 s = add_ck(x, y);
                return add_ck(mul_ck(s, add_ck(s, 1)), mul_ck(2, y));
            }
            case NK::Exp: {
                if (y == 0) return 0;
                u64 blen = 64 - static_cast<u64>(__builtin_clzll(y));
                if (x >= blen) return y;
                return u64{1} << x;
            }
            default: throw Overflow{};
        }
    }
};

// A string operand: the raw state, a per-step cached value, or a term
// re-evaluated on every use (only when it depends on the bit variable).
struct SRef {
    enum class Kind { State, Cached, Naive } kind = Kind::State;
    const Impl* impl = nullptr;
    int idx = -1;
    StrTermPtr term;
    std::string bit_var;
    std::vector<std::pair<std::string, std::size_t>> scope;

    BitStr materialize(Ctx& c) const {
        Env e = *c.step_env;
        e.nums[bit_var] = Nat(c.bit);
        for (const auto& [name, slot] : scope) e.nums[name] = Nat(c.slots[slot]);
        return eval_str(term, e);
    }
    // use via callback to avoid copying cached values
    template <class F>
    auto with(Ctx& c, F&& f) const {
        switch (kind) {
            case Kind::State: return f(*c.state);
            case Kind::Cached: return f(impl->cached_str(c, idx));
            case Kind::Naive: {
                BitStr v = materialize(c);
                return f(v);
            }
        }
        return f(*c.state);
    }
};

struct NLen : NNode {
    SRef s;
    u64 eval(Ctx& c) const override {
        return s.with(c, [](const BitStr& v) { return static_cast<u64>(v.length()); });
    }
};
struct NVal : NNode {
    NPtr a;
    SRef s;
    u64 eval(Ctx& c) const override {
        u64 x = a->eval(c);
        Nat v = s.with(c, [&](const BitStr& str) { return val(Nat(x), str); });
        if (v > Nat(UINT64_MAX)) throw Overflow{};
        return static_cast<u64>(v);
    }
};
struct NNumOnes : NNode {
    NPtr a;
    SRef s;
    u64 eval(Ctx& c) const override {
        u64 x = a->eval(c);
        return s.with(c, [&](const BitStr& str) {
            if (Nat(x) >= Nat(str.length())) return static_cast<u64>(str.popcount());
            return static_cast<u64>(str.clipped(x).popcount());
        });
    }
};

struct BConst : BNode {
    bool v;
    explicit BConst(bool x) : v(x) {}
    bool eval(Ctx&) const override { return v; }
};
struct BCached : BNode {
    const Impl* impl;
    int idx;
    BCached(const Impl* im, int i) : impl(im), idx(i) {}
    bool eval(Ctx& c) const override { return impl->cached_bool(c, idx); }
};
struct BNumCmp : BNode {
    FK op;
    NPtr a, b;
    bool eval(Ctx& c) const override {
        u64 x = a->eval(c), y = b->eval(c);
        return op == FK::NumEq ? x == y : op == FK::NumLe ? x <= y : x < y;
    }
};
struct BMem : BNode {
    SRef s;
    NPtr idx;
    bool eval(Ctx& c) const override {
        u64 i = idx->eval(c);
        return s.with(c, [&](const BitStr& v) { return v.test(i); });
    }
};
struct BNot : BNode {
    BPtr a;
    bool eval(Ctx& c) const override { return !a->eval(c); }
};
struct BBin : BNode {
    FK op;
    BPtr a, b;
    bool eval(Ctx& c) const override {
        switch (op) {
            case FK::And: return a->eval(c) && b->eval(c);
            case FK::Or: return a->eval(c) || b->eval(c);
            case FK::Imp: return !a->eval(c) || b->eval(c);
            default: return a->eval(c) == b->eval(c);
        }
    }
};
struct BNaive : BNode {
    FormulaPtr f;
    std::string bit_var;
    std::vector<std::pair<std::string, std::size_t>> scope;
    bool eval(Ctx& c) const override {
        Env e = *c.step_env;
        e.nums[bit_var] = Nat(c.bit);
        for (const auto& [name, slot] : scope) e.nums[name] = Nat(c.slots[slot]);
        return eval_formula(f, e);
    }
};
struct BLoop : BNode {
    bool exists = true;
    bool strict = false;
    std::size_t slot = 0;
    u64 budget = 0;
    NPtr bound;
    BPtr body;
    bool eval(Ctx& c) const override {
        u64 b = bound->eval(c);
        if (strict && b == 0) return !exists;
        u64 last = strict ? b - 1 : b;
        if (last >= budget) throw ResourceLimit("number quantifier range exceeds budget");
        for (u64 j = 0; j <= last; ++j) {
            c.slots[slot] = j;
            if (body->eval(c) == exists) return exists;
        }
        return !exists;
    }
};
// (exists j <= t)(L = C*j + O && rest): solve for j instead of scanning
struct BSolved : BNode {
    bool strict = false;
    std::size_t slot = 0;
    u64 budget = 0;
    NPtr bound, lhs, coeff, off;
    BPtr rest;
    BPtr loop;  // fallback when the coefficient evaluates to zero
    bool eval(Ctx& c) const override {
        u64 b = bound->eval(c);
        // keep the reference evaluator's hang guard, for identical errors
        if (strict && b == 0) return false;
        if ((strict ? b - 1 : b) >= budget)
            throw ResourceLimit("number quantifier range exceeds budget");
        u64 k = coeff->eval(c);
        if (k == 0) return loop->eval(c);
        u64 l = lhs->eval(c), o = off->eval(c);
        if (l < o) return false;
        u64 d = l - o;
        if (d % k != 0) return false;
        u64 j = d / k;
        if (strict ? j >= b : j > b) return false;
        c.slots[slot] = j;
        return rest->eval(c);
    }
};

// ── compiler ────────────────────────────────────────────────────────────────

struct Compiler {
    Impl* impl;
    std::vector<std::pair<std::string, std::size_t>> scope;  // quantified num vars

    bool in_scope(const SortedVar& v) const {
        if (v.sort == Sort::Num) {
            if (v.name == impl->bit_var) return true;
            for (const auto& [name, slot] : scope)
                if (name == v.name) return true;
        }
        return false;
    }
    template <class Ptr>
    bool hoistable(const Ptr& node) const {
        for (const auto& v : free_vars(node))
            if (in_scope(v)) return false;
        return true;
    }
    bool mentions(const NumTermPtr& t, const std::string& var) const {
        return free_vars(t).count({var, Sort::Num}) != 0;
    }

    SRef sref(const StrTermPtr& s) {
        SRef r;
        if (s->kind == SK::Var && s->var == impl->state_var) {
            r.kind = SRef::Kind::State;
            return r;
        }
        if (hoistable(s)) {
            r.kind = SRef::Kind::Cached;
            r.impl = impl;
            auto [it, fresh] =
                impl->str_index.emplace(s.get(), static_cast<int>(impl->str_src.size()));
            if (fresh) impl->str_src.push_back(s);
            r.idx = it->second;
            return r;
        }
        r.kind = SRef::Kind::Naive;
        r.term = s;
        r.bit_var = impl->bit_var;
        r.scope = scope;
        return r;
    }

    NPtr num(const NumTermPtr& t) {
        if (t->kind == NK::Const) {
            if (t->value <= Nat(UINT64_MAX)) return std::make_unique<NConst>(static_cast<u64>(t->value));
            return std::make_unique<NHuge>();
        }
        if (t->kind == NK::Var) {
            // innermost binding wins, and any binder shadows the bit variable
            for (auto it = scope.rbegin(); it != scope.rend(); ++it)
                if (it->first == t->var) return std::make_unique<NSlot>(it->second);
            if (t->var == impl->bit_var) return std::make_unique<NBit>();
            // falls through to the hoist below (environment variable)
        }
        if (hoistable(t)) {
            auto [it, fresh] =
                impl->num_index.emplace(t.get(), static_cast<int>(impl->num_src.size()));
            if (fresh) impl->num_src.push_back(t);
            return std::make_unique<NCached>(impl, it->second);
        }
        switch (t->kind) {
            case NK::Add:
            case NK::Mul:
            case NK::Monus:
            case NK::Pair:
            case NK::Exp:
                return std::make_unique<NBin>(t->kind, num(t->a), num(t->b));
            case NK::Len: {
                auto n = std::make_unique<NLen>();
                n->s = sref(t->str);
                return n;
            }
            case NK::Val: {
                auto n = std::make_unique<NVal>();
                n->a = num(t->a);
                n->s = sref(t->str);
                return n;
            }
            case NK::NumOnes: {
                auto n = std::make_unique<NNumOnes>();
                n->a = num(t->a);
                n->s = sref(t->str);
                return n;
            }
            default:
                throw Error("compile: unexpected number term");
        }
    }

    static void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
        if (f->kind == FK::And) {
            flatten_and(f->f, out);
            flatten_and(f->g, out);
        } else {
            out.push_back(f);
        }
    }

    // t = coeff*var + off with coeff, off free of var
    std::optional<std::pair<NumTermPtr, NumTermPtr>> linear(const NumTermPtr& t,
                                                            const std::string& var) const {
        if (t->kind == NK::Var && t->var == var)
            return std::make_pair(num_const(1), num_const(0));
        if (!mentions(t, var)) return std::make_pair(num_const(0), t);
        if (t->kind == NK::Add) {
            auto la = linear(t->a, var), lb = linear(t->b, var);
            if (!la || !lb) return std::nullopt;
            return std::make_pair(num_add(la->first, lb->first), num_add(la->second, lb->second));
        }
        if (t->kind == NK::Mul) {
            if (!mentions(t->a, var)) {
                auto lb = linear(t->b, var);
                if (!lb) return std::nullopt;
                return std::make_pair(num_mul(t->a, lb->first), num_mul(t->a, lb->second));
            }
            if (!mentions(t->b, var)) {
                auto la = linear(t->a, var);
                if (!la) return std::nullopt;
                return std::make_pair(num_mul(t->b, la->first), num_mul(t->b, la->second));
            }
        }
        return std::nullopt;
    }

    BPtr naive(const FormulaPtr& f) {
        auto n = std::make_unique<BNaive>();
        n->f = f;
        n->bit_var = impl->bit_var;
        n->scope = scope;
        return n;
    }

    BPtr loop_node(const FormulaPtr& f, bool exists, std::size_t slot) {
        auto n = std::make_unique<BLoop>();
        n->exists = exists;
        n->strict = f->quant->strict;
        n->slot = slot;
        n->budget = impl->base.limits.num_candidates;
        n->bound = num(f->quant->bound);
        n->body = formula(f->f);
        return n;
    }

    BPtr formula(const FormulaPtr& f, bool allow_hoist = true) {
        if (f->kind == FK::BoolConst) return std::make_unique<BConst>(f->bval);
        if (allow_hoist && hoistable(f)) {
            auto it = impl->bool_index.find(f.get());
            if (it == impl->bool_index.end()) {
                int idx = static_cast<int>(impl->bool_src.size());
                impl->bool_src.push_back({f, nullptr});
                impl->bool_index.emplace(f.get(), idx);
                // the entry's free variables exclude the quantifier scope, so
                // compile it as a top-level formula of its own
                auto saved = std::move(scope);
                scope.clear();
                BPtr code = formula(f, false);
                scope = std::move(saved);
                impl->bool_src[idx].code = std::move(code);
                return std::make_unique<BCached>(impl, idx);
            }
            return std::make_unique<BCached>(impl, it->second);
        }
        switch (f->kind) {
            case FK::NumEq:
            case FK::NumLe:
            case FK::NumLt: {
                auto n = std::make_unique<BNumCmp>();
                n->op = f->kind;
                n->a = num(f->na);
                n->b = num(f->nb);
                return n;
            }
            case FK::Mem: {
                auto n = std::make_unique<BMem>();
                n->s = sref(f->sa);
                n->idx = num(f->nb);
                return n;
            }
            case FK::Not: {
                auto n = std::make_unique<BNot>();
                n->a = formula(f->f);
                return n;
            }
            case FK::And:
            case FK::Or:
            case FK::Imp:
            case FK::Iff: {
                auto n = std::make_unique<BBin>();
                n->op = f->kind;
                n->a = formula(f->f);
                n->b = formula(f->g);
                return n;
            }
            case FK::ExistsNum:
                return exists_num(f);
            case FK::ForallNum: {
                scope.emplace_back(f->quant->var, alloc_slot());
                auto n = loop_node(f, false, scope.back().second);
                scope.pop_back();
                return n;
            }
            default:
                // string quantifiers, fixed-point atoms, string comparisons
                // that depend on the bit variable: reference evaluator
                return naive(f);
        }
    }

    std::size_t alloc_slot() {
        std::size_t s = impl->nslots++;
        return s;
    }

    BPtr exists_num(const FormulaPtr& f) {
        const std::string& j = f->quant->var;
        std::size_t slot = alloc_slot();

        std::vector<FormulaPtr> conjs;
        flatten_and(f->f, conjs);
        for (std::size_t k = 0; k < conjs.size(); ++k) {
            if (conjs[k]->kind != FK::NumEq) continue;
            for (int side = 0; side < 2; ++side) {
                NumTermPtr l = side == 0 ? conjs[k]->na : conjs[k]->nb;
                NumTermPtr r = side == 0 ? conjs[k]->nb : conjs[k]->na;
                if (mentions(l, j) || !mentions(r, j)) continue;
                auto lin = linear(r, j);
                if (!lin) continue;
                auto n = std::make_unique<BSolved>();
                n->strict = f->quant->strict;
                n->slot = slot;
                n->budget = impl->base.limits.num_candidates;
                n->bound = num(f->quant->bound);
                n->lhs = num(l);
                n->coeff = num(lin->first);
                n->off = num(lin->second);
                scope.emplace_back(j, slot);
                std::vector<FormulaPtr> rest;
                for (std::size_t m = 0; m < conjs.size(); ++m)
                    if (m != k) rest.push_back(conjs[m]);
                n->rest = formula(f_and_all(rest));
                auto lp = loop_node(f, true, slot);
                scope.pop_back();
                n->loop = std::move(lp);
                return n;
            }
        }
        scope.emplace_back(j, slot);
        auto n = loop_node(f, true, slot);
        scope.pop_back();
        return n;
    }
};

}  // namespace

CompiledStepper::CompiledStepper(FormulaPtr phi, std::string bit_var, std::string state_var,
                                 std::size_t width, Env base_env)
    : impl_(std::make_unique<Impl>()) {
    impl_->phi = std::move(phi);
    impl_->bit_var = std::move(bit_var);
    impl_->state_var = std::move(state_var);
    impl_->width = width;
    impl_->base = std::move(base_env);
    impl_->base.strs.erase(impl_->state_var);
    Compiler c{impl_.get(), {}};
    impl_->root = c.formula(impl_->phi);
}

CompiledStepper::~CompiledStepper() = default;
CompiledStepper::CompiledStepper(CompiledStepper&&) noexcept = default;
CompiledStepper& CompiledStepper::operator=(CompiledStepper&&) noexcept = default;

BitStr CompiledStepper::step(const BitStr& state) const {
    const Impl& im = *impl_;
    BitStr cur = state.clipped(im.width);
    Env env = im.base;
    env.strs[im.state_var] = cur;

    Ctx ctx;
    ctx.step_env = &env;
    ctx.state = &cur;
    ctx.slots.assign(im.nslots, 0);
    ctx.str_done.assign(im.str_src.size(), 0);
    ctx.str_vals.resize(im.str_src.size());
    ctx.num_done.assign(im.num_src.size(), 0);
    ctx.num_vals.resize(im.num_src.size());
    ctx.num_fits.assign(im.num_src.size(), 0);
    ctx.bool_done.assign(im.bool_src.size(), 0);
    ctx.bool_vals.assign(im.bool_src.size(), 0);

    BitStr next;
    for (std::size_t i = 0; i < im.width; ++i) {
        ctx.bit = i;
        bool v;
        try {
            v = im.root->eval(ctx);
        } catch (const Overflow&) {
            Env e = env;
            e.nums[im.bit_var] = Nat(i);
            v = eval_formula(im.phi, e);
        }
        if (v) next.set(i);
    }
    return next;
}

}  // namespace bid

#include "bid/ast.hpp"

#include <algorithm>

namespace bid {

namespace {

using NK = NumTerm::Kind;
using SK = StrTerm::Kind;
using FK = Formula::Kind;

NumTermPtr mk_num(NK k, Nat v, std::string var, NumTermPtr a, NumTermPtr b, StrTermPtr s) {
    auto t = std::make_shared<NumTerm>();
    t->kind = k;
    t->value = std::move(v);
    t->var = std::move(var);
    t->a = std::move(a);
    t->b = std::move(b);
    t->str = std::move(s);
    return t;
}

StrTermPtr mk_str(SK k, std::string var, BitStr lit, StrTermPtr s, StrTermPtr t2, NumTermPtr n) {
    auto t = std::make_shared<StrTerm>();
    t->kind = k;
    t->var = std::move(var);
    t->lit = std::move(lit);
    t->s = std::move(s);
    t->t = std::move(t2);
    t->n = std::move(n);
    return t;
}

std::shared_ptr<Formula> mk_f(FK k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

}  // namespace

NumTermPtr num_const(Nat v) { return mk_num(NK::Const, std::move(v), {}, nullptr, nullptr, nullptr); }
NumTermPtr num_var(const std::string& name) { return mk_num(NK::Var, 0, name, nullptr, nullptr, nullptr); }
NumTermPtr num_add(NumTermPtr a, NumTermPtr b) { return mk_num(NK::Add, 0, {}, std::move(a), std::move(b), nullptr); }
NumTermPtr num_mul(NumTermPtr a, NumTermPtr b) { return mk_num(NK::Mul, 0, {}, std::move(a), std::move(b), nullptr); }
NumTermPtr num_monus(NumTermPtr a, NumTermPtr b) { return mk_num(NK::Monus, 0, {}, std::move(a), std::move(b), nullptr); }
NumTermPtr num_pair(NumTermPtr a, NumTermPtr b) { return mk_num(NK::Pair, 0, {}, std::move(a), std::move(b), nullptr); }
NumTermPtr num_exp(NumTermPtr a, NumTermPtr b) { return mk_num(NK::Exp, 0, {}, std::move(a), std::move(b), nullptr); }
NumTermPtr num_len(StrTermPtr s) { return mk_num(NK::Len, 0, {}, nullptr, nullptr, std::move(s)); }
NumTermPtr num_val(NumTermPtr a, StrTermPtr s) { return mk_num(NK::Val, 0, {}, std::move(a), nullptr, std::move(s)); }
NumTermPtr num_numones(NumTermPtr a, StrTermPtr s) { return mk_num(NK::NumOnes, 0, {}, std::move(a), nullptr, std::move(s)); }

StrTermPtr str_var(const std::string& name) { return mk_str(SK::Var, name, {}, nullptr, nullptr, nullptr); }
StrTermPtr str_lit(BitStr v) { return mk_str(SK::Lit, {}, std::move(v), nullptr, nullptr, nullptr); }
StrTermPtr str_empty() { return str_lit(BitStr{}); }
StrTermPtr str_succ(StrTermPtr s) { return mk_str(SK::Succ, {}, {}, std::move(s), nullptr, nullptr); }
StrTermPtr str_pred(StrTermPtr s) { return mk_str(SK::Pred, {}, {}, std::move(s), nullptr, nullptr); }
StrTermPtr str_add(StrTermPtr a, StrTermPtr b) { return mk_str(SK::Add, {}, {}, std::move(a), std::move(b), nullptr); }
StrTermPtr str_monus(StrTermPtr a, StrTermPtr b) { return mk_str(SK::Monus, {}, {}, std::move(a), std::move(b), nullptr); }
StrTermPtr str_one(NumTermPtr n) { return mk_str(SK::One, {}, {}, nullptr, nullptr, std::move(n)); }
StrTermPtr str_last(NumTermPtr n, StrTermPtr s) { return mk_str(SK::Last, {}, {}, std::move(s), nullptr, std::move(n)); }
StrTermPtr str_complement(StrTermPtr s, NumTermPtr n) { return mk_str(SK::Complement, {}, {}, std::move(s), nullptr, std::move(n)); }
StrTermPtr str_component(StrTermPtr s, NumTermPtr n) { return mk_str(SK::Component, {}, {}, std::move(s), nullptr, std::move(n)); }
StrTermPtr str_pair_term(StrTermPtr a, StrTermPtr b) { return mk_str(SK::StrPair, {}, {}, std::move(a), std::move(b), nullptr); }

FormulaPtr f_bool(bool v) {
    auto f = mk_f(FK::BoolConst);
    f->bval = v;
    return f;
}

namespace {
FormulaPtr num_cmp(FK k, NumTermPtr a, NumTermPtr b) {
    auto f = mk_f(k);
    f->na = std::move(a);
    f->nb = std::move(b);
    return f;
}
FormulaPtr str_cmp(FK k, StrTermPtr a, StrTermPtr b) {
    auto f = mk_f(k);
    f->sa = std::move(a);
    f->sb = std::move(b);
    return f;
}
FormulaPtr conn(FK k, FormulaPtr a, FormulaPtr b) {
    auto f = mk_f(k);
    f->f = std::move(a);
    f->g = std::move(b);
    return f;
}
FormulaPtr quantified(FK k, const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body) {
    auto f = mk_f(k);
    f->quant = Quantifier{v, strict, std::move(bound)};
    f->f = std::move(body);
    return f;
}
}  // namespace

FormulaPtr f_num_eq(NumTermPtr a, NumTermPtr b) { return num_cmp(FK::NumEq, std::move(a), std::move(b)); }
FormulaPtr f_num_le(NumTermPtr a, NumTermPtr b) { return num_cmp(FK::NumLe, std::move(a), std::move(b)); }
FormulaPtr f_num_lt(NumTermPtr a, NumTermPtr b) { return num_cmp(FK::NumLt, std::move(a), std::move(b)); }
FormulaPtr f_str_eq(StrTermPtr a, StrTermPtr b) { return str_cmp(FK::StrEq, std::move(a), std::move(b)); }
FormulaPtr f_str_le(StrTermPtr a, StrTermPtr b) { return str_cmp(FK::StrLe, std::move(a), std::move(b)); }
FormulaPtr f_str_lt(StrTermPtr a, StrTermPtr b) { return str_cmp(FK::StrLt, std::move(a), std::move(b)); }

FormulaPtr f_mem(StrTermPtr s, NumTermPtr i) {
    auto f = mk_f(FK::Mem);
    f->sa = std::move(s);
    f->nb = std::move(i);
    return f;
}

FormulaPtr f_not(FormulaPtr x) { return conn(FK::Not, std::move(x), nullptr); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return conn(FK::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return conn(FK::Or, std::move(a), std::move(b)); }
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b) { return conn(FK::Imp, std::move(a), std::move(b)); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return conn(FK::Iff, std::move(a), std::move(b)); }

FormulaPtr f_exists_num(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body) {
    return quantified(FK::ExistsNum, v, strict, std::move(bound), std::move(body));
}
FormulaPtr f_forall_num(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body) {
    return quantified(FK::ForallNum, v, strict, std::move(bound), std::move(body));
}
FormulaPtr f_exists_str(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body) {
    return quantified(FK::ExistsStr, v, strict, std::move(bound), std::move(body));
}
FormulaPtr f_forall_str(const std::string& v, bool strict, NumTermPtr bound, FormulaPtr body) {
    return quantified(FK::ForallStr, v, strict, std::move(bound), std::move(body));
}

FormulaPtr f_fp(FpAtom atom) {
    auto f = mk_f(FK::Fp);
    f->fp = std::move(atom);
    return f;
}

FormulaPtr f_and_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return f_bool(true);
    FormulaPtr r = fs.front();
    for (std::size_t k = 1; k < fs.size(); ++k) r = f_and(r, fs[k]);
    return r;
}

FormulaPtr f_or_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return f_bool(false);
    FormulaPtr r = fs.front();
    for (std::size_t k = 1; k < fs.size(); ++k) r = f_or(r, fs[k]);
    return r;
}

// ── struct_eq ───────────────────────────────────────────────────────────────

bool struct_eq(const NumTermPtr& a, const NumTermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NK::Const: return a->value == b->value;
        case NK::Var: return a->var == b->var;
        case NK::Add:
        case NK::Mul:
        case NK::Monus:
        case NK::Pair:
        case NK::Exp:
            return struct_eq(a->a, b->a) && struct_eq(a->b, b->b);
        case NK::Len: return struct_eq(a->str, b->str);
        case NK::Val:
        case NK::NumOnes:
            return struct_eq(a->a, b->a) && struct_eq(a->str, b->str);
    }
    return false;
}

bool struct_eq(const StrTermPtr& a, const StrTermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case SK::Var: return a->var == b->var;
        case SK::Lit: return a->lit == b->lit;
        case SK::Succ:
        case SK::Pred:
            return struct_eq(a->s, b->s);
        case SK::Add:
        case SK::Monus:
        case SK::StrPair:
            return struct_eq(a->s, b->s) && struct_eq(a->t, b->t);
        case SK::One: return struct_eq(a->n, b->n);
        case SK::Last:
        case SK::Complement:
        case SK::Component:
            return struct_eq(a->s, b->s) && struct_eq(a->n, b->n);
    }
    return false;
}

bool struct_eq(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FK::BoolConst: return a->bval == b->bval;
        case FK::NumEq:
        case FK::NumLe:
        case FK::NumLt:
            return struct_eq(a->na, b->na) && struct_eq(a->nb, b->nb);
        case FK::StrEq:
        case FK::StrLe:
        case FK::StrLt:
            return struct_eq(a->sa, b->sa) && struct_eq(a->sb, b->sb);
        case FK::Mem: return struct_eq(a->sa, b->sa) && struct_eq(a->nb, b->nb);
        case FK::Not: return struct_eq(a->f, b->f);
        case FK::And:
        case FK::Or:
        case FK::Imp:
        case FK::Iff:
            return struct_eq(a->f, b->f) && struct_eq(a->g, b->g);
        case FK::ExistsNum:
        case FK::ForallNum:
        case FK::ExistsStr:
        case FK::ForallStr:
            return a->quant->var == b->quant->var && a->quant->strict == b->quant->strict &&
                   struct_eq(a->quant->bound, b->quant->bound) && struct_eq(a->f, b->f);
        case FK::Fp: {
            const auto& x = *a->fp;
            const auto& y = *b->fp;
            if (x.name != y.name) return false;
            if (!struct_eq(x.bit, y.bit) || !struct_eq(x.width, y.width) || !struct_eq(x.count, y.count))
                return false;
            if (!x.start != !y.start) return false;
            return !x.start || struct_eq(x.start, y.start);
        }
    }
    return false;
}

// ── free_vars ───────────────────────────────────────────────────────────────

namespace {

void fv(const NumTermPtr& t, std::set<SortedVar>& out);
void fv(const StrTermPtr& t, std::set<SortedVar>& out);

void fv(const NumTermPtr& t, std::set<SortedVar>& out) {
    if (!t) return;
    if (t->kind == NK::Var) out.insert({t->var, Sort::Num});
    fv(t->a, out);
    fv(t->b, out);
    fv(t->str, out);
}

void fv(const StrTermPtr& t, std::set<SortedVar>& out) {
    if (!t) return;
    if (t->kind == SK::Var) out.insert({t->var, Sort::Str});
    fv(t->s, out);
    fv(t->t, out);
    fv(t->n, out);
}

void fv(const FormulaPtr& f, std::set<SortedVar>& out) {
    if (!f) return;
    switch (f->kind) {
        case FK::BoolConst:
            return;
        case FK::NumEq:
        case FK::NumLe:
        case FK::NumLt:
            fv(f->na, out);
            fv(f->nb, out);
            return;
        case FK::StrEq:
        case FK::StrLe:
        case FK::StrLt:
            fv(f->sa, out);
            fv(f->sb, out);
            return;
        case FK::Mem:
            fv(f->sa, out);
            fv(f->nb, out);
            return;
        case FK::Not:
            fv(f->f, out);
            return;
        case FK::And:
        case FK::Or:
        case FK::Imp:
        case FK::Iff:
            fv(f->f, out);
            fv(f->g, out);
            return;
        case FK::ExistsNum:
        case FK::ForallNum:
        case FK::ExistsStr:
        case FK::ForallStr: {
            fv(f->quant->bound, out);
            std::set<SortedVar> inner;
            fv(f->f, inner);
            Sort s = (f->kind == FK::ExistsNum || f->kind == FK::ForallNum) ? Sort::Num : Sort::Str;
            inner.erase({f->quant->var, s});
            out.insert(inner.begin(), inner.end());
            return;
        }
        case FK::Fp:
            fv(f->fp->bit, out);
            fv(f->fp->width, out);
            fv(f->fp->count, out);
            if (f->fp->start) fv(f->fp->start, out);
            return;
    }
}

}  // namespace

std::set<SortedVar> free_vars(const FormulaPtr& f) {
    std::set<SortedVar> out;
    fv(f, out);
    return out;
}
std::set<SortedVar> free_vars(const NumTermPtr& t) {
    std::set<SortedVar> out;
    fv(t, out);
    return out;
}
std::set<SortedVar> free_vars(const StrTermPtr& t) {
    std::set<SortedVar> out;
    fv(t, out);
    return out;
}

// ── substitute ──────────────────────────────────────────────────────────────

namespace {

const NumTermPtr* lookup_num(const Substitution& sub, const std::string& v) {
    for (const auto& [name, t] : sub.nums)
        if (name == v) return &t;
    return nullptr;
}
const StrTermPtr* lookup_str(const Substitution& sub, const std::string& v) {
    for (const auto& [name, t] : sub.strs)
        if (name == v) return &t;
    return nullptr;
}

bool mentions(const Substitution& sub, const SortedVar& v) {
    for (const auto& [name, t] : sub.nums)
        if (free_vars(t).count(v)) return true;
    for (const auto& [name, t] : sub.strs)
        if (free_vars(t).count(v)) return true;
    return false;
}

}  // namespace

NumTermPtr substitute(const NumTermPtr& t, const Substitution& sub) {
    if (!t) return t;
    switch (t->kind) {
        case NK::Const:
            return t;
        case NK::Var:
            if (const auto* r = lookup_num(sub, t->var)) return *r;
            return t;
        default: {
            auto a = substitute(t->a, sub);
            auto b = substitute(t->b, sub);
            auto s = substitute(t->str, sub);
            if (a == t->a && b == t->b && s == t->str) return t;
            auto r = std::make_shared<NumTerm>(*t);
            r->a = a;
            r->b = b;
            r->str = s;
            return r;
        }
    }
}

StrTermPtr substitute(const StrTermPtr& t, const Substitution& sub) {
    if (!t) return t;
    switch (t->kind) {
        case SK::Lit:
            return t;
        case SK::Var:
            if (const auto* r = lookup_str(sub, t->var)) return *r;
            return t;
        default: {
            auto s = substitute(t->s, sub);
            auto t2 = substitute(t->t, sub);
            auto n = substitute(t->n, sub);
            if (s == t->s && t2 == t->t && n == t->n) return t;
            auto r = std::make_shared<StrTerm>(*t);
            r->s = s;
            r->t = t2;
            r->n = n;
            return r;
        }
    }
}

FormulaPtr substitute(const FormulaPtr& f, const Substitution& sub) {
    if (!f) return f;
    switch (f->kind) {
        case FK::BoolConst:
            return f;
        case FK::NumEq:
        case FK::NumLe:
        case FK::NumLt: {
            auto r = std::make_shared<Formula>(*f);
            r->na = substitute(f->na, sub);
            r->nb = substitute(f->nb, sub);
            return r;
        }
        case FK::StrEq:
        case FK::StrLe:
        case FK::StrLt: {
            auto r = std::make_shared<Formula>(*f);
            r->sa = substitute(f->sa, sub);
            r->sb = substitute(f->sb, sub);
            return r;
        }
        case FK::Mem: {
            auto r = std::make_shared<Formula>(*f);
            r->sa = substitute(f->sa, sub);
            r->nb = substitute(f->nb, sub);
            return r;
        }
        case FK::Not: {
            auto r = std::make_shared<Formula>(*f);
            r->f = substitute(f->f, sub);
            return r;
        }
        case FK::And:
        case FK::Or:
        case FK::Imp:
        case FK::Iff: {
            auto r = std::make_shared<Formula>(*f);
            r->f = substitute(f->f, sub);
            r->g = substitute(f->g, sub);
            return r;
        }
        case FK::ExistsNum:
        case FK::ForallNum:
        case FK::ExistsStr:
        case FK::ForallStr: {
            Sort s = (f->kind == FK::ExistsNum || f->kind == FK::ForallNum) ? Sort::Num : Sort::Str;
            SortedVar bound{f->quant->var, s};
            // Drop any mapping shadowed by the binder, then refuse capture
            // rather than alpha-rename: builders never need it and silent
            // renaming would surprise round-trip printing.
            Substitution inner;
            for (const auto& p : sub.nums)
                if (!(s == Sort::Num && p.first == bound.name)) inner.nums.push_back(p);
            for (const auto& p : sub.strs)
                if (!(s == Sort::Str && p.first == bound.name)) inner.strs.push_back(p);
            if ((inner.nums.size() || inner.strs.size()) && mentions(inner, bound)) {
                std::set<SortedVar> body_free;
                fv(f->f, body_free);
                bool relevant = false;
                for (const auto& p : inner.nums)
                    if (body_free.count({p.first, Sort::Num})) relevant = true;
                for (const auto& p : inner.strs)
                    if (body_free.count({p.first, Sort::Str})) relevant = true;
                if (relevant) throw Error("substitution would capture bound variable " + bound.name);
            }
            auto r = std::make_shared<Formula>(*f);
            r->quant->bound = substitute(f->quant->bound, sub);
            r->f = substitute(f->f, inner);
            return r;
        }
        case FK::Fp: {
            auto r = std::make_shared<Formula>(*f);
            r->fp->bit = substitute(f->fp->bit, sub);
            r->fp->width = substitute(f->fp->width, sub);
            r->fp->count = substitute(f->fp->count, sub);
            if (f->fp->start) r->fp->start = substitute(f->fp->start, sub);
            return r;
        }
    }
    return f;
}

}  // namespace bid

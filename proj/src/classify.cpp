#include "bid/classify.hpp"

namespace bid {

FormulaClass FormulaClass::dual() const {
    if (kind == Kind::Unbounded) return *this;
    FormulaClass d = *this;
    d.kind = kind == Kind::Sigma ? Kind::Pi : Kind::Sigma;
    return d;
}

bool FormulaClass::operator==(const FormulaClass& o) const {
    if (kind == Kind::Unbounded || o.kind == Kind::Unbounded)
        return kind == o.kind;
    if (level != o.level || in_dual != o.in_dual) return false;
    return in_dual || kind == o.kind;  // in both classes -> tag is immaterial
}

std::string FormulaClass::to_string() const {
    if (kind == Kind::Unbounded) return "Unbounded";
    const char* tag = (in_dual || kind == Kind::Sigma) ? "SigmaB" : "PiB";
    return std::string(tag) + "(" + std::to_string(level) + ")";
}

namespace {

using FK = Formula::Kind;

// Internal descriptor: Delta means "in both classes at this level".
enum class Pol { Delta, Sigma, Pi };
struct Desc {
    unsigned level = 0;
    Pol pol = Pol::Delta;
};

// And/Or have the same join: each class is closed under both connectives,
// and a genuine Sigma/Pi mix lands one level up (in both classes there).
Desc join(Desc a, Desc b) {
    if (a.level != b.level) return a.level > b.level ? a : b;
    if (a.pol == Pol::Delta) return b;
    if (b.pol == Pol::Delta) return a;
    if (a.pol == b.pol) return a;
    return {a.level + 1, Pol::Delta};
}

Desc exists_str(Desc d) {
    switch (d.pol) {
        case Pol::Sigma: return {d.level, Pol::Sigma};
        case Pol::Delta: return {d.level < 1 ? 1 : d.level, Pol::Sigma};
        case Pol::Pi: return {d.level + 1, Pol::Sigma};
    }
    return d;
}

Desc forall_str(Desc d) {
    switch (d.pol) {
        case Pol::Pi: return {d.level, Pol::Pi};
        case Pol::Delta: return {d.level < 1 ? 1 : d.level, Pol::Pi};
        case Pol::Sigma: return {d.level + 1, Pol::Pi};
    }
    return d;
}

// neg: the number of enclosing negations is odd (negation normal form is
// computed on the fly rather than materialized).
Desc desc(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
        case FK::BoolConst:
        case FK::NumEq:
        case FK::NumLe:
        case FK::NumLt:
        case FK::StrEq:
        case FK::StrLe:
        case FK::StrLt:
        case FK::Mem:
        case FK::Fp:
            return {0, Pol::Delta};
        case FK::Not:
            return desc(f->f, !neg);
        case FK::And:
        case FK::Or:
            return join(desc(f->f, neg), desc(f->g, neg));
        case FK::Imp:
            // a -> b is !a || b; negated it is a && !b — same join either way
            return join(desc(f->f, !neg), desc(f->g, neg));
        case FK::Iff:
            // both polarities of both sides appear in the NNF expansion
            return join(join(desc(f->f, false), desc(f->f, true)),
                        join(desc(f->g, false), desc(f->g, true)));
        case FK::ExistsNum:
        case FK::ForallNum:
            return desc(f->f, neg);
        case FK::ExistsStr:
            return neg ? forall_str(desc(f->f, neg)) : exists_str(desc(f->f, neg));
        case FK::ForallStr:
            return neg ? exists_str(desc(f->f, neg)) : forall_str(desc(f->f, neg));
    }
    return {0, Pol::Delta};
}

}  // namespace

FormulaClass classify(const FormulaPtr& f) {
    Desc d = desc(f, false);
    FormulaClass c;
    c.level = d.level;
    c.in_dual = d.pol == Pol::Delta || d.level == 0;
    c.kind = d.pol == Pol::Pi ? FormulaClass::Kind::Pi : FormulaClass::Kind::Sigma;
    return c;
}

namespace {

std::optional<BoundViolation> cbi(const FormulaPtr& f) {
    if (!f) return std::nullopt;
    switch (f->kind) {
        case FK::ExistsNum:
        case FK::ForallNum:
        case FK::ExistsStr:
        case FK::ForallStr: {
            Sort s = (f->kind == FK::ExistsNum || f->kind == FK::ForallNum) ? Sort::Num : Sort::Str;
            if (free_vars(f->quant->bound).count({f->quant->var, s}))
                return BoundViolation{f->quant->var, f->span};
            return cbi(f->f);
        }
        case FK::Not:
            return cbi(f->f);
        case FK::And:
        case FK::Or:
        case FK::Imp:
        case FK::Iff: {
            if (auto v = cbi(f->f)) return v;
            return cbi(f->g);
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

std::optional<BoundViolation> check_bound_independence(const FormulaPtr& f) {
    return cbi(f);
}

}  // namespace bid

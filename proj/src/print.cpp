#include "bid/print.hpp"

#include <sstream>

namespace bid {

namespace {

using NK = NumTerm::Kind;
using SK = StrTerm::Kind;
using FK = Formula::Kind;

// Term precedence: 1 = additive (+, - both left-assoc), 2 = multiplicative,
// 3 = atomic. A child is parenthesized when its level is below the context.

void pn(std::ostream& os, const NumTermPtr& t, int ctx);
void ps(std::ostream& os, const StrTermPtr& t, int ctx);

void pn(std::ostream& os, const NumTermPtr& t, int ctx) {
    auto paren = [&](int level, auto body) {
        if (level < ctx) {
            os << '(';
            body();
            os << ')';
        } else {
            body();
        }
    };
    switch (t->kind) {
        case NK::Const:
            os << t->value;
            return;
        case NK::Var:
            os << t->var;
            return;
        case NK::Add:
            paren(1, [&] { pn(os, t->a, 1); os << " + "; pn(os, t->b, 2); });
            return;
        case NK::Monus:
            paren(1, [&] { pn(os, t->a, 1); os << " - "; pn(os, t->b, 2); });
            return;
        case NK::Mul:
            paren(2, [&] { pn(os, t->a, 2); os << " * "; pn(os, t->b, 3); });
            return;
        case NK::Pair:
            os << '<';
            pn(os, t->a, 1);
            os << ", ";
            pn(os, t->b, 1);
            os << '>';
            return;
        case NK::Exp:
            os << "exp(";
            pn(os, t->a, 1);
            os << ", ";
            pn(os, t->b, 1);
            os << ')';
            return;
        case NK::Len:
            os << '|';
            ps(os, t->str, 1);
            os << '|';
            return;
        case NK::Val:
            os << "val(";
            pn(os, t->a, 1);
            os << ", ";
            ps(os, t->str, 1);
            os << ')';
            return;
        case NK::NumOnes:
            os << "numones(";
            pn(os, t->a, 1);
            os << ", ";
            ps(os, t->str, 1);
            os << ')';
            return;
    }
}

void call1s(std::ostream& os, const char* name, const StrTermPtr& s) {
    os << name << '(';
    ps(os, s, 1);
    os << ')';
}

void ps(std::ostream& os, const StrTermPtr& t, int ctx) {
    auto paren = [&](int level, auto body) {
        if (level < ctx) {
            os << '(';
            body();
            os << ')';
        } else {
            body();
        }
    };
    switch (t->kind) {
        case SK::Var:
            os << t->var;
            return;
        case SK::Lit:
            os << t->lit.to_literal();
            return;
        case SK::Add:
            paren(1, [&] { ps(os, t->s, 1); os << " + "; ps(os, t->t, 2); });
            return;
        case SK::Monus:
            paren(1, [&] { ps(os, t->s, 1); os << " - "; ps(os, t->t, 2); });
            return;
        case SK::Succ:
            call1s(os, "S", t->s);
            return;
        case SK::Pred:
            call1s(os, "P", t->s);
            return;
        case SK::One:
            os << "One(";
            pn(os, t->n, 1);
            os << ')';
            return;
        case SK::Last:
            os << "Last(";
            pn(os, t->n, 1);
            os << ", ";
            ps(os, t->s, 1);
            os << ')';
            return;
        case SK::Complement:
            os << "compl(";
            ps(os, t->s, 1);
            os << ", ";
            pn(os, t->n, 1);
            os << ')';
            return;
        case SK::Component:
            os << "comp(";
            ps(os, t->s, 1);
            os << ", ";
            pn(os, t->n, 1);
            os << ')';
            return;
        case SK::StrPair:
            os << "spair(";
            ps(os, t->s, 1);
            os << ", ";
            ps(os, t->t, 1);
            os << ')';
            return;
    }
}

// Formula precedence: 0 = quantifier (maximal scope), 1 = <->, 2 = ->,
// 3 = ||, 4 = &&, 5 = unary/atomic. <->, ||, && are left-assoc; -> is
// right-assoc.

void pf(std::ostream& os, const FormulaPtr& f, int ctx);

void pmem_subject(std::ostream& os, const StrTermPtr& s) {
    // additive subjects get parens so "X + Y(0)" can't be misread
    bool atom = s->kind != SK::Add && s->kind != SK::Monus;
    if (!atom) os << '(';
    ps(os, s, 1);
    if (!atom) os << ')';
}

void pf(std::ostream& os, const FormulaPtr& f, int ctx) {
    auto paren = [&](int level, auto body) {
        if (level < ctx) {
            os << '(';
            body();
            os << ')';
        } else {
            body();
        }
    };
    switch (f->kind) {
        case FK::BoolConst:
            os << (f->bval ? "true" : "false");
            return;
        case FK::NumEq:
            paren(5, [&] { pn(os, f->na, 1); os << " = "; pn(os, f->nb, 1); });
            return;
        case FK::NumLe:
            paren(5, [&] { pn(os, f->na, 1); os << " <= "; pn(os, f->nb, 1); });
            return;
        case FK::NumLt:
            paren(5, [&] { pn(os, f->na, 1); os << " < "; pn(os, f->nb, 1); });
            return;
        case FK::StrEq:
            paren(5, [&] { ps(os, f->sa, 1); os << " = "; ps(os, f->sb, 1); });
            return;
        case FK::StrLe:
            paren(5, [&] { ps(os, f->sa, 1); os << " <= "; ps(os, f->sb, 1); });
            return;
        case FK::StrLt:
            paren(5, [&] { ps(os, f->sa, 1); os << " < "; ps(os, f->sb, 1); });
            return;
        case FK::Mem:
            pmem_subject(os, f->sa);
            os << '(';
            pn(os, f->nb, 1);
            os << ')';
            return;
        case FK::Not:
            os << '!';
            pf(os, f->f, 6);
            return;
        case FK::And:
            paren(4, [&] { pf(os, f->f, 4); os << " && "; pf(os, f->g, 5); });
            return;
        case FK::Or:
            paren(3, [&] { pf(os, f->f, 3); os << " || "; pf(os, f->g, 4); });
            return;
        case FK::Imp:
            paren(2, [&] { pf(os, f->f, 3); os << " -> "; pf(os, f->g, 2); });
            return;
        case FK::Iff:
            paren(1, [&] { pf(os, f->f, 1); os << " <-> "; pf(os, f->g, 2); });
            return;
        case FK::ExistsNum:
        case FK::ForallNum:
        case FK::ExistsStr:
        case FK::ForallStr:
            paren(0, [&] {
                bool ex = f->kind == FK::ExistsNum || f->kind == FK::ExistsStr;
                os << '(' << (ex ? "exists " : "forall ") << f->quant->var
                   << (f->quant->strict ? " < " : " <= ");
                pn(os, f->quant->bound, 1);
                os << ") ";
                pf(os, f->f, 0);
            });
            return;
        case FK::Fp:
            os << "P[" << f->fp->name << "](";
            pn(os, f->fp->bit, 1);
            os << ", ";
            pn(os, f->fp->width, 1);
            os << ", ";
            ps(os, f->fp->count, 1);
            if (f->fp->start) {
                os << ", ";
                ps(os, f->fp->start, 1);
            }
            os << ')';
            return;
    }
}

}  // namespace

std::string pretty_print(const FormulaPtr& f) {
    std::ostringstream os;
    pf(os, f, 0);
    return os.str();
}

std::string pretty_print(const NumTermPtr& t) {
    std::ostringstream os;
    pn(os, t, 1);
    return os.str();
}

std::string pretty_print(const StrTermPtr& t) {
    std::ostringstream os;
    ps(os, t, 1);
    return os.str();
}

}  // namespace bid

#include "bid/parse.hpp"

#include <cctype>
#include <unordered_set>
#include <variant>

namespace bid {

namespace {

enum class Tok { Sym, Ident, Number, BitLit, Eof };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

const std::unordered_set<std::string> kReserved = {
    "exists", "forall", "def", "true", "false", "empty",
    "exp", "val", "numones", "S", "P", "One", "Last", "compl", "comp", "spair",
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    auto push = [&](Tok kind, std::size_t len) {
        out.push_back({kind, src.substr(i, len), {i, i + len, line, col}});
        advance(len);
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        // multi-character symbols first (longest match)
        auto starts = [&](const char* s) { return src.compare(i, std::char_traits<char>::length(s), s) == 0; };
        if (starts("<->")) { push(Tok::Sym, 3); continue; }
        if (starts("<=") || starts("->") || starts("&&") || starts("||") || starts(":=")) {
            push(Tok::Sym, 2);
            continue;
        }
        if (std::string("()[],<>=!+-*|").find(c) != std::string::npos) {
            push(Tok::Sym, 1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (c == '0' && i + 2 < src.size() + 1 && src.compare(i, 2, "0b") == 0 &&
                i + 2 < src.size() && (src[i + 2] == '0' || src[i + 2] == '1')) {
                std::size_t n = 2;
                while (i + n < src.size() && (src[i + n] == '0' || src[i + n] == '1')) ++n;
                push(Tok::BitLit, n);
                continue;
            }
            std::size_t n = 1;
            while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
            push(Tok::Number, n);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t n = 1;
            while (i + n < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_'))
                ++n;
            push(Tok::Ident, n);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", {i, i + 1, line, col});
    }
    out.push_back({Tok::Eof, "", {i, i, line, col}});
    return out;
}

using TermVariant = std::variant<NumTermPtr, StrTermPtr>;

bool is_num(const TermVariant& t) { return std::holds_alternative<NumTermPtr>(t); }

template <class NodePtr>
NodePtr with_span(NodePtr p, SourceSpan from, SourceSpan to) {
    // freshly built node; sole owner, so the const_cast is benign
    using Node = std::remove_const_t<typename NodePtr::element_type>;
    const_cast<Node*>(p.get())->span = SourceSpan{from.begin, to.end, from.line, from.column};
    return p;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    FormulaPtr formula_only() {
        auto f = formula();
        expect_eof();
        return f;
    }

    std::vector<Def> defs() {
        std::vector<Def> out;
        while (peek().kind != Tok::Eof) {
            SourceSpan start = peek().span;
            expect_ident("def");
            std::string name = ident();
            expect_sym("(");
            std::vector<SortedVar> params;
            if (!at_sym(")")) {
                for (;;) {
                    std::string v = ident();
                    params.push_back({v, var_sort(v)});
                    if (at_sym(",")) {
                        take();
                        continue;
                    }
                    break;
                }
            }
            expect_sym(")");
            expect_sym(":=");
            auto body = formula();
            out.push_back({name, std::move(params), body,
                           SourceSpan{start.begin, prev_end_, start.line, start.column}});
        }
        return out;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t prev_end_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = pos_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }
    Token take() {
        Token t = peek();
        if (pos_ + 1 < toks_.size()) ++pos_;
        prev_end_ = t.span.end;
        return t;
    }
    bool at_sym(const std::string& s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool at_ident(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }
    void expect_sym(const std::string& s) {
        if (!at_sym(s)) throw ParseError("expected '" + s + "', got '" + peek().text + "'", peek().span, s);
        take();
    }
    void expect_ident(const std::string& s) {
        if (!at_ident(s)) throw ParseError("expected '" + s + "', got '" + peek().text + "'", peek().span, s);
        take();
    }
    void expect_eof() {
        if (peek().kind != Tok::Eof)
            throw ParseError("unexpected trailing input '" + peek().text + "'", peek().span, "end of input");
    }
    std::string ident() {
        if (peek().kind != Tok::Ident)
            throw ParseError("expected identifier, got '" + peek().text + "'", peek().span, "identifier");
        if (kReserved.count(peek().text))
            throw ParseError("'" + peek().text + "' is reserved", peek().span, "identifier");
        return take().text;
    }

    static Sort var_sort(const std::string& name) {
        return std::isupper(static_cast<unsigned char>(name[0])) ? Sort::Str : Sort::Num;
    }

    [[noreturn]] void sort_error(const char* wanted, SourceSpan sp) {
        throw SortError(std::string("expected a ") + wanted + " term here", sp);
    }

    NumTermPtr num_term() {
        SourceSpan sp = peek().span;
        auto t = term();
        if (!is_num(t)) sort_error("number", sp);
        return std::get<NumTermPtr>(t);
    }
    StrTermPtr str_term() {
        SourceSpan sp = peek().span;
        auto t = term();
        if (is_num(t)) sort_error("string", sp);
        return std::get<StrTermPtr>(t);
    }

    // term := mul (('+' | '-') mul)*  — both operands must share a sort
    TermVariant term() {
        SourceSpan start = peek().span;
        TermVariant acc = mul_term();
        while (at_sym("+") || at_sym("-")) {
            bool add = peek().text == "+";
            SourceSpan opsp = take().span;
            TermVariant rhs = mul_term();
            if (is_num(acc) != is_num(rhs)) sort_error(is_num(acc) ? "number" : "string", opsp);
            if (is_num(acc)) {
                auto n = add ? num_add(std::get<NumTermPtr>(acc), std::get<NumTermPtr>(rhs))
                             : num_monus(std::get<NumTermPtr>(acc), std::get<NumTermPtr>(rhs));
                acc = with_span(n, start, prev_span());
            } else {
                auto s = add ? str_add(std::get<StrTermPtr>(acc), std::get<StrTermPtr>(rhs))
                             : str_monus(std::get<StrTermPtr>(acc), std::get<StrTermPtr>(rhs));
                acc = with_span(s, start, prev_span());
            }
        }
        return acc;
    }

    TermVariant mul_term() {
        SourceSpan start = peek().span;
        TermVariant acc = primary();
        while (at_sym("*")) {
            SourceSpan opsp = take().span;
            TermVariant rhs = primary();
            if (!is_num(acc) || !is_num(rhs)) sort_error("number", opsp);
            acc = with_span(num_mul(std::get<NumTermPtr>(acc), std::get<NumTermPtr>(rhs)), start,
                            prev_span());
        }
        return acc;
    }

    SourceSpan prev_span() const { return {prev_end_, prev_end_, 0, 0}; }

    NumTermPtr num_arg() { return num_term(); }

    TermVariant primary() {
        const Token& t = peek();
        SourceSpan sp = t.span;
        if (t.kind == Tok::Number) {
            take();
            return with_span(num_const(Nat(t.text)), sp, sp);
        }
        if (t.kind == Tok::BitLit) {
            take();
            return with_span(str_lit(BitStr::from_literal(t.text)), sp, sp);
        }
        if (at_ident("empty")) {
            take();
            return with_span(str_empty(), sp, sp);
        }
        if (at_sym("(")) {
            take();
            auto inner = term();
            expect_sym(")");
            return inner;
        }
        if (at_sym("<")) {
            take();
            auto a = num_term();
            expect_sym(",");
            auto b = num_term();
            expect_sym(">");
            return with_span(num_pair(a, b), sp, prev_span());
        }
        if (at_sym("|")) {
            take();
            auto s = str_term();
            expect_sym("|");
            return with_span(num_len(s), sp, prev_span());
        }
        if (t.kind == Tok::Ident) {
            const std::string& w = t.text;
            if (w == "exp" || w == "val" || w == "numones") {
                take();
                expect_sym("(");
                auto a = num_term();
                expect_sym(",");
                if (w == "exp") {
                    auto b = num_term();
                    expect_sym(")");
                    return with_span(num_exp(a, b), sp, prev_span());
                }
                auto s = str_term();
                expect_sym(")");
                return with_span(w == "val" ? num_val(a, s) : num_numones(a, s), sp, prev_span());
            }
            if (w == "S" || w == "P") {
                take();
                expect_sym("(");
                auto s = str_term();
                expect_sym(")");
                return with_span(w == "S" ? str_succ(s) : str_pred(s), sp, prev_span());
            }
            if (w == "One") {
                take();
                expect_sym("(");
                auto n = num_term();
                expect_sym(")");
                return with_span(str_one(n), sp, prev_span());
            }
            if (w == "Last") {
                take();
                expect_sym("(");
                auto n = num_term();
                expect_sym(",");
                auto s = str_term();
                expect_sym(")");
                return with_span(str_last(n, s), sp, prev_span());
            }
            if (w == "compl" || w == "comp") {
                take();
                expect_sym("(");
                auto s = str_term();
                expect_sym(",");
                auto n = num_term();
                expect_sym(")");
                return with_span(w == "compl" ? str_complement(s, n) : str_component(s, n), sp,
                                 prev_span());
            }
            if (w == "spair") {
                take();
                expect_sym("(");
                auto a = str_term();
                expect_sym(",");
                auto b = str_term();
                expect_sym(")");
                return with_span(str_pair_term(a, b), sp, prev_span());
            }
            if (kReserved.count(w))
                throw ParseError("'" + w + "' cannot start a term", sp, "term");
            take();
            if (var_sort(w) == Sort::Num) return with_span(num_var(w), sp, sp);
            return with_span(str_var(w), sp, sp);
        }
        throw ParseError("expected a term, got '" + t.text + "'", sp, "term");
    }

    // formula := iff; iff := imp ('<->' imp)*; imp := or ('->' imp)?
    FormulaPtr formula() { return iff(); }

    FormulaPtr iff() {
        SourceSpan start = peek().span;
        auto acc = imp();
        while (at_sym("<->")) {
            take();
            acc = with_span(f_iff(acc, imp()), start, prev_span());
        }
        return acc;
    }

    FormulaPtr imp() {
        SourceSpan start = peek().span;
        auto lhs = disj();
        if (at_sym("->")) {
            take();
            return with_span(f_imp(lhs, imp()), start, prev_span());
        }
        return lhs;
    }

    FormulaPtr disj() {
        SourceSpan start = peek().span;
        auto acc = conj();
        while (at_sym("||")) {
            take();
            acc = with_span(f_or(acc, conj()), start, prev_span());
        }
        return acc;
    }

    FormulaPtr conj() {
        SourceSpan start = peek().span;
        auto acc = unary();
        while (at_sym("&&")) {
            take();
            acc = with_span(f_and(acc, unary()), start, prev_span());
        }
        return acc;
    }

    bool at_quantifier() const {
        return at_sym("(") && peek(1).kind == Tok::Ident &&
               (peek(1).text == "exists" || peek(1).text == "forall");
    }

    FormulaPtr unary() {
        SourceSpan start = peek().span;
        if (at_sym("!")) {
            take();
            return with_span(f_not(unary()), start, prev_span());
        }
        if (at_quantifier()) {
            take();  // (
            bool ex = take().text == "exists";
            std::string v = ident();
            bool strict;
            if (at_sym("<=")) {
                strict = false;
            } else if (at_sym("<")) {
                strict = true;
            } else {
                throw ParseError("expected '<=' or '<' after quantified variable", peek().span,
                                 "<= <");
            }
            take();
            auto bound = num_term();
            expect_sym(")");
            auto body = formula();  // maximal scope
            FormulaPtr q;
            if (var_sort(v) == Sort::Num)
                q = ex ? f_exists_num(v, strict, bound, body) : f_forall_num(v, strict, bound, body);
            else
                q = ex ? f_exists_str(v, strict, bound, body) : f_forall_str(v, strict, bound, body);
            return with_span(q, start, prev_span());
        }
        return atom();
    }

    FormulaPtr atom() {
        SourceSpan start = peek().span;
        if (at_ident("true") || at_ident("false")) {
            bool v = take().text == "true";
            return with_span(f_bool(v), start, start);
        }
        if (at_ident("P") && peek(1).kind == Tok::Sym && peek(1).text == "[") {
            take();  // P
            take();  // [
            std::string name = ident();
            expect_sym("]");
            expect_sym("(");
            auto bit = num_term();
            expect_sym(",");
            auto width = num_term();
            expect_sym(",");
            auto count = str_term();
            StrTermPtr rel;
            if (at_sym(",")) {
                take();
                rel = str_term();
            }
            expect_sym(")");
            return with_span(f_fp(FpAtom{name, bit, width, count, rel}), start, prev_span());
        }
        if (at_sym("(")) {
            // backtrack between "(formula)" and a comparison whose left term
            // is parenthesized
            std::size_t save = pos_;
            try {
                take();
                auto f = formula();
                expect_sym(")");
                return f;
            } catch (const ParseError&) {
                pos_ = save;
            }
        }
        return comparison();
    }

    FormulaPtr comparison() {
        SourceSpan start = peek().span;
        TermVariant lhs = term();
        if (!is_num(lhs) && at_sym("(")) {
            take();
            auto idx = num_term();
            expect_sym(")");
            return with_span(f_mem(std::get<StrTermPtr>(lhs), idx), start, prev_span());
        }
        std::string op;
        if (at_sym("=") || at_sym("<=") || at_sym("<")) {
            op = take().text;
        } else {
            throw ParseError("expected '=', '<=', '<' or membership '('", peek().span, "= <= < (");
        }
        SourceSpan opsp = peek().span;
        TermVariant rhs = term();
        if (is_num(lhs) != is_num(rhs)) sort_error(is_num(lhs) ? "number" : "string", opsp);
        FormulaPtr f;
        if (is_num(lhs)) {
            auto a = std::get<NumTermPtr>(lhs), b = std::get<NumTermPtr>(rhs);
            f = op == "=" ? f_num_eq(a, b) : op == "<=" ? f_num_le(a, b) : f_num_lt(a, b);
        } else {
            auto a = std::get<StrTermPtr>(lhs), b = std::get<StrTermPtr>(rhs);
            f = op == "=" ? f_str_eq(a, b) : op == "<=" ? f_str_le(a, b) : f_str_lt(a, b);
        }
        return with_span(f, start, prev_span());
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    return Parser(text).formula_only();
}

std::vector<Def> parse_defs(const std::string& text) {
    return Parser(text).defs();
}

}  // namespace bid

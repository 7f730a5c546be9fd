#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "ast_fuzz.hpp"
#include "bid/eval.hpp"
#include "bid/errors.hpp"
#include "bid/funcs.hpp"
#include "bid/parse.hpp"

using namespace bid;

namespace {

Env env_of(std::map<std::string, Nat> nums, std::map<std::string, BitStr> strs = {}) {
    Env e;
    e.nums = std::move(nums);
    e.strs = std::move(strs);
    return e;
}

bool ev(const std::string& text, Env env = {}) { return eval_formula(parse_formula(text), env); }

}  // namespace

TEST_CASE("term evaluation") {
    Env e = env_of({{"x", 1}, {"y", 1}}, {{"X", BitStr::from_literal("0b101")}});
    CHECK(eval_num(parse_formula("|X| = 3")->na, e) == 3);
    CHECK(ev("|X| = 3", e));
    CHECK(ev("<1, 1> = 8", e));
    CHECK(ev("<0, 0> = 0", e));
    CHECK(ev("|empty| = 0"));
    CHECK(ev("2 * 3 + 1 = 7"));
    CHECK(ev("3 - 5 = 0"));
    CHECK(ev("5 - 3 = 2"));
    CHECK(ev("exp(3, 100) = 8"));
    CHECK(ev("exp(10, 5) = 5"));
    CHECK(ev("val(2, X) = 2", e));
    CHECK(ev("val(9, X) = 5", e));
    CHECK(ev("numones(2, X) = 1", e));
    CHECK(ev("numones(9, X) = 2", e));
    CHECK(ev("S(X) = 0b110", e));
    CHECK(ev("P(X) = 0b100", e));
    CHECK(ev("X + 0b1 = 0b110", e));
    CHECK(ev("X - 0b10 = 0b11", e));
    CHECK(ev("One(3) = 0b111"));
    CHECK(ev("Last(2, X) = 0b10", e));
    CHECK(ev("compl(X, 4) = 0b1010", e));
}

TEST_CASE("membership and comparisons") {
    Env e = env_of({{"i", 1}, {"x", 3}}, {{"X", BitStr::from_literal("0b10")}});
    CHECK(ev("X(i) && i < x", e));
    CHECK(!ev("X(0)", e));
    CHECK(!ev("X(100)", e));  // out-of-range membership is false, not an error
    CHECK(ev("0b10 < 0b11"));
    CHECK(ev("0b10 <= 0b10"));
    CHECK(!ev("0b11 < 0b10"));
    CHECK(ev("empty < 0b1"));
}

TEST_CASE("unbound variables are errors") {
    CHECK_THROWS_AS(ev("zzz = 0"), UnboundVariable);
    CHECK_THROWS_AS(ev("ZZZ(0)"), UnboundVariable);
    CHECK_THROWS_AS(ev("P[nowhere](0, 1, 0b1)"), UnboundVariable);
}

TEST_CASE("number quantifiers") {
    CHECK(ev("(exists y <= 4) y + y = 6"));
    CHECK(!ev("(exists y <= 2) y + y = 6"));
    CHECK(ev("(forall y <= 4) y <= 4"));
    CHECK(!ev("(forall y < 4) y < 3"));
    // strict bound with zero range: vacuous
    CHECK(ev("(forall y < 0) false"));
    CHECK(!ev("(exists y < 0) true"));
    // inclusive zero bound still tries y = 0
    CHECK(ev("(exists y <= 0) y = 0"));
}

TEST_CASE("string quantifiers vs brute force oracle") {
    CHECK(ev("(exists X <= 2) (X(0) && X(1))"));
    CHECK(!ev("(exists X <= 1) (X(0) && X(1))"));
    std::mt19937_64 rng(5);
    fuzz::Gen g(31);
    for (int t = 0; t < 40; ++t) {
        // psi over (i, Y); quantify Y, fix i
        FormulaPtr psi = fuzz::random_sigma0(g, 2);
        Nat i = Nat(rng() % 6);
        unsigned bound = static_cast<unsigned>(rng() % 7);
        FormulaPtr q = f_exists_str("Y", false, num_const(Nat(bound)), psi);
        Env e = env_of({{"i", i}});
        bool expect = false;
        for (Nat v = 0; v < (Nat(1) << bound); ++v) {
            Env inner = e;
            inner.strs["Y"] = BitStr::from_nat(v);
            if (eval_formula(psi, inner)) expect = true;
        }
        CHECK(eval_formula(q, e) == expect);
        FormulaPtr qa = f_forall_str("Y", false, num_const(Nat(bound)), psi);
        bool expect_all = true;
        for (Nat v = 0; v < (Nat(1) << bound); ++v) {
            Env inner = e;
            inner.strs["Y"] = BitStr::from_nat(v);
            if (!eval_formula(psi, inner)) expect_all = false;
        }
        CHECK(eval_formula(qa, e) == expect_all);
    }
}

TEST_CASE("quantifier duality on random instances") {
    fuzz::Gen g(77);
    for (int t = 0; t < 200; ++t) {
        FormulaPtr psi = fuzz::random_sigma0(g, 2);
        Env e = env_of({{"i", Nat(g.pick(5))}}, {{"Y", BitStr::from_nat(Nat(g.pick(64)))}});
        unsigned b = static_cast<unsigned>(g.pick(6));
        bool strict = g.coin();
        FormulaPtr ex = f_exists_num("j", strict, num_const(Nat(b)), psi);
        FormulaPtr fa = f_forall_num("j", strict, num_const(Nat(b)), f_not(psi));
        CHECK(eval_formula(f_not(ex), e) == eval_formula(fa, e));
        FormulaPtr exs = f_exists_str("Z", strict, num_const(Nat(b)), psi);
        FormulaPtr fas = f_forall_str("Z", strict, num_const(Nat(b)), f_not(psi));
        CHECK(eval_formula(f_not(exs), e) == eval_formula(fas, e));
    }
}

TEST_CASE("monotone existential bound") {
    fuzz::Gen g(123);
    for (int t = 0; t < 100; ++t) {
        FormulaPtr psi = fuzz::random_sigma0(g, 2);
        Env e = env_of({{"i", Nat(g.pick(5))}}, {{"Y", BitStr::from_nat(Nat(g.pick(64)))}});
        unsigned b = static_cast<unsigned>(g.pick(5));
        bool at_b = eval_formula(f_exists_num("j", false, num_const(Nat(b)), psi), e);
        bool at_b2 = eval_formula(f_exists_num("j", false, num_const(Nat(b + 3)), psi), e);
        if (at_b) CHECK(at_b2);
    }
}

TEST_CASE("budgets are errors, never wrong answers") {
    Env e;
    e.limits.str_candidates = 1 << 10;
    CHECK_THROWS_AS(ev("(exists X <= 20) X = X", e), ResourceLimit);
    e.limits.num_candidates = 1 << 10;
    CHECK_THROWS_AS(ev("(exists y <= 2000) y = y", e), ResourceLimit);
    // within budget still answers
    CHECK(ev("(exists y <= 100) y = 100", e));
}

TEST_CASE("phi_step clips the state") {
    FormulaPtr phi = parse_formula("Y(i) || i = 0");
    Env e;
    BitStr wide = BitStr::from_literal("0b11110000");
    BitStr narrow = wide.clipped(4);
    CHECK(phi_step(phi, "i", "Y", 4, wide, e) == phi_step(phi, "i", "Y", 4, narrow, e));
    // bits at or above the width never come back
    BitStr out = phi_step(parse_formula("Y(i)"), "i", "Y", 4, wide, e);
    CHECK(out == narrow);
}

TEST_CASE("fixed-point atoms") {
    auto reg = std::make_shared<PhiRegistry>();
    (*reg)["flip"] = PhiDef{"i", "Y", parse_formula("!Y(i)"), {}, {}};
    (*reg)["shift"] = PhiDef{"i", "Y",
                             parse_formula("Y(i) || i = 0 || (exists j < i) (i = j + 1 && Y(j))"),
                             {}, {}};
    Env e;
    e.registry = reg;
    e.nums["x"] = 3;

    // flip from empty: odd counts set every bit, even counts clear
    CHECK(ev("P[flip](0, x, 0b1)", e));
    CHECK(!ev("P[flip](0, x, 0b10)", e));
    CHECK(ev("P[flip](2, x, 0b101)", e));
    // bit index beyond the width is false
    CHECK(!ev("P[flip](5, x, 0b1)", e));
    // count is val_full of the counter string
    CHECK(ev("P[flip](0, x, One(7))", e));

    // shift climbs one bit per step
    CHECK(ev("P[shift](0, x, 0b1)", e));
    CHECK(!ev("P[shift](1, x, 0b1)", e));
    CHECK(ev("P[shift](1, x, 0b10)", e));
    CHECK(ev("(forall i < x) P[shift](i, x, One(x))", e));

    // relativized start
    CHECK(ev("P[flip](1, x, 0b0, 0b10)", e));
    CHECK(!ev("P[flip](1, x, 0b1, 0b10)", e));
    // the start state is clipped to the width
    CHECK(ev("P[shift](2, 3, 0b0, 0b1100) <-> P[shift](2, 3, 0b0, 0b100)", e));

    // iteration budget
    Env tight = e;
    tight.limits.iterations = 3;
    CHECK_THROWS_AS(ev("P[flip](0, x, One(5))", tight), ResourceLimit);
}

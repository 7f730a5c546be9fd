#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>
#include <vector>

#include "ast_fuzz.hpp"
#include "bid/engine.hpp"
#include "bid/errors.hpp"
#include "bid/parse.hpp"

using namespace bid;

namespace {

Operator op_of(const std::string& phi, std::size_t width, Env env = {}) {
    return make_operator("test", parse_formula(phi), width, std::move(env));
}

const char* kShift = "Y(i) || i = 0 || (exists j < i) (i = j + 1 && Y(j))";
const char* kCounter = "!(Y(i) <-> (forall j < i) Y(j))";

}  // namespace

TEST_CASE("make_operator validation") {
    CHECK_NOTHROW(op_of("Y(i) || i = 0", 4));
    // non-SigmaB(0) bodies are rejected
    CHECK_THROWS_AS(op_of("(exists Z <= 3) Z(i)", 4), Error);
    // free variables beyond (i, Y) must be closed by the environment
    CHECK_THROWS_AS(op_of("Y(i) && i < n", 4), Error);
    Env e;
    e.nums["n"] = 2;
    CHECK_NOTHROW(op_of("Y(i) && i < n", 4, e));
}

TEST_CASE("step basics") {
    CHECK(step(op_of("!Y(i)", 3), BitStr()) == BitStr::from_literal("0b111"));
    BitStr s = BitStr::from_literal("0b10110");
    CHECK(step(op_of("Y(i)", 5), s) == s);
    CHECK(step(op_of("Y(i)", 3), s) == s.clipped(3));
    CHECK(step(op_of(kShift, 4), BitStr()) == BitStr::from_literal("0b1"));
}

TEST_CASE("clipping: bits beyond the width never matter") {
    fuzz::Gen g(2024);
    for (int t = 0; t < 200; ++t) {
        Operator op = make_operator("f", fuzz::random_sigma0(g, 3), 6);
        BitStr wide = BitStr::from_nat(Nat(g.rng() % 4096));
        CHECK(step(op, wide) == step(op, wide.clipped(6)));
    }
}

TEST_CASE("compiled and naive paths are bit-identical") {
    fuzz::Gen g(555);
    for (int t = 0; t < 300; ++t) {
        Operator op = make_operator("f", fuzz::random_sigma0(g, 3), 8);
        BitStr state = BitStr::from_nat(Nat(g.rng() % 256));
        CHECK(step(op, state, true) == step(op, state, false));
    }
}

TEST_CASE("iterate") {
    Operator flip = op_of("!Y(i)", 3);
    CHECK(iterate(flip, BitStr(), 0) == BitStr());
    CHECK(iterate(flip, BitStr(), 2) == BitStr());
    CHECK(iterate(flip, BitStr(), 5) == BitStr::from_literal("0b111"));
    // n = 0 clips the start
    CHECK(iterate(flip, BitStr::from_literal("0b1111"), 0) == BitStr::from_literal("0b111"));

    Env tight;
    tight.limits.iterations = 4;
    Operator capped = op_of("!Y(i)", 3, tight);
    CHECK_THROWS_AS(iterate(capped, BitStr(), 5), ResourceLimit);
}

TEST_CASE("is_inflationary modes") {
    Operator flip = op_of("!Y(i)", 3);
    auto r = is_inflationary(flip, InflMode::Exhaustive);
    CHECK(r.verdict == InflReport::Verdict::No);
    // the counterexample is a real dropped bit
    CHECK(r.counter_state.test(r.counter_bit));
    CHECK(!step(flip, r.counter_state).test(r.counter_bit));

    CHECK(is_inflationary(op_of("Y(i) || i = 0", 3), InflMode::Syntactic).verdict ==
          InflReport::Verdict::Yes);
    CHECK(is_inflationary(op_of(kShift, 3), InflMode::Exhaustive).verdict ==
          InflReport::Verdict::Yes);
    // syntactic mode only certifies the disjunct shape
    CHECK(is_inflationary(op_of("Y(i) || !Y(i)", 3), InflMode::Syntactic).verdict ==
          InflReport::Verdict::Yes);
    CHECK(is_inflationary(op_of("i <= i", 3), InflMode::Syntactic).verdict ==
          InflReport::Verdict::Unknown);
    auto s = is_inflationary(flip, InflMode::Sampled);
    CHECK(s.verdict == InflReport::Verdict::No);
    CHECK(is_inflationary(op_of("Y(i) || i = 0", 3), InflMode::Sampled).verdict ==
          InflReport::Verdict::Unknown);
}

TEST_CASE("find_fixpoint_inflationary") {
    auto r = find_fixpoint_inflationary(op_of("Y(i)", 4));
    CHECK(r.k == 0);
    CHECK(r.fixpoint.empty());

    r = find_fixpoint_inflationary(op_of("Y(i) || i < 4", 4));
    CHECK(r.k == 1);
    CHECK(r.fixpoint == BitStr::ones(4));

    r = find_fixpoint_inflationary(op_of(kShift, 4));
    CHECK(r.k == 4);
    CHECK(r.fixpoint == BitStr::ones(4));

    CHECK_THROWS_AS(find_fixpoint_inflationary(op_of("!Y(i)", 3)), NotInflationary);
}

TEST_CASE("find_period basics") {
    auto r = find_period(op_of("Y(i)", 4), BitStr::from_literal("0b101"));
    CHECK(r.u == 0);
    CHECK(r.v == 1);
    CHECK(r.state_at_u == BitStr::from_literal("0b101"));

    r = find_period(op_of("!Y(i)", 4), BitStr());
    CHECK(r.u == 0);
    CHECK(r.v == 2);

    // binary counter: pure cycle through all 2^x states
    for (std::size_t x : {3, 5, 8}) {
        r = find_period(op_of(kCounter, x), BitStr());
        CHECK(r.u == 0);
        CHECK(r.v == (Nat(1) << x));
    }

    // shift has a tail: from empty it climbs x steps then sits still
    r = find_period(op_of(kShift, 4), BitStr());
    CHECK(r.u == 4);
    CHECK(r.v == 1);
    CHECK(r.state_at_u == BitStr::ones(4));
}

TEST_CASE("find_period: hash and brent agree, table confirms minimality") {
    fuzz::Gen g(808);
    for (int t = 0; t < 60; ++t) {
        std::size_t x = 4 + g.pick(3);
        Operator op = make_operator("f", fuzz::random_sigma0(g, 3), x);
        BitStr start = BitStr::from_nat(Nat(g.rng() % 64));
        auto rh = find_period_hash(op, start);
        auto rb = find_period_brent(op, start);
        CHECK(rh.u == rb.u);
        CHECK(rh.v == rb.v);
        CHECK(rh.state_at_u == rb.state_at_u);
        CHECK(rh.u + rh.v <= (Nat(1) << x));

        // brute-force table of iterates pins minimality
        std::vector<BitStr> table{start.clipped(x)};
        std::map<BitStr, std::size_t> first;
        first[table[0]] = 0;
        for (;;) {
            BitStr nxt = step(op, table.back());
            auto it = first.find(nxt);
            if (it != first.end()) {
                CHECK(Nat(it->second) == rh.u);
                CHECK(Nat(table.size() - it->second) == rh.v);
                break;
            }
            first[nxt] = table.size();
            table.push_back(nxt);
        }
        CHECK(iterate(op, start, rh.u + rh.v) == iterate(op, start, rh.u));
        CHECK(iterate(op, start, rh.u) == rh.state_at_u);
    }
}

TEST_CASE("inflationary fixpoint properties on random operators") {
    fuzz::Gen g(4242);
    for (int t = 0; t < 100; ++t) {
        std::size_t x = 4 + g.pick(5);
        FormulaPtr psi = fuzz::random_sigma0(g, 2);
        Operator op = make_operator("f", f_or(f_mem(str_var("Y"), num_var("i")), psi), x);
        auto r = find_fixpoint_inflationary(op);
        CHECK(r.k <= x);
        CHECK(step(op, r.fixpoint) == r.fixpoint);
        // popcount strictly increases until the fixed point
        BitStr s;
        for (std::size_t j = 0; j < r.k; ++j) {
            BitStr nxt = step(op, s);
            CHECK(nxt.popcount() > s.popcount());
            s = nxt;
        }
        CHECK(s == r.fixpoint);
    }
}

TEST_CASE("visited_states") {
    Operator flip = op_of("!Y(i)", 3);
    CHECK(visited_states(flip, BitStr(), 0).size() == 0);
    auto vs = visited_states(flip, BitStr(), 5);
    CHECK(vs.size() == 2);
    CHECK(vs.contains(BitStr()));
    CHECK(vs.contains(BitStr::ones(3)));
    Operator ident = op_of("Y(i)", 3);
    CHECK(visited_states(ident, BitStr::from_literal("0b101"), 7).size() == 1);
}

TEST_CASE("check_composition") {
    fuzz::Gen g(31337);
    Operator flip = op_of("!Y(i)", 4);
    CHECK(check_composition(flip, BitStr(), 0, 5));
    CHECK(check_composition(flip, BitStr(), 5, 0));
    CHECK(check_composition(flip, BitStr::from_literal("0b1"), 1, 1));
    for (int t = 0; t < 50; ++t) {
        Operator op = make_operator("f", fuzz::random_sigma0(g, 3), 5);
        BitStr z = BitStr::from_nat(Nat(g.rng() % 32));
        CHECK(check_composition(op, z, Nat(g.pick(40)), Nat(g.pick(40))));
    }
}

TEST_CASE("traces: emit, verify, serialize") {
    Operator op = op_of(kShift, 4);
    IterationTrace tr = iterate_with_trace(op, BitStr(), 6);
    REQUIRE(tr.states.size() == 7);
    CHECK(tr.width == 4);
    CHECK(!verify_trace(op, tr, BitStr()).has_value());

    // hand-built trace for the flip operator
    Operator flip = op_of("!Y(i)", 3);
    IterationTrace hand;
    hand.width = 3;
    hand.states = {BitStr(), BitStr::ones(3), BitStr()};
    CHECK(!verify_trace(flip, hand, BitStr()).has_value());
    hand.states[2] = BitStr::from_literal("0b1");
    auto fault = verify_trace(flip, hand, BitStr());
    REQUIRE(fault.has_value());
    CHECK(*fault == 2);
    // wrong start faults at 0
    CHECK(verify_trace(flip, hand, BitStr::ones(3)) == 0);

    // serialization round-trip
    std::ostringstream os;
    write_trace(os, tr);
    std::istringstream is(os.str());
    IterationTrace back = read_trace(is);
    CHECK(back.width == tr.width);
    CHECK(back.states == tr.states);
    CHECK(!verify_trace(op, back, BitStr()).has_value());

    // malformed inputs
    std::istringstream bad1("not-a-trace\n");
    CHECK_THROWS_AS(read_trace(bad1), DecodeError);
    std::istringstream bad2("bid-trace v1 width=4 states=2\n0 0\n");
    CHECK_THROWS_AS(read_trace(bad2), DecodeError);
    std::istringstream bad3("bid-trace v1 width=4 states=2\n1 0\n0 1\n");
    CHECK_THROWS_AS(read_trace(bad3), DecodeError);
}

TEST_CASE("trace mutations are rejected") {
    fuzz::Gen g(616);
    Operator op = op_of(kCounter, 5);
    IterationTrace tr = iterate_with_trace(op, BitStr(), 12);
    for (int t = 0; t < 100; ++t) {
        IterationTrace mut = tr;
        std::size_t rec = g.pick(mut.states.size());
        std::size_t bit = g.pick(5);
        BitStr s = mut.states[rec];
        s.set(bit, !s.test(bit));
        mut.states[rec] = s;
        CHECK(verify_trace(op, mut, BitStr()).has_value());
    }
}

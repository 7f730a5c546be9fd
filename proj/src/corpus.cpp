#include "bid/corpus.hpp"

namespace bid {

namespace {

// small helper: delta entries by name, resolved once at the end
struct Maker {
    TMSpec m;
    void tr(const std::string& state, const std::string& read, const std::string& next,
            const std::string& write, char move) {
        TMTransition t{m.state_of(next), m.symbol(write), move == 'L' ? -1 : (move == 'R' ? 1 : 0)};
        m.delta.emplace(std::pair{m.state_of(state), m.symbol(read)}, t);
    }
};

}  // namespace

TMSpec machine_halt() {
    Maker mk;
    mk.m.name = "halt";
    mk.m.states = {"go", "halt"};
    mk.m.alphabet = {"_", "0", "1"};
    mk.m.start = 0;
    mk.m.final_state = 1;
    mk.m.time_bounded = true;
    mk.m.poly = {Nat(2), Nat(1)};  // p(n) = n + 2
    for (const char* a : {"_", "0", "1"}) mk.tr("go", a, "halt", a, 'S');
    return mk.m;
}

TMSpec machine_inc() {
    Maker mk;
    mk.m.name = "inc";
    // cell 0 is remembered as a/b (0/1) so the carry can detect the left end
    mk.m.states = {"start", "right", "inc", "restore", "over", "halt"};
    mk.m.alphabet = {"_", "0", "1", "a", "b"};
    mk.m.start = 0;
    mk.m.final_state = 5;
    mk.m.time_bounded = true;
    mk.m.poly = {Nat(6), Nat(4)};  // p(n) = 4n + 6
    mk.tr("start", "_", "halt", "1", 'S');  // 0 + 1 = 1
    mk.tr("start", "0", "right", "a", 'R');
    mk.tr("start", "1", "right", "b", 'R');
    mk.tr("right", "0", "right", "0", 'R');
    mk.tr("right", "1", "right", "1", 'R');
    mk.tr("right", "_", "inc", "_", 'L');
    mk.tr("inc", "1", "inc", "0", 'L');        // carry ripples left
    mk.tr("inc", "0", "restore", "1", 'L');    // carry absorbed
    mk.tr("inc", "a", "halt", "1", 'S');       // absorbed at the marked cell
    mk.tr("inc", "b", "over", "1", 'R');       // overflow: 1 then n zeros
    mk.tr("restore", "0", "restore", "0", 'L');
    mk.tr("restore", "1", "restore", "1", 'L');
    mk.tr("restore", "a", "halt", "0", 'S');
    mk.tr("restore", "b", "halt", "1", 'S');
    mk.tr("over", "0", "over", "0", 'R');
    mk.tr("over", "_", "halt", "0", 'S');
    return mk.m;
}

TMSpec machine_palindrome() {
    Maker mk;
    mk.m.name = "palindrome";
    // compare and erase the two ends per round; F marks cell 0 so the verdict
    // can be written there, making the output 0b1 (accept) or 0b0 (reject)
    mk.m.states = {"q0", "sr0", "sr1", "cmp0", "cmp1", "back", "next", "accL", "rejL", "halt"};
    mk.m.alphabet = {"_", "0", "1", "F", "E"};
    mk.m.start = 0;
    mk.m.final_state = 9;
    mk.m.time_bounded = true;
    mk.m.poly = {Nat(9), Nat(5), Nat(1)};  // p(n) = n^2 + 5n + 9
    mk.tr("q0", "_", "halt", "1", 'S');  // the empty word is a palindrome
    mk.tr("q0", "0", "sr0", "F", 'R');
    mk.tr("q0", "1", "sr1", "F", 'R');
    for (const char* b : {"0", "1"}) {
        std::string sr = std::string("sr") + b, cmp = std::string("cmp") + b;
        mk.tr(sr, "0", sr, "0", 'R');
        mk.tr(sr, "1", sr, "1", 'R');
        mk.tr(sr, "E", cmp, "E", 'L');
        mk.tr(sr, "_", cmp, "_", 'L');
        mk.tr(cmp, b, "back", "E", 'L');                         // ends match
        mk.tr(cmp, *b == '0' ? "1" : "0", "rejL", "E", 'L');     // mismatch
        mk.tr(cmp, "F", "halt", "1", 'S');  // single-letter core at cell 0
        mk.tr(cmp, "E", "accL", "E", 'L');  // core was empty
    }
    mk.tr("back", "0", "back", "0", 'L');
    mk.tr("back", "1", "back", "1", 'L');
    mk.tr("back", "F", "next", "F", 'R');
    mk.tr("back", "E", "next", "E", 'R');
    mk.tr("next", "0", "sr0", "E", 'R');
    mk.tr("next", "1", "sr1", "E", 'R');
    mk.tr("next", "E", "accL", "E", 'L');
    mk.tr("next", "_", "accL", "_", 'L');
    mk.tr("accL", "E", "accL", "E", 'L');
    mk.tr("accL", "F", "halt", "1", 'S');
    mk.tr("rejL", "0", "rejL", "E", 'L');  // erase, or the leftovers would
    mk.tr("rejL", "1", "rejL", "E", 'L');  // leak into the output prefix
    mk.tr("rejL", "E", "rejL", "E", 'L');
    mk.tr("rejL", "F", "halt", "0", 'S');
    return mk.m;
}

TMSpec machine_counter() {
    Maker mk;
    mk.m.name = "counter";
    // zero the n cells, then increment (LSB at cell 0, kept as a/b so the
    // left end is recognizable) until the carry walks off the counter: that
    // is exactly 2^n increments in n+2 cells
    mk.m.states = {"start", "z", "retL", "inc", "carry", "halt"};
    mk.m.alphabet = {"_", "0", "1", "a", "b"};
    mk.m.start = 0;
    mk.m.final_state = 5;
    mk.m.time_bounded = false;
    mk.m.poly = {Nat(2), Nat(1)};  // p(n) = n + 2 cells
    mk.tr("start", "_", "halt", "_", 'S');  // no counter bits: 2^0 = 1 count
    mk.tr("start", "0", "z", "a", 'R');
    mk.tr("start", "1", "z", "a", 'R');
    mk.tr("z", "0", "z", "0", 'R');
    mk.tr("z", "1", "z", "0", 'R');
    mk.tr("z", "_", "retL", "_", 'L');
    mk.tr("retL", "0", "retL", "0", 'L');
    mk.tr("retL", "a", "inc", "a", 'S');
    mk.tr("retL", "b", "inc", "b", 'S');
    mk.tr("inc", "a", "inc", "b", 'S');      // bit 0: 0 -> 1
    mk.tr("inc", "b", "carry", "a", 'R');    // bit 0: 1 -> 0, carry out
    mk.tr("carry", "1", "carry", "0", 'R');
    mk.tr("carry", "0", "retL", "1", 'L');
    mk.tr("carry", "_", "halt", "_", 'S');   // carry off the end: done
    return mk.m;
}

TMSpec machine_qbf() {
    Maker mk;
    mk.m.name = "qbf";
    // evaluate the input as a game tree: each pass combines adjacent pairs,
    // alternating or (exists) and and (forall); the lists are separated by #
    // and the verdict is written back at cell 0 (marked f0/f1, then F)
    std::vector<std::string> states = {"start", "toend", "retL", "ansL0", "ansL1", "halt"};
    for (const char* op : {"or", "and"})
        for (const char* st : {"needF", "haveF0", "haveF1", "need", "have0", "have1",
                               "dep0", "dep1", "endp", "retp", "back"})
            states.push_back(std::string(op) + "_" + st);
    Maker& k = mk;
    k.m.name = "qbf";
    k.m.states = std::move(states);
    k.m.alphabet = {"_", "0", "1", "#", "E", "F", "f0", "f1"};
    k.m.start = 0;
    k.m.final_state = 5;
    k.m.time_bounded = false;
    k.m.poly = {Nat(8), Nat(2)};  // p(n) = 2n + 8 cells

    k.tr("start", "_", "halt", "0", 'S');  // empty tree: false
    k.tr("start", "0", "toend", "f0", 'R');
    k.tr("start", "1", "toend", "f1", 'R');
    k.tr("toend", "0", "toend", "0", 'R');
    k.tr("toend", "1", "toend", "1", 'R');
    k.tr("toend", "_", "retL", "#", 'L');
    k.tr("retL", "0", "retL", "0", 'L');
    k.tr("retL", "1", "retL", "1", 'L');
    k.tr("retL", "f0", "or_haveF0", "F", 'R');  // pass 1 starts at cell 0
    k.tr("retL", "f1", "or_haveF1", "F", 'R');

    for (const char* op : {"or", "and"}) {
        auto n = [&](const std::string& st) { return std::string(op) + "_" + st; };
        std::string other = std::string(op) == "or" ? "and" : "or";
        auto comb = [&](int b1, int b2) {
            int r = std::string(op) == "or" ? (b1 | b2) : (b1 & b2);
            return r ? "1" : "0";
        };
        for (int b = 0; b < 2; ++b) {
            std::string bs = b ? "1" : "0";
            k.tr(n("needF"), bs, n(b ? "haveF1" : "haveF0"), "E", 'R');
            k.tr(n("need"), bs, n(b ? "have1" : "have0"), "E", 'R');
            for (int b2 = 0; b2 < 2; ++b2) {
                std::string b2s = b2 ? "1" : "0";
                std::string dep = n(std::string("dep") + comb(b, b2));
                k.tr(n(b ? "haveF1" : "haveF0"), b2s, dep, "E", 'R');
                k.tr(n(b ? "have1" : "have0"), b2s, dep, "E", 'R');
            }
            // a pass that starts with a single operand has found the answer
            k.tr(n(b ? "haveF1" : "haveF0"), "#", b ? "ansL1" : "ansL0", "#", 'L');
            // a lone trailing operand carries over to the next list
            k.tr(n(b ? "have1" : "have0"), "#", n(std::string("dep") + bs), "#", 'R');
            // deposit the result bit after the separator, then walk back
            std::string dep = n(std::string("dep") + bs);
            k.tr(dep, "0", dep, "0", 'R');
            k.tr(dep, "1", dep, "1", 'R');
            k.tr(dep, "#", dep, "#", 'R');
            k.tr(dep, "_", n("back"), bs, 'L');
        }
        k.tr(n("need"), "#", n("endp"), "E", 'R');  // pass done: move the separator
        k.tr(n("back"), "0", n("back"), "0", 'L');
        k.tr(n("back"), "1", n("back"), "1", 'L');
        k.tr(n("back"), "#", n("back"), "#", 'L');
        k.tr(n("back"), "E", n("need"), "E", 'R');
        k.tr(n("back"), "F", n("need"), "F", 'R');
        k.tr(n("endp"), "0", n("endp"), "0", 'R');
        k.tr(n("endp"), "1", n("endp"), "1", 'R');
        k.tr(n("endp"), "_", n("retp"), "#", 'L');
        k.tr(n("retp"), "0", n("retp"), "0", 'L');
        k.tr(n("retp"), "1", n("retp"), "1", 'L');
        k.tr(n("retp"), "E", other + "_needF", "E", 'R');
        k.tr(n("retp"), "F", other + "_needF", "F", 'R');
    }
    for (int b = 0; b < 2; ++b) {
        std::string a = b ? "ansL1" : "ansL0";
        for (const char* sym : {"0", "1", "#", "E"}) k.tr(a, sym, a, sym, 'L');
        k.tr(a, "F", "halt", b ? "1" : "0", 'S');
    }
    return k.m;
}

std::vector<TMSpec> all_machines() {
    return {machine_halt(), machine_inc(), machine_palindrome(), machine_counter(),
            machine_qbf()};
}

}  // namespace bid

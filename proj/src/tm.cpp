#include "bid/tm.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bid/errors.hpp"
#include "bid/funcs.hpp"
#include "json.hpp"

namespace bid {

namespace {

using json = nlohmann::json;

std::size_t bits_for(std::size_t count) {
    std::size_t b = 0;
    while ((std::size_t{1} << b) < count) ++b;
    return b;
}

int find_name(const std::vector<std::string>& names, const std::string& s, const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<int>(i);
    throw DecodeError(std::string("unknown ") + what + ": " + s);
}

void validate(const TMSpec& m) {
    if (m.states.empty()) throw DecodeError("machine has no states");
    if (m.alphabet.empty()) throw DecodeError("machine has no alphabet");
    std::set<std::string> seen(m.states.begin(), m.states.end());
    if (seen.size() != m.states.size()) throw DecodeError("duplicate state name");
    seen = std::set<std::string>(m.alphabet.begin(), m.alphabet.end());
    if (seen.size() != m.alphabet.size()) throw DecodeError("duplicate symbol");
    // "0" and "1" are needed to read inputs and write outputs
    find_name(m.alphabet, "0", "symbol");
    find_name(m.alphabet, "1", "symbol");
    if (m.poly.empty()) throw DecodeError("bound polynomial is empty");
    for (const auto& [key, tr] : m.delta) {
        if (key.first == m.final_state)
            throw DecodeError("final state has an outgoing transition");
        if (key.first < 0 || key.first >= static_cast<int>(m.states.size()) ||
            tr.next_state < 0 || tr.next_state >= static_cast<int>(m.states.size()) ||
            key.second < 0 || key.second >= static_cast<int>(m.alphabet.size()) ||
            tr.write < 0 || tr.write >= static_cast<int>(m.alphabet.size()) ||
            tr.move < -1 || tr.move > 1)
            throw DecodeError("transition out of range");
    }
}

}  // namespace

int TMSpec::symbol(const std::string& s) const { return find_name(alphabet, s, "symbol"); }
int TMSpec::state_of(const std::string& s) const { return find_name(states, s, "state"); }

std::size_t TMSpec::sym_bits() const { return bits_for(alphabet.size()); }
std::size_t TMSpec::cell_bits() const { return sym_bits() + 1; }
std::size_t TMSpec::state_bits() const { return bits_for(states.size()); }

Nat TMSpec::p_of(const Nat& n) const {
    Nat v = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * n + *it;
    return v;
}

Nat TMSpec::q_of(const Nat& n) const {
    return Nat(cell_bits()) * p_of(n) + state_bits() + 2;
}

// ── JSON ─────────────────────────────────────────────────────────────────────

TMSpec tm_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw DecodeError(std::string("bad machine JSON: ") + e.what());
    }
    TMSpec m;
    try {
        m.name = j.value("name", "");
        for (const auto& s : j.at("states")) m.states.push_back(s.get<std::string>());
        for (const auto& s : j.at("alphabet")) m.alphabet.push_back(s.get<std::string>());
        m.start = m.state_of(j.at("start").get<std::string>());
        m.final_state = m.state_of(j.at("final").get<std::string>());
        const json& b = j.at("bound");
        const std::string kind = b.at("kind").get<std::string>();
        if (kind != "time" && kind != "space")
            throw DecodeError("bound kind must be time or space, got " + kind);
        m.time_bounded = kind == "time";
        for (const auto& c : b.at("poly")) {
            const auto v = c.get<std::int64_t>();
            if (v < 0) throw DecodeError("bound polynomial has a negative coefficient");
            m.poly.emplace_back(v);
        }
        for (const auto& t : j.at("transitions")) {
            const int q = m.state_of(t.at("state").get<std::string>());
            const int a = m.symbol(t.at("read").get<std::string>());
            const std::string mv = t.at("move").get<std::string>();
            if (mv != "L" && mv != "R" && mv != "S")
                throw DecodeError("move must be L, R or S, got " + mv);
            TMTransition tr{m.state_of(t.at("next").get<std::string>()),
                            m.symbol(t.at("write").get<std::string>()),
                            mv == "L" ? -1 : (mv == "R" ? 1 : 0)};
            if (!m.delta.emplace(std::pair{q, a}, tr).second)
                throw DecodeError("duplicate transition for (" + m.states[q] + ", " +
                                  m.alphabet[a] + ")");
        }
    } catch (const json::exception& e) {
        throw DecodeError(std::string("bad machine JSON: ") + e.what());
    }
    validate(m);
    return m;
}

TMSpec tm_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DecodeError("cannot open machine file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return tm_from_json(ss.str());
}

std::string tm_to_json(const TMSpec& m) {
    json j;
    j["name"] = m.name;
    j["states"] = m.states;
    j["start"] = m.states[m.start];
    j["final"] = m.states[m.final_state];
    j["alphabet"] = m.alphabet;
    json ts = json::array();
    for (const auto& [key, tr] : m.delta)
        ts.push_back({{"state", m.states[key.first]},
                      {"read", m.alphabet[key.second]},
                      {"next", m.states[tr.next_state]},
                      {"write", m.alphabet[tr.write]},
                      {"move", tr.move < 0 ? "L" : (tr.move > 0 ? "R" : "S")}});
    j["transitions"] = std::move(ts);
    json poly = json::array();
    for (const auto& c : m.poly) poly.push_back(to_u64_checked(c, "bound coefficient"));
    j["bound"] = {{"kind", m.time_bounded ? "time" : "space"}, {"poly", std::move(poly)}};
    return j.dump(2) + "\n";
}

// ── direct simulation ────────────────────────────────────────────────────────

MachineState initial_state(const TMSpec& m, const BitStr& input) {
    const std::size_t n = input.length();
    const std::size_t p = to_u64_checked(m.p_of(n), "tape length");
    if (n > p) throw OutOfSpace("input longer than the declared bound");
    MachineState ms;
    ms.state = m.start;
    ms.head = 0;
    ms.tape.assign(p, 0);
    const int c0 = m.symbol("0"), c1 = m.symbol("1");
    for (std::size_t j = 0; j < n; ++j)
        ms.tape[j] = input.test(n - 1 - j) ? c1 : c0;  // cell 0 holds the MSB
    return ms;
}

bool step_direct(const TMSpec& m, MachineState& ms) {
    if (ms.state == m.final_state) return false;
    auto it = m.delta.find({ms.state, ms.tape[ms.head]});
    if (it == m.delta.end())
        throw Error("machine is stuck: no transition for (" + m.states[ms.state] + ", " +
                    m.alphabet[ms.tape[ms.head]] + ")");
    const TMTransition& tr = it->second;
    ms.tape[ms.head] = tr.write;
    ms.state = tr.next_state;
    if (tr.move < 0) {
        if (ms.head == 0) throw OutOfSpace("head moved off the left end");
        --ms.head;
    } else if (tr.move > 0) {
        if (ms.head + 1 >= ms.tape.size()) throw OutOfSpace("head moved past the declared bound");
        ++ms.head;
    }
    return true;
}

BitStr output_of(const TMSpec& m, const MachineState& ms) {
    const int c0 = m.symbol("0"), c1 = m.symbol("1");
    std::size_t len = 0;
    while (len < ms.tape.size() && (ms.tape[len] == c0 || ms.tape[len] == c1)) ++len;
    BitStr out;
    for (std::size_t j = 0; j < len; ++j)
        if (ms.tape[j] == c1) out.set(len - 1 - j);
    return out;
}

BitStr run_direct(const TMSpec& m, const BitStr& input, const Nat& max_steps) {
    MachineState ms = initial_state(m, input);
    const Nat p = m.p_of(input.length());
    Nat steps = 0;
    while (ms.state != m.final_state) {
        step_direct(m, ms);
        ++steps;
        if (m.time_bounded && steps > p) throw BoundExceeded("machine exceeded its time bound");
        if (steps > max_steps) throw BoundExceeded("machine exceeded the step budget");
    }
    return output_of(m, ms);
}

// ── configuration encoding ───────────────────────────────────────────────────
// Layout of a configuration of length q(n) = c*p(n) + k + 2:
//   bit 0                      pad, always 0 (so bit 0 of a successor is 0)
//   bits 1+c*j .. 1+c*j+s-1    symbol code of cell j, low bit first
//   bit  1+c*j+s               head flag of cell j
//   bits 1+c*p .. 1+c*p+k-1    state code
//   bit  1+c*p+k               sentinel, always 1 (fixes the length)

BitStr encode_config(const TMSpec& m, const MachineState& ms, std::size_t n) {
    const std::size_t p = to_u64_checked(m.p_of(n), "tape length");
    if (ms.tape.size() != p) throw Error("machine state has the wrong tape length");
    const std::size_t s = m.sym_bits(), c = m.cell_bits(), k = m.state_bits();
    BitStr out;
    for (std::size_t j = 0; j < p; ++j) {
        const int code = ms.tape[j];
        for (std::size_t b = 0; b < s; ++b)
            if ((code >> b) & 1) out.set(1 + c * j + b);
        if (ms.head == j) out.set(1 + c * j + s);
    }
    for (std::size_t b = 0; b < k; ++b)
        if ((ms.state >> b) & 1) out.set(1 + c * p + b);
    out.set(1 + c * p + k);
    return out;
}

MachineState decode_config(const TMSpec& m, const BitStr& config, std::size_t n) {
    const std::size_t p = to_u64_checked(m.p_of(n), "tape length");
    const std::size_t q = to_u64_checked(m.q_of(n), "config length");
    const std::size_t s = m.sym_bits(), c = m.cell_bits(), k = m.state_bits();
    if (config.length() != q) throw DecodeError("configuration has the wrong length");
    if (config.test(0)) throw DecodeError("configuration pad bit is set");
    MachineState ms;
    ms.tape.assign(p, 0);
    std::size_t heads = 0;
    for (std::size_t j = 0; j < p; ++j) {
        int code = 0;
        for (std::size_t b = 0; b < s; ++b)
            if (config.test(1 + c * j + b)) code |= 1 << b;
        if (code >= static_cast<int>(m.alphabet.size()))
            throw DecodeError("invalid symbol code in cell " + std::to_string(j));
        ms.tape[j] = code;
        if (config.test(1 + c * j + s)) {
            ms.head = j;
            ++heads;
        }
    }
    if (heads != 1)
        throw DecodeError("configuration has " + std::to_string(heads) + " head markers");
    int st = 0;
    for (std::size_t b = 0; b < k; ++b)
        if (config.test(1 + c * p + b)) st |= 1 << b;
    if (st >= static_cast<int>(m.states.size())) throw DecodeError("invalid state code");
    ms.state = st;
    return ms;
}

// ── bit-graph formulas ───────────────────────────────────────────────────────

namespace {

// term builders shared by the formula constructors; everything is expressed
// uniformly in |X|, so one formula serves all input lengths
struct Builder {
    const TMSpec& m;
    std::size_t s, c, k;
    NumTermPtr i, p_term, q_term;
    StrTermPtr X, Y;

    explicit Builder(const TMSpec& mm) : m(mm) {
        s = m.sym_bits();
        c = m.cell_bits();
        k = m.state_bits();
        i = num_var("i");
        X = str_var("X");
        Y = str_var("Y");
        NumTermPtr n = num_len(X);
        p_term = num_const(0);
        for (auto it = m.poly.rbegin(); it != m.poly.rend(); ++it)
            p_term = struct_eq(p_term, num_const(0))
                         ? num_const(*it)
                         : num_add(num_mul(p_term, n), num_const(*it));
        q_term = num_add(num_mul(num_const(c), p_term), num_const(k + 2));
    }

    NumTermPtr nc(std::size_t v) const { return num_const(Nat(v)); }

    // position of symbol bit b of cell j (as a term in j)
    NumTermPtr sym_pos(NumTermPtr j, std::size_t b) const {
        return num_add(num_mul(nc(c), std::move(j)), nc(b + 1));
    }
    NumTermPtr head_pos(NumTermPtr j) const {
        return num_add(num_mul(nc(c), std::move(j)), nc(s + 1));
    }
    NumTermPtr state_pos(std::size_t b) const {
        return num_add(num_mul(nc(c), p_term), nc(1 + b));
    }
    NumTermPtr sentinel_pos() const { return num_add(num_mul(nc(c), p_term), nc(k + 1)); }

    FormulaPtr head_at(NumTermPtr j) const { return f_mem(Y, head_pos(std::move(j))); }

    FormulaPtr sym_is(NumTermPtr j, int code) const {
        std::vector<FormulaPtr> cs;
        for (std::size_t b = 0; b < s; ++b) {
            FormulaPtr bit = f_mem(Y, sym_pos(j, b));
            cs.push_back((code >> b) & 1 ? bit : f_not(bit));
        }
        return f_and_all(cs);
    }

    FormulaPtr state_is(int code) const {
        std::vector<FormulaPtr> cs;
        for (std::size_t b = 0; b < k; ++b) {
            FormulaPtr bit = f_mem(Y, state_pos(b));
            cs.push_back((code >> b) & 1 ? bit : f_not(bit));
        }
        return f_and_all(cs);
    }

    // the head reads symbol a (free of the bit variable, so cached per step)
    FormulaPtr head_sym_is(int code) const {
        return f_exists_num("j", true, p_term,
                            f_and(head_at(num_var("j")), sym_is(num_var("j"), code)));
    }

    FormulaPtr trans_fires(int state, int sym) const {
        return f_and(state_is(state), head_sym_is(sym));
    }

    FormulaPtr is_config() const {
        std::vector<FormulaPtr> cs;
        cs.push_back(f_num_eq(num_len(Y), q_term));
        cs.push_back(f_not(f_mem(Y, nc(0))));
        // exactly one head marker
        cs.push_back(f_exists_num(
            "j", true, p_term,
            f_and(head_at(num_var("j")),
                  f_forall_num("l", true, p_term,
                               f_imp(head_at(num_var("l")),
                                     f_num_eq(num_var("l"), num_var("j")))))));
        // every cell holds a symbol of the alphabet
        if (m.alphabet.size() < (std::size_t{1} << s)) {
            std::vector<FormulaPtr> any;
            for (std::size_t a = 0; a < m.alphabet.size(); ++a)
                any.push_back(sym_is(num_var("j"), static_cast<int>(a)));
            cs.push_back(f_forall_num("j", true, p_term, f_or_all(any)));
        }
        // the state code names a state
        if (m.states.size() < (std::size_t{1} << k)) {
            std::vector<FormulaPtr> any;
            for (std::size_t st = 0; st < m.states.size(); ++st)
                any.push_back(state_is(static_cast<int>(st)));
            cs.push_back(f_or_all(any));
        }
        return f_and_all(cs);
    }
};

}  // namespace

FormulaPtr init_formula(const TMSpec& m) {
    Builder b(m);
    std::vector<FormulaPtr> dis;
    dis.push_back(f_num_eq(b.i, b.sentinel_pos()));
    dis.push_back(f_num_eq(b.i, b.nc(b.s + 1)));  // head flag of cell 0
    for (std::size_t t = 0; t < b.k; ++t)
        if ((m.start >> t) & 1) dis.push_back(f_num_eq(b.i, b.state_pos(t)));
    // cell j holds the input bit X(|X| - (j+1)); blanks (code 0) need no bits
    const int c0 = m.symbol("0"), c1 = m.symbol("1");
    for (std::size_t t = 0; t < b.s; ++t) {
        const bool on0 = (c0 >> t) & 1, on1 = (c1 >> t) & 1;
        if (!on0 && !on1) continue;
        FormulaPtr eq = f_num_eq(b.i, b.sym_pos(num_var("j"), t));
        FormulaPtr xbit =
            f_mem(b.X, num_monus(num_len(b.X), num_add(num_var("j"), b.nc(1))));
        FormulaPtr body = on0 && on1 ? eq : f_and(eq, on1 ? xbit : f_not(xbit));
        dis.push_back(f_exists_num("j", true, num_len(b.X), body));
    }
    return f_or_all(dis);
}

FormulaPtr is_config_formula(const TMSpec& m) { return Builder(m).is_config(); }

FormulaPtr next_formula(const TMSpec& m) {
    Builder b(m);
    NumTermPtr j = num_var("j");

    // one disjunct per target bit kind, gated by which transition fires; the
    // gates are free of the bit variable and get evaluated once per step
    std::vector<FormulaPtr> write_gate(b.s), state_gate(b.k);
    FormulaPtr move_gate[3];  // L, S, R
    for (const auto& [key, tr] : m.delta) {
        FormulaPtr fires = b.trans_fires(key.first, key.second);
        auto add = [&](FormulaPtr& g) { g = g ? f_or(g, fires) : fires; };
        for (std::size_t t = 0; t < b.s; ++t)
            if ((tr.write >> t) & 1) add(write_gate[t]);
        for (std::size_t t = 0; t < b.k; ++t)
            if ((tr.next_state >> t) & 1) add(state_gate[t]);
        add(move_gate[tr.move + 1]);
    }

    std::vector<FormulaPtr> dis;
    dis.push_back(f_num_eq(b.i, b.sentinel_pos()));
    // cells away from the head keep their symbol
    for (std::size_t t = 0; t < b.s; ++t)
        dis.push_back(f_and(f_exists_num("j", true, b.p_term,
                                         f_and(f_num_eq(b.i, b.sym_pos(j, t)),
                                               f_not(b.head_at(j)))),
                            f_mem(b.Y, b.i)));
    // the head cell gets the written symbol
    for (std::size_t t = 0; t < b.s; ++t)
        if (write_gate[t])
            dis.push_back(f_exists_num(
                "j", true, b.p_term,
                f_and_all({f_num_eq(b.i, b.sym_pos(j, t)), b.head_at(j), write_gate[t]})));
    // the head flag lands one cell left, in place, or one cell right
    if (move_gate[0])  // left: i + c = c*j + (s+1), i.e. i is cell j-1's flag
        dis.push_back(f_exists_num(
            "j", true, b.p_term,
            f_and_all({f_num_eq(num_add(b.i, b.nc(b.c)), b.head_pos(j)),
                       f_num_le(b.nc(1), j), b.head_at(j), move_gate[0]})));
    if (move_gate[1])
        dis.push_back(f_exists_num(
            "j", true, b.p_term,
            f_and_all({f_num_eq(b.i, b.head_pos(j)), b.head_at(j), move_gate[1]})));
    if (move_gate[2])  // right: i = c*j + (c+s+1), with cell j+1 inside the tape
        dis.push_back(f_exists_num(
            "j", true, b.p_term,
            f_and_all({f_num_eq(b.i, num_add(num_mul(b.nc(b.c), j), b.nc(b.c + b.s + 1))),
                       f_num_le(num_add(j, b.nc(2)), b.p_term), b.head_at(j),
                       move_gate[2]})));
    // the new state code
    for (std::size_t t = 0; t < b.k; ++t)
        if (state_gate[t]) dis.push_back(f_and(f_num_eq(b.i, b.state_pos(t)), state_gate[t]));

    return f_and_all({b.is_config(), f_not(b.state_is(m.final_state)), f_or_all(dis)});
}

FormulaPtr next_prime_formula(const TMSpec& m) {
    Builder b(m);
    return f_or(next_formula(m),
                f_and_all({b.is_config(), b.state_is(m.final_state), f_mem(b.Y, b.i)}));
}

// ── compilation ──────────────────────────────────────────────────────────────

CompiledOperator compile_ptime(const TMSpec& m, const BitStr& input) {
    Builder b(m);
    const std::size_t n = input.length();
    const Nat p = m.p_of(n);
    const std::size_t q = to_u64_checked(m.q_of(n), "config length");

    // the trace-appending step: keep Y, lay down the initial configuration,
    // and append the successor of the last configuration
    Substitution sub;
    sub.nums.emplace_back("i", num_monus(num_var("i"), num_len(b.Y)));
    sub.strs.emplace_back("Y", str_last(b.q_term, b.Y));
    FormulaPtr appended = substitute(next_formula(m), sub);
    FormulaPtr phi =
        f_and(f_num_lt(b.i, num_add(num_len(b.Y), b.q_term)),
              f_or_all({f_mem(b.Y, b.i), init_formula(m), appended}));

    const std::size_t width = to_u64_checked(Nat(q) * (p + 1), "operator width");
    Env env;
    env.strs["X"] = input;
    std::string name = (m.name.empty() ? "tm" : m.name) + "-ptime";
    return {make_operator(std::move(name), std::move(phi), width, std::move(env)),
            Flavor::ptime_trace, m, n, p, q};
}

CompiledOperator compile_pspace(const TMSpec& m, const BitStr& input) {
    Builder b(m);
    const std::size_t n = input.length();
    const Nat p = m.p_of(n);
    const std::size_t q = to_u64_checked(m.q_of(n), "config length");

    // in place: a non-configuration becomes the initial configuration, and a
    // configuration becomes its successor (final ones stay put)
    FormulaPtr phi = f_and(f_num_lt(b.i, b.q_term),
                           f_or(f_and(f_not(b.is_config()), init_formula(m)),
                                next_prime_formula(m)));

    Env env;
    env.strs["X"] = input;
    std::string name = (m.name.empty() ? "tm" : m.name) + "-pspace";
    return {make_operator(std::move(name), std::move(phi), q + 1, std::move(env)),
            Flavor::pspace_inplace, m, n, p, q};
}

BitStr output_from_config(const TMSpec& m, const BitStr& config, std::size_t n) {
    MachineState ms;
    try {
        ms = decode_config(m, config, n);
    } catch (const DecodeError& e) {
        throw NotFinal(std::string("not a final configuration: ") + e.what());
    }
    if (ms.state != m.final_state)
        throw NotFinal("configuration is in state " + m.states[ms.state] + ", not " +
                       m.states[m.final_state]);
    return output_of(m, ms);
}

RunResult run_via_id(const TMSpec& m, const BitStr& input, Flavor flavor) {
    if (flavor == Flavor::ptime_trace) {
        CompiledOperator co = compile_ptime(m, input);
        FixpointResult fr = find_fixpoint_inflationary(co.op);
        if (Nat(fr.k) > co.p + 1) throw BoundExceeded("machine exceeded its time bound");
        BitStr tail = last_bits(Nat(co.q), fr.fixpoint);
        return {output_from_config(m, tail, co.input_len), Nat(fr.k), co.op.width};
    }
    CompiledOperator co = compile_pspace(m, input);
    PeriodReport pr = find_period(co.op, BitStr());
    if (pr.v != 1) throw NotFinal("operator does not stabilize: the machine never halts");
    return {output_from_config(m, pr.state_at_u, co.input_len), pr.u, co.op.width};
}

}  // namespace bid

#include "bid/engine.hpp"

#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "bid/classify.hpp"
#include "bid/compiled.hpp"
#include "bid/errors.hpp"

namespace bid {

namespace {

using FK = Formula::Kind;
using NK = NumTerm::Kind;

CompiledStepper make_stepper(const Operator& op) {
    return CompiledStepper(op.phi, op.bit_var, op.state_var, op.width, op.env);
}

BitStr random_state(std::mt19937_64& rng, std::size_t width) {
    BitStr s;
    for (std::size_t i = 0; i < width; ++i)
        if (rng() & 1) s.set(i);
    return s;
}

}  // namespace

Operator make_operator(std::string name, FormulaPtr phi, std::size_t width, Env env,
                       std::string bit_var, std::string state_var) {
    FormulaClass c = classify(phi);
    if (c.kind == FormulaClass::Kind::Unbounded || c.level != 0)
        throw Error("operator formula must be SigmaB(0), got " + c.to_string());
    for (const auto& v : free_vars(phi)) {
        if (v.sort == Sort::Num && v.name == bit_var) continue;
        if (v.sort == Sort::Str && v.name == state_var) continue;
        bool closed = v.sort == Sort::Num ? env.nums.count(v.name) != 0
                                          : env.strs.count(v.name) != 0;
        if (!closed) throw Error("operator formula has unclosed free variable " + v.name);
    }
    return Operator{std::move(name), std::move(phi), std::move(bit_var), std::move(state_var),
                    width, std::move(env)};
}

BitStr step(const Operator& op, const BitStr& state, bool compiled) {
    if (compiled) return make_stepper(op).step(state);
    Env env = op.env;
    env.strs.erase(op.state_var);
    return phi_step(op.phi, op.bit_var, op.state_var, op.width, state, env);
}

BitStr iterate(const Operator& op, const BitStr& start, const Nat& n) {
    if (n > op.env.limits.iterations)
        throw ResourceLimit("iteration count exceeds budget");
    CompiledStepper st = make_stepper(op);
    BitStr state = start.clipped(op.width);
    for (Nat k = 0; k < n; ++k) state = st.step(state);
    return state;
}

IterationTrace iterate_with_trace(const Operator& op, const BitStr& start, const Nat& n) {
    if (n > op.env.limits.iterations)
        throw ResourceLimit("iteration count exceeds budget");
    CompiledStepper st = make_stepper(op);
    IterationTrace t;
    t.width = op.width;
    BitStr state = start.clipped(op.width);
    t.states.push_back(state);
    for (Nat k = 0; k < n; ++k) {
        state = st.step(state);
        t.states.push_back(state);
    }
    return t;
}

namespace {

// does some Or-disjunct read the state at exactly the bit variable?
bool has_state_bit_disjunct(const FormulaPtr& f, const Operator& op) {
    if (f->kind == FK::Or)
        return has_state_bit_disjunct(f->f, op) || has_state_bit_disjunct(f->g, op);
    return f->kind == FK::Mem && f->sa->kind == StrTerm::Kind::Var &&
           f->sa->var == op.state_var && f->nb->kind == NK::Var && f->nb->var == op.bit_var;
}

// is t an additive chain with |state| as one summand? (then t >= |Y|, so a
// guard i < t cannot cut off a set state bit)
bool add_chain_has_state_len(const NumTermPtr& t, const Operator& op) {
    if (t->kind == NK::Len)
        return t->str->kind == StrTerm::Kind::Var && t->str->var == op.state_var;
    if (t->kind == NK::Add)
        return add_chain_has_state_len(t->a, op) || add_chain_has_state_len(t->b, op);
    return false;
}

}  // namespace

InflReport is_inflationary(const Operator& op, InflMode mode, std::size_t exhaustive_cap,
                           std::size_t samples, std::uint64_t seed) {
    if (mode == InflMode::Syntactic) {
        if (has_state_bit_disjunct(op.phi, op))
            return {InflReport::Verdict::Yes, {}, 0};
        if (op.phi->kind == FK::And) {
            const FormulaPtr& g = op.phi->f;
            bool guard_ok = g->kind == FK::NumLt && g->na->kind == NK::Var &&
                            g->na->var == op.bit_var && add_chain_has_state_len(g->nb, op);
            if (guard_ok && has_state_bit_disjunct(op.phi->g, op))
                return {InflReport::Verdict::Yes, {}, 0};
        }
        return {InflReport::Verdict::Unknown, {}, 0};
    }

    auto check = [&](const CompiledStepper& st, const BitStr& y) -> std::optional<std::size_t> {
        BitStr next = st.step(y);
        for (std::size_t i = 0; i < op.width; ++i)
            if (y.test(i) && !next.test(i)) return i;
        return std::nullopt;
    };
    CompiledStepper st = make_stepper(op);

    if (mode == InflMode::Exhaustive) {
        if (op.width > exhaustive_cap)
            throw ResourceLimit("exhaustive inflationary check needs width <= cap");
        std::uint64_t count = std::uint64_t{1} << op.width;
        for (std::uint64_t v = 0; v < count; ++v) {
            BitStr y = BitStr::from_nat(Nat(v));
            if (auto i = check(st, y)) return {InflReport::Verdict::No, y, *i};
        }
        return {InflReport::Verdict::Yes, {}, 0};
    }

    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        BitStr y = random_state(rng, op.width);
        if (auto i = check(st, y)) return {InflReport::Verdict::No, y, *i};
    }
    return {InflReport::Verdict::Unknown, {}, 0};
}

FixpointResult find_fixpoint_inflationary(const Operator& op) {
    CompiledStepper st = make_stepper(op);
    BitStr state;
    std::size_t k = 0;
    for (;;) {
        BitStr next = st.step(state);
        if (next == state) return {k, state};
        for (std::size_t i = 0; i < op.width; ++i)
            if (state.test(i) && !next.test(i))
                throw NotInflationary("operator dropped bit " + std::to_string(i) +
                                          " at step " + std::to_string(k),
                                      i);
        state = std::move(next);
        ++k;
        if (Nat(k) > op.env.limits.iterations)
            throw ResourceLimit("fixed-point search exceeds budget");
    }
}

PeriodReport find_period_hash(const Operator& op, const BitStr& start) {
    CompiledStepper st = make_stepper(op);
    std::unordered_map<BitStr, std::uint64_t, BitStrHash> seen;
    BitStr state = start.clipped(op.width);
    std::uint64_t t = 0;
    for (;;) {
        auto [it, fresh] = seen.emplace(state, t);
        if (!fresh) {
            Nat u = it->second;
            return {u, Nat(t - it->second), std::move(state)};
        }
        state = st.step(state);
        ++t;
        if (Nat(t) > op.env.limits.iterations)
            throw ResourceLimit("period search exceeds budget");
    }
}

PeriodReport find_period_brent(const Operator& op, const BitStr& start) {
    CompiledStepper st = make_stepper(op);
    BitStr x0 = start.clipped(op.width);

    // Brent: find the minimal period lam, then the minimal tail mu
    Nat power = 1, lam = 1;
    BitStr tortoise = x0;
    BitStr hare = st.step(x0);
    Nat spent = 1;
    auto charge = [&](const Nat& more) {
        spent += more;
        if (spent > op.env.limits.iterations)
            throw ResourceLimit("period search exceeds budget");
    };
    while (tortoise != hare) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = st.step(hare);
        charge(1);
        ++lam;
    }

    hare = x0;
    for (Nat k = 0; k < lam; ++k) hare = st.step(hare);
    charge(lam);
    tortoise = x0;
    Nat mu = 0;
    while (tortoise != hare) {
        tortoise = st.step(tortoise);
        hare = st.step(hare);
        charge(2);
        ++mu;
    }
    return {mu, lam, std::move(tortoise)};
}

PeriodReport find_period(const Operator& op, const BitStr& start) {
    return op.width <= 32 ? find_period_hash(op, start) : find_period_brent(op, start);
}

HyperStr visited_states(const Operator& op, const BitStr& start, const Nat& n) {
    if (n > op.env.limits.iterations)
        throw ResourceLimit("iteration count exceeds budget");
    CompiledStepper st = make_stepper(op);
    HyperStr out;
    BitStr state = start.clipped(op.width);
    for (Nat m = 0; m < n; ++m) {
        out.insert(state);
        state = st.step(state);
    }
    return out;
}

std::optional<std::size_t> verify_trace(const Operator& op, const IterationTrace& trace,
                                        const BitStr& start) {
    if (trace.states.empty() || trace.states[0] != start.clipped(op.width)) return 0;
    CompiledStepper st = make_stepper(op);
    for (std::size_t j = 0; j + 1 < trace.states.size(); ++j)
        if (st.step(trace.states[j]) != trace.states[j + 1]) return j + 1;
    return std::nullopt;
}

bool check_composition(const Operator& op, const BitStr& z, const Nat& m, const Nat& n) {
    return iterate(op, iterate(op, z, m), n) == iterate(op, z, m + n);
}

void write_trace(std::ostream& os, const IterationTrace& trace) {
    os << "bid-trace v1 width=" << trace.width << " states=" << trace.states.size() << "\n";
    for (std::size_t j = 0; j < trace.states.size(); ++j)
        os << j << " " << trace.states[j].to_hex() << "\n";
}

IterationTrace read_trace(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw DecodeError("empty trace");
    IterationTrace t;
    std::size_t count = 0;
    {
        std::istringstream hs(header);
        std::string magic, ver, wf, sf;
        hs >> magic >> ver >> wf >> sf;
        if (magic != "bid-trace" || ver != "v1" || wf.rfind("width=", 0) != 0 ||
            sf.rfind("states=", 0) != 0)
            throw DecodeError("bad trace header: " + header);
        t.width = std::stoull(wf.substr(6));
        count = std::stoull(sf.substr(7));
    }
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t idx;
        std::string hex;
        if (!(ls >> idx >> hex)) throw DecodeError("bad trace record: " + line);
        if (idx != t.states.size()) throw DecodeError("trace records out of order at " + line);
        t.states.push_back(BitStr::from_hex(hex));
    }
    if (t.states.size() != count)
        throw DecodeError("trace record count mismatch");
    return t;
}

}  // namespace bid

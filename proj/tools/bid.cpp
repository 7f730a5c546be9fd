#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bid/classify.hpp"
#include "bid/corpus.hpp"
#include "bid/engine.hpp"
#include "bid/errors.hpp"
#include "bid/parse.hpp"
#include "bid/print.hpp"
#include "bid/tm.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

// exit codes: 0 ok, 2 parse/sort error, 3 resource limit, 4 bound violation
constexpr int kOk = 0, kOtherError = 1, kParseError = 2, kResourceLimit = 3, kBoundError = 4;

struct Options {
    std::string format = "text";
    std::uint64_t seed = 1;
    bid::Nat budget;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bid::Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const bid::Def& find_def(const std::vector<bid::Def>& defs, const std::string& name) {
    for (const auto& d : defs)
        if (d.name == name) return d;
    throw bid::Error("no definition named " + name);
}

// a definition usable as an operator: one number parameter (the bit) and one
// string parameter (the state)
bid::Operator def_operator(const bid::Def& d, std::size_t width, const bid::Nat& budget) {
    std::string bit_var, state_var;
    for (const auto& p : d.params) {
        if (p.sort == bid::Sort::Num && bit_var.empty()) bit_var = p.name;
        else if (p.sort == bid::Sort::Str && state_var.empty()) state_var = p.name;
        else throw bid::Error("definition " + d.name + " must have parameters (i, Y)");
    }
    if (bit_var.empty() || state_var.empty())
        throw bid::Error("definition " + d.name + " must have parameters (i, Y)");
    bid::Env env;
    env.limits.iterations = budget;
    return bid::make_operator(d.name, d.body, width, std::move(env), bit_var, state_var);
}

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.format == "json")
        std::cout << j.dump() << "\n";
    else
        std::cout << text << "\n";
}

void flush_trace(const std::string& path, const bid::IterationTrace& tr) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw bid::Error("cannot open trace file: " + path);
    bid::write_trace(out, tr);
}

int cmd_classify(const Options& opt, const std::string& file) {
    auto defs = bid::parse_defs(read_file(file));
    json out = json::array();
    std::ostringstream text;
    for (std::size_t k = 0; k < defs.size(); ++k) {
        bid::FormulaClass c = bid::classify(defs[k].body);
        out.push_back({{"name", defs[k].name}, {"class", c.to_string()}});
        if (k) text << "\n";
        text << defs[k].name << ": " << c.to_string();
    }
    emit(opt, {{"defs", out}}, text.str());
    return kOk;
}

int cmd_iterate(const Options& opt, const std::string& file, const std::string& name,
                const std::string& count, const std::string& start_lit, std::size_t width,
                const std::string& trace_out) {
    auto defs = bid::parse_defs(read_file(file));
    bid::Operator op = def_operator(find_def(defs, name), width, opt.budget);
    bid::Nat n(count);
    bid::BitStr state = bid::BitStr::from_literal(start_lit).clipped(width);
    bid::IterationTrace tr;
    tr.width = width;
    tr.states.push_back(state);
    try {
        for (bid::Nat k = 0; k < n; ++k) {
            if (k >= opt.budget) throw bid::ResourceLimit("iteration count exceeds budget");
            state = bid::step(op, state);
            tr.states.push_back(state);
        }
    } catch (const bid::ResourceLimit&) {
        flush_trace(trace_out, tr);  // partial trace is still a valid witness
        throw;
    }
    flush_trace(trace_out, tr);
    emit(opt,
         {{"state", state.to_literal()}, {"width", width}, {"steps", count}},
         "state=" + state.to_literal());
    return kOk;
}

int cmd_fixpoint(const Options& opt, const std::string& file, const std::string& name,
                 std::size_t width, const std::string& trace_out) {
    auto defs = bid::parse_defs(read_file(file));
    bid::Operator op = def_operator(find_def(defs, name), width, opt.budget);
    bid::FixpointResult r = bid::find_fixpoint_inflationary(op);
    if (!trace_out.empty()) flush_trace(trace_out, bid::iterate_with_trace(op, {}, r.k));
    emit(opt,
         {{"k", r.k}, {"fixpoint", r.fixpoint.to_literal()}, {"width", width}},
         "k=" + std::to_string(r.k) + " fixpoint=" + r.fixpoint.to_literal());
    return kOk;
}

int cmd_period(const Options& opt, const std::string& file, const std::string& name,
               const std::string& start_lit, std::size_t width) {
    auto defs = bid::parse_defs(read_file(file));
    bid::Operator op = def_operator(find_def(defs, name), width, opt.budget);
    bid::PeriodReport r = bid::find_period(op, bid::BitStr::from_literal(start_lit));
    // the witnesses of the periodicity axiom, as bit-string literals: the
    // states at counters U and U + V coincide
    std::string U = bid::BitStr::from_nat(r.u).to_literal();
    std::string V = bid::BitStr::from_nat(r.v).to_literal();
    std::ostringstream text;
    text << "u=" << r.u << " v=" << r.v << " U=" << U << " V=" << V;
    emit(opt,
         {{"u", r.u.str()}, {"v", r.v.str()}, {"U", U}, {"V", V},
          {"state_at_u", r.state_at_u.to_literal()}, {"width", width}},
         text.str());
    return kOk;
}

int cmd_run_tm(const Options& opt, const std::string& machine_file, const std::string& input_lit,
               const std::string& flavor_name) {
    bid::TMSpec m = bid::tm_from_file(machine_file);
    bid::BitStr input = bid::BitStr::from_literal(input_lit);
    bid::Flavor flavor = m.time_bounded ? bid::Flavor::ptime_trace : bid::Flavor::pspace_inplace;
    if (flavor_name == "ptime") flavor = bid::Flavor::ptime_trace;
    else if (flavor_name == "pspace") flavor = bid::Flavor::pspace_inplace;
    else if (!flavor_name.empty()) throw bid::Error("flavor must be ptime or pspace");
    bid::RunResult r = bid::run_via_id(m, input, flavor);
    std::ostringstream text;
    text << "output=" << r.output.to_literal() << " iterations=" << r.iterations
         << " width=" << r.width;
    emit(opt,
         {{"output", r.output.to_literal()}, {"iterations", r.iterations.str()},
          {"width", r.width}},
         text.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finitary inductive definitions over two-sorted bounded arithmetic"};
    app.require_subcommand(1);

    Options opt;
    opt.budget = bid::Nat(1) << 24;
    if (const char* e = std::getenv("BID_BUDGET")) opt.budget = bid::Nat(e);
    std::string budget_str;
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opt.seed, "seed for randomized checks");
    app.add_option("--budget", budget_str, "iteration budget (default $BID_BUDGET or 2^24)");

    std::string file, name, count = "0", start = "0b0", machine, input, flavor, trace_out;
    std::size_t width = 1;

    auto* classify = app.add_subcommand("classify", "print the class of each definition")->fallthrough();
    classify->add_option("file", file)->required();

    auto* iterate = app.add_subcommand("iterate", "apply an operator n times")->fallthrough();
    iterate->add_option("file", file)->required();
    iterate->add_option("name", name)->required();
    iterate->add_option("n", count)->required();
    iterate->add_option("start", start);
    iterate->add_option("--width", width)->required();
    iterate->add_option("--trace-out", trace_out);

    auto* fixpoint = app.add_subcommand("fixpoint", "iterate an inflationary operator to its fixed point")->fallthrough();
    fixpoint->add_option("file", file)->required();
    fixpoint->add_option("name", name)->required();
    fixpoint->add_option("--width", width)->required();
    fixpoint->add_option("--trace-out", trace_out);

    auto* period = app.add_subcommand("period", "find the minimal (u, v) with equal states")->fallthrough();
    period->add_option("file", file)->required();
    period->add_option("name", name)->required();
    period->add_option("start", start);
    period->add_option("--width", width)->required();

    auto* run_tm = app.add_subcommand("run-tm", "run a machine through its compiled operator")->fallthrough();
    run_tm->add_option("machine", machine)->required();
    run_tm->add_option("input", input)->required();
    run_tm->add_option("--flavor", flavor, "ptime or pspace (default: the machine's bound kind)");

    CLI11_PARSE(app, argc, argv);
    if (!budget_str.empty()) opt.budget = bid::Nat(budget_str);
    if (opt.budget <= 0) {
        std::cerr << "error: budget must be positive\n";
        return kParseError;
    }

    try {
        if (classify->parsed()) return cmd_classify(opt, file);
        if (iterate->parsed()) return cmd_iterate(opt, file, name, count, start, width, trace_out);
        if (fixpoint->parsed()) return cmd_fixpoint(opt, file, name, width, trace_out);
        if (period->parsed()) return cmd_period(opt, file, name, start, width);
        if (run_tm->parsed()) return cmd_run_tm(opt, machine, input, flavor);
    } catch (const bid::ParseError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.span.line << ", column "
                  << e.span.column << ")\n";
        return kParseError;
    } catch (const bid::SortError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.span.line << ", column "
                  << e.span.column << ")\n";
        return kParseError;
    } catch (const bid::ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const bid::BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBoundError;
    } catch (const bid::OutOfSpace& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBoundError;
    } catch (const bid::NotFinal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBoundError;
    } catch (const bid::NotInflationary& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBoundError;
    } catch (const bid::UnboundVariable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const bid::DecodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const bid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOtherError;
    }
    return kOk;
}

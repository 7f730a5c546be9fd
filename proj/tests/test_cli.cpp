#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bid/engine.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

// run the CLI with stderr folded into stdout
Run cli(const std::string& args) {
    std::string cmd = std::string(BID_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& rel) { return std::string(BID_DATA_DIR) + "/" + rel; }

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/bid-cli-test-") + name;
    std::ofstream out(path);
    REQUIRE(out);
    out << content;
    return path;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify: shipped axioms are all SigmaB(0)") {
    Run r = cli("classify " + data("axioms/base.bid"));
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++count;
        CHECK(contains(line, ": SigmaB(0)"));
    }
    CHECK(count == 19);
}

TEST_CASE("classify: sample file shows the hierarchy") {
    Run r = cli("classify " + data("formulas/samples.bid"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "all_below: SigmaB(0)"));
    CHECK(contains(r.out, "has_subset_sum: SigmaB(1)"));
    CHECK(contains(r.out, "fp_literal: SigmaB(0)"));
}

TEST_CASE("classify: malformed file exits 2 with a span") {
    std::string bad = temp_file("malformed.bid", "def broken(x) := x < )\n");
    Run r = cli("classify " + bad);
    CHECK(r.code == 2);
    CHECK(contains(r.out, "line 1"));
    Run missing = cli("classify /nonexistent/nope.bid");
    CHECK(missing.code == 2);
}

TEST_CASE("iterate") {
    std::string ops = data("operators/examples.bid");
    Run r = cli("iterate " + ops + " negate 5 --width 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "state=0b111"));

    // n = 0 echoes the (clipped) start
    r = cli("iterate " + ops + " negate 0 0b1011 --width 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "state=0b11"));
}

TEST_CASE("iterate: budget exceeded exits 3 and flushes a partial trace") {
    std::string ops = data("operators/examples.bid");
    std::string trace = "/tmp/bid-cli-test-partial.trace";
    std::remove(trace.c_str());
    Run r = cli("iterate " + ops + " counter 100 --width 6 --budget 10 --trace-out " + trace);
    CHECK(r.code == 3);
    std::ifstream in(trace);
    REQUIRE(in);
    bid::IterationTrace tr = bid::read_trace(in);
    CHECK(tr.width == 6);
    CHECK(tr.states.size() == 11);  // start plus the 10 budgeted steps
}

TEST_CASE("fixpoint") {
    std::string ops = data("operators/examples.bid");
    Run r = cli("fixpoint " + ops + " shift --width 4");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "k=4 fixpoint=0b1111"));

    // a non-inflationary operator is a loud error, exit 4
    r = cli("fixpoint " + ops + " negate --width 4");
    CHECK(r.code == 4);
}

TEST_CASE("fixpoint writes a verifiable trace") {
    std::string ops = data("operators/examples.bid");
    std::string trace = "/tmp/bid-cli-test-fix.trace";
    std::remove(trace.c_str());
    Run r = cli("fixpoint " + ops + " shift --width 4 --trace-out " + trace);
    CHECK(r.code == 0);
    std::ifstream in(trace);
    REQUIRE(in);
    bid::IterationTrace tr = bid::read_trace(in);
    CHECK(tr.states.size() == 5);
    CHECK(tr.states.back() == bid::BitStr::ones(4));
}

TEST_CASE("period") {
    std::string ops = data("operators/examples.bid");
    Run r = cli("period " + ops + " negate --width 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "u=0 v=2 U=0b0 V=0b10"));

    r = cli("period " + ops + " ident 0b101 --width 3");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "u=0 v=1"));

    r = cli("period " + ops + " counter --width 4");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "u=0 v=16"));
}

TEST_CASE("run-tm") {
    Run r = cli("run-tm " + data("machines/inc.json") + " 0b1011");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "output=0b1100"));

    r = cli("run-tm " + data("machines/inc.json") + " 0b1011 --flavor ptime");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "output=0b1100"));

    r = cli("run-tm " + data("machines/counter.json") + " 0b101010 --flavor pspace");
    CHECK(r.code == 0);
    std::istringstream fields(r.out);
    std::string tok;
    bid::Nat iters = 0;
    while (fields >> tok)
        if (tok.rfind("iterations=", 0) == 0) iters = bid::Nat(tok.substr(11));
    CHECK(iters > 64);

    r = cli("run-tm /nonexistent.json 0b1");
    CHECK(r.code == 2);
}

TEST_CASE("run-tm: bound violation exits 4") {
    // halt machine with its time bound cut to zero steps: the single
    // transition to the final state exceeds p + 1 = 1 iterations? The halt
    // machine fixes within bound, so use a truncated increment bound instead.
    std::ifstream in(data("machines/inc.json"));
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    // shrink the declared time bound: poly [6, 4] -> [1]
    auto pos = text.find("\"poly\"");
    REQUIRE(pos != std::string::npos);
    auto open = text.find('[', pos), close = text.find(']', pos);
    text = text.substr(0, open + 1) + "1" + text.substr(close);
    std::string path = temp_file("inc-tight.json", text);
    Run r = cli("run-tm " + path + " 0b1011");
    CHECK(r.code == 4);
}

TEST_CASE("json output is deterministic and schema-stable") {
    std::string ops = data("operators/examples.bid");
    Run a = cli("--format json period " + ops + " negate --width 3");
    Run b = cli("--format json period " + ops + " negate --width 3");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "\"u\":\"0\""));
    CHECK(contains(a.out, "\"v\":\"2\""));
    CHECK(contains(a.out, "\"U\":\"0b0\""));
    CHECK(contains(a.out, "\"V\":\"0b10\""));

    Run c = cli("--format json fixpoint " + ops + " shift --width 4");
    CHECK(contains(c.out, "\"k\":4"));
    CHECK(contains(c.out, "\"fixpoint\":\"0b1111\""));

    Run d = cli("--format json run-tm " + data("machines/halt.json") + " 0b101");
    CHECK(d.code == 0);
    CHECK(contains(d.out, "\"output\":\"0b101\""));
}

TEST_CASE("budget must be positive") {
    std::string ops = data("operators/examples.bid");
    Run r = cli("iterate " + ops + " negate 1 --width 3 --budget 0");
    CHECK(r.code == 2);
}

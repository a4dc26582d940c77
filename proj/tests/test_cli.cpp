#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "kuboando/specfmt.hpp"

using namespace kuboando;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("KUBOANDO_BIN");
    if (bin == nullptr) throw std::runtime_error("KUBOANDO_BIN not set; run via ctest");
    const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed");
    RunResult r;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string(std::tmpnam(nullptr)) + ".txt";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

PsdMatrix matrix_from(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

} // namespace

TEST_CASE("norm prints twelve digits") {
    const RunResult r = run_cli("norm --spec 'scale 3 mean harmonic'");
    CHECK(r.code == 0);
    CHECK(r.out == "3.000000000000\n");
    const RunResult one = run_cli("norm --spec 'mean geometric'");
    CHECK(one.code == 0);
    CHECK(one.out == "1.000000000000\n");
}

TEST_CASE("convert emits representing function and measure") {
    const RunResult f = run_cli("convert --spec 'mean harmonic' function");
    CHECK(f.code == 0);
    CHECK(f.out == "moebius 1\n");
    const RunResult m = run_cli("convert --spec 'mean arithmetic' measure");
    CHECK(m.code == 0);
    CHECK(m.out == "atom0 0.5\natomInf 0.5\n");
}

TEST_CASE("eval reproduces closed forms") {
    TempFile a1("dim 1\n1\n");
    TempFile b1("dim 1\n3\n");
    const RunResult h = run_cli("eval --spec 'mean harmonic' --A " + a1.path + " --B " + b1.path);
    CHECK(h.code == 0);
    CHECK(h.out == "dim 1\n1.5\n");

    TempFile a2("dim 2\n1 0\n0 1\n");
    TempFile b2("dim 2\n3 0\n0 3\n");
    const RunResult am = run_cli("eval --spec 'mean arithmetic' --A " + a2.path + " --B " + b2.path);
    CHECK(am.code == 0);
    CHECK(am.out == "dim 2\n2 0\n0 2\n");
}

TEST_CASE("eval accepts measure files") {
    TempFile mu("atom 1 1\n");
    TempFile a("dim 2\n1 0\n0 1\n");
    const RunResult r = run_cli("eval --spec 'measure " + mu.path + "' --A " + a.path + " --B " + a.path);
    CHECK(r.code == 0);
    CHECK(r.out == "dim 2\n1 0\n0 1\n");
}

TEST_CASE("--out writes the file instead of stdout") {
    const std::string out_path = std::string(std::tmpnam(nullptr)) + ".txt";
    const RunResult r = run_cli("norm --spec 'parallel' --out " + out_path);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "0.500000000000\n");
    std::remove(out_path.c_str());
}

TEST_CASE("exit codes are stable per failure class") {
    CHECK(run_cli("norm --spec 'mean banana'").code == 2);              // parse error
    CHECK(run_cli("norm --spec 'measure /nonexistent/mu.txt'").code == 2);
    CHECK(run_cli("norm").code == 2);                                   // missing required option

    TempFile a2("dim 2\n1 0\n0 1\n");
    TempFile b1("dim 1\n2\n");
    CHECK(run_cli("eval --spec 'mean arithmetic' --A " + a2.path + " --B " + b1.path).code == 3);

    TempFile bad("dim 2\n1 2\n2 1\n");
    CHECK(run_cli("eval --spec 'mean arithmetic' --A " + a2.path + " --B " + bad.path).code == 4);

    CHECK(run_cli("convert --spec 'function power 0.3' measure").code == 5);
}

TEST_CASE("catalog lists the built-in forms") {
    const RunResult r = run_cli("catalog");
    CHECK(r.code == 0);
    for (const char* name : {"arithmetic", "geometric", "harmonic", "logarithmic", "parallel"})
        CHECK(r.out.find(name) != std::string::npos);
    CHECK(r.out.find("f:") != std::string::npos);
    CHECK(r.out.find("mu:") != std::string::npos);
}

TEST_CASE("verify runs green and deterministically") {
    const std::string args = "verify --trials 25 --dims 1:3 --format csv --seed 99";
    const RunResult first = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out.rfind("property,anchor,trials,worst_residual,pass\n", 0) == 0);
    CHECK(first.out.find(",false\n") == std::string::npos);
    const RunResult second = run_cli(args);
    CHECK(second.out == first.out);
}

TEST_CASE("verify surfaces failures through the exit code") {
    const RunResult r = run_cli("verify --trials 20 --dims 1:3 --tol limit=1e-30 --format text");
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL]") != std::string::npos);
    CHECK(run_cli("verify --dims 3:1 --trials 5").code == 2);          // bad range
    CHECK(run_cli("verify --tol loewner=x --trials 5 --dims 1:2").code == 2);
}

TEST_CASE("convert then eval round trips within 1e-8") {
    TempFile a("dim 2\n2 0.5\n0.5 1\n");
    TempFile b("dim 2\n3 -1\n-1 2\n");
    for (const char* mean : {"arithmetic", "geometric", "harmonic", "logarithmic"}) {
        const std::string spec = std::string("mean ") + mean;
        const RunResult direct = run_cli("eval --spec '" + spec + "' --A " + a.path + " --B " + b.path);
        REQUIRE(direct.code == 0);
        RunResult conv = run_cli("convert --spec '" + spec + "' function");
        REQUIRE(conv.code == 0);
        while (!conv.out.empty() && conv.out.back() == '\n') conv.out.pop_back();
        const RunResult via = run_cli("eval --spec 'function " + conv.out + "' --A " + a.path + " --B " + b.path);
        REQUIRE(via.code == 0);
        const PsdMatrix x = matrix_from(direct.out);
        const PsdMatrix y = matrix_from(via.out);
        CHECK(operator_norm(herm_sub(x.matrix(), y.matrix())) < 1e-8);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "faithcheck/cli.hpp"

using faithcheck::CliResult;
using faithcheck::run_cli;

namespace {

CliResult cli(std::initializer_list<std::string> args) {
    return run_cli(std::vector<std::string>(args));
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
               "/faithcheck_test_" + std::to_string(rand()) + ".dist";
        std::ofstream(path) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("analyze --example 2 prints exactly the pairwise statements") {
    CliResult r = cli({"analyze", "--example", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "X _||_ Y\nX _||_ Z\nY _||_ Z\n");
    CHECK(r.err.empty());
}

TEST_CASE("analyze --example 1 includes the mutual line") {
    CliResult r = cli({"analyze", "--example", "1"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("mutual\n") != std::string::npos);
}

TEST_CASE("analyze reads dist files and honors --semantics") {
    TempFile f("vars X Y Z\np 0 0 0 1\n");
    CliResult strict = cli({"analyze", "--dist", f.path});
    CHECK(strict.exit_code == 0);
    CHECK(strict.out.find("X _||_ Y | Z") == std::string::npos);
    CliResult standard = cli({"analyze", "--dist", f.path, "--semantics", "standard"});
    CHECK(standard.out.find("X _||_ Y | Z") != std::string::npos);
}

TEST_CASE("missing file: exit 1, stderr names the file, stdout empty") {
    CliResult r = cli({"analyze", "--dist", "missing.txt"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("missing.txt") != std::string::npos);
}

TEST_CASE("mass sum violation: exit 2 with the offending sum") {
    TempFile f("vars X Y\np 0 0 1/4\np 1 1 1/4\n");
    CliResult r = cli({"analyze", "--dist", f.path});
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("mass sum 1/2 != 1") != std::string::npos);
}

TEST_CASE("unknown command: exit 1 with usage on stderr") {
    CliResult r = cli({"frobnicate"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("dsep queries") {
    CliResult r1 = cli({"dsep", "--dag", "X->Z;Y->Z", "--query", "X _||_ Y | Z"});
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == "false\n");
    CliResult r2 = cli({"dsep", "--dag", "X->Z;Y->Z", "--query", "X _||_ Y"});
    CHECK(r2.out == "true\n");
    CliResult r3 = cli({"dsep", "--dag", "empty", "--query", "X _||_ Y", "--vars", "X Y Z"});
    CHECK(r3.out == "true\n");
    CliResult cyc = cli({"dsep", "--dag", "X->Y;Y->X", "--query", "X _||_ Y"});
    CHECK(cyc.exit_code == 2);
    CHECK(cyc.out.empty());
}

TEST_CASE("markov command prints both routes") {
    CliResult r = cli({"markov", "--example", "2", "--dag", "empty"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "dsep: false\nfactorization: false\n");
    CliResult r2 = cli({"markov", "--example", "1", "--dag", "empty"});
    CHECK(r2.out == "dsep: true\nfactorization: true\n");
}

TEST_CASE("pc output for examples 2 and 3") {
    CliResult r2 = cli({"pc", "--example", "2"});
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("MISMATCH") != std::string::npos);
    CHECK(r2.out.find("X _||_ Y | Z") != std::string::npos);
    CliResult r3 = cli({"pc", "--example", "3"});
    CHECK(r3.out.find("MATCH") != std::string::npos);
    CHECK(r3.out.find("Y--Z") != std::string::npos);
}

TEST_CASE("examples listing, verification, and export") {
    CliResult list = cli({"examples"});
    CHECK(list.exit_code == 0);
    CHECK(list.out.find("example 1:") != std::string::npos);
    CHECK(list.out.find("example 10:") != std::string::npos);

    CliResult verify = cli({"examples", "--verify"});
    CHECK(verify.exit_code == 0);
    for (int id = 1; id <= 10; ++id)
        CHECK(verify.out.find("example " + std::to_string(id) + ": PASS") != std::string::npos);
    CHECK(verify.out.find("note:") != std::string::npos);

    CliResult exported = cli({"examples", "--example", "4"});
    CHECK(exported.exit_code == 0);
    CHECK(exported.out.find("vars X Y Z") != std::string::npos);
    CliResult bad = cli({"examples", "--example", "11"});
    CHECK(bad.exit_code == 2);
}

TEST_CASE("pattern and search") {
    CliResult p = cli({"pattern", "--id", "I:5"});
    CHECK(p.exit_code == 0);
    CHECK(p.out == "X _||_ Y | Z\nX _||_ Z | Y\n");
    CHECK(cli({"pattern", "--id", "I:9"}).exit_code == 2);   // well-formed but out of range
    CHECK(cli({"pattern", "--id", "bogus"}).exit_code == 1);  // malformed id

    CliResult s = cli({"search", "--id", "I:5"});
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("# realized: exact") != std::string::npos);
    CHECK(s.out.find("vars X Y Z") != std::string::npos);

    CliResult t = cli({"search", "--target", "X _||_ Y; X _||_ Z"});
    CHECK(t.exit_code == 0);

    // tiny budget exhausts deterministically: exit 3, stdout empty
    CliResult ex = cli({"search", "--id", "I:5", "--budget", "1"});
    CHECK(ex.exit_code == 3);
    CHECK(ex.out.empty());
    CHECK(ex.err.find("search exhausted") != std::string::npos);
}

TEST_CASE("searched tables round-trip through analyze") {
    CliResult s = cli({"search", "--id", "I:4"});
    REQUIRE(s.exit_code == 0);
    TempFile f(s.out);  // comment lines are part of the grammar
    CliResult a = cli({"analyze", "--dist", f.path});
    CHECK(a.exit_code == 0);
    CHECK(a.out == "X _||_ Y\nX _||_ Z\nY _||_ Z\n");
}

TEST_CASE("byte-identical reruns, including across worker counts") {
    const std::vector<std::vector<std::string>> commands = {
        {"analyze", "--example", "3"},
        {"classify", "--example", "8"},
        {"pc", "--example", "2"},
        {"search", "--id", "I:8", "--seed", "5"},
        {"verify-theorem3", "--budget", "2000", "--denom-bound", "5"},
    };
    for (const auto& cmd : commands) {
        CliResult a = run_cli(cmd);
        CliResult b = run_cli(cmd);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);

        setenv("FAITHCHECK_THREADS", "1", 1);
        CliResult one = run_cli(cmd);
        setenv("FAITHCHECK_THREADS", "4", 1);
        CliResult four = run_cli(cmd);
        unsetenv("FAITHCHECK_THREADS");
        CHECK(one.out == four.out);
        CHECK(one.out == a.out);
    }
}

TEST_CASE("exactly one distribution source is required") {
    CHECK(cli({"analyze"}).exit_code == 1);
    TempFile f("vars X\np 0 1\n");
    CHECK(cli({"analyze", "--dist", f.path, "--example", "1"}).exit_code == 1);
}

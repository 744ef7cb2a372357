#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef CSD_BINARY
#error "CSD_BINARY must name the csd executable"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("csd_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write(const std::string &name, const std::string &text) {
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

// Runs the binary through the shell; `input` becomes its standard input.
Run run(const std::string &args, const std::string &input = "") {
    const fs::path in = write("stdin.txt", input);
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = std::string("'") + CSD_BINARY + "' " + args + " < '" + in.string() +
                            "' > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("catalog piped into invariants") {
    const Run cat = run("catalog xi_plus");
    REQUIRE(cat.code == 0);
    const Run inv = run("invariants -", cat.out);
    CHECK(inv.code == 0);
    CHECK(inv.err.empty());
    const Json j = Json::parse(inv.out);
    CHECK(j["d3"]["num"] == 1);
    CHECK(j["d3"]["den"] == 2);

    const Run dsl = run("catalog xi_minus --format dsl");
    REQUIRE(dsl.code == 0);
    const Json m = Json::parse(run("invariants -", dsl.out).out);
    CHECK(m["d3"]["num"] == -3);
    CHECK(m["d3"]["den"] == 2);
    CHECK(m["d3"]["c2"] == -10);
}

TEST_CASE("expand") {
    const fs::path doc = write("r.csd", "front { L1; R1; }\nsurgery 1 = -5/3\n");
    const Run all = run("expand --enumerate '" + doc.string() + "'");
    REQUIRE(all.code == 0);
    const Json j = Json::parse(all.out);
    CHECK(j["count"] == 4);
    REQUIRE(j["variants"].size() == 4);
    for (const Json &d : j["variants"]) {
        REQUIRE(d["components"].size() == 2);
        for (const Json &c : d["components"])
            CHECK(c["coefficient"] == "-1");
    }
    const Run one = run("expand '" + doc.string() + "' --format dsl");
    CHECK(one.code == 0);
    CHECK(one.out.find("surgery 2 = -1") != std::string::npos);
    CHECK(run("expand '" + doc.string() + "' --zigzag up").code == 0);
    CHECK(run("expand '" + doc.string() + "' --zigzag sideways").code == 1);
}

TEST_CASE("non-torsion c1") {
    const std::string xi3 = run("catalog xi_k 3").out;
    const Run bad = run("invariants -", xi3);
    CHECK(bad.code == 3);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("c1-non-torsion") != std::string::npos);
    CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);

    const Run ok = run("invariants --no-d3 -", xi3);
    CHECK(ok.code == 0);
    const Json j = Json::parse(ok.out);
    CHECK(j["c1"]["torsion"] == false);
    CHECK(j["c1"]["divisibility"] == 4);
    CHECK_FALSE(j.contains("d3"));
}

TEST_CASE("homology and check") {
    const Json h = Json::parse(run("homology -", "front { L1; R1; } surgery 1 = +1").out);
    CHECK(h["h1"]["free_rank"] == 1);
    CHECK(h["det"] == 0);
    const Run check = run("check -", run("catalog xi_minus").out);
    CHECK(check.code == 0);
    CHECK_FALSE(check.out.empty());
}

TEST_CASE("realize") {
    const Run r = run("realize --alpha 2 -", "front { L1; R1; }\nframing 1 = 0\n");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.contains("realization"));
    CHECK(j["components"].size() > 1);

    const Run unreachable = run("realize --d3 1/3 -", "front { L1; R1; }\nframing 1 = -1\n");
    CHECK(unreachable.code == 3);
    CHECK(unreachable.err.find("d3-parity") != std::string::npos);

    const Run missing = run("realize -", "front { L1; R1; }\n");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("missing-framing") != std::string::npos);
}

TEST_CASE("render and catalog formats") {
    const Run svg = run("render -", run("catalog xi_plus").out);
    CHECK(svg.code == 0);
    CHECK(svg.out.find("<svg") != std::string::npos);
    CHECK(run("catalog K_k_knot 3 --format svg").out == run("catalog K_k_knot 3 --format svg").out);
    const Run abs = run("render -", "abstract knot A tb=-1 rot=0;");
    CHECK(abs.code == 2);
    CHECK(abs.err.find("abstract-diagram") != std::string::npos);
}

TEST_CASE("exit codes and reasons") {
    SUBCASE("usage") {
        CHECK(run("").code == 1);
        CHECK(run("frobnicate").code == 1);
        CHECK(run("catalog no_such_thing").code == 1);
        CHECK(run("catalog xi_plus --format pdf").code == 1);
        CHECK(run("invariants /nonexistent/file.csd").code == 1);
        CHECK(run("realize --alpha x -", "front { L1; R1; } framing 1 = 0").code == 1);
    }
    SUBCASE("parse and validation errors") {
        const std::vector<std::string> docs{
            "front { L1; Q1; }",                              // syntax
            "front { L1; R1; }\nsurgery Z = +1",              // unknown label
            "front { L1; R1; }\nsurgery 1 = +1\nsurgery 1 = -1", // duplicate
            "front { L1; R1; }\nabstract knot A tb=-1 rot=0;",   // mixed
            "front { L1; R3; }",
            "{\"components\": [",
        };
        for (const std::string &d : docs) {
            const Run r = run("check -", d);
            CAPTURE(d);
            CHECK(r.code == 2);
            CHECK(r.out.empty());
            CHECK(r.err.rfind("error: ", 0) == 0);
            CHECK(r.err.find("line ") != std::string::npos);
        }
    }
    SUBCASE("mathematical preconditions") {
        const Run zero = run("check -", "front { L1; R1; }\nsurgery 1 = 0");
        CHECK(zero.code == 3);
        CHECK(zero.err.find("zero-coefficient") != std::string::npos);
        CHECK(zero.err.find("0-surgery excluded") != std::string::npos);
        CHECK(run("homology -", "front { L1; R1; }").code == 3);
    }
}

TEST_CASE("identical invocations give identical bytes") {
    const std::string input = run("catalog xi_k 4").out;
    for (const std::string &args :
         {std::string("invariants --no-d3 -"), std::string("expand -"), std::string("render -"),
          std::string("homology -")}) {
        const Run a = run(args, input);
        const Run b = run(args, input);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
    const fs::path doc = write("s.csd", "front { L1; R1; }\nsurgery 1 = -7/4\n");
    CHECK(run("expand --enumerate '" + doc.string() + "'").out ==
          run("expand --enumerate '" + doc.string() + "' --seed 7").out);
}

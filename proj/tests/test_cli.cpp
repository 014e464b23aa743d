#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(FREEHOLO_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string scratch(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("freeholo_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("trace of the unit square under the master field") {
    const auto loops = scratch("sq.loops", "# unit square\n(0,0) (1,0) (1,1) (0,1)\n");
    const auto bm = scratch("bm.json", R"({"alpha": 0, "b": 1, "atoms": []})");
    const Run r = run("trace --loops " + loops + " --triplet " + bm);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"][0]["trace"][0].get<double>() == doctest::Approx(0.6065307).epsilon(1e-7));
    CHECK(j["results"][0]["trace"][1].get<double>() == doctest::Approx(0.0));
    CHECK(j["manifest"]["command"] == "trace");

    // same triplet given inline
    const Run inline_json = run("trace --loops " + loops + " --triplet '{\"alpha\":0,\"b\":1}'");
    REQUIRE(inline_json.code == 0);
    CHECK(nlohmann::json::parse(inline_json.out)["results"] == j["results"]);
}

TEST_CASE("moments without drift or noise are all one") {
    const Run r = run("moments --alpha 0 --b 0 --t 5 --order 6");
    REQUIRE(r.code == 0);
    const auto m = nlohmann::json::parse(r.out)["moments"];
    REQUIRE(m.size() == 7);
    for (const auto& v : m) {
        CHECK(v[0].get<double>() == 1.0);
        CHECK(v[1].get<double>() == 0.0);
    }
}

TEST_CASE("compare output is reproducible byte for byte") {
    const Run a = run("compare --N 32 --samples 200 --seed 7");
    const Run b = run("compare --N 32 --samples 200 --seed 7");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("# manifest ", 0) == 0);
    CHECK(a.out.find("loop_id,N,samples,mean_re,mean_im,stderr,exact_re,exact_im,sigmas,wall_ms\n1,32,200,") !=
          std::string::npos);
    const Run c = run("compare --N 32 --samples 200 --seed 8");
    CHECK(c.out != a.out);
}

TEST_CASE("other subcommands") {
    const auto eight = scratch("eight.loops", "(0,0) (1,0) (1,1) (0,1) (0,0) (-1,0) (-1,-2) (0,-2)\n");
    const Run arrange = run("arrange --loops " + eight);
    REQUIRE(arrange.code == 0);
    const auto g = nlohmann::json::parse(arrange.out);
    CHECK(g["faces"].size() == 2);
    CHECK(g["euler_characteristic"] == 2);

    const Run dec = run("decompose --loops " + eight);
    REQUIRE(dec.code == 0);
    CHECK(nlohmann::json::parse(dec.out)["words"][0]["word"].get<std::string>().size() == 5);

    const Run basis = run("basis --loops " + eight + " --tree-seed 3");
    REQUIRE(basis.code == 0);
    CHECK(nlohmann::json::parse(basis.out)["lassos"].size() == 2);

    const Run audit = run("audit --loops " + eight + " --trials 2");
    REQUIRE(audit.code == 0);
    CHECK(nlohmann::json::parse(audit.out)["worst"].get<double>() <= 1e-9);

    const Run bound = run("bound --loops " + eight + " --n 3");
    REQUIRE(bound.code == 0);
    CHECK(nlohmann::json::parse(bound.out)["all_satisfied"] == true);

    const Run support = run("support --N 16 --samples 2 --t 1");
    REQUIRE(support.code == 0);
    CHECK(nlohmann::json::parse(support.out)["eigenvalues"] == 32);

    const auto out = std::filesystem::temp_directory_path() / "freeholo_cli_sim.csv";
    const Run sim = run("simulate --loops " + eight + " --N 4 --samples 20 --out " + out.string());
    REQUIRE(sim.code == 0);
    CHECK(sim.out.empty());
    std::ifstream in(out);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("# manifest ", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("moments --order").code == 2);
    CHECK(run("trace").code == 2);
    CHECK(run("trace --loops /nonexistent/file").code == 2);
    CHECK(run("moments --triplet '{\"alpha\":0}' --b 1").code == 2);
    CHECK(run("moments --b -1").code == 1);
    CHECK(run("moments --atoms 0:1").code == 1);
    CHECK(run("moments --atoms pi").code == 1);
    const auto open = scratch("open.loops", "(0,0) (1,0)\n");
    CHECK(run("trace --loops " + open).code == 1);
    const auto empty = scratch("empty.loops", "# nothing\n");
    CHECK(run("arrange --loops " + empty).code == 1);
}

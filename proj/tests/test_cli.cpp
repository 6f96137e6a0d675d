#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(TWOSQ_CLI_PATH) + " " + args;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int st = pclose(f);
    if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
    return r;
}

json parse_out(const RunResult& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("cli decide unsolvable by criterion") {
    auto r = run_cli("decide --d -79 --alpha '(1+1*sqrt(-79))/2'");
    CHECK(r.code == 1);
    json j = parse_out(r);
    CHECK(j["field"] == -79);
    CHECK(j["alpha"] == "(1+1*sqrt(-79))/2");
    CHECK(j["status"] == "unsolvable");
    CHECK(j["mode"] == "explicit_criterion");
    CHECK(j["witness"].is_null());
    CHECK(j["criterion"]["sum"] == "1");
    CHECK(j["criterion"]["accept"] == false);
    CHECK(j["criterion"]["s1"] == 2);
    REQUIRE(j["local"].is_array());
    for (const auto& entry : j["local"]) {
        CHECK(entry.contains("place"));
        CHECK(entry["solvable"] == true);
    }
}

TEST_CASE("cli decide solvable with witness") {
    auto r = run_cli("decide --d 17 --alpha '(17+4*sqrt(17))/1'");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["status"] == "solvable");
    CHECK(j["mode"] == "explicit_criterion");
    CHECK(j["criterion"]["sum"] == "0");
    CHECK(j["criterion"]["s2"] == 1);
    CHECK(j["witness"] == json::array({"(3+1*sqrt(17))/2", "(5+1*sqrt(17))/2"}));
}

TEST_CASE("cli decide local obstruction") {
    auto r = run_cli("decide --d 17 --alpha '(0+1*sqrt(17))/1'");
    CHECK(r.code == 1);
    json j = parse_out(r);
    CHECK(j["status"] == "unsolvable");
    CHECK(j["mode"] == "local_obstruction");
    CHECK(j["criterion"].is_null());
    CHECK(j["witness"].is_null());
    bool some_fail = false;
    for (const auto& entry : j["local"]) some_fail = some_fail || !entry["solvable"].get<bool>();
    CHECK(some_fail);
}

TEST_CASE("cli decide unknown") {
    auto r = run_cli("decide --d -103 --alpha '(-1265+58*sqrt(-103))/1' --bound 1");
    CHECK(r.code == 2);
    json j = parse_out(r);
    CHECK(j["status"] == "unknown");
    CHECK(j["mode"] == "inconclusive");
    CHECK(j["witness"].is_null());
    CHECK(j["criterion"].is_null());
}

TEST_CASE("cli pell") {
    auto r = run_cli("pell --D 7 --N 2");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["D"] == 7);
    CHECK(j["N"] == 2);
    CHECK(j["x"] == "3");
    CHECK(j["y"] == "1");

    r = run_cli("pell --D 7 --N -1");
    CHECK(r.code == 1);
    CHECK(parse_out(r) == json{{"solvable", false}});

    r = run_cli("pell --D 8 --N 1");
    CHECK(r.code == 0);
    j = parse_out(r);
    CHECK(j["x"] == "1");
    CHECK(j["y"] == "0");

    r = run_cli("pell --D 7 --N 3");
    CHECK(r.code == 3);
    CHECK(parse_out(r).contains("error"));
}

TEST_CASE("cli witness") {
    auto r = run_cli("witness --d -79 --alpha 5 --bound 5");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["witness"] == json::array({"(1+0*sqrt(-79))/1", "(2+0*sqrt(-79))/1"}));

    r = run_cli("witness --d -79 --alpha '(1+1*sqrt(-79))/2' --bound 30");
    CHECK(r.code == 2);
    CHECK(parse_out(r)["witness"].is_null());
}

TEST_CASE("cli local") {
    auto r = run_cli("local --d 17 --alpha 5");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["all_pass"] == true);
    REQUIRE(j["local"].size() == 6);
    CHECK(j["local"][0]["place"] == "real(+)");
    CHECK(j["local"][0]["valuation"].is_null());
    CHECK(j["local"][2]["place"] == "q=2#1");
    CHECK(j["local"][4]["place"] == "q=5(inert)");
    CHECK(j["local"][4]["valuation"] == 1);
    CHECK(j["local"][5]["place"] == "q=17(ram)");

    r = run_cli("local --d 17 --alpha '(0+1*sqrt(17))/1'");
    CHECK(r.code == 1);
    j = parse_out(r);
    CHECK(j["all_pass"] == false);
    CHECK(j["local"][1]["place"] == "real(-)");
    CHECK(j["local"][1]["solvable"] == false);
    CHECK(j["local"][1]["reason"] == "sign_obstruction");
}

TEST_CASE("cli unit") {
    auto r = run_cli("unit --d 17");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["epsilon"] == "(4+1*sqrt(17))/1");
    CHECK(j["norm"] == -1);

    r = run_cli("unit --d -79");
    CHECK(r.code == 3);
    CHECK(parse_out(r).contains("error"));
}

TEST_CASE("cli minus-one") {
    auto r = run_cli("minus-one --p 5");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["p"] == 5);
    CHECK(j["witness"] == json::array({"(2+0*sqrt(-5))/1", "(0+1*sqrt(-5))/1"}));

    r = run_cli("minus-one --p 7");
    CHECK(r.code == 1);
    j = parse_out(r);
    CHECK(j["obstruction"] == json::array({"q=2#1", "q=2#2"}));
    CHECK_FALSE(j.contains("witness"));
}

TEST_CASE("cli epsilon-obstruction") {
    auto r = run_cli("epsilon-obstruction --p 7");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["epsilon"] == "(8+3*sqrt(7))/1");
    CHECK(j["failing_place"] == "q=2(ram)");
    CHECK(j["auxiliary"]["epsilon1"] == "(8+3*sqrt(7))/1");
    CHECK(j["auxiliary"]["A"] == "8");
    CHECK(j["auxiliary"]["B"] == "3");

    r = run_cli("epsilon-obstruction --p 5");
    CHECK(r.code == 0);
    j = parse_out(r);
    CHECK(j["failing_place"] == "real(-)");
    CHECK(j["auxiliary"].is_null());
}

TEST_CASE("cli criterion") {
    auto r = run_cli("criterion --d -79 --alpha 5");
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["outcome"] == "solvable");
    CHECK(j["criterion"]["sum"] == "2");
    CHECK(j["criterion"]["accept"] == true);
    CHECK(j["criterion"]["s1"] == 0);
    CHECK(j["criterion"]["s2"] == 0);
    REQUIRE(j["criterion"]["classes"].size() == 1);
    CHECK(j["criterion"]["classes"][0] == json({{"p", 5}, {"e", 2}, {"class", "D1"}}));

    r = run_cli("criterion --d -79 --alpha '(1+1*sqrt(-79))/2'");
    CHECK(r.code == 1);
    j = parse_out(r);
    CHECK(j["outcome"] == "unsolvable");
    CHECK(j["criterion"]["sum"] == "1");

    r = run_cli("criterion --d 7 --alpha 5");
    CHECK(r.code == 3);
    CHECK(parse_out(r).contains("error"));
}

TEST_CASE("cli criterion with descriptor file") {
    json desc;
    desc["d"] = 7;
    desc["h"] = json::array();
    desc["classes"] = json::array({{{"name", "D1"}, {"symbols", {{-1, 1}}}, {"poly_insolvable", false}, {"weight", "1"}},
                                   {{"name", "D2"}, {"symbols", {{-1, -1}}}, {"poly_insolvable", false}, {"weight", "1"}}});
    desc["include_s1"] = false;
    desc["accept"] = "not_equal_one";
    std::string path = "/tmp/twosq_cli_desc.json";
    std::ofstream(path) << desc.dump();

    auto r = run_cli("criterion --d 7 --alpha 2 --descriptors " + path);
    CHECK(r.code == 0);
    json j = parse_out(r);
    CHECK(j["criterion"]["sum"] == "0");
    CHECK(j["outcome"] == "solvable");
    std::remove(path.c_str());
}

TEST_CASE("cli selftest filter") {
    auto r = run_cli("selftest --suite pell-case");
    CHECK(r.code == 0);
    json j = parse_out(r);
    REQUIRE(j["suites"].size() == 1);
    CHECK(j["suites"][0]["name"] == "pell-case-sweep");
    CHECK(j["suites"][0]["pass"] == true);
}

TEST_CASE("cli pretty output") {
    auto plain = run_cli("decide --d -79 --alpha 5");
    auto pretty = run_cli("decide --d -79 --alpha 5 --pretty");
    CHECK(plain.code == 0);
    CHECK(pretty.code == 0);
    CHECK(pretty.out.find("\n  ") != std::string::npos);
    CHECK(json::parse(plain.out) == json::parse(pretty.out));
}

TEST_CASE("cli errors") {
    CHECK(run_cli("decide --d -79 --alpha '(1+1*sqrt(17))/1'").code == 3);
    CHECK(run_cli("decide --d 16 --alpha 5").code == 3);
    CHECK(run_cli("decide --d 17 --alpha '((('").code == 3);
    CHECK(run_cli("decide --d 17").code == 3);
    CHECK(run_cli("frobnicate").code == 3);
    CHECK(run_cli("").code == 3);
    auto r = run_cli("decide --d 16 --alpha 5");
    CHECK(parse_out(r).contains("error"));
    CHECK(run_cli("--help").code == 0);
}

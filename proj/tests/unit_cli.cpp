#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
    std::string out;
    int code = -1;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HZN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        if (!line.empty() && line.back() == ',') row.emplace_back();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("eval reports F_k as JSON") {
    const Run r = run("--no-timing eval --k 2 --x 1 --alpha 0.5 --beta 0.5");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "eval");
    CHECK(j["status"] == "ok");
    CHECK(j["wall_time_ms"] == 0);
    const double re = j["outputs"][0]["re"];
    CHECK(std::abs(re - (std::log(2.0) * std::log(2.0) / 2 - M_PI * M_PI / 12)) <= 1e-12);
    // 17 significant digits.
    CHECK(r.out.find("\"re\": -0.58224052646501") != std::string::npos);
}

TEST_CASE("table defaults") {
    const Run r = run("table");
    CHECK(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0][0] == "class_id");
    CHECK(rows[0][7] == "abs_diff");
    CHECK(rows[1][0] == "0");
    CHECK(std::abs(std::stod(rows[1][5]) + 11.12741223912468) <= 1e-7);
    CHECK(std::stod(rows[1][7]) <= 1e-9);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][7]) <= 1e-9);
}

TEST_CASE("reduce D = 12") {
    const Run r = run("reduce --discriminant 12");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["classes"].size() == 2);
    CHECK(j["classes"][0]["red"] == nlohmann::json::array({"2+sqrt(3)"}));
    CHECK(j["classes"][1]["red"] == nlohmann::json::array({"(3+sqrt(3))/3", "(3+sqrt(3))/2"}));
    CHECK(j["fundamental_unit"]["norm_eps_minus_1"] == "-2");
}

TEST_CASE("check suite passes and is reproducible") {
    const std::string args = "--no-timing check --suite fe2 --samples 10 --tol 1e-10 --seed 1";
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(nlohmann::json::parse(a.out)["status"] == "ok");
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("eval --k 2 --x abc --alpha 0.1 --beta 0.2").code == 2);
    CHECK(run("check --suite nope").code == 2);
    const Run r = run("eval --k 2 --x 1 --alpha 0.1 --beta 1");
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "failed");
    CHECK(j["error"]["kind"] == "DomainError");
    CHECK(run("reduce --discriminant 16").code == 1);
}

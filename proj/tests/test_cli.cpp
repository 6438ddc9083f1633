#include "commands.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using twotier::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line)
{
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
        if (l == line) return true;
    }
    return false;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("solve, saturating regime B")
{
    const auto r = call({"solve", "--model", "saturating", "--z1", "2", "--z2", "0.7", "--gamma2", "0.5",
                         "--Gamma1", "1", "--theta1", "1", "--theta2", "0.1"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "regime: B"));
    CHECK(has_line(r.out, "g_min: 0.15"));
    CHECK(has_line(r.out, "optimal.utility_per_capita: 1.035"));
    CHECK(has_line(r.out, "g_un: 0.5"));
    CHECK(has_line(r.out, "z1_star: 3.5"));
}

TEST_CASE("solve, json output")
{
    const auto r = call({"solve", "--z1", "2", "--z2", "0.4", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["regime"] == "B");
    CHECK(j["z1_star"] == "inf");
    CHECK(j["g_min"].get<double>() == doctest::Approx(0.3));
    CHECK(j["wage_structure"]["r_high"].get<double>() == doctest::Approx(1.75));
}

TEST_CASE("solve, primitive and crra")
{
    auto r = call({"solve", "--model", "saturating", "--z1", "0.8"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "regime: Primitive"));
    CHECK(has_line(r.out, "phase: A"));
    CHECK(has_line(r.out, "g_min: 0"));

    r = call({"solve", "--model", "crra", "--z1", "1", "--z2", "0.5", "--theta1", "1", "--theta2", "1",
              "--gamma2", "0.2"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "beneficial: true"));
    CHECK(has_line(r.out, "r_high_star: 1.2"));
    CHECK(r.out.find("gini: 0.1544658") != std::string::npos);
}

TEST_CASE("invalid configurations exit with 2")
{
    CHECK(call({}).code == 2);
    CHECK(call({"solve", "--theta2", "3"}).code == 2);
    CHECK(call({"solve", "--z2", "-1"}).code == 2);
    CHECK(call({"solve", "--model", "cobb"}).code == 2);
    CHECK(call({"solve", "--sweep", "z1:1:2:3"}).code == 2);
    CHECK(call({"figure1", "--sweep", "z1:2:1:3"}).code == 2);
    CHECK(call({"figure1", "--sweep", "w:1:2:3"}).code == 2);
    CHECK(call({"gamma2star"}).code == 2);
    CHECK(call({"solve", "--config", "/nonexistent/config.json"}).code == 2);
    CHECK(call({"solve", "--model", "crra", "--sigma", "0.7"}).code == 2);
    const auto r = call({"solve", "--z1", "abc"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("flags override the config file, which overrides defaults")
{
    const auto cfg = temp_file("twotier_cli_test.json", R"({"z1": 4.0, "z2": 0.7, "theta2": 0.2})");
    auto r = call({"solve", "--config", cfg.string()});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "regime: C"));
    CHECK(has_line(r.out, "optimal.utility_per_capita: 1.105"));  // 1 + 0.2 * 0.525

    r = call({"solve", "--config", cfg.string(), "--z1", "2"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "regime: B"));
    CHECK(has_line(r.out, "optimal.utility_per_capita: 1.07"));

    const auto bad = temp_file("twotier_cli_bad.json", R"({"z1": "two"})");
    CHECK(call({"solve", "--config", bad.string()}).code == 2);
    std::filesystem::remove(cfg);
    std::filesystem::remove(bad);
}

TEST_CASE("figure1 and phase CSV")
{
    auto r = call({"figure1", "--z2", "0.7"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("z1,regime,u_per_n_optimal,u_per_n_equal,g_min,g_un\n", 0) == 0);
    CHECK(has_line(r.out, "3.5,C,1.05,1.05,0,"));
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 492);
    CHECK(call({"figure1", "--z2", "0.7"}).out == r.out);

    r = call({"phase", "--sweep", "z1:0.5:5:10", "--sweep", "z2:0.4:0.7:2"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "5,0.4,B"));
    CHECK(has_line(r.out, "5,0.7,C"));
    CHECK(has_line(r.out, "0.5,0.7,A"));

    const auto path = std::filesystem::temp_directory_path() / "twotier_phase.csv";
    r = call({"phase", "--restrict", "--sweep", "z1:0.5:5:10", "--sweep", "z2:0.4:0.7:2", "--out",
              path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().rfind("z1,z2,regime\n", 0) == 0);
    CHECK(ss.str().find("0.5,0.7,A") == std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("gamma2star")
{
    auto r = call({"gamma2star", "--model", "crra", "--theta2", "0"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "gamma2_star: not_found"));
    CHECK(has_line(r.out, "no beneficial inequality found on the search grid"));

    r = call({"gamma2star", "--model", "crra", "--theta2", "1", "--gamma2", "0.2", "--z2-points", "60",
              "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["gamma2_star"].is_number());
    CHECK(j["z2_dagger"].get<double>() < 0.5);
    CHECK(j["z2_star"].get<double>() > 0.5);
}

TEST_CASE("oracle-check")
{
    auto r = call({"oracle-check", "--z1", "2", "--z2", "0.7", "--step", "0.01"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "# PASS"));

    r = call({"oracle-check", "--z1", "4", "--z2", "0.7", "--step", "0.01"});
    CHECK(r.code == 0);

    r = call({"oracle-check", "--model", "crra", "--z1", "1", "--z2", "0.5", "--theta2", "1", "--gamma2",
              "0.2", "--step", "0.01"});
    CHECK(r.code == 0);

    r = call({"oracle-check", "--z1", "2", "--z2", "0.7", "--step", "0.05", "--tol-utility", "1e-9"});
    CHECK(r.code == 3);
    CHECK(has_line(r.out, "# FAIL"));

    r = call({"oracle-check", "--sweep", "z1:1.5:3:4", "--z2", "0.7", "--step", "0.01"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);

    CHECK(call({"oracle-check", "--step", "0"}).code == 2);
}

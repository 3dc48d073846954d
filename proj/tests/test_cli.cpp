#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "levy/cli.hpp"

using namespace levy;

namespace
{
struct Run
{
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int const code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string data(char const* name)
{
    return std::string(LEVY_DATA_DIR) + "/" + name;
}

std::vector<std::string> rows(std::string const& csv)
{
    std::vector<std::string> lines;
    std::istringstream is(csv);
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#')
            lines.push_back(line);
    return lines;
}
}  // namespace

TEST_CASE("cumulants rows")
{
    auto r = run({"cumulants", "--spec", data("dickman.json"), "--beta", "0"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.rfind("# levyasym ", 0) == 0);
    CHECK(r.out.find("# spec_hash=") != std::string::npos);
    CHECK(r.out.find("# args=cumulants --spec") != std::string::npos);
    auto const lines = rows(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "0,0,1,0.5,0");

    r = run({"cumulants", "--spec", data("uniform0.json"), "--beta", "1"});
    REQUIRE(r.code == exit_ok);
    double const c = std::stod(rows(r.out)[1].substr(2));
    CHECK(c == doctest::Approx(std::numbers::e - 2).epsilon(1e-14));
}

TEST_CASE("input errors exit 2")
{
    CHECK(run({"cumulants", "--spec", "missing.json", "--beta", "0"}).code == exit_input);
    CHECK(run({"cumulants", "--spec", "dickman"}).code == exit_input);
    CHECK(run({"bogus"}).code == exit_input);
    CHECK(run({"compare", "--spec", "dickman", "--u", "5", "--oracle", "magic"}).code == exit_input);
    auto const bad = run({"cumulants", "--spec", "{\"pieces\":[]}", "--beta", "0"});
    CHECK(bad.code == exit_input);
    CHECK(!bad.err.empty());
}

TEST_CASE("compare rows and footer")
{
    auto r = run({"compare", "--spec", data("truncated03.json"), "--u", "0.5,5,10", "--h",
                  "0.0009765625"});
    REQUIRE(r.code == exit_ok);
    auto const lines = rows(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].rfind("0.5,nan,", 0) == 0);
    CHECK(lines[1].find("DomainError") != std::string::npos);
    CHECK(lines[2].find("nan") == std::string::npos);
    CHECK(r.out.find("# max_scaled_err=") != std::string::npos);

    // every row failing is a numeric error
    CHECK(run({"compare", "--spec", "dickman", "--u", "0.5"}).code == exit_numeric);
    CHECK(run({"compare", "--spec", "dickman", "--u", "10,5"}).code == exit_numeric);
}

TEST_CASE("rho grid")
{
    auto r = run({"rho", "--tmax", "3", "--h", "0.0009765625"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.find("# spec_hash") == std::string::npos);
    auto const lines = rows(r.out);
    for (auto const& l : lines)
        if (l.rfind("2,", 0) == 0)
            CHECK(std::fabs(std::stod(l.substr(2)) - (1 - std::log(2.0))) <= 1e-8);
    CHECK(run({"rho", "--tmax", "3", "--h", "0.1"}).code == exit_numeric);
}

TEST_CASE("simulate is byte stable")
{
    std::vector<std::string> const args{"simulate", "--spec", "truncated:0.3", "--beta",
                                        "2",        "--n",    "5000",          "--seed", "7"};
    auto a = run(args), b = run(args);
    REQUIRE(a.code == exit_ok);
    CHECK(a.out == b.out);
    CHECK(rows(a.out).size() == 5001);
    auto c = run({"simulate", "--spec", "truncated:0.3", "--beta", "2", "--n", "5000", "--seed",
                  "8"});
    CHECK(c.out != a.out);
}

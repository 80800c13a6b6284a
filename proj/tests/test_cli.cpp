#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zealot/cli.hpp"

using namespace zealot::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

// Data lines of a CSV envelope (comment lines dropped).
std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.starts_with("#")) lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("format_double keeps 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.75) == "0.75");
  CHECK(std::stod(format_double(2.0 / 3.0)) == 2.0 / 3.0);
}

TEST_CASE("pmf") {
  const auto r = run({"pmf", "--n", "4", "--alpha", "1", "--beta", "1"});
  REQUIRE(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "k,probability");
  for (int k = 0; k <= 4; ++k) {
    const auto comma = lines[k + 1].find(',');
    CHECK(std::stoi(lines[k + 1].substr(0, comma)) == k);
    CHECK(std::abs(std::stod(lines[k + 1].substr(comma + 1)) - 0.2) < 1e-12);
  }
  CHECK(r.out.find("# command: pmf\n") != std::string::npos);
  CHECK(r.out.find("# reproduce: zealot pmf --n 4 --alpha 1 --beta 1 --format csv\n") != std::string::npos);
}

TEST_CASE("limit") {
  const auto r = run({"limit", "--alpha", "2", "--beta", "1"});
  REQUIRE(r.code == 0);
  const auto lines = csv_lines(r.out);
  CHECK(lines[0] == "alpha,beta,signal_p,accuracy");
  CHECK(lines[1].starts_with("2,1,0.66666666666666663,"));
  CHECK(std::abs(std::stod(lines[1].substr(lines[1].rfind(',') + 1)) - 0.75) < 1e-14);
}

TEST_CASE("accuracy table with limit row") {
  const auto r = run({"accuracy", "--n", "1,3", "--alpha", "2", "--beta", "1", "--with-limit"});
  REQUIRE(r.code == 0);
  const auto lines = csv_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,networked,independent,signal_p");
  CHECK(lines[2].starts_with("3,0.69999999999999"));
  CHECK(lines[3].starts_with("inf,0.7"));
  CHECK(lines[3].find(",1,0.66666666666666663") != std::string::npos);

  const auto independent = run({"accuracy", "--n", "3", "--p", "0.6"});
  REQUIRE(independent.code == 0);
  CHECK(csv_lines(independent.out)[1].starts_with("3,,0.6480000000000"));
}

TEST_CASE("json envelope") {
  const auto r = run({"normal-approx", "--alpha", "3", "--beta", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "normal-approx");
  CHECK(doc["tool_version"] == kToolVersion);
  CHECK(doc["parameters"]["alpha"] == "3");
  CHECK(doc["columns"].size() == 6);
  CHECK(doc["rows"][0][2].get<double>() == 0.5);
  CHECK(std::abs(doc["rows"][0][3].get<double>() - 1.0 / 28.0) < 1e-17);
  CHECK(doc["seed"].is_null());
}

TEST_CASE("verify subcommands") {
  const auto prop = run({"verify-proposition", "--alpha", "2", "--beta", "1"});
  REQUIRE(prop.code == 0);
  CHECK(csv_lines(prop.out)[1].ends_with(",true"));

  const auto grid = run({"verify-proposition", "--grid-min", "0.5", "--grid-max", "3", "--grid-step", "0.5"});
  REQUIRE(grid.code == 0);
  CHECK(csv_lines(grid.out).size() == 1 + 15);
  CHECK(grid.out.find("# summary: violations=0\n") != std::string::npos);

  const auto ids = run({"verify-identities", "--alpha", "2", "--beta", "1"});
  REQUIRE(ids.code == 0);
  const auto lines = csv_lines(ids.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1].starts_with("eq24,0.125"));
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].ends_with(",true"));

  const auto sweep = run({"sweep", "--alpha", "3", "--beta", "2", "--n-list", "10,100"});
  REQUIRE(sweep.code == 0);
  CHECK(csv_lines(sweep.out)[0] == "n,finite,limit,gap");
  CHECK(csv_lines(sweep.out).size() == 3);
}

TEST_CASE("simulate is reproducible from its own envelope") {
  const auto first = run({"simulate", "--n", "5", "--alpha", "2", "--beta", "1", "--seed", "9",
                          "--samples", "2000", "--format", "json"});
  REQUIRE(first.code == 0);
  const auto doc = nlohmann::json::parse(first.out);
  CHECK(doc["seed"] == 9);
  CHECK(doc["parameters"]["burn-in"] == "2000");
  const auto args = doc["reproduce"].get<std::vector<std::string>>();
  CHECK(run(args).out == first.out);
}

TEST_CASE("simulate on an edge list") {
  const auto path = std::string(ZEALOT_TEST_DATA_DIR) + "/ring24.edges";
  const auto r = run({"simulate", "--edges", path, "--samples", "500"});
  REQUIRE(r.code == 0);
  const auto lines = csv_lines(r.out);
  CHECK(lines[0] == "k,empirical,exact");
  CHECK(lines.size() == 1 + 21);
  CHECK(lines[1].ends_with(","));
  CHECK(r.out.find("# summary: analytic_accuracy=\n") != std::string::npos);
}

TEST_CASE("writes to --out") {
  const auto path = std::filesystem::temp_directory_path() / "zealot_cli_test.csv";
  const auto r = run({"limit", "--alpha", "2", "--beta", "1", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == run({"limit", "--alpha", "2", "--beta", "1"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"pmf", "--n", "3", "--alpha", "1", "--beta", "1", "--bogus"}).code == 2);
  CHECK(run({"pmf", "--n", "3"}).code == 2);
  CHECK(run({"limit", "--alpha", "2", "--beta", "1", "--format", "xml"}).code == 2);

  const auto domain = run({"pmf", "--n", "3", "--alpha", "-1", "--beta", "1"});
  CHECK(domain.code == 1);
  CHECK(domain.err.starts_with("zealot: error: "));
  CHECK(std::count(domain.err.begin(), domain.err.end(), '\n') == 1);

  CHECK(run({"simulate", "--n", "3", "--alpha", "0", "--beta", "1"}).code == 1);
  CHECK(run({"simulate", "--n", "3", "--alpha", "1.5", "--beta", "1"}).code == 1);
  CHECK(run({"simulate", "--edges", "/nonexistent.edges"}).code == 1);
  CHECK(run({"limit", "--alpha", "1", "--beta", "1", "--out", "/nonexistent/dir/x.csv"}).code == 1);
  CHECK(run({"pmf", "--help"}).code == 0);
}

}

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracdiff_tools/cli.hpp"

using namespace fracdiff;
using namespace fracdiff::cli;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(const RunConfig& config) {
  std::ostringstream out, err;
  const int status = run(config, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig green_single_example() {
  RunConfig c;
  c.command = Command::green_single;
  c.beta = 0.5;
  c.x = parse_grid("0:4:0.5");
  c.t = parse_grid("1");
  return c;
}

}  // namespace

TEST_CASE("grid parsing") {
  const auto pts = parse_grid("0:4:0.5").points();
  REQUIRE(pts.size() == 9);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 4.0);
  CHECK(parse_grid("0:1:0.1").points().size() == 11);
  CHECK(parse_grid("2.5").points() == std::vector<double>{2.5});
  CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1:0:0.5"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("abc"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1e400"), ConfigError);
}

TEST_CASE("weight parsing") {
  const auto w = parse_weight("0.25:0.5, 0.75:0.5", false);
  CHECK(w.atoms().size() == 2);
  CHECK(parse_weight("uniform:1", false).uniform_weight() == 1.0);
  CHECK(parse_weight("0.5:0.5,uniform:0.5", false).describe() == "0.5:0.5,uniform:0.5");
  CHECK_THROWS_AS(parse_weight("0.5:0.4", false), ConfigError);
  CHECK(parse_weight("0.5:0.4", true).atoms().front().weight == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_weight("0.5", false), ConfigError);
  CHECK_THROWS_AS(parse_weight("uniform:0.5,uniform:0.5", false), ConfigError);
  CHECK_THROWS_AS(parse_weight("1.5:1", false), ConfigError);
}

TEST_CASE("green-single CSV example") {
  const Outcome o = invoke(green_single_example());
  REQUIRE(o.status == kExitOk);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "x,t,u,path");
  // 1 / (2 Gamma(3/4)) to 12 significant digits.
  char expected[64];
  std::snprintf(expected, sizeof expected, "0,1,%.12g,series", 0.5 / std::tgamma(0.75));
  CHECK(rows[1] == expected);
  CHECK(rows[1] == "0,1,0.408024469549,series");
  CHECK(rows[9].rfind("4,1,", 0) == 0);
  CHECK(o.err.empty());
}

TEST_CASE("moments example") {
  RunConfig c;
  c.command = Command::moments;
  c.weight_spec = "0.5:1";
  c.t = parse_grid("1");
  const Outcome o = invoke(c);
  REQUIRE(o.status == kExitOk);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "t,mu2,method");
  CHECK(rows[1] == "1,2.25675833419,closed_form");

  c.weight_spec = "0.25:0.5,0.75:0.5";
  c.t = parse_grid("1:3:1");
  const auto mixed = lines(invoke(c).out);
  REQUIRE(mixed.size() == 4);
  CHECK(mixed[1].find(",talbot") != std::string::npos);
}

TEST_CASE("rows follow grid order with time outermost") {
  RunConfig c;
  c.command = Command::green_dist;
  c.weight_spec = "uniform:1";
  c.path = "integral";
  c.x = parse_grid("0:1:0.5");
  c.t = parse_grid("1:2:1");
  const auto rows = lines(invoke(c).out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[1].rfind("0,1,", 0) == 0);
  CHECK(rows[3].rfind("1,1,", 0) == 0);
  CHECK(rows[4].rfind("0,2,", 0) == 0);
  CHECK(rows[6].find(",integral") != std::string::npos);
}

TEST_CASE("JSON document") {
  RunConfig c = green_single_example();
  c.format = Format::json;
  const Outcome o = invoke(c);
  REQUIRE(o.status == kExitOk);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc.contains("version"));
  CHECK(doc["config"]["command"] == "green-single");
  CHECK(doc["config"]["beta"] == 0.5);
  CHECK(doc["config"]["x"] == "0:4:0.5");
  REQUIRE(doc["results"].size() == 9);
  CHECK(doc["results"][0]["u"].get<double>() == doctest::Approx(0.5 / std::tgamma(0.75)).epsilon(1e-15));
  CHECK(doc["results"][0]["path"] == "series");
  CHECK(doc["diagnostics"]["rows"] == 9);
}

TEST_CASE("repeated runs are byte-identical") {
  for (Format f : {Format::csv, Format::json}) {
    RunConfig c;
    c.command = Command::asymptotics;
    c.weight_spec = "0.25:0.5,0.75:0.5";
    c.t = parse_grid("0.5:2:0.5");
    c.format = f;
    const Outcome a = invoke(c);
    const Outcome b = invoke(c);
    CHECK(a.status == kExitOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("other commands") {
  RunConfig c;
  c.command = Command::mlf;
  c.beta = 0.5;
  c.x = parse_grid("1");
  auto rows = lines(invoke(c).out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "x,beta,value");
  CHECK(rows[1] == "1,0.5,0.427583576156");

  c = RunConfig{};
  c.command = Command::mwright;
  c.nu = 0.5;
  c.x = parse_grid("0:20:10");
  rows = lines(invoke(c).out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].find("closed_form") != std::string::npos);
  CHECK(rows[3].find("contour") != std::string::npos);

  c = RunConfig{};
  c.command = Command::asymptotics;
  c.beta = 1.0;
  c.x = parse_grid("2");
  rows = lines(invoke(c).out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "x,U,U_asymptotic,ratio");
  CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "1");
}

TEST_CASE("configuration errors exit with 2 and a JSON record") {
  RunConfig c = green_single_example();
  c.beta.reset();
  Outcome o = invoke(c);
  CHECK(o.status == kExitConfig);
  CHECK(o.out.empty());
  auto record = nlohmann::json::parse(o.err);
  CHECK(record["error"]["kind"] == "config");
  CHECK(record["error"]["command"] == "green-single");
  CHECK(record["error"]["message"].get<std::string>().find("--beta") != std::string::npos);

  c = green_single_example();
  c.beta = 1.5;
  o = invoke(c);
  CHECK(o.status == kExitConfig);
  record = nlohmann::json::parse(o.err);
  CHECK(record["error"]["kind"] == "domain");

  c = green_single_example();
  c.policy.max_terms = 3;
  CHECK(invoke(c).status == kExitConfig);

  c = green_single_example();
  c.path = "bogus";
  CHECK(invoke(c).status == kExitConfig);

  RunConfig w;
  w.command = Command::green_dist;
  w.weight_spec = "0.3:0.5";
  CHECK(invoke(w).status == kExitConfig);
  w.normalize_weights = true;
  CHECK(invoke(w).status == kExitOk);
}

TEST_CASE("numerical failures exit with 3") {
  RunConfig c;
  c.command = Command::green_dist;
  c.weight_spec = "0.25:0.5,0.75:0.5";
  c.path = "series";
  c.x = parse_grid("0:12:6");
  const Outcome o = invoke(c);
  CHECK(o.status == kExitNumerical);
  CHECK(o.out.empty());
  const auto record = nlohmann::json::parse(o.err);
  CHECK(record["error"]["kind"] == "convergence");
}

TEST_CASE("command names round-trip") {
  for (Command cmd : {Command::mlf, Command::mwright, Command::green_single, Command::green_dist,
                      Command::moments, Command::asymptotics, Command::selftest}) {
    CHECK(parse_command(to_string(cmd)) == cmd);
  }
  CHECK_THROWS_AS(parse_command("plot"), ConfigError);
}

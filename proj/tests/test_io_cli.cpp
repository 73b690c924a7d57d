#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relaxlab/cli.hpp"
#include "relaxlab/io.hpp"
#include "test_support.hpp"

using namespace relaxlab;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RELAXLAB_TEST_DATA) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("relaxlab_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

std::string validation_path(const json& j) {
  try {
    io::function_from_json(j);
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("extended reals round-trip through JSON") {
  CHECK(io::to_json(ExtendedReal::infinity()) == "inf");
  CHECK(io::to_json(ExtendedReal(0.25)) == 0.25);
  CHECK(io::extended_from_json(json("inf"), "/x").is_infinite());
  CHECK(io::extended_from_json(json(1.5), "/x") == ExtendedReal(1.5));
  CHECK_THROWS_AS(io::extended_from_json(json("-inf"), "/x"), ValidationError);
  CHECK_THROWS_AS(io::extended_from_json(json(true), "/x"), ValidationError);
}

TEST_CASE("functions round-trip through JSON") {
  Rng rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = testing::random_function(rng, 8, 2.0);
    const auto back = io::function_from_json(json::parse(io::to_json(u).dump()));
    CHECK(back.breakpoints() == u.breakpoints());
    CHECK(back.values() == u.values());
  }
}

TEST_CASE("tables round-trip and keep infinities") {
  TabulatedIntegrand t({-1.0, 0.0, 1.0}, {0.0, ExtendedReal::infinity(), 0.5});
  const auto j = io::to_json(t);
  CHECK(j["vals"][1] == "inf");
  const auto back = io::table_from_json(j);
  CHECK(back.zs() == t.zs());
  CHECK(back.vals() == t.vals());
}

TEST_CASE("function validation paths") {
  CHECK(validation_path(json{{"breakpoints", {0, 1}}, {"values", {0}}}) == "<no error>");
  CHECK(validation_path(json{{"values", {0}}}) == "/breakpoints");
  CHECK(validation_path(json{{"breakpoints", {0, 1}}}) == "/values");
  CHECK(validation_path(json{{"breakpoints", {0, 0.6, 0.4, 1}}, {"values", {0, 1, 0}}}) == "/breakpoints/2");
  CHECK(validation_path(json{{"breakpoints", {0, 0.5, 1}}, {"values", {0, "x"}}}) == "/values/1");
  CHECK(validation_path(json{{"breakpoints", {0, 0.5, 1}}, {"values", {0}}}) == "/values");
  CHECK(validation_path(json::array()) == "/");
}

TEST_CASE("format_number") {
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(INFINITY) == "inf");
  CHECK(std::stod(io::format_number(0.1)) == 0.1);
}

TEST_CASE("relaxation results serialise NaN fields as null") {
  const auto bad = io::to_json(relax_closed_form(PiecewiseConstantFn::step(0.5, 1.5, 0.0)));
  CHECK(bad["feasible"] == false);
  CHECK(bad["value"] == "inf");
  CHECK(bad["w_star"].is_null());
  const auto good = io::to_json(relax_closed_form(PiecewiseConstantFn::constant(0.0)));
  CHECK(good["value"] == 0.5);
  CHECK(good["case"] == "Unconstrained");
}

TEST_CASE("cli relax and eval") {
  const auto r = run_cli({"relax", "--input", data("constant.json")});
  REQUIRE(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j["value"] == 0.5);
  CHECK(j["spec_version"] == io::kSchemaVersion);

  const auto e = run_cli({"eval", "--input", data("half_gap.json")});
  REQUIRE(e.code == cli::kOk);
  CHECK(json::parse(e.out)["value"] == "inf");

  const auto s = run_cli({"eval", "--input", data("step_03.json"), "--integrand", "fn:4"});
  REQUIRE(s.code == cli::kOk);
  // Diagonal mass 0.58 at f_4(0) = 1, off-diagonal at f_4(1) = 0.
  CHECK(json::parse(s.out)["value"].get<double>() == doctest::Approx(0.58));
}

TEST_CASE("cli input errors exit with 1") {
  CHECK(run_cli({"relax", "--bogus"}).code == cli::kInputError);
  CHECK(run_cli({}).code == cli::kInputError);
  CHECK(run_cli({"relax", "--input", data("bad_breakpoints.json")}).code == cli::kInputError);
  CHECK(run_cli({"relax", "--input", data("does_not_exist.json")}).code == cli::kInputError);
  const auto broken = write_temp("broken.json", "{\"breakpoints\": [0, 1], ");
  const auto b = run_cli({"relax", "--input", broken});
  CHECK(b.code == cli::kInputError);
  CHECK(b.err.find("error") != std::string::npos);
  CHECK(run_cli({"nonrep", "--t-list", "0.3,0.7"}).code == cli::kInputError);
  CHECK(run_cli({"eval", "--input", data("constant.json"), "--integrand", "fn:0"}).code == cli::kInputError);
  CHECK(run_cli({"recover", "--input", data("constant.json"), "--j-min", "0"}).code == cli::kInputError);
}

TEST_CASE("cli recover") {
  const auto r = run_cli({"recover", "--input", data("step_03.json"), "--j-max", "8", "--moments", "2"});
  REQUIRE(r.code == cli::kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "j,energy,moment_error_0,moment_error_1,moment_error_2");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);  // j = 1, 2, 4, 8

  const auto bad = write_temp("wide.json", R"({"breakpoints":[0,0.5,1],"values":[0,2]})");
  const auto inf = run_cli({"recover", "--input", bad});
  CHECK(inf.code == cli::kOk);
  CHECK(inf.out.find("# value=inf") != std::string::npos);
  const auto inf_json = run_cli({"recover", "--input", bad, "--format", "json"});
  CHECK(json::parse(inf_json.out)["sequence"].is_null());
}

TEST_CASE("cli nonrep") {
  const auto r = run_cli({"nonrep", "--t-list", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"});
  REQUIRE(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["spread"].get<double>() - 1.77778) <= 1e-5);
  CHECK(j["certified"] == true);
  const auto c = run_cli({"nonrep", "--t-list", "0.25,0.5", "--format", "csv"});
  CHECK(c.out.rfind("t,implied_g1\n", 0) == 0);
}

TEST_CASE("cli oracle and convexify") {
  const auto o = run_cli({"oracle", "--input", data("constant.json"), "--verify"});
  REQUIRE(o.code == cli::kOk);
  const auto j = json::parse(o.out);
  CHECK(std::abs(j["value"].get<double>() - 0.5) <= 1e-3);
  CHECK(j["mode"] == "ExactTwoValue");

  const auto c = run_cli({"convexify", "--integrand", "triple-well", "--points", "401"});
  REQUIRE(c.code == cli::kOk);
  const auto t = io::table_from_json(json::parse(c.out));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.vals()[i] == eval_convex_envelope(t.zs()[i]));
}

TEST_CASE("cli output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds{
      {"relax", "--input", data("step_03.json")},
      {"recover", "--input", data("step_03.json"), "--format", "json"},
      {"oracle", "--input", data("step_03.json"), "--seed", "5"},
      {"oracle", "--input", data("step_03.json"), "--integrand", "fn:2", "--seed", "5", "--grid", "60",
       "--windows", "6", "--restarts", "2", "--iters", "100"},
      {"nonrep", "--t-list", "0.2,0.4"}};
  for (const auto& cmd : cmds) {
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
  }
}

#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  json summary() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "recip");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = recip::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "recip_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("constant") {
  const auto r = run({"constant", "--group", "psl2z"});
  REQUIRE(r.code == 0);
  const json s = r.summary();
  CHECK(s["C"] == "1/16");
  CHECK(s["slope"] == "3/8");
  CHECK(s["schema"] == "recip.summary.v1");
  CHECK(s["status"] == "complete");
}

TEST_CASE("census summaries") {
  const auto small = run({"census", "--group", "psl2z", "--max-trace", "3"});
  REQUIRE(small.code == 0);
  CHECK(small.summary()["count"] == 1);

  const auto six = run({"census", "--group", "psl2z", "--L", "6"});
  REQUIRE(six.code == 0);
  const double ratio = six.summary()["ratio"];
  CHECK(ratio > 0.0);
  CHECK(ratio < 2.0);
  CHECK(six.summary()["config"]["L"] == 6.0);
  CHECK(six.summary()["bounds"]["upper"].get<int>() >= six.summary()["count"].get<int>());
}

TEST_CASE("exit codes") {
  CHECK(run({"census", "--group", "psl2z", "--L", "-1"}).code == 1);
  CHECK(run({"census", "--group", "psl2z"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"equidist", "--L", "2", "--step", "0.5"}).code == 1);
  CHECK(run({"census", "--group", "nonesuch.json", "--L", "2"}).code == 2);
  CHECK(run({"census", "--group", "psl2z", "--max-trace", "1"}).code == 1);
  CHECK(run({"equidist", "--L", "2", "--bins", "3x3"}).code == 1);

  const auto bad = scratch("bad_group.json");
  std::ofstream(bad) << R"({"name":"x","mode":"exact","generators":[["1","1","0","1"]],)"
                     << R"("involutions":[{"rep":["1","1","0","1"],"normalizer_order":2}],"euler_char":"-1/6"})";
  const auto r = run({"census", "--group", bad.string(), "--L", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("not order 2") != std::string::npos);

  const auto budget = run({"census", "--group", "psl2z", "--L", "6", "--max-points", "10"});
  CHECK(budget.code == 3);
  CHECK(budget.summary()["status"] == "incomplete");
}

TEST_CASE("delsarte and equidist commands") {
  const auto d = run({"delsarte", "--group", "psl2z", "--R", "12"});
  REQUIRE(d.code == 0);
  const double ratio = d.summary()["ratio"];
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);

  const auto e5 = run({"equidist", "--L", "5", "--bins", "12x12x8"});
  const auto e9 = run({"equidist", "--L", "9", "--bins", "12x12x8"});
  REQUIRE(e5.code == 0);
  REQUIRE(e9.code == 0);
  CHECK(e9.summary()["discrepancy"].get<double>() < e5.summary()["discrepancy"].get<double>());
}

TEST_CASE("output files are reproducible") {
  const std::vector<std::vector<std::string>> configs{
      {"census", "--group", "psl2z", "--L", "5"},
      {"lowlying", "--k", "1,2", "--L", "5"},
      {"equidist", "--L", "4", "--bins", "6x6x4"},
      {"delsarte", "--group", "psl2z", "--R", "5"},
  };
  for (const auto& cfg : configs) {
    const auto a = scratch("a"), c = scratch("c");
    auto with = [&](const fs::path& p, const std::string& threads) {
      auto args = cfg;
      args.insert(args.end(), {"--out", p.string(), "--threads", threads});
      return run(args);
    };
    REQUIRE(with(a, "1").code == 0);
    const std::string json1 = slurp(a.string() + ".json"), csv1 = slurp(a.string() + ".csv");
    REQUIRE(with(a, "1").code == 0);
    CHECK(slurp(a.string() + ".json") == json1);
    CHECK(slurp(a.string() + ".csv") == csv1);
    REQUIRE(with(c, "3").code == 0);
    CHECK(slurp(c.string() + ".csv") == csv1);
    CHECK(!csv1.empty());
  }
}

TEST_CASE("RECIP_THREADS sets the default") {
  setenv("RECIP_THREADS", "3", 1);
  const auto r = run({"constant"});
  CHECK(r.summary()["config"]["threads"] == 3);
  CHECK(run({"constant", "--threads", "2"}).summary()["config"]["threads"] == 2);
  setenv("RECIP_THREADS", "many", 1);
  CHECK(run({"constant"}).code == 1);
  unsetenv("RECIP_THREADS");
  CHECK(run({"constant"}).summary()["config"]["threads"] == 1);
}

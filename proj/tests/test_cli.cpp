#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/cli_run.hpp"

namespace {

using nlohmann::json;
using support::cli;

json parse(const support::CliResult& r) { return json::parse(r.out); }

TEST(Cli, PmfExample) {
  const auto r = cli({"pmf", "--model", "I", "--A", "linear:1", "--B", "linear:1", "--n", "2", "--m", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = parse(r);
  EXPECT_EQ(doc["subcommand"], "pmf");
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_EQ(doc["mode"], "exact");
  const json want = json::parse(R"([{"k":0,"p":"1/2"},{"k":1,"p":"1/3"},{"k":2,"p":"1/6"}])");
  ASSERT_EQ(doc["pmf"].size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(doc["pmf"][i]["k"], want[i]["k"]);
    EXPECT_EQ(doc["pmf"][i]["p"], want[i]["p"]);
  }
}

TEST(Cli, ModelIIOracle) {
  const auto r = cli({"oracle", "--model", "II", "--n", "2", "--m", "1", "--A", "linear:1", "--B", "linear:1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = parse(r);
  EXPECT_EQ(doc["pmf"][0]["p"], "1/6");
  EXPECT_EQ(doc["pmf"][1]["p"], "1/6");
  EXPECT_EQ(doc["pmf"][2]["p"], "2/3");
}

TEST(Cli, DualityCheck) {
  const auto r = cli({"duality-check", "--A", "square", "--B", "linear:1", "--n", "4", "--m", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("exact match"), std::string::npos);
}

TEST(Cli, ThetaAgreesWithProduct) {
  const auto r = cli({"theta", "--q", "0.5", "--tol", "1e-12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = parse(r);
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_NE(doc.dump().find("agree"), std::string::npos);
}

TEST(Cli, WCdfGrid) {
  const auto r = cli({"limit", "--kind", "w-cdf", "--grid-step", "0.01", "--format", "csv", "--decimals", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,value");
  int rows = 0;
  double prev = -1;
  while (std::getline(in, line)) {
    ++rows;
    const double v = std::stod(line.substr(line.find(',') + 1));
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_EQ(rows, 101);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, EmptyGridIsHeaderOnly) {
  const auto r = cli({"limit", "--kind", "w-cdf", "--grid-step", "0.1", "--grid-from", "0.6", "--grid-to", "0.5",
                      "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "x,value\n");
}

TEST(Cli, CsvPmfWithDecimals) {
  const auto r = cli({"pmf", "--n", "2", "--m", "2", "--A", "linear:1", "--B", "linear:1", "--format", "csv",
                      "--decimals", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.3333"), std::string::npos);
  EXPECT_NE(r.out.find("0.1667"), std::string::npos);
}

TEST(Cli, ValidationErrors) {
  auto r = cli({"pmf", "--n", "2", "--m", "2", "--A", "cubic", "--B", "linear:1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--A"), std::string::npos) << r.err;
  r = cli({"pmf", "--n", "2", "--m", "2", "--A", "linear:1", "--B", "linear:1", "--bogus", "1"});
  EXPECT_EQ(r.code, 2);
  r = cli({"theta", "--q", "1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--q"), std::string::npos) << r.err;
  r = cli({"pmf", "--A", "power:1:1/2", "--B", "linear:1", "--n", "2", "--m", "2", "--mode", "exact"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--mode"), std::string::npos) << r.err;
  r = cli({"simulate", "--A", "linear:1", "--B", "linear:1", "--n", "2", "--m", "2", "--trials", "0"});
  EXPECT_EQ(r.code, 2);
  r = cli({});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, DiscrepancyExitCode) {
  auto r = cli({"pmf-multi", "--model", "II", "--weights", "linear:1", "square", "linear:2", "--counts", "3,3,2",
                "--reading", "literal"});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_EQ(parse(r)["status"], "discrepancy");
  r = cli({"okc-moments", "--n", "3", "--m", "2", "--s", "1", "--exponent", "literal"});
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST(Cli, FloatModesAgree) {
  for (const char* mode : {"exact", "bigfloat", "float"}) {
    const auto r = cli({"pmf", "--model", "II", "--A", "square", "--B", "linear:1", "--n", "6", "--m", "5", "--mode", mode});
    ASSERT_EQ(r.code, 0) << mode << ": " << r.err;
    EXPECT_EQ(parse(r)["mode"], mode);
  }
}

TEST(Cli, PrecisionRecorded) {
  const auto r = cli({"theta", "--q", "0.3", "--precision", "128"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = parse(r);
  EXPECT_GE(doc["precision_bits"].get<unsigned>(), 128u);
  EXPECT_EQ(doc["request"]["options"]["--precision"], "128");
  cli({"theta", "--q", "0.3", "--precision", "256"});
}

TEST(Cli, Deterministic) {
  for (const auto& args : support::subcommand_invocations()) {
    const auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, WorkersDoNotChangeResults) {
  std::vector<std::string> base{"simulate", "--model", "I", "--weights", "linear:1", "triangular", "square",
                                "--counts", "3,2,3", "--trials", "60000", "--seed", "99", "--chi-square"};
  auto strip = [](json doc) {
    doc.erase("request");
    return doc.dump();
  };
  auto one = base, eight = base;
  one.insert(one.end(), {"--workers", "1"});
  eight.insert(eight.end(), {"--workers", "8"});
  const auto a = cli(one), b = cli(eight);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(strip(parse(a)), strip(parse(b)));
}

TEST(Cli, ReplayIsByteIdentical) {
  const auto dir = std::filesystem::temp_directory_path();
  int i = 0;
  for (const auto& args : support::subcommand_invocations()) {
    const auto first = cli(args);
    ASSERT_EQ(first.code, 0) << first.err;
    const auto path = dir / ("urnlab_replay_" + std::to_string(i++) + ".json");
    std::ofstream(path) << first.out;
    const auto again = cli({"--request", path.string()});
    EXPECT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(again.out, first.out) << args[0];
    // A bare request replays the same way.
    const auto bare = dir / ("urnlab_bare_" + std::to_string(i) + ".json");
    std::ofstream(bare) << parse(first)["request"].dump();
    EXPECT_EQ(cli({"--request", bare.string()}).out, first.out);
    std::filesystem::remove(path);
    std::filesystem::remove(bare);
  }
}

TEST(Cli, PmfRoundTripsThroughJson) {
  const auto r = cli({"pmf", "--model", "II", "--A", "triangular", "--B", "linear:2", "--n", "5", "--m", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  urnlab::Rational total = 0;
  const json doc = parse(r);
  for (const auto& e : doc["pmf"]) total += urnlab::parse_rational(e["p"].get<std::string>());
  EXPECT_EQ(total, 1);
}

TEST(Cli, CompareReportsAgreement) {
  const auto r = cli({"compare", "--model", "II", "--weights", "linear:1", "square", "triangular", "--counts", "2,2,2",
                      "--trials", "20000", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["status"], "ok");
}

}  // namespace

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gaugelab/cli.hpp"
#include "json.hpp"

namespace gaugelab::cli {
namespace {

using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Cli, QuantizeDirac) {
  const auto r = invoke({"quantize", "dirac", "--q", "1", "--g", "0.5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["product"], 1);
  EXPECT_EQ(j["nearest_integer"], 1);
  EXPECT_EQ(j["satisfied"], true);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, QuantizeKappaWithFactorization) {
  const auto r = invoke({"quantize", "kappa", "--q", "0.5", "--kappa", "3", "--N", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["satisfied"], false);
  EXPECT_EQ(j["single_valued"], false);
  EXPECT_EQ(j["factorized"]["satisfied"], false);
  const auto ok = json::parse(invoke({"quantize", "kappa", "--q", "0.3333333333333333", "--kappa", "3"}).out);
  EXPECT_EQ(ok["satisfied"], true);
  EXPECT_EQ(ok["single_valued"], true);
  EXPECT_FALSE(ok.contains("factorized"));
}

TEST(Cli, LineIntegral) {
  const auto r = invoke({"line-integral", "--potential", R"({"kind":"kappa","kappa":1})", "--path", "unit-circle"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 6.283185307, 1e-9);
  EXPECT_GT(j["panels_used"].get<long long>(), 0);
  EXPECT_TRUE(j.contains("est_error"));
}

TEST(Cli, SpectrumJsonAndCsv) {
  const auto r = invoke({"spectrum", "--N", "3", "--range", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto charges = json::parse(r.out)["charges"].get<std::vector<double>>();
  const std::vector<double> expected{-1, -2.0 / 3, -1.0 / 3, 0, 1.0 / 3, 2.0 / 3, 1};
  ASSERT_EQ(charges.size(), expected.size());
  for (size_t i = 0; i < charges.size(); ++i) EXPECT_NEAR(charges[i], expected[i], 1e-12);

  const auto csv = invoke({"--format", "csv", "spectrum", "--N", "2", "--range", "1", "--kind", "kappa"});
  ASSERT_EQ(csv.code, kOk);
  EXPECT_EQ(csv.out, "kappa\n-2\n0\n2\n");
  EXPECT_EQ(invoke({"spectrum", "--N", "0", "--range", "1"}).code, kMalformedInput);
}

TEST(Cli, EvalCurlFluxStokes) {
  auto e = invoke({"eval", "--potential", R"({"kind":"ab-solenoid","B":2,"R":1})", "--point", "0.5,0,0"});
  ASSERT_EQ(e.code, kOk) << e.err;
  auto j = json::parse(e.out);
  EXPECT_EQ(j["value"], json::parse("[0, 0.5, 0]"));

  e = invoke({"eval", "--field", "--potential", R"({"kind":"ab-solenoid","B":2,"R":1})", "--point", "0.5,0,0"});
  EXPECT_EQ(json::parse(e.out)["value"], json::parse("[0, 0, 2]"));

  const auto c = invoke({"curl", "--potential", R"({"kind":"kappa","kappa":5})", "--point", "2,0,0"});
  ASSERT_EQ(c.code, kOk) << c.err;
  for (double v : json::parse(c.out)["value"].get<std::vector<double>>()) EXPECT_LT(std::abs(v), 1e-6);

  const auto f = invoke({"flux", "--potential", R"({"kind":"ab-solenoid","B":2,"R":1})", "--surface",
                         R"({"kind":"disk","radius":3})"});
  ASSERT_EQ(f.code, kOk) << f.err;
  EXPECT_NEAR(json::parse(f.out)["value"].get<double>(), 2 * M_PI, 1e-9);

  const auto s = invoke({"stokes", "--potential", R"({"kind":"kappa","kappa":1})", "--surface", "unit-disk"});
  ASSERT_EQ(s.code, kOk) << s.err;
  j = json::parse(s.out);
  EXPECT_EQ(j["case"], "AXIS_INTERCEPTING");
  EXPECT_NEAR(j["flux"].get<double>(), 0.0, 1e-6);
  EXPECT_EQ(j["inner_samples"].size(), 3u);
}

TEST(Cli, AbPatternCsv) {
  const auto r = invoke({"ab-pattern", "--q", "1", "--points", "21"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 22u);
  EXPECT_EQ(ls[0], "y,intensity");
  EXPECT_EQ(ls[1].substr(0, 3), "-3,");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  EXPECT_EQ(r.out.back(), '\n');
  // y = 0 with flux pi sits on a dark fringe.
  EXPECT_EQ(ls[11], "0,0");
}

TEST(Cli, AbInvariance) {
  const auto r = invoke({"ab-invariance", "--q", "1", "--kappa", "0.5", "--points", "61"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["max_intensity_deviation"].get<double>(), 2.0, 1e-6);
  EXPECT_EQ(j["quantized"], false);
  const auto q = json::parse(invoke({"ab-invariance", "--q", "3", "--kappa", "0.3333333333333333", "--points", "61"}).out);
  EXPECT_LT(q["max_intensity_deviation"].get<double>(), 1e-9);
  EXPECT_EQ(q["quantized"], true);
}

TEST(Cli, ByteIdenticalRepeats) {
  const std::vector<std::vector<std::string>> commands = {
      {"ab-pattern", "--q", "0.7", "--kappa", "0.3", "--points", "51"},
      {"stokes", "--potential", R"({"kind":"ab-solenoid","B":2,"R":1})", "--surface", R"({"kind":"disk","radius":3})"},
      {"line-integral", "--potential", R"({"kind":"dirac-string-i","g":1})", "--path", "unit-circle"}};
  for (const auto& cmd : commands) {
    const auto a = invoke(cmd);
    const auto b = invoke(cmd);
    ASSERT_EQ(a.code, kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  // Worker count does not change the bytes.
  const auto many = invoke(commands[0]);
  setenv("GHL_THREADS", "1", 1);
  EXPECT_EQ(thread_budget(), 1u);
  const auto one = invoke(commands[0]);
  unsetenv("GHL_THREADS");
  EXPECT_EQ(many.out, one.out);
}

TEST(Cli, ExitCodes) {
  // Malformed input.
  EXPECT_EQ(invoke({}).code, kMalformedInput);
  EXPECT_EQ(invoke({"frobnicate"}).code, kMalformedInput);
  EXPECT_EQ(invoke({"quantize", "dirac", "--q", "1"}).code, kMalformedInput);
  EXPECT_EQ(invoke({"quantize", "dirac", "--q", "x", "--g", "1"}).code, kMalformedInput);
  EXPECT_EQ(invoke({"eval", "--potential", "{bad", "--point", "1,0,0"}).code, kMalformedInput);
  EXPECT_EQ(invoke({"eval", "--potential", R"({"kind":"kappa","kappa":1,"color":"red"})", "--point", "1,0,0"}).code,
            kMalformedInput);
  EXPECT_EQ(invoke({"line-integral", "--potential", R"({"kind":"kappa","kappa":1})", "--path",
                    R"({"kind":"custom-samples","points":[[1,0,0],[0,1,0],[-1,0,0]],"closed":false})",
                    "--rel-tol", "0"}).code,
            kMalformedInput);
  EXPECT_EQ(invoke({"stokes", "--potential", R"({"kind":"kappa","kappa":1})", "--surface", "unit-sphere"}).code,
            kMalformedInput);
  EXPECT_EQ(invoke({"--format", "xml", "ab-pattern", "--points", "3"}).code, kMalformedInput);

  // Domain errors.
  const auto on_string = invoke({"eval", "--potential", R"({"kind":"dirac-string-i","g":1})", "--point", "0,0,-1"});
  EXPECT_EQ(on_string.code, kDomainError);
  EXPECT_FALSE(on_string.err.empty());
  EXPECT_TRUE(on_string.out.empty());
  EXPECT_EQ(invoke({"eval", "--field", "--potential", R"({"kind":"ab-solenoid","B":2,"R":1})", "--point", "1,0,0"}).code,
            kDomainError);
  EXPECT_EQ(invoke({"line-integral", "--potential", R"({"kind":"kappa","kappa":1})", "--path",
                    R"({"kind":"segment","from":[1,0,0],"to":[-1,0,0]})"}).code,
            kDomainError);

  // Non-convergence.
  EXPECT_EQ(invoke({"--max-refinements", "1", "--base-panels", "4", "--rel-tol", "1e-14", "line-integral",
                    "--potential", R"({"kind":"kappa","kappa":1})", "--path",
                    R"({"kind":"circle","center":[0.99999,0,0]})"}).code,
            kNoConvergence);

  // Output file that cannot be written.
  EXPECT_EQ(invoke({"--out", "/nonexistent-dir/x.json", "quantize", "dirac", "--q", "1", "--g", "0.5"}).code,
            kIoError);
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "gaugelab_cli_test.csv";
  const std::vector<std::string> cmd = {"ab-pattern", "--points", "11"};
  const auto direct = invoke(cmd);
  std::vector<std::string> with_out = {"--out", path.string()};
  with_out.insert(with_out.end(), cmd.begin(), cmd.end());
  const auto r = invoke(with_out);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), direct.out);
  std::filesystem::remove(path);
}

TEST(Cli, NumbersRoundedToTwelveDigits) {
  EXPECT_EQ(round_significant(M_PI), 3.14159265359);
  EXPECT_EQ(round_significant(-1.0 / 3.0), -0.333333333333);
  EXPECT_EQ(round_significant(0.0), 0.0);
  EXPECT_EQ(round_significant(1e-300), 1e-300);
  const auto r = invoke({"line-integral", "--potential", R"({"kind":"kappa","kappa":1})", "--path", "unit-circle"});
  EXPECT_NE(r.out.find("6.28318530718"), std::string::npos);
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("ab-pattern"), std::string::npos);
}

}  // namespace
}  // namespace gaugelab::cli

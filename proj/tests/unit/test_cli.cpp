#include "cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using latsurj::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "",
           std::map<std::string, std::string> env = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  auto lookup = [env](const std::string& k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const int code = run_cli(args, in, out, err, lookup);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(LATSURJ_FIXTURE_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("latsurj_cli_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, CertifyIdentityFixture) {
  const auto r = run({"certify", fixture("identity3.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "surjective");
  EXPECT_EQ(j["verified"], true);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_NE(r.err.find("latsurj certify"), std::string::npos);
}

TEST(Cli, CertifyNonSurjectiveStillSucceeds) {
  const auto r = run({"certify", fixture("not_surjective.txt"), "--timing"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "not_surjective");
  EXPECT_TRUE(j.contains("elapsed_ms"));
  EXPECT_EQ(nlohmann::json::parse(run({"certify", fixture("coprime_minors.txt")}).out)["verdict"], "surjective");
}

TEST(Cli, CertifyFromStdin) {
  const auto r = run({"certify", "-"}, "2 2\n1 1\n0 1\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "surjective");
  EXPECT_EQ(run({"certify"}, "2 2\n1 1\n").code, 2);
  EXPECT_EQ(run({"certify", "/nonexistent/matrix.txt"}).code, 2);
}

TEST(Cli, SampleThenCertifyIsDeterministic) {
  const auto a = run({"sample", "--n", "6", "--u", "2", "--seed", "11"});
  const auto b = run({"sample", "--n", "6", "--u", "2", "--seed", "11"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, 4), "6 8\n");
  const auto c1 = run({"certify"}, a.out), c2 = run({"certify"}, b.out);
  EXPECT_EQ(c1.out, c2.out);
  const auto s = run({"sample", "--n", "5", "--u", "1", "--kind", "symmetric", "--seed", "2"});
  EXPECT_EQ(s.out.substr(0, 4), "5 6\n");
  EXPECT_EQ(run({"sample", "--n", "5", "--kind", "banana"}).code, 2);
}

TEST(Cli, Snf) {
  const auto r = run({"snf", fixture("not_surjective.txt")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["invariant_factors"], nlohmann::json::array({"6"}));
  EXPECT_EQ(j["trivial"], false);
}

TEST(Cli, PredictCorank) {
  const auto r = run({"predict", "corank", "--q", "2", "--k", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("0.288788", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("tail bound"), std::string::npos);
  const auto j = nlohmann::json::parse(run({"predict", "corank", "--q", "3", "--k", "1", "--format", "json"}).out);
  EXPECT_NEAR(j["value"].get<double>(), 0.420094558445962, 1e-13);
  EXPECT_EQ(run({"predict", "corank", "--q", "6", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"predict", "corank", "--q", "2"}).code, 2);
}

TEST(Cli, PredictTrivial) {
  const auto all = nlohmann::json::parse(run({"predict", "trivial", "--u", "2", "--format", "json"}).out);
  EXPECT_NEAR(all["value"].get<double>(), 0.716791660453523, 1e-13);
  const auto two = nlohmann::json::parse(run({"predict", "trivial", "--u", "1", "--primes", "2", "--format", "json"}).out);
  EXPECT_NEAR(two["value"].get<double>(), 0.577576190173205, 1e-13);
  EXPECT_EQ(run({"predict", "trivial", "--u", "1", "--primes", "2,4"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"predict", "corank", "--q", "2", "--k", "0", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"predict", "corank", "--q", "two", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"experiment", "nonsense"}).code, 2);
  EXPECT_EQ(run({"experiment", "corank", "--p", "4", "--n", "5", "--trials", "3"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, PrecedenceFlagsEnvConfig) {
  const auto cfg = temp_file("precedence.cfg", "# comment\nn = 7\ntrials=5\nseed=3\n");
  auto n_of = [](const Result& r) { return nlohmann::json::parse(r.out)["config"]["n"].get<int>(); };
  const std::vector<std::string> base{"experiment", "square", "--config", cfg.string()};
  EXPECT_EQ(n_of(run(base)), 7);
  EXPECT_EQ(n_of(run(base, "", {{"LATSURJ_N", "9"}})), 9);
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--n", "11"});
  EXPECT_EQ(n_of(run(with_flag, "", {{"LATSURJ_N", "9"}})), 11);
  // config via environment
  EXPECT_EQ(n_of(run({"experiment", "square"}, "", {{"LATSURJ_CONFIG", cfg.string()}})), 7);
  const auto bad = temp_file("bad.cfg", "frobs=1\n");
  EXPECT_EQ(run({"experiment", "square", "--config", bad.string()}).code, 2);
  std::filesystem::remove(cfg);
  std::filesystem::remove(bad);
}

TEST(Cli, ExperimentReportAndExitCode) {
  const std::vector<std::string> args{"experiment", "corank", "--n", "10", "--trials", "400", "--seed", "7", "--threads", "1"};
  const auto r = run(args);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(r.code, j["passed"].get<bool>() ? 0 : 1);
  EXPECT_EQ(j["invocation"], "latsurj experiment corank --n 10 --trials 400 --seed 7 --threads 1");
  EXPECT_EQ(j["seed"], 7);
  // a check that must fail: square matrices at tiny n are often surjective
  const auto f = run({"experiment", "square", "--n", "3", "--trials", "200", "--threads", "1"});
  EXPECT_EQ(f.code, 1);
  const auto csv = run({"experiment", "singularity", "--n", "10", "--trials", "50", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("label,count", 0), 0u);
  EXPECT_EQ(run({"experiment", "corank", "--format", "xml"}).code, 2);
}

TEST(Cli, ExperimentOutputIsThreadIndependent) {
  auto strip = [](const std::string& s) {
    auto j = nlohmann::json::parse(s);
    j.erase("runtime_ms");
    j.erase("invocation");
    return j.dump();
  };
  const auto a = run({"experiment", "trivial", "--n", "8", "--trials", "60", "--threads", "1"});
  const auto b = run({"experiment", "trivial", "--n", "8", "--trials", "60", "--threads", "3"});
  EXPECT_EQ(strip(a.out), strip(b.out));
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "latsurj_cli_out.json";
  const auto r = run({"predict", "trivial", "--u", "3", "--format", "json", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_NEAR(nlohmann::json::parse(in)["value"].get<double>(), 0.861624363575385, 1e-13);
  std::filesystem::remove(path);
}

TEST(Cli, FourierCheck) {
  const auto r = run({"fourier", "check", "--q", "4", "--mu", "0:1/2,1:1/4,2:1/4", "--w", "1,2,3", "--v", "0.5"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("alpha = 1/4"), std::string::npos);
  EXPECT_NE(r.out.find("LO r=0"), std::string::npos);
  const auto j = nlohmann::json::parse(
      run({"fourier", "check", "--q", "2", "--mu", "0:3/4,1:1/4", "--w", "1,1", "--r", "0", "--format", "json"}).out);
  EXPECT_EQ(j["lo"][0]["probability"], "5/8");
  EXPECT_EQ(j["passed"], true);
  // a point mass: the hypothesis fails, which is not a violation
  EXPECT_EQ(run({"fourier", "check", "--q", "3", "--mu", "1:1", "--w", "1"}).code, 0);
  EXPECT_EQ(run({"fourier", "check", "--q", "3", "--mu", "1:1", "--w", "0"}).code, 2);
  EXPECT_EQ(run({"fourier", "check", "--q", "3", "--mu", "1:1", "--w", "5"}).code, 2);
}

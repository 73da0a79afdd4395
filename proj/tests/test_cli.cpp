#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using omegalab::cli::run_cli;
namespace fs = std::filesystem;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string body(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, rest;
  while (std::getline(is, line))
    if (line.empty() || line[0] != '#') rest += line + "\n";
  return rest;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}
}  // namespace

TEST(Cli, DensitiesAtHundred) {
  const auto r = run({"densities", "--n", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# tool=omegalab"), std::string::npos);
  EXPECT_NE(r.out.find("# manifest="), std::string::npos);
  EXPECT_NE(body(r.out).find("ell,pi_bar,pi_bar_log,gaussian,ratio\n"), std::string::npos);
  EXPECT_NE(body(r.out).find("\n1,0.25,"), std::string::npos);
}

TEST(Cli, CorrelateCesaroParity) {
  const auto r = run({"correlate", "--n", "10", "--a", "parity", "--b", "parity", "--weighting", "cesaro"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(body(r.out).find("\n10,cesaro,-0.40000000000000002,0,"), std::string::npos) << r.out;
}

TEST(Cli, ConstantHasZeroError) {
  const auto r = run({"correlate", "--n", "1e4", "--a", "const", "--b", "const"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string b = body(r.out);
  const std::string last = b.substr(b.rfind(',', b.size() - 2) + 1);
  EXPECT_LE(std::abs(std::stod(last)), 1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"densities", "--n", "100", "--bogus"}).code, 2);
  EXPECT_EQ(run({"nonsense", "--n", "100"}).code, 2);
  EXPECT_EQ(run({"densities"}).code, 2);
  EXPECT_EQ(run({"correlate", "--n", "100", "--a", "wobble"}).code, 3);
  EXPECT_EQ(run({"reduce", "--n", "10000", "--window-h0", "24", "--window-h", "28"}).code, 4);
  EXPECT_EQ(run({"characters", "--q", "20000"}).code, 5);
  EXPECT_EQ(run({"sieve", "--n", "1", "--mode", "truncated", "--cutoff", "1"}).code, 2);
  EXPECT_EQ(run({"explore-k", "--n", "1000", "--k", "5", "--a", "parity"}).code, 5);
}

TEST(Cli, WorkerCountDoesNotChangeOutput) {
  auto strip = [](const std::string& s) { return body(s); };
  const auto a = run({"correlate", "--n", "200000", "--a", "parity", "--b", "random:4", "--workers", "1",
                      "--segment-length", "8192"});
  const auto b = run({"correlate", "--n", "200000", "--a", "parity", "--b", "random:4", "--workers", "8",
                      "--segment-length", "8192"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(strip(a.out), strip(b.out));
}

TEST(Cli, ReportAndAtomicOutput) {
  const fs::path dir = fs::temp_directory_path() / "omegalab_cli_test";
  fs::create_directories(dir);
  const auto csv = dir / "ek.csv";
  const auto rep = dir / "ek.json";
  const auto r = run({"erdos-kac", "--n", "10000", "--n", "100000", "--out", csv.string(), "--report", rep.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(csv));
  EXPECT_FALSE(fs::exists(csv.string() + ".partial"));
  const auto j = nlohmann::json::parse(slurp(rep));
  EXPECT_EQ(j["results"].size(), 2u);
  EXPECT_NEAR(j["results"][0]["ks"].get<double>(), 0.3182255284268556, 1e-12);
  EXPECT_EQ(j["manifest"]["derived"][0]["I_N_size"].get<int>(), 13);

  // a failing run leaves no output behind
  const auto bad = dir / "bad.csv";
  EXPECT_EQ(run({"erdos-kac", "--n", "100", "--out", bad.string()}).code, 2);
  EXPECT_FALSE(fs::exists(bad));
  fs::remove_all(dir);
}

TEST(Cli, ManifestDrivesRun) {
  const fs::path dir = fs::temp_directory_path() / "omegalab_manifest_test";
  fs::create_directories(dir);
  const auto m = dir / "m.json";
  std::ofstream(m) << R"({"command": "correlate", "N_list": [10], "a_spec": "parity", "b_spec": "parity",
                          "weighting": "cesaro", "shift": 1})";
  const auto r = run({"--manifest", m.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(body(r.out).find("-0.40000000000000002"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, SampleManifestsParse) {
  for (const auto& e : fs::directory_iterator(OMEGALAB_SAMPLES_DIR)) {
    if (e.path().extension() != ".json") continue;
    const auto j = nlohmann::json::parse(slurp(e.path()));
    EXPECT_TRUE(j.contains("command")) << e.path();
  }
}

TEST(Cli, SieveAndCharacters) {
  const auto s = run({"sieve", "--n", "12"});
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("n,count\n1,0\n2,1\n"), std::string::npos);
  EXPECT_NE(s.out.find("12,3\n"), std::string::npos);
  const auto c = run({"characters", "--q", "3"});
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("1,2,-1,"), std::string::npos);
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "ndlid/measures.hpp"
#include "ndlid/state_io.hpp"

using namespace ndlid;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const char* dir = std::getenv("NDLID_TMPDIR");
  return std::filesystem::path(dir ? dir : std::filesystem::temp_directory_path().string()) / name;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double printed_value(const std::string& out) {
  std::istringstream in(out);
  std::string key;
  double v = 0.0;
  in >> key >> v;
  EXPECT_EQ(key, "value");
  return v;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(CliMeasure, WernerOptimized) {
  const auto path = scratch("werner1.json");
  write_state_file(path, werner(1.0));
  const CliRun r = run({"measure", "--state", path.string(), "--p", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(printed_value(r.out), 1.0 / 6, 1e-4);
  EXPECT_NE(r.out.find("method     optimized"), std::string::npos);
  EXPECT_NE(r.out.find("converged  yes"), std::string::npos);
}

TEST(CliMeasure, BellClosedAndReproducible) {
  const auto path = scratch("bell.json");
  write_state_file(path, maximally_entangled(2).to_state());
  const CliRun r = run({"measure", "--state", path.string(), "--p", "2", "--method", "closed"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(printed_value(r.out), 0.612372, 1e-6);
  EXPECT_EQ(printed_value(r.out), d2_closed(maximally_entangled(2).to_state()).value);
  const CliRun direct = run({"measure", "--state", path.string(), "--p", "2", "--method", "direct"});
  EXPECT_NEAR(printed_value(direct.out), printed_value(r.out), 1e-12);
}

TEST(CliMeasure, PrintedValueMatchesLibrary) {
  const BipartiteState s = random_state(2, 2, 3, 5);
  const auto path = scratch("random.json");
  write_state_file(path, s);
  const CliRun r = run({"measure", "--state", path.string(), "--p", "1", "--starts", "3", "--seed", "11"});
  OptimizerConfig cfg;
  cfg.starts = 3;
  cfg.seed = 11;
  const BipartiteState reread = BipartiteState::validate(read_state_file(path).rho, 2, 2);
  EXPECT_EQ(printed_value(r.out), d_p(reread, 1.0, cfg).value);
}

TEST(CliMeasure, InvalidInputs) {
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{\"dA\": 2, \"dB\": 2, \"re\": [[1,0],[0,0]]}";
  EXPECT_EQ(run({"measure", "--state", bad.string()}).code, 2);

  const auto neg = scratch("neg.json");
  std::ofstream(neg) << R"({"dA": 2, "dB": 1, "re": [[1.2, 0], [0, -0.2]], "im": [[0, 0], [0, 0]]})";
  const CliRun r = run({"validate", "--state", neg.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("positiv"), std::string::npos) << r.err;

  EXPECT_EQ(run({"measure", "--state", scratch("missing.json").string()}).code, 2);
  const auto ok = scratch("ok.json");
  write_state_file(ok, werner(0.0));
  EXPECT_EQ(run({"measure", "--state", ok.string(), "--p", "1", "--method", "closed"}).code, 2);
  EXPECT_EQ(run({"measure", "--state", ok.string(), "--p", "0.5"}).code, 2);
  EXPECT_EQ(run({"measure", "--state", ok.string(), "--method", "fancy"}).code, 2);
  EXPECT_EQ(run({"measure"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"validate", "--state", ok.string()}).code, 0);
}

TEST(CliSweep, WritesDeterministicCsv) {
  const auto path = scratch("werner.csv");
  const std::vector<std::string> args = {"sweep", "--family", "werner", "--grid", "a=-1:1:5", "--measures",
                                         "d1,d2,dG",   "--starts", "4", "--out", path.string()};
  ASSERT_EQ(run(args).code, 0);
  const std::string first = read_all(path);
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(read_all(path), first);
  EXPECT_EQ(first.substr(0, first.find('\n')), "a,d1,d2,dG");
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 6);
}

TEST(CliSweep, Errors) {
  EXPECT_EQ(run({"sweep", "--family", "ising", "--grid", "a=0:1:2"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "werner", "--grid", "a=0:1"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "werner", "--grid", "a=0:1:2", "--measures", "q"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "werner", "--grid", "a=0:1:2", "--measures", "d2", "--out",
                 "/nonexistent-dir/x.csv"})
                .code,
            2);
  const CliRun r = run({"sweep", "--family", "qc", "--grid", "phi=0:1:2", "--grid", "p=0:1:2", "--measures", "q"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "p,s0,s1,phi,q");
}

TEST(CliSelftest, QuickPasses) {
  const CliRun r = run({"selftest", "--level", "quick", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "colift/cli.hpp"
#include "colift/system.hpp"
#include "support.hpp"

using namespace colift;
using namespace colift::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CheckSimOnFirstCounterexample) {
  const auto r = run({"check-sim", "--system", data_file("counterexample1.json"), "--relation", "R", "--order", "supset"});
  EXPECT_EQ(r.code, kHolds) << r.err;
  EXPECT_NE(r.out.find("is a simulation"), std::string::npos);
  const auto sub = run({"check-sim", "--system", data_file("counterexample1.json"), "--order", "subset"});
  EXPECT_EQ(sub.code, kFails);
  EXPECT_NE(sub.out.find("witness"), std::string::npos);
  EXPECT_EQ(run({"check-bisim", "--system", data_file("counterexample1.json")}).code, kFails);
}

TEST(Cli, EvalMembership) {
  const std::string sys = data_file("counterexample1.json");
  EXPECT_EQ(run({"eval", "--system", sys, "--formula", "phi", "--state", "y2"}).code, kHolds);
  EXPECT_EQ(run({"eval", "--system", sys, "--formula", "phi_inv", "--state", "x1"}).code, kFails);
  const auto img = run({"eval", "--system", sys, "--formula", "X P", "--image", "R", "--direction", "inverse",
                        "--coalgebra", "c", "--format", "json"});
  EXPECT_EQ(img.code, kHolds) << img.err;
  const Json j = Json::parse(img.out);
  EXPECT_EQ(j["formula"], "X R^-1[P]");
  EXPECT_TRUE(j["satisfied_by"].empty());
  const auto lts = run({"eval", "--system", data_file("lts-example.json"), "--formula", "F Paid", "--coalgebra", "machine"});
  EXPECT_EQ(lts.code, kHolds);
  EXPECT_NE(lts.out.find("[[F Paid]]"), std::string::npos);
}

TEST(Cli, LargestRelations) {
  const std::string sys = data_file("kripke-example.json");
  const Json bisim = Json::parse(run({"largest-bisim", "--system", sys, "--format", "json"}).out);
  const Json sim = Json::parse(run({"largest-sim", "--system", sys, "--format", "json"}).out);
  const Json x1y1 = Json::array({"x1", "y1"});
  EXPECT_EQ(std::count(bisim["pairs"].begin(), bisim["pairs"].end(), x1y1), 0);
  EXPECT_EQ(std::count(sim["pairs"].begin(), sim["pairs"].end(), x1y1), 1);
}

TEST(Cli, CheckOrder) {
  const std::string ce2 = data_file("counterexample2.json");
  EXPECT_EQ(run({"check-order", "--system", ce2, "--check", "down-closed"}).code, kHolds);
  EXPECT_EQ(run({"check-order", "--system", ce2, "--check", "preorder", "--carrier", "X"}).code, kHolds);
  EXPECT_EQ(run({"check-order", "--system", data_file("counterexample1.json"), "--order", "supset", "--check",
                 "down-closed"})
                .code,
            kFails);
  EXPECT_EQ(run({"check-order", "--system", data_file("counterexample1.json"), "--order", "supset", "--check",
                 "up-closed"})
                .code,
            kHolds);
}

TEST(Cli, UsageAndValidationErrors) {
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"check-sim"}).code, kUsage);
  EXPECT_EQ(run({"check-sim", "--system", "/nonexistent.json"}).code, kUsage);
  EXPECT_EQ(run({"eval", "--system", data_file("counterexample1.json"), "--formula", "Nope"}).code, kUsage);
  EXPECT_EQ(run({"verify-theorems", "--suite", "nope"}).code, kUsage);
  EXPECT_EQ(run({"--help"}).code, kHolds);
}

TEST(Cli, VerifyTheoremsJsonIsByteIdentical) {
  const std::vector<std::string> args = {"verify-theorems", "--suite", "sim-down", "--trials", "30", "--seed", "7",
                                         "--format", "json"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, kHolds);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["suites"][0]["suite"], "sim-down");
  EXPECT_EQ(j["suites"][0]["trials"], 30);
}

TEST(Cli, EmittedViolationsReplay) {
  const auto dir = std::filesystem::temp_directory_path() / "colift-cli-test";
  std::filesystem::remove_all(dir);
  const auto r = run({"verify-theorems", "--suite", "bisim", "--trials", "200", "--probe", "--emit-violations",
                      dir.string(), "--format", "json"});
  EXPECT_EQ(r.code, kHolds) << r.err;  // probes are informational
  std::size_t replayed = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const SystemDescription sys = load_system(entry.path().string());
    const auto& pair = sys.meta.at("pair");
    const auto left = run({"eval", "--system", entry.path().string(), "--formula", "left", "--coalgebra", "c",
                           "--state", pair[0].get<std::string>()});
    const auto right = run({"eval", "--system", entry.path().string(), "--formula", "right", "--coalgebra", "d",
                            "--state", pair[1].get<std::string>()});
    EXPECT_EQ(left.code == kHolds, sys.meta.at("left_holds").get<bool>()) << entry.path();
    EXPECT_EQ(right.code == kHolds, sys.meta.at("right_holds").get<bool>()) << entry.path();
    ++replayed;
  }
  EXPECT_GT(replayed, 0u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Counterexamples) {
  const auto r = run({"counterexamples"});
  EXPECT_EQ(r.code, kHolds);
  EXPECT_NE(r.out.find("counterexample-next"), std::string::npos);
  EXPECT_NE(r.out.find("counterexample-eventually"), std::string::npos);
}

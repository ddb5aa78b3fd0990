#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

#include "latticelab/cli.hpp"

using latticelab::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(LATTICELAB_SAMPLES_DIR) + "/" + name; }

/// Arguments that make each leaf of the command tree run quickly.
std::vector<std::string> leaf_args(const std::vector<std::string>& leaf) {
  std::vector<std::string> a = leaf;
  const std::string key = leaf[0] + " " + leaf[1];
  if (key == "tl trace") a.insert(a.end(), {"--n", "4", "--word", "1,2,3"});
  if (key == "tl check") a.insert(a.end(), {"--k", "1", "--max-length", "3"});
  if (key == "braid invariant") a.insert(a.end(), {"--word", "s1 s1 s1"});
  if (key == "braid check") a.insert(a.end(), {"--trials", "10"});
  if (key == "chain charges") a.insert(a.end(), {"--n", "4"});
  if (key == "lattice commute") a.insert(a.end(), {"--n", "4"});
  if (key == "ybe check") a.insert(a.end(), {"--grid", "3"});
  return a;
}

}  // namespace

TEST(Cli, EveryLeafRunsAndPasses) {
  for (const auto& leaf : latticelab::cli::command_tree()) {
    const auto r = call(leaf_args(leaf));
    EXPECT_EQ(r.code, 0) << leaf[0] << " " << leaf[1] << "\n" << r.out << r.err;
    const auto doc = r.doc();
    EXPECT_EQ(doc.at("schema"), "lattice-lab/1");
    EXPECT_EQ(doc.at("command"), leaf[0] + " " + leaf[1]);
    EXPECT_TRUE(doc.at("pass").get<bool>());
    EXPECT_TRUE(doc.contains("inputs"));
    EXPECT_TRUE(doc.contains("results"));
  }
}

TEST(Cli, TreeCoversEveryModule) {
  std::set<std::string> groups;
  for (const auto& leaf : latticelab::cli::command_tree()) groups.insert(leaf[0]);
  EXPECT_EQ(groups, (std::set<std::string>{"ybe", "tl", "lattice", "chain", "braid", "graph"}));
}

TEST(Cli, ByteIdenticalAcrossRuns) {
  for (const auto& leaf : latticelab::cli::command_tree()) {
    auto args = leaf_args(leaf);
    args.insert(args.end(), {"--seed", "17"});
    EXPECT_EQ(call(args).out, call(args).out) << leaf[0] << " " << leaf[1];
  }
}

TEST(Cli, DocumentedExamples) {
  auto ybe = call({"ybe", "check", "--q", "0.8", "--x", "1.3", "--y", "0.6"}).doc();
  EXPECT_LT(ybe["results"]["residual"].get<double>(), 1e-10);
  EXPECT_TRUE(ybe["pass"].get<bool>());
  EXPECT_EQ(call({"tl", "dims", "--n", "6"}).doc()["results"]["catalan"], 132);
  auto perron = call({"graph", "perron", "--catalog", "E8~", "--star", "trivial"}).doc();
  EXPECT_EQ(perron["results"]["sum_of_squares"], 120);
}

TEST(Cli, ComplexArguments) {
  const auto z = latticelab::cli::parse_complex("0.7+0.3i");
  EXPECT_DOUBLE_EQ(z.real(), 0.7);
  EXPECT_DOUBLE_EQ(z.imag(), 0.3);
  EXPECT_DOUBLE_EQ(latticelab::cli::parse_complex("-2i").imag(), -2.0);
  EXPECT_DOUBLE_EQ(latticelab::cli::parse_complex("1e-3-1e-2i").imag(), -1e-2);
  EXPECT_THROW(latticelab::cli::parse_complex("abc"), latticelab::ParseError);
  EXPECT_EQ(call({"ybe", "props", "--q", "0.6+0.8i", "--x", "1.1-0.2i"}).code, 0);
}

TEST(Cli, FailedCheckExitsOne) {
  EXPECT_EQ(call({"ybe", "check", "--perturb", "0.1"}).code, 1);
  EXPECT_EQ(call({"tl", "gram", "--n", "4", "--delta", "1.5"}).code, 1);
}

TEST(Cli, NegativeControlForCommutingTransfer) {
  const auto r = call({"lattice", "commute", "--n", "4", "--perturb", "0.3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_GT(r.doc()["results"]["residual"].get<double>(), 1e-2);
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(call({"ybe", "check", "--q", "zero"}).code, 2);
  EXPECT_EQ(call({"nope"}).code, 2);
  EXPECT_EQ(call({"braid", "invariant", "--word", "s0"}).code, 2);
  EXPECT_EQ(call({"graph", "norm", "--catalog", "Q7"}).code, 2);
  const auto r = call({"lattice", "partition", "--hbc", "twisted"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["error"]["kind"], "parse");
}

TEST(Cli, DomainErrorsExitThree) {
  const auto pole = call({"ybe", "check", "--q", "0.5", "--x", "2", "--y", "1"});
  EXPECT_EQ(pole.code, 3);
  EXPECT_EQ(pole.doc()["error"]["kind"], "pole");
  const auto cap = call({"lattice", "commute", "--n", "12"});
  EXPECT_EQ(cap.code, 3);
  EXPECT_EQ(cap.doc()["error"]["kind"], "cap");
  EXPECT_EQ(call({"graph", "classify", "--catalog", "A5"}).code, 3);
}

TEST(Cli, SpecFiles) {
  auto z = call({"lattice", "partition", "--spec", sample("six_vertex_q2_x3.json"), "--exact", "--width", "3", "--height",
                 "2", "--vbc", "free"});
  EXPECT_EQ(z.code, 0) << z.out;
  auto potts = call({"lattice", "partition", "--spec", sample("potts_q3.json"), "--width", "2", "--height", "2"});
  EXPECT_EQ(potts.code, 0) << potts.out;
  auto d4 = call({"graph", "classify", "--graph", sample("star_d4.json")});
  EXPECT_EQ(d4.doc()["results"]["classification"], "D~4");
  auto e8 = call({"graph", "perron", "--spec", sample("e8_tilde.json")});
  EXPECT_EQ(e8.doc()["results"]["sum_of_squares"], 120);
  auto fig8 = call({"braid", "invariant", "--spec", sample("figure_eight.json")});
  EXPECT_EQ(fig8.code, 0);
  EXPECT_EQ(call({"graph", "norm", "--graph", sample("missing.json")}).code, 2);
}

TEST(Cli, OutputFormats) {
  const auto csv = call({"tl", "dims", "--n", "4", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("key,value\n", 0), 0u);
  EXPECT_NE(csv.out.find("results.catalan,14"), std::string::npos);
  const auto text = call({"tl", "dims", "--n", "4", "--format", "text"});
  EXPECT_NE(text.out.find("results.catalan: 14"), std::string::npos);
}

TEST(Cli, ToolBinaryMatchesInProcessRun) {
  const std::string cmd = std::string(LATTICELAB_TOOL) + " braid check --trials 5 --seed 3";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  EXPECT_EQ(pclose(pipe), 0);
  EXPECT_EQ(out, call({"braid", "check", "--trials", "5", "--seed", "3"}).out);
}

#include <gtest/gtest.h>

#include "ncdiff/cli.hpp"

using namespace ncdiff;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ncdiff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NCDIFF_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ExpandTwoPoint) {
  const Result r = run({"expand", "--algebra", data("two_point.json"), "--expr", "x@d2(x)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["level"], 2);
  const AlgebraRef A = load_algebra(data("two_point.json"));
  EXPECT_EQ(tensor_from_json(A, j["tensor"]),
            tensor_literal(A, {{1, "x⊗1⊗1⊗x"}, {-1, "x⊗1⊗x⊗1"}, {-1, "x⊗x⊗1⊗1"}, {1, "x⊗1⊗1⊗1"}}));
  const Result r2 = run({"expand", "--algebra", "two-point", "--expr", "x@d(x)@d(x)"});
  EXPECT_EQ(tensor_from_json(A, json::parse(r2.out)["tensor"]), tensor_literal(A, {{1, "x⊗1⊗x⊗x"}, {-1, "x⊗1⊗1⊗x"}}));
}

TEST(Cli, ExpandFreeAndGenerators) {
  const Result r = run({"expand", "--expr", "d(f)", "--out", "pretty"});
  EXPECT_EQ(r.out, "order 1: d(f)\n  tensor: 1⊗f - f⊗1\n");
  const Result g = run({"expand", "--expr", "d2(g)@d(h)", "--basis", "generators"});
  EXPECT_EQ(json::parse(g.out)["generators"], "d{2,1}(g)·d{0}(h) - d{2}(g)·d{1,0}(h) + d{1}(g)·d{2,0}(h)");
}

TEST(Cli, ExpandRejectsMixedOrdersWithoutSplit) {
  EXPECT_EQ(run({"expand", "--expr", "f + d(g)"}).code, 2);
  const Result r = run({"expand", "--expr", "f + d(g)", "--split"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["parts"].size(), 2u);
}

TEST(Cli, EvalValues) {
  auto value = [](const std::string& expr, const std::string& tuple) {
    const Result r = run({"eval", "--algebra", data("two_point.json"), "--expr", expr, "--tuples", tuple});
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out)["values"][0]["text"].get<std::string>();
  };
  EXPECT_EQ(value("x@d2(x)", "L,R,R,L"), "2");
  EXPECT_EQ(value("x@d2(x)", "L,L,L,R"), "-1");
  EXPECT_EQ(value("x@d(x)", "R,R"), "0");
  EXPECT_EQ(value("x@d(x)", "L,R"), "-1");
}

TEST(Cli, EvalAllNonzero) {
  const Result r = run({"eval", "--algebra", "two-point", "--expr", "x@d2(x)", "--all", "--nonzero"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["values"].size(), 5u);
  EXPECT_EQ(run({"eval", "--algebra", "two-point", "--expr", "x@d2(x)", "--tuples", "L,R"}).code, 2);
  EXPECT_EQ(run({"eval", "--algebra", "free", "--expr", "d(f)", "--all"}).code, 2);
  EXPECT_EQ(run({"eval", "--algebra", "two-point", "--expr", "d(x)"}).code, 2);
}

TEST(Cli, MatrixCommands) {
  const Result zero = run({"matrix", "--algebra", data("m2.json"), "--expr", "d(1)"});
  ASSERT_EQ(zero.code, 0) << zero.err;
  const json z = json::parse(zero.out);
  EXPECT_EQ(z["dim"], 4);
  for (const auto& row : z["text"])
    for (const auto& v : row) EXPECT_EQ(v, "0");

  const Result d = run({"matrix", "--algebra", data("m2.json"), "--expr", "d(f)"});
  const json j = json::parse(d.out);
  // f = [[1,2],[3,4]]: entry (1,0) is -f21 and (2,0) is f21.
  EXPECT_EQ(j["text"][1][0], "-3");
  EXPECT_EQ(j["text"][2][0], "3");
  EXPECT_EQ(j["text"][0][1], "-2");

  const Result diag = run({"matrix", "--algebra", data("m2_diag.json"), "--expr", "d2(f)"});
  const json dj = json::parse(diag.out);
  EXPECT_EQ(dj["dim"], 16);
  EXPECT_EQ(dj["text"][6][6], "7");

  EXPECT_EQ(run({"matrix", "--algebra", data("m2.json"), "--expr", "d3(f)", "--cap", "32"}).code, 2);
  EXPECT_EQ(run({"matrix", "--algebra", "free", "--expr", "d(f)"}).code, 2);
}

TEST(Cli, GeneratorsCommand) {
  const Result r = run({"generators", "--expr", "f", "--level", "2", "--out", "pretty"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("slot 3 = d{1,0} + d{1} + d{0} + d{}"), std::string::npos);
  EXPECT_NE(r.out.find("d{1,0}: 1⊗1⊗1⊗f - 1⊗1⊗f⊗1 - 1⊗f⊗1⊗1 + f⊗1⊗1⊗1"), std::string::npos);
  EXPECT_EQ(run({"generators", "--expr", "d(f)"}).code, 2);
}

TEST(Cli, VerifySuites) {
  const Result r = run({"verify", "tables"});
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "order3.row3") found = c["pass"].get<bool>();
  EXPECT_TRUE(found);
  EXPECT_EQ(j["failed"], 0);
  EXPECT_EQ(run({"verify", "leibniz"}).code, 0);
  const Result bad = run({"verify", "nosuchsuite"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("unknown suite"), std::string::npos);
}

TEST(Cli, JetCommands) {
  const Result r = run({"jet", "--f", "x*y^2 + x", "--x", "u^2 + v", "--y", "u*v", "--at", "u=1,v=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["jet"]["f"], "15");
  EXPECT_EQ(j["jet"]["f_uv"], "40");
  EXPECT_TRUE(j["second_differential_invariant"].get<bool>());
  const Result one = run({"jet", "--phi", "u^3", "--u", "v^2 + 1", "--at", "v=2"});
  EXPECT_EQ(json::parse(one.out)["phi_vv"], "630");
  EXPECT_EQ(run({"jet", "--f", "x", "--at", "u=1,v=2"}).code, 2);
  EXPECT_EQ(run({"jet", "--phi", "u^", "--u", "v", "--at", "v=1"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"expand"}).code, 2);
  const Result r = run({"expand", "--expr", "d("});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1:3"), std::string::npos);
  EXPECT_EQ(run({"expand", "--expr", "d(q)"}).code, 2);
  EXPECT_EQ(run({"expand", "--algebra", "/nonexistent.json", "--expr", "f"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"expand", "--expr", "d2(f)@d(g) + f*d(g)@d2(h)", "--basis", "generators"};
  EXPECT_EQ(run(args).out, run(args).out);
}

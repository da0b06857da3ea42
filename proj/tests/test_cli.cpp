#include <sstream>

#include <gtest/gtest.h>

#include "cq/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string samples = CQ_SAMPLES_DIR;

} // namespace

TEST(Cli, PhiJson) {
  Outcome o = run({"phi", "--n", "4", "--d", "3", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["result"], 9);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["meta"]["params"]["n"], 4);
  EXPECT_FALSE(j["meta"].contains("wall_ms"));
}

TEST(Cli, JsonRoundTrip) {
  for (auto args : std::vector<std::vector<std::string>>{{"phi", "--n", "5"},
                                                         {"matroid", "charpoly", "--graph", samples + "/c4.txt"},
                                                         {"cells", "param", "--sigma", "1|2|3"},
                                                         {"monk", "--i", "2", "--w", "1,3,2,4"},
                                                         {"toric", "fan-check", "--permutohedral", "3"}}) {
    args.insert(args.end(), {"--format", "json"});
    Outcome o = run(args);
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(nlohmann::json::parse(o.out).dump(2) + "\n", o.out);
  }
}

TEST(Cli, DeterministicAcrossJobs) {
  Outcome one = run({"phi-poly", "--d", "4", "--format", "json"});
  Outcome four = run({"phi-poly", "--d", "4", "--format", "json", "--jobs", "4"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(run({"phi", "--n", "5"}).out, run({"phi", "--n", "5", "--jobs", "3"}).out);
}

TEST(Cli, TextOutputs) {
  EXPECT_EQ(run({"cells", "--n", "3", "--histogram"}).out, "1 2 3 3 2 1\n");
  EXPECT_EQ(run({"phi", "--n", "3"}).out, "1 2 4 4 2 1\n");
  Outcome c4 = run({"matroid", "charpoly", "--graph", samples + "/c4.txt"});
  EXPECT_NE(c4.out.find("coefficients: 1 -4 6 -3"), std::string::npos);
  EXPECT_NE(c4.out.find("reduced: 1 3 3"), std::string::npos);
  EXPECT_EQ(run({"phi-poly", "--d", "3"}).out, "coefficients_ascending: 1 -2 1\npolynomial: n^2 - 2*n + 1\n");
  EXPECT_EQ(run({"matroid", "reduced", "--uniform", "3,3"}).out, "1 2 1\n");
  EXPECT_EQ(run({"matroid", "reduced", "--matrix", samples + "/c3.txt", "--dual"}).out, "1 2 1\n");
  EXPECT_EQ(run({"matroid", "euler", "--nu", "1,2,2,1"}).out, "0\n");
  EXPECT_EQ(run({"matroid", "euler", "--graph", samples + "/c4.txt"}).out, "1\n");
  EXPECT_EQ(run({"toric", "mu-generic", "--n", "3"}).out, "1 3 3 1\n");
  EXPECT_EQ(run({"toric", "integral", "--permutohedral", "2", "--ray", "1", "--ray", "12"}).out, "1\n");
  EXPECT_EQ(run({"toric", "integral", "--fan", samples + "/hexagon.fan", "--divisor", "1,0,0,1,1,0", "--divisor", "0,1,1,0,0,1"}).out, "2\n");
  EXPECT_EQ(run({"cells", "weight", "--sigma", "2|13"}).out, "3\n");
  EXPECT_EQ(run({"delta", "--m", "2", "--n", "3", "--r", "2"}).out, "6\n");
  EXPECT_EQ(run({"pataki", "--m", "1", "--n", "3", "--r", "2"}).out, "true\n");
  EXPECT_EQ(run({"phi-c", "--n", "4", "--c", "2", "--d", "2"}).out, "6\n");
  EXPECT_EQ(run({"product", "--n", "2", "--a", "1", "--b", "1"}).out, "2\n");
  EXPECT_EQ(run({"flag-integral", "--n", "3", "--b", "1,2"}).out, "1\n");
  EXPECT_EQ(run({"hypersurface-count", "--d", "5", "--n", "2", "--b", "1"}).out, "8\n");
  EXPECT_EQ(run({"segre", "mu", "--data", R"({"degF":4,"nL":2,"mY":1,"s":[0,6]})", "--i", "2"}).out, "3\n");
  EXPECT_EQ(run({"segre", "mu", "--data", "@" + samples + "/cremona_segre.json"}).out, "1 3 3\n");
  EXPECT_EQ(run({"segre", "nu", "--data", R"({"degF":3,"nL":3,"mY":1,"s":[2,-5]})", "--i", "3"}).out, "1\n");
  EXPECT_EQ(run({"segre", "correct", "--mu", "4", "--n", "5", "--s", "-7,2"}).out, "1\n");
  EXPECT_EQ(run({"segre", "compare", "--mu", "1,2,4", "--nu", "1,3,4"}).out, "false\n");
  EXPECT_EQ(run({"cells", "verify", "--sigma", "2|13", "--values", "x13=1,x23=1,y1=1"}).out.find("ok: true") != std::string::npos, true);
  EXPECT_EQ(run({"cells", "enumerate", "--n", "2"}).out, "1|2 2\n12 1\n2|1 0\n");
}

TEST(Cli, MonkJson) {
  Outcome o = run({"monk", "--i", "1", "--w", "1,2,3", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["result"], nlohmann::json({{"[2,1,3]", 1}}));
}

TEST(Cli, BigIntegersAsStrings) {
  Outcome o = run({"hypersurface-count", "--d", "9", "--n", "4", "--b", "20", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(nlohmann::json::parse(o.out)["result"].is_string());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"phi", "--d", "3"}).code, 2);
  EXPECT_EQ(run({"phi", "--n", "4", "--d", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"phi", "--n", "3", "--d", "9"}).code, 3);
  EXPECT_EQ(run({"product", "--n", "3", "--a", "1,1", "--b", "0,1"}).code, 3);
  EXPECT_EQ(run({"hypersurface-count", "--d", "6", "--n", "2", "--b", "1"}).code, 3);
  EXPECT_EQ(run({"cells", "verify", "--sigma", "1|2"}).code, 0);
  EXPECT_EQ(run({"cells", "weight", "--sigma", "1|1"}).code, 2);
  EXPECT_EQ(run({"matroid", "reduced", "--graph", samples + "/missing.txt"}).code, 2);
  EXPECT_EQ(run({"segre", "mu", "--data", "{not json"}).code, 2);
  Outcome help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("hypersurface-count"), std::string::npos);
}

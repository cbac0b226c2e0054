#include <gtest/gtest.h>

#include <sstream>

#include "msh/tools/commands.hpp"

using namespace msh;
using namespace msh::tools;

namespace {

JobConfig job(const char* type, int rank) {
  JobConfig c;
  c.type = type;
  c.rank = rank;
  return c;
}

}  // namespace

TEST(Cli, ConfigRoundTrip) {
  JobConfig c = job("B", 2);
  c.lambda = "-1/2,-5/2";
  c.direction = Direction::Up;
  c.policy.slope = 4;
  c.policy.oracle_crosscheck = false;
  c.suite = "hom";
  const Json j = to_json(c);
  EXPECT_EQ(to_json(config_from_json(j)).dump(), j.dump());
}

TEST(Cli, UsageErrors) {
  std::ostringstream log;
  EXPECT_THROW(make_block(job("Z", 9)), UsageError);
  EXPECT_THROW(make_block(job("A", 9)), UsageError);
  JobConfig c = job("A", 2);
  c.lambda = "1,1";
  EXPECT_THROW(make_block(c), UsageError);
  c.lambda = "-2";
  EXPECT_THROW(make_block(c), UsageError);
  c = job("A", 2);
  c.base = "s7";
  EXPECT_THROW(cmd_bmp(c, log), UsageError);
  c = job("A", 2);
  c.format = "dot";
  EXPECT_THROW(cmd_bmp(c, log), UsageError);
  c = job("A", 2);
  c.suite = "everything";
  EXPECT_THROW(cmd_verify(c, log), UsageError);
}

TEST(Cli, GraphDocuments) {
  std::ostringstream log;
  JobConfig c = job("A", 2);
  c.format = "json";
  const Json doc = Json::parse(cmd_graph(c, log).document);
  EXPECT_EQ(doc["kind"], "graph");
  EXPECT_EQ(doc["graph"]["vertices"].size(), 6u);
  EXPECT_EQ(doc["graph"]["edges"].size(), 9u);
  EXPECT_FALSE(doc["config"].contains("output"));

  c.lambda = "-1,-3";
  EXPECT_EQ(Json::parse(cmd_graph(c, log).document)["graph"]["vertices"].size(), 3u);

  c = job("A", 2);
  c.fixture = "double-label";
  c.format = "dot";
  EXPECT_NE(cmd_graph(c, log).document.find("v0 -- v2"), std::string::npos);
}

TEST(Cli, BmpDocuments) {
  std::ostringstream log;
  JobConfig c = job("A", 1);
  c.direction = Direction::Up;
  c.base = "e";
  c.format = "json";
  const CommandResult r = cmd_bmp(c, log);
  EXPECT_EQ(r.exit_code, kExitOk);
  const Json doc = Json::parse(r.document);
  ASSERT_EQ(doc["results"].size(), 1u);
  EXPECT_EQ(doc["results"][0]["stalks"][1]["shifts"], Json::array({0}));

  c = job("A", 3);
  c.base = "s2s1s3s2";
  const CommandResult a3 = cmd_bmp(c, log);
  EXPECT_NE(a3.document.find("  e: [0, 2]\n"), std::string::npos);

  c = job("A", 2);
  c.fixture = "double-label";
  c.base = "e";
  const CommandResult bad = cmd_bmp(c, log);
  EXPECT_EQ(bad.exit_code, kExitVerificationFailed);
  EXPECT_NE(bad.document.find("not GKM"), std::string::npos);
}

TEST(Cli, MultiplicityTableFormats) {
  std::ostringstream log;
  JobConfig c = job("A", 3);
  c.format = "csv";
  const CommandResult r = cmd_mult_table(c, log);
  EXPECT_EQ(r.exit_code, kExitOk);
  std::istringstream in(r.document);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.substr(0, 8), "w\\x,e,s1");
  c.format = "json";
  const Json doc = Json::parse(cmd_mult_table(c, log).document);
  const auto& names = doc["table"]["names"];
  std::size_t w = 0;
  while (names[w] != "s2s1s3s2") ++w;
  EXPECT_EQ(doc["table"]["ranks"][w][0], 2);
}

TEST(Cli, VerifySingleSuites) {
  std::ostringstream log;
  JobConfig c = job("A", 3);
  c.suite = "verma-flag";
  const SuiteReport skipped = run_suite(c, log);
  ASSERT_EQ(skipped.checks.size(), 1u);
  EXPECT_EQ(skipped.checks[0].status, CheckStatus::Skipped);
  EXPECT_TRUE(skipped.pass());

  c = job("A", 2);
  c.lambda = "-1,-3";
  c.suite = "kl-bmp";
  const SuiteReport singular = run_suite(c, log);
  EXPECT_EQ(singular.checks.size(), 2u);
  EXPECT_TRUE(singular.pass());

  c = job("A", 2);
  c.fixture = "double-label";
  c.suite = "gkm";
  const CommandResult r = cmd_verify(c, log);
  EXPECT_EQ(r.exit_code, kExitVerificationFailed);
  EXPECT_NE(r.document.find("FAIL  gkm"), std::string::npos);
}

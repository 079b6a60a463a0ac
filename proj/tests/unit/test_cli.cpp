#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nilpiece/cli.hpp"
#include "nilpiece/json_io.hpp"

using namespace nilpiece;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, ClassifyDemo) {
  const auto r = call({"classify", "--demo"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("schema"), kSchema);
  EXPECT_EQ(j.at("profile").at("f"), Json::parse("[[0,1],[2,1]]"));
  const auto odd = call({"classify", "--demo", "--p", "3", "--explain"});
  ASSERT_EQ(odd.code, 0);
  EXPECT_TRUE(Json::parse(odd.out).contains("trace"));
}

TEST(Cli, ClassifyInputFile) {
  const Field f = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f, 2);
  const auto path = temp_file("zero.json", form_document(s, AlternatingForm::zero(f, 5)).dump());
  const auto r = call({"classify", "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("profile").at("f"), Json::parse("[[0,5]]"));

  const auto out = ::testing::TempDir() + "out.json";
  ASSERT_EQ(call({"classify", "--input", path, "--output", out}).code, 0);
  std::ifstream in(out);
  EXPECT_EQ(Json::parse(in).at("schema"), kSchema);
}

TEST(Cli, Census) {
  const auto r = call({"census", "--p", "2", "--N", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total"), std::string::npos);
  const auto j = call({"census", "--p", "3", "--N", "1", "--json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(Json::parse(j.out).at("total"), 9);
  const auto csv = call({"census", "--p", "2", "--N", "1", "--csv"});
  EXPECT_EQ(csv.out.rfind("profile,count", 0), 0u);
}

TEST(Cli, Verifiers) {
  const auto p = call({"verify-prop2", "--p", "2", "--N", "1"});
  EXPECT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("0 mismatches"), std::string::npos);
  EXPECT_EQ(call({"verify-prop2", "--p", "3", "--N", "1", "--all"}).code, 0);
  EXPECT_EQ(call({"verify-bijection", "--p", "3", "--N", "1"}).code, 0);
  EXPECT_EQ(call({"verify-fibers", "--p", "2", "--N", "1"}).code, 0);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"census", "--p", "x"}).code, 2);
  EXPECT_EQ(call({"census", "--p", "4"}).code, 2);
  EXPECT_EQ(call({"census", "--p", "2", "--N", "3"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
  const auto bad = temp_file("bad.json", "{\"schema\":");
  const auto r = call({"classify", "--input", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  EXPECT_EQ(call({"classify", "--input", ::testing::TempDir() + "missing.json"}).code, 2);
}

TEST(Cli, NonNilpotentInputRejected) {
  const Field f = Field::create(3, 1);
  const auto s = QuadraticSpace::standard(f, 1);
  const auto b = AlternatingForm::elementary(f, 3, s.index(-1), s.index(1), 1);
  ASSERT_FALSE(is_nilpotent(s, b));
  const auto path = temp_file("nonnil.json", form_document(s, b).dump());
  const auto r = call({"classify", "--input", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotNilpotent"), std::string::npos);
}

TEST(Cli, SelftestIsDeterministic) {
  std::ostringstream a, b;
  EXPECT_EQ(selftest(a, false), 0);
  EXPECT_EQ(selftest(b, false), 0);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  EXPECT_EQ(selftest(c, true), 1);
  EXPECT_NE(c.str().find("[FAIL]"), std::string::npos);
  EXPECT_EQ(call({"selftest"}).code, 0);
}

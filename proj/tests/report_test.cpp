#include <gtest/gtest.h>

#include "icisres/report.hpp"

using namespace icisres;

namespace {

const std::string kE8 = "vars = x, y, z\nf = x^2 + y^3 + z^5\nomega = 3, 2, -3\nseed = 3\n";
const std::string kA1 = "vars=x,y,z; f=x^2+y^2+z^2; omega=0,0,1";

Report run(const std::string& command, const std::string& text, std::optional<std::uint64_t> seed = {}) {
  return dispatch(command, text, parse_germ_file(text), seed);
}

Rational parse_rational(const Json& j) {
  Rational r(j.get<std::string>());
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Report, AllOnA1) {
  auto r = run("all", kA1);
  EXPECT_EQ(r.result["index"], 2);
  EXPECT_EQ(r.result["residue"], "2");
  EXPECT_EQ(r.result["verdict"], "EQUAL");
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.input_hash, hash_hex(kA1));
  EXPECT_EQ(r.input_hash.size(), 16U);
}

TEST(Report, SchemaFields) {
  auto j = Json::parse(render_json(run("index", kA1)));
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "input_hash", "result", "caps_used", "seed", "discrepancies"}));
  EXPECT_EQ(j["command"], "index");
  EXPECT_TRUE(j["discrepancies"].is_array());
}

TEST(Report, RationalsRoundTrip) {
  auto r = run("pairing", kE8);
  auto j = Json::parse(render_json(r));
  auto rep = pairing_report(parse_germ_file(kE8).problem(2));
  const auto& gram = j["result"]["gram"];
  ASSERT_EQ(gram.size(), rep.gram.rows());
  for (std::size_t a = 0; a < rep.gram.rows(); ++a)
    for (std::size_t b = 0; b < rep.gram.cols(); ++b) {
      ASSERT_TRUE(gram[a][b].is_string());
      EXPECT_EQ(parse_rational(gram[a][b]), rep.gram(a, b));
    }
  auto res = Json::parse(render_json(run("residue", kE8)));
  EXPECT_EQ(parse_rational(res["result"]["residue"]), Rational(10));
}

TEST(Report, SameInputSameBytes) {
  for (const auto& cmd : {"index", "residue", "sigma", "good-coords", "pairing", "all"}) {
    EXPECT_EQ(render_json(run(cmd, kE8)), render_json(run(cmd, kE8))) << cmd;
    EXPECT_EQ(render_text(run(cmd, kE8)), render_text(run(cmd, kE8))) << cmd;
  }
}

TEST(Report, SeedFlagOverridesFile) {
  EXPECT_EQ(run("index", kE8).seed, 3U);
  EXPECT_EQ(run("index", kE8, 11).seed, 11U);
  EXPECT_EQ(run("index", kA1).seed, 1U);
}

TEST(Report, CurveIndexOfCusp) {
  auto r = run("curve-index", "vars=x,y; f=x^2-y^3; omega=0,1");
  EXPECT_EQ(r.result["index"], 3);
}

TEST(Report, Multiplicity) {
  auto r = run("mult", "vars=x,y; omega=0,0; g=x^2,y^3");
  EXPECT_EQ(r.result["colength"], 6);
  EXPECT_EQ(r.result["relative_residue"], "6");
  EXPECT_THROW(run("mult", kA1), InvalidProblem);
  EXPECT_THROW(run("mult", "vars=x,y; omega=0,0; g=x"), ArityError);
}

TEST(Report, WrongArityForCommand) {
  EXPECT_THROW(run("index", "vars=x,y; f=x^2-y^3; omega=0,1"), ArityError);
  EXPECT_THROW(run("curve-index", kA1), ArityError);
  EXPECT_THROW(run("frobnicate", kA1), InvalidProblem);
}

TEST(Report, VerifyRecordsSuites) {
  VerificationPlan plan;
  plan.suites = {"det-lemmas"};
  plan.trials = 5;
  plan.seed = 7;
  auto a = verify_report(plan);
  EXPECT_EQ(a.exit_code(), 0);
  EXPECT_EQ(a.result["suites"][0]["trials"], 5);
  EXPECT_EQ(render_json(a), render_json(verify_report(plan)));
}

TEST(Report, TextRendering) {
  auto t = render_text(run("index", kA1));
  EXPECT_NE(t.find("command:       index\n"), std::string::npos);
  EXPECT_NE(t.find("  index: 2\n"), std::string::npos);
  EXPECT_NE(t.find("discrepancies: []\n"), std::string::npos);
}

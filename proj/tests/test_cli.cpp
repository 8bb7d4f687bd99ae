#include <clocale>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace coulomb_momentum;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Energies, HydrogenRows) {
  const auto r = invoke({"energies", "--dim", "3", "--z", "1", "--n-max", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "energy", "q_n", "degeneracy"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "-0.5", "1", "1"}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"2", "-0.125", "0.5", "4"}));
}

TEST(Energies, TwoAndFourDimensions) {
  const auto two = parse_csv(invoke({"energies", "--dim", "2", "--z", "1", "--n-max", "1"}).out);
  EXPECT_EQ(two[1], (std::vector<std::string>{"1", "-2", "2", "1"}));
  const auto four = parse_csv(invoke({"energies", "--dim", "4", "--z", "1", "--n-max", "2"}).out);
  EXPECT_EQ(four[1][3], "1");
  EXPECT_EQ(four[2][3], "5");
}

TEST(Energies, JsonRoundTrip) {
  const auto r = invoke({"energies", "--dim", "5", "--z", "2", "--n-max", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("schema_version"), "1");
  EXPECT_EQ(doc.at("command"), "energies");
  EXPECT_EQ(doc.at("rows").size(), 3u);
  EXPECT_EQ(doc.dump(2) + "\n", r.out);
  EXPECT_NEAR(doc["rows"][1]["energy"].get<double>(), -2.0 / 9.0, 1e-16);
}

TEST(Radial, BoundGroundStateAtUnitMomentum) {
  const auto r = invoke({"radial", "--dim", "3", "--n", "1", "--l", "0", "--p-min", "1", "--p-max", "2", "--points", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_NEAR(std::stod(rows[1][1]), 0.7978845608, 1e-10);
}

TEST(Radial, SturmianHasOneNode) {
  const auto r = invoke({"radial", "--kind", "sturmian", "--dim", "4", "--q", "0.5", "--nr", "1", "--l", "0", "--points", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 11u);
  int changes = 0;
  double previous = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][1]);
    EXPECT_TRUE(std::isfinite(v));
    if (i > 1 && (v > 0) != (previous > 0)) ++changes;
    previous = v;
  }
  EXPECT_EQ(changes, 1);
}

TEST(Radial, BoundFiveDimensionsFinite) {
  const auto r = invoke({"radial", "--dim", "5", "--n", "3", "--l", "2", "--spacing", "log", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["rows"].size(), 50u);
  for (const auto& row : doc["rows"]) EXPECT_TRUE(row["value"].is_number());
}

TEST(ExitCodes, UsageErrors) {
  EXPECT_EQ(invoke({"radial", "--dim", "3", "--n", "1", "--l", "1"}).code, 2);
  EXPECT_EQ(invoke({"radial", "--kind", "sturmian", "--dim", "3", "--q", "1"}).code, 2);
  EXPECT_EQ(invoke({"energies", "--dim", "1", "--n-max", "2"}).code, 2);
  EXPECT_EQ(invoke({"energies", "--dim", "3"}).code, 2);
  EXPECT_EQ(invoke({"verify", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"energies", "--dim", "3", "--n-max", "2", "--format", "xml"}).code, 2);
}

TEST(ExitCodes, FailedCheckIsOne) {
  const auto r = invoke({"verify", "ossicini", "--nu", "1", "--h", "1", "--xi", "0.5", "--xi-prime", "-0.5", "--K", "100"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("0/1 passed"), std::string::npos);
}

TEST(Verify, DocumentedInvocationsPass) {
  EXPECT_EQ(invoke({"verify", "degeneracy", "--dim-max", "10", "--n-max", "20"}).code, 0);
  EXPECT_EQ(invoke({"verify", "fourier", "--tol", "1e-10"}).code, 0);
  EXPECT_EQ(invoke({"verify", "residual", "--dim", "3", "--n", "1", "--l", "0", "--tol", "1e-6"}).code, 0);
  EXPECT_EQ(invoke({"verify", "cohl", "--alpha", "1", "--n", "3", "--z-arg", "1.8"}).code, 0);
}

TEST(Verify, JsonReportsRoundTrip) {
  const auto r = invoke({"verify", "gram", "--dim", "4", "--q", "0.5", "--l", "2", "--nr-max", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("schema_version"), "1");
  EXPECT_EQ(doc.at("defaults_version"), "1");
  ASSERT_FALSE(doc.at("reports").empty());
  for (const auto& rep : doc["reports"]) {
    EXPECT_TRUE(rep.at("passed").get<bool>());
    EXPECT_TRUE(rep.contains("tolerance"));
    EXPECT_TRUE(rep.contains("metric"));
  }
  EXPECT_EQ(doc.dump(2) + "\n", r.out);
}

TEST(Format, SeventeenDigitsLocaleFree) {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  EXPECT_EQ(cli::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(cli::format_real(-2.0), "-2");
  EXPECT_EQ(std::stod(cli::format_real(1.0 / 3.0)), 1.0 / 3.0);
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_EQ(cli::format_real(NAN), "nan");
}

TEST(Format, NonFiniteMetricBecomesNull) {
  VerificationReport rep;
  rep.check_name = "x";
  rep.metric = NAN;
  rep.settle();
  const auto j = cli::report_to_json(rep);
  EXPECT_TRUE(j.at("metric").is_null());
  EXPECT_FALSE(j.at("passed").get<bool>());
}

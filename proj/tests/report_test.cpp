#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "sigmagcd/report.hpp"

using namespace sigmagcd;
using namespace sigmagcd::report;

TEST(Csv, QuotesPerRfc4180) {
  EXPECT_EQ(csv_quote("plain"), "plain");
  EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_quote("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, MetadataThenHeaderThenRows) {
  Table t;
  t.meta = {{"tool", "x"}};
  t.columns = {"a", "b"};
  t.rows = {{Cell::integer(u64{1}), Cell::str("p, q")}};
  std::ostringstream os;
  write_csv(os, t);
  EXPECT_EQ(os.str(), "# tool: x\na,b\n1,\"p, q\"\n");
}

TEST(Json, MetaAndRowsWithTypedCells) {
  Table t;
  t.meta = {{"k", "v"}};
  t.columns = {"small", "big", "real", "flag", "text"};
  BigInt big = BigInt(1) << 80;
  t.rows = {{Cell::integer(u64{42}), Cell::integer(big), Cell::real(0.5), Cell::boolean(true), Cell::str("hi")}};
  std::ostringstream os;
  write_json(os, t);
  const auto doc = nlohmann::json::parse(os.str());
  EXPECT_EQ(doc["meta"]["k"], "v");
  ASSERT_EQ(doc["rows"].size(), 1u);
  EXPECT_EQ(doc["rows"][0]["small"], 42);
  EXPECT_EQ(doc["rows"][0]["big"], big.str());
  EXPECT_DOUBLE_EQ(doc["rows"][0]["real"].get<double>(), 0.5);
  EXPECT_EQ(doc["rows"][0]["flag"], true);
  EXPECT_EQ(doc["rows"][0]["text"], "hi");
}

TEST(ExperimentTable, FixedColumns) {
  const auto cols = experiment_columns();
  ASSERT_EQ(cols.size(), 7u + 65u);
  EXPECT_EQ(cols[0], "population");
  EXPECT_EQ(cols[6], "fraction");
  EXPECT_EQ(cols[7], "bucket_0");
  EXPECT_EQ(cols.back(), "bucket_overflow");
  density::ExperimentReport r;
  r.population = "all_integers";
  r.histogram.add(3);
  r.population_size = 1;
  const auto t = experiment_table(r);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].size(), cols.size());
  EXPECT_EQ(t.rows[0][8].text, "1");
}

TEST(ChampionTable, AlphaHasSixPlaces) {
  const auto r = champions::construct_from_prime(3);
  const auto row = champion_row(r);
  EXPECT_EQ(row[5].text, "0.752052");
  EXPECT_EQ(row[6].text, "true");
  EXPECT_EQ(champion_columns().size(), row.size());
}

TEST(LemmaTable, ParametersLandInTheirColumns) {
  lemma::LemmaReport r;
  r.lemma_id = "t";
  r.parameters = {{"x", "20"}, {"a", "1"}, {"q", "3"}};
  r.raw_value = "8/8";
  r.normalized_value = 1.25;
  const auto t = lemma_table({r});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1].text, "20");
  EXPECT_EQ(t.rows[0][2].text, "");
  EXPECT_EQ(t.rows[0][5].text, "1");
  EXPECT_EQ(t.rows[0][6].text, "3");
  EXPECT_EQ(t.rows[0][9].text, "8/8");
  EXPECT_EQ(t.rows[0][10].text, "1.25");
}

#include <gtest/gtest.h>

#include <sstream>

#include "hornmax/hornenc.hpp"
#include "hornmax/pipeline.hpp"
#include "oracles.hpp"

using namespace hornmax;

TEST(Decide, RandomFormulasAllModes) {
  oracle::Rng rng(600);
  for (int round = 0; round < 200; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 8, 24);
    const bool sat = oracle::is_sat(f);
    for (Algo algo : {Algo::Msu3, Algo::Ihs})
      for (bool drop : {false, true})
        for (bool reduce : {false, true}) {
          DecideOptions opt;
          opt.algo = algo;
          opt.drop_p = drop;
          opt.reduce_vars = reduce;
          const Decision d = decide(f, opt);
          ASSERT_EQ(d.verdict, sat ? Verdict::Sat : Verdict::Unsat) << round;
          if (sat) ASSERT_TRUE(satisfies(d.model, f)) << round;
          if (!drop) ASSERT_FALSE(d.restored_p);
        }
  }
}

TEST(Decide, DropPRestoresWhenNeeded) {
  // Both rails of x1 can be set without P, reaching the target with no witness.
  const CnfFormula f{2, {clause_of({1}), clause_of({-1})}};
  DecideOptions opt;
  opt.drop_p = true;
  const Decision d = decide(f, opt);
  EXPECT_EQ(d.verdict, Verdict::Unsat);
}

TEST(Decide, BudgetGivesUnknown) {
  DecideOptions opt;
  opt.solve.budget.max_propagations = 50;
  const Decision d = decide(gen::gen_php({6, gen::AtMost1::Pairwise}).formula, opt);
  EXPECT_EQ(d.verdict, Verdict::Unknown);
  EXPECT_EQ(to_string(d.verdict), std::string("unknown"));
}

TEST(Decide, AlgoNames) {
  EXPECT_EQ(parse_algo("msu3"), Algo::Msu3);
  EXPECT_EQ(parse_algo("ihs"), Algo::Ihs);
  EXPECT_THROW(parse_algo("maxhs"), Error);
}

TEST(Slope, RecoversExponent) {
  std::vector<std::pair<double, double>> pts;
  for (int m = 2; m <= 20; ++m) pts.push_back({double(m), 5.0 * m * m * m});
  EXPECT_NEAR(loglog_slope(pts), 3.0, 1e-9);
}

TEST(Bench, PhpRowsAndOrder) {
  BenchConfig cfg;
  for (int m = 1; m <= 5; ++m) cfg.instances.push_back({gen::Family::PhpPairwise, m, {}});
  cfg.algos = {Algo::Msu3, Algo::Ihs};
  cfg.jobs = 4;
  const auto rows = run_bench(cfg);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int m = static_cast<int>(k / 2) + 1;
    EXPECT_EQ(rows[k].family, "php-pw");
    EXPECT_EQ(rows[k].instance, cfg.instances[k / 2].label());
    EXPECT_EQ(rows[k].algo, k % 2 == 0 ? "msu3" : "ihs");
    EXPECT_EQ(rows[k].status, "solved");
    EXPECT_EQ(rows[k].verdict, "unsat");
    EXPECT_EQ(rows[k].cost, m * (m + 1) + 1);
    EXPECT_EQ(rows[k].target, static_cast<std::uint64_t>(m * (m + 1)));
  }
  const auto counts = solved_counts(rows);
  EXPECT_EQ(counts.at({"php-pw", "msu3"}), 5);
  EXPECT_EQ(counts.at({"php-pw", "ihs"}), 5);
}

TEST(Bench, TinyBudgetTimesOut) {
  BenchConfig cfg;
  cfg.instances.push_back({gen::Family::PhpPairwise, 12, {}});
  cfg.budget_ms = 1;
  const auto rows = run_bench(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, "timeout");
  EXPECT_EQ(rows[0].verdict, "unknown");
}

TEST(Bench, CsvRoundTrip) {
  std::vector<BenchRow> rows{{"php-pw", "php-pw m=3", "msu3", "solved", "unsat", 13, 12, 1234, 999},
                             {"urq", "urq n=3 seed=0 i=1", "ihs", "timeout", "unknown", -1, 90, 5000000, 7},
                             {"comb", "comb m=2, urq n=3 seed=1 i=2", "msu3", "error", "unknown", -1, 0, 1, 0}};
  std::stringstream ss;
  write_csv(ss, rows);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kBenchCsvHeader);
  EXPECT_EQ(read_csv(ss), rows);

  std::stringstream bad("family,instance\nx,y\n");
  EXPECT_THROW(read_csv(bad), Error);
}

TEST(Bench, GnuplotScriptMentionsEachAlgo) {
  const std::string s = gnuplot_script("out.csv", {Algo::Msu3, Algo::Ihs});
  EXPECT_NE(s.find("out.csv"), std::string::npos);
  EXPECT_NE(s.find("msu3"), std::string::npos);
  EXPECT_NE(s.find("ihs"), std::string::npos);
}

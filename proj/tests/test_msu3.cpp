#include <gtest/gtest.h>

#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"
#include "hornmax/msu3.hpp"
#include "oracles.hpp"

using namespace hornmax;

namespace {

WcnfFormula units(int n, std::vector<Clause> hard, std::vector<Clause> soft) {
  WcnfFormula f;
  f.num_vars = n;
  f.hard = std::move(hard);
  for (Clause& c : soft) f.soft.push_back({std::move(c), 1});
  return f;
}

// Minimum number of falsified softs among `ids` over hard-satisfying assignments.
std::optional<std::uint64_t> min_falsified(const WcnfFormula& f, const std::vector<std::size_t>& ids) {
  WcnfFormula g = f;
  g.soft.clear();
  for (std::size_t id : ids) g.soft.push_back(f.soft[id]);
  return oracle::maxsat_dfs(g);
}

WcnfFormula php_henc(int m, gen::AtMost1 enc = gen::AtMost1::Pairwise, bool p = true) {
  HencResult h = henc(gen::gen_php({m, enc}).formula);
  return p ? h.wcnf : drop_p(h).wcnf;
}

}  // namespace

TEST(Oracle, DfsAgreesWithEnumeration) {
  oracle::Rng rng(300);
  for (int round = 0; round < 300; ++round) {
    const WcnfFormula f = oracle::random_wcnf(rng, 10, 12, 12);
    ASSERT_EQ(oracle::maxsat_dfs(f), oracle::maxsat(f));
  }
}

TEST(Msu3, Examples) {
  EXPECT_EQ(msu3::solve(units(1, {}, {clause_of({1}), clause_of({-1})})).cost, 1u);
  EXPECT_EQ(msu3::solve(php_henc(2)).cost, 7u);
  EXPECT_EQ(oracle::maxsat_dfs(php_henc(2)), 7u);
  const CnfFormula ex1{3, {clause_of({1, -2, 3}), clause_of({2, 3}), clause_of({-1, -3})}};
  EXPECT_EQ(msu3::solve(henc(ex1).wcnf).cost, 3u);

  const MaxSatResult inf = msu3::solve(units(1, {clause_of({1}), clause_of({-1})}, {clause_of({1})}));
  EXPECT_EQ(inf.status, MaxSatStatus::Infeasible);
  const MaxSatResult none = msu3::solve(units(2, {clause_of({1, 2})}, {}));
  EXPECT_EQ(none.status, MaxSatStatus::Optimal);
  EXPECT_EQ(none.cost, 0u);

  WcnfFormula weighted = units(1, {}, {clause_of({1})});
  weighted.soft[0].weight = 2;
  EXPECT_THROW(msu3::solve(weighted), Error);
}

TEST(Msu3, RandomCorpusAgainstBruteForce) {
  oracle::Rng rng(301);
  for (int round = 0; round < 300; ++round) {
    const WcnfFormula f = oracle::random_wcnf(rng, 12, 10, 16);
    const auto want = oracle::maxsat_dfs(f);
    for (bool split : {true, false}) {
      SolveOptions opt;
      opt.split_components = split;
      const MaxSatResult r = msu3::solve(f, opt);
      if (!want) {
        ASSERT_EQ(r.status, MaxSatStatus::Infeasible) << round;
        continue;
      }
      ASSERT_EQ(r.status, MaxSatStatus::Optimal) << round;
      ASSERT_EQ(r.cost, *want) << round;
      ASSERT_EQ(cost(f, r.model), *want) << round;
    }
  }
}

TEST(Msu3, HornEncodingOfRandomCnf) {
  oracle::Rng rng(302);
  for (int round = 0; round < 200; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 6, 14);
    for (const HencResult& h : {henc(f), drop_p(henc(f)), henc_reduced(f)}) {
      const MaxSatResult r = msu3::solve(h.wcnf);
      const auto want = oracle::maxsat_dfs(h.wcnf);
      if (!want) {
        // Only the reduced encoding keeps hard clauses that can clash outright.
        ASSERT_EQ(r.status, MaxSatStatus::Infeasible) << round;
        continue;
      }
      ASSERT_EQ(r.cost, *want) << round;
    }
  }
}

TEST(Msu3, TraceIsRecheckable) {
  oracle::Rng rng(303);
  for (int round = 0; round < 150; ++round) {
    const WcnfFormula f = oracle::random_wcnf(rng, 10, 8, 14);
    const MaxSatResult r = msu3::solve(f);
    if (r.status != MaxSatStatus::Optimal) continue;
    std::vector<std::size_t> seen;
    std::uint64_t prev = 0;
    for (const TraceRecord& t : r.trace) {
      ASSERT_GE(t.lb, prev);
      ASSERT_LE(t.lb, r.cost);
      prev = t.lb;
      if (t.phase == "disjoint") {
        // A disjoint core is unsatisfiable with the hard clauses by itself.
        std::vector<Clause> cs = f.hard;
        for (std::size_t id : t.core) cs.push_back(f.soft[id].clause);
        ASSERT_FALSE(oracle::sat(f.num_vars, cs).has_value()) << round;
      } else {
        ASSERT_TRUE(t.phase == "core" || t.phase == "bound");
        ASSERT_EQ(t.bound, static_cast<int>(t.lb));
      }
      seen.insert(seen.end(), t.core.begin(), t.core.end());
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      // Everything relaxed so far already forces lb falsified softs.
      ASSERT_GE(min_falsified(f, seen).value(), t.lb) << round;
    }
    EXPECT_EQ(prev, r.cost);
  }
}

TEST(Msu3, BudgetExceededKeepsSoundBound) {
  SolveOptions opt;
  opt.budget.max_propagations = 200;
  const MaxSatResult r = msu3::solve(php_henc(6), opt);
  EXPECT_EQ(r.status, MaxSatStatus::BudgetExceeded);
  EXPECT_LE(r.lower_bound, 43u);
  EXPECT_EQ(msu3::solve(php_henc(6)).cost, 43u);
}

TEST(Msu3, PhpOptimaBothEncodings) {
  for (int m = 1; m <= 5; ++m) {
    const std::uint64_t want = m * (m + 1) + 1;
    EXPECT_EQ(msu3::solve(php_henc(m)).cost, want) << m;
    EXPECT_EQ(msu3::solve(php_henc(m, gen::AtMost1::Pairwise, false)).cost, want) << m;
  }
  for (int m = 1; m <= 2; ++m) {
    const WcnfFormula sc = php_henc(m, gen::AtMost1::SeqCounter);
    EXPECT_EQ(msu3::solve(sc).cost, oracle::maxsat_dfs(sc));
  }
}

TEST(Partitioned, PhpTwoHolesWithoutP) {
  const auto php = gen::gen_php({2, gen::AtMost1::Pairwise});
  const HencResult h = drop_p(henc(php.formula));
  // Soft order: n-rails of x_1..x_N, then p-rails; x(i,j) has index (i-1)*m + j.
  auto x = [&](int i, int j) { return static_cast<std::size_t>(php.x(i, j) - 1); };
  const std::size_t N = php.formula.num_vars;
  std::vector<std::vector<std::size_t>> blocks;
  for (int i = 1; i <= 3; ++i) blocks.push_back({x(i, 1), x(i, 2)});
  for (int j = 1; j <= 2; ++j) blocks.push_back({N + x(1, j), N + x(2, j), N + x(3, j)});
  const MaxSatResult r = msu3::solve_partitioned(h.wcnf, blocks);
  EXPECT_EQ(r.block_costs, (std::vector<std::uint64_t>{1, 1, 1, 2, 2}));
  EXPECT_EQ(r.cost, 7u);

  std::vector<std::vector<std::size_t>> merged{{}};
  for (std::size_t i = 0; i < 2 * N; ++i) merged[0].push_back(i);
  EXPECT_EQ(msu3::solve_partitioned(h.wcnf, merged).cost, msu3::solve(h.wcnf).cost);

  // n-rails of pigeon 1 split across blocks: they share a hard clause.
  std::vector<std::vector<std::size_t>> bad = blocks;
  std::swap(bad[0][1], bad[1][0]);
  EXPECT_THROW(msu3::solve_partitioned(h.wcnf, bad), Error);
  EXPECT_THROW(msu3::solve_partitioned(h.wcnf, {{0}}), Error);
  EXPECT_THROW(msu3::solve_partitioned(h.wcnf, {merged[0], {0}}), Error);
}

TEST(Partitioned, IndependentCopiesAdd) {
  oracle::Rng rng(304);
  for (int round = 0; round < 50; ++round) {
    const WcnfFormula a = oracle::random_wcnf(rng, 6, 5, 6);
    const auto want = oracle::maxsat(a);
    if (!want) continue;
    WcnfFormula two = a;
    two.num_vars = 2 * a.num_vars;
    auto shift = [&](Clause c) {
      for (Lit& l : c.lits) l = l.positive() ? Lit::pos(l.var() + a.num_vars) : Lit::neg(l.var() + a.num_vars);
      return c;
    };
    for (const Clause& c : a.hard) two.hard.push_back(shift(c));
    for (const SoftClause& s : a.soft) two.soft.push_back({shift(s.clause), 1});
    std::vector<std::vector<std::size_t>> blocks(2);
    for (std::size_t i = 0; i < a.soft.size(); ++i) {
      blocks[0].push_back(i);
      blocks[1].push_back(i + a.soft.size());
    }
    const MaxSatResult r = msu3::solve_partitioned(two, blocks);
    ASSERT_EQ(r.cost, 2 * *want);
    ASSERT_EQ(r.block_costs, (std::vector<std::uint64_t>{*want, *want}));
  }
}

TEST(CertifyCg, LowerBoundUpTo32) {
  for (int m = 1; m <= 32; ++m) {
    const msu3::CertReport r = msu3::certify_php_cg(m);
    ASSERT_EQ(r.lb, static_cast<std::uint64_t>(m * (m + 1) + 1)) << m;
    ASSERT_EQ(r.lb_pigeons, static_cast<std::uint64_t>(m + 1));
    ASSERT_EQ(r.lb_holes, static_cast<std::uint64_t>(m * m));
    ASSERT_EQ(r.per_phase.size(), r.lb);
    ASSERT_FALSE(r.p_clauses);
  }
  EXPECT_EQ(msu3::certify_php_cg(2).lb, oracle::maxsat_dfs(php_henc(2)));
  EXPECT_EQ(msu3::certify_php_cg(5).lb, 31u);
  EXPECT_THROW(msu3::certify_php_cg(0), Error);
}

TEST(CertifyCg, AvoidsPClausesWhenPresent) {
  for (int m = 1; m <= 8; ++m) {
    const msu3::CertReport r = msu3::certify_php_cg(m, true);
    EXPECT_TRUE(r.p_clauses);
    EXPECT_EQ(r.lb, static_cast<std::uint64_t>(m * (m + 1) + 1));
  }
}

TEST(CertifyCg, ScheduleShape) {
  const msu3::CertReport r = msu3::certify_php_cg(3);
  int l = 0;
  for (const msu3::CertStep& s : r.per_phase) {
    if (s.constraint == 'L') {
      ++l;
      EXPECT_EQ(s.iteration, 1);
      EXPECT_EQ(s.core_size, 3u);
    } else {
      EXPECT_GE(s.iteration, 1);
      EXPECT_LE(s.iteration, 3);
    }
    EXPECT_GT(s.propagations, 0u);
  }
  EXPECT_EQ(l, 4);
}

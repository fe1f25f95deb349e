#include <gtest/gtest.h>

#include "hornmax/cdcl.hpp"
#include "hornmax/generators.hpp"
#include "oracles.hpp"

using namespace hornmax;

TEST(Cdcl, AgreesWithBruteForce) {
  oracle::Rng rng(201);
  for (int round = 0; round < 600; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 12, 60);
    std::vector<Lit> as;
    for (int i = oracle::uniform(rng, 0, 3); i > 0; --i) as.push_back(oracle::random_clause(rng, f.num_vars, 1).lits[0]);
    CdclSolver s(f.num_vars);
    s.add_clauses(f.clauses);
    const SatResult r = s.solve(as);
    ASSERT_EQ(r.status == SatStatus::Sat, oracle::sat_under(f.num_vars, f.clauses, as)) << round;
    if (r.status == SatStatus::Sat) {
      ASSERT_TRUE(satisfies(r.model, f));
      for (Lit l : as) ASSERT_EQ(r.model.value(l), Value::True);
    } else {
      std::vector<Lit> core;
      for (std::size_t i : r.core) core.push_back(as.at(i));
      ASSERT_FALSE(oracle::sat_under(f.num_vars, f.clauses, core));
    }
    // Reuse after a call must still be correct.
    ASSERT_EQ(s.solve().status == SatStatus::Sat, oracle::is_sat(f));
  }
}

TEST(Cdcl, IncrementalClauses) {
  CdclSolver s(3);
  s.add_clause(clause_of({1, 2}));
  EXPECT_EQ(s.solve().status, SatStatus::Sat);
  s.add_clause(clause_of({-1}));
  s.add_clause(clause_of({-2, 3}));
  EXPECT_EQ(s.solve(std::vector<Lit>{Lit::neg(3)}).status, SatStatus::Unsat);
  EXPECT_EQ(s.solve().status, SatStatus::Sat);
  const Var v = s.new_var();
  EXPECT_EQ(v, 4);
  s.add_clause(clause_of({-4}));
  s.add_clause(clause_of({4, -3}));
  EXPECT_EQ(s.solve().status, SatStatus::Unsat);
}

TEST(Cdcl, PigeonholeAndBudget) {
  const CnfFormula f = gen::gen_php({6, gen::AtMost1::Pairwise}).formula;
  CdclSolver s(f.num_vars);
  s.add_clauses(f.clauses);
  Budget tiny;
  tiny.max_propagations = 50;
  EXPECT_EQ(s.solve({}, tiny).status, SatStatus::Unknown);
  EXPECT_EQ(s.solve().status, SatStatus::Unsat);
}

TEST(Cdcl, PropagateOnlyReportsClauseIds) {
  CdclSolver s(3);
  const int a = s.add_clause(clause_of({-1, 2}));
  const int b = s.add_clause(clause_of({1, 3}));  // unrelated
  const int c = s.add_clause(clause_of({-2, -3}));
  (void)b;
  const std::vector<Lit> as{Lit::pos(3), Lit::pos(1)};
  const UpResult up = s.propagate_only(as);
  ASSERT_TRUE(up.conflict);
  std::vector<int> ids = up.clauses;
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, (std::vector<int>{a, c}));
  std::vector<std::size_t> core = up.core;
  std::sort(core.begin(), core.end());
  EXPECT_EQ(core, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(s.propagate_only(std::vector<Lit>{Lit::pos(1)}).conflict);
}

TEST(Cdcl, ThresholdRandom3Sat) {
  oracle::Rng rng(202);
  for (int round = 0; round < 150; ++round) {
    CnfFormula f;
    f.num_vars = 16;
    for (int i = 0; i < 68; ++i) f.clauses.push_back(oracle::random_clause(rng, 16, 3));
    CdclSolver s(f.num_vars);
    s.add_clauses(f.clauses);
    const SatResult r = s.solve();
    ASSERT_EQ(r.status == SatStatus::Sat, oracle::is_sat(f)) << round;
    if (r.status == SatStatus::Sat) ASSERT_TRUE(satisfies(r.model, f));
  }
}

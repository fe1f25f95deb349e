#include <gtest/gtest.h>

#include <cmath>

#include "hornmax/mxres.hpp"
#include "oracles.hpp"

using namespace hornmax;
using namespace hornmax::mxres;

namespace {

GClause plain(std::initializer_list<int> lits) { return GClause{clause_of(lits).lits, {}}; }

std::vector<std::pair<GClause, Weight>> derived_of(const WStore& s, const StepRecord& r) {
  std::vector<std::pair<GClause, Weight>> out;
  for (std::size_t id : r.derived) out.emplace_back(s.at(id).clause, s.at(id).weight);
  return out;
}

// Copy of `s` without entry `skip`.
WStore without_entry(const WStore& s, std::size_t skip) {
  WStore out;
  for (std::size_t id = 0; id < s.size(); ++id) {
    if (id == skip) continue;
    const Entry& e = s.at(id);
    const std::size_t nid = out.add(e.clause, e.weight, e.step);
    if (e.consumed) out.consume(nid);
  }
  return out;
}

// Some assignment falsifies entry `d` while every other TOP entry of `s` stays satisfied.
bool removal_observable(const WStore& s, std::size_t d, int n) {
  for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
    const Assignment a = Assignment::from_bits(n, bits);
    if (!falsified(s.at(d).clause, a)) continue;
    bool hard_ok = true;
    for (std::size_t id = 0; id < s.size() && hard_ok; ++id)
      if (id != d && !s.at(id).consumed && s.at(id).weight.is_top() && falsified(s.at(id).clause, a))
        hard_ok = false;
    if (hard_ok) return true;
  }
  return false;
}

Weight random_weight(oracle::Rng& rng) {
  return oracle::uniform(rng, 0, 4) == 0 ? Weight::top() : Weight(oracle::uniform(rng, 1, 3));
}

struct RandomStep {
  WStore store;
  std::size_t left = 0, right = 0;
  Var pivot = 0;
  int num_vars = 0;
};

RandomStep random_step(oracle::Rng& rng) {
  RandomStep r;
  r.num_vars = oracle::uniform(rng, 1, 10);
  r.pivot = oracle::uniform(rng, 1, r.num_vars);
  for (int k = oracle::uniform(rng, 0, 4); k > 0; --k)
    r.store.add(oracle::random_clause(rng, r.num_vars, oracle::uniform(rng, 1, 3)), random_weight(rng));
  auto side = [&](Lit x) {
    Clause c = oracle::random_clause(rng, r.num_vars, oracle::uniform(rng, 0, 3));
    std::erase_if(c.lits, [&](Lit l) { return l.var() == x.var(); });
    c.lits.push_back(x);
    return c;
  };
  r.left = r.store.add(side(Lit::pos(r.pivot)), random_weight(rng));
  r.right = r.store.add(side(Lit::neg(r.pivot)), random_weight(rng));
  return r;
}

double loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::log(xs[i]), y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(MxresStep, AgainstHardUnit) {
  WStore s;
  const auto a = s.add(clause_of({1, 2}), Weight(1));
  const auto b = s.add(clause_of({-1}), Weight::top());
  const StepRecord r = mxres_step(s, a, b, 1);
  const std::vector<std::pair<GClause, Weight>> want{
      {plain({2}), Weight(1)}, {plain({-1}), Weight::top()}, {plain({-1, -2}), Weight(1)}};
  EXPECT_EQ(derived_of(s, r), want);
  EXPECT_TRUE(s.at(a).consumed);
  EXPECT_TRUE(s.at(b).consumed);
}

TEST(MxresStep, UnitAgainstUnit) {
  WStore s;
  const StepRecord r = mxres_step(s, s.add(clause_of({1}), Weight(1)), s.add(clause_of({-1}), Weight(1)), 1);
  ASSERT_EQ(r.derived.size(), 1u);
  EXPECT_TRUE(s.at(r.derived[0]).clause.is_empty());
  EXPECT_EQ(s.empty_soft_weight(), 1u);
}

TEST(MxresStep, UnequalWeights) {
  for (bool clausal : {false, true}) {
    WStore s;
    const auto a = s.add(clause_of({1, 2}), Weight(2));
    const auto b = s.add(clause_of({-1, 3}), Weight(1));
    const WStore before = s;
    const StepRecord r = mxres_step(s, a, b, 1, clausal);
    const std::vector<std::pair<GClause, Weight>> want{{plain({2, 3}), Weight(1)},
                                                       {plain({1, 2}), Weight(1)},
                                                       {plain({1, 2, -3}), Weight(1)},
                                                       {plain({-1, -2, 3}), Weight(1)}};
    EXPECT_EQ(derived_of(s, r), want);
    EXPECT_TRUE(check_cost_preservation(before, s, 3));
  }
}

TEST(MxresStep, TopAgainstTop) {
  WStore s;
  const StepRecord r = mxres_step(s, s.add(clause_of({1, 2}), Weight::top()), s.add(clause_of({-1}), Weight::top()), 1);
  for (std::size_t id : r.derived) EXPECT_TRUE(s.at(id).weight.is_top());
  EXPECT_NE(s.find(clause_of({2}), Weight::top()), std::nullopt);
  EXPECT_EQ(s.empty_soft_weight(), 0u);
}

TEST(MxresStep, Errors) {
  WStore s;
  const auto a = s.add(clause_of({1, 2}), Weight(1));
  const auto b = s.add(clause_of({-1}), Weight(1));
  const auto c = s.add(clause_of({-1, 3}), Weight(1));
  EXPECT_THROW(mxres_step(s, b, a, 1), PivotError);
  EXPECT_THROW(mxres_step(s, a, b, 2), PivotError);
  mxres_step(s, a, b, 1);
  EXPECT_THROW(mxres_step(s, a, c, 1), ReuseError);
  EXPECT_TRUE(check_cost_preservation(WStore{}, WStore{}, 0));
}

TEST(MxresStep, RandomStepsPreserveCostAndMutationsAreCaught) {
  oracle::Rng rng(400);
  int caught = 0, vacuous = 0;
  for (int round = 0; round < 1000; ++round) {
    RandomStep rs = random_step(rng);
    const bool clausal = round % 2 == 1;
    const WStore before = rs.store;
    const StepRecord r = mxres_step(rs.store, rs.left, rs.right, rs.pivot, clausal);
    ASSERT_TRUE(check_cost_preservation(before, rs.store, rs.num_vars)) << round;
    for (std::size_t d : r.derived) {
      const WStore mutated = without_entry(rs.store, d);
      const bool preserved = check_cost_preservation(before, mutated, rs.num_vars);
      if (removal_observable(rs.store, d, rs.num_vars)) {
        ASSERT_FALSE(preserved) << round;
        ++caught;
      } else {
        ++vacuous;
      }
    }
  }
  EXPECT_GT(caught, 1000);
  RecordProperty("vacuous_mutations", vacuous);
}

TEST(CertifyMr, EmptyClauseCounts) {
  for (int m = 1; m <= 24; ++m) {
    const MrReport r = certify_php_mr(m);
    ASSERT_EQ(r.empties, static_cast<std::uint64_t>(m * (m + 1) + 1)) << m;
    ASSERT_EQ(r.empties_pigeons, static_cast<std::uint64_t>(m + 1));
    ASSERT_EQ(r.empties_holes, static_cast<std::uint64_t>(m * m));
    ASSERT_TRUE(r.no_reuse);
    const std::uint64_t mm = m;
    ASSERT_EQ(r.steps, mm * (mm + 1) + mm * (mm * (mm + 1) / 2 + mm));
  }
  const MrReport one = certify_php_mr(1);
  EXPECT_EQ(one.empties_pigeons, 2u);
  EXPECT_EQ(one.empties_holes, 1u);
  EXPECT_THROW(certify_php_mr(0), Error);
}

TEST(CertifyMr, ScriptCoordinates) {
  const MrReport r = certify_php_mr(2);
  int l_steps = 0, m_phase2 = 0;
  for (const StepRecord& s : r.script) {
    if (s.constraint == 'L') ++l_steps;
    if (s.constraint == 'M' && s.index == 1 && s.phase == 2) ++m_phase2;
  }
  EXPECT_EQ(l_steps, 6);
  EXPECT_EQ(m_phase2, 3);
}

TEST(CertifyMr, ReplayPreservesCost) {
  for (bool clausal : {false, true})
    for (bool keep_p : {false, true})
      for (int m = 1; m <= 2; ++m) {
        int checked = 0;
        const int n = 2 * m * (m + 1);
        certify_php_mr(m, clausal, keep_p, [&](const WStore& before, const WStore& after, const StepRecord&) {
          ASSERT_TRUE(check_cost_preservation(before, after, n));
          ++checked;
        });
        EXPECT_GT(checked, 0);
      }
}

TEST(CertifyMr, StepGrowthIsCubic) {
  std::vector<double> xs, steps, work;
  for (int m = 4; m <= 24; ++m) {
    const MrReport r = certify_php_mr(m);
    xs.push_back(m);
    steps.push_back(static_cast<double>(r.steps));
  }
  EXPECT_LE(loglog_fit(xs, steps), 3.2);
  for (int m = 4; m <= 12; ++m) work.push_back(static_cast<double>(certify_php_mr(m, true).literal_work));
  xs.resize(work.size());
  EXPECT_LE(loglog_fit(xs, work), 5.2);
}

TEST(CertifyMr, WithPClauses) {
  for (int m = 1; m <= 10; ++m) {
    const MrReport r = certify_php_mr(m, false, true);
    EXPECT_TRUE(r.p_clauses);
    EXPECT_EQ(r.empties, static_cast<std::uint64_t>(m * (m + 1) + 1));
  }
}

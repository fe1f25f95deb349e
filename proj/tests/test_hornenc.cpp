#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"
#include "oracles.hpp"

using namespace hornmax;

namespace {

CnfFormula example1() {
  return {3, {clause_of({1, -2, 3}), clause_of({2, 3}), clause_of({-1, -3})}};
}

std::set<std::vector<int>> as_set(const std::vector<Clause>& cs) {
  std::set<std::vector<int>> out;
  for (const Clause& c : cs) {
    std::vector<int> v;
    for (Lit l : normalized(c).lits) v.push_back(l.dimacs());
    out.insert(v);
  }
  return out;
}

void expect_horn(const HencResult& h) {
  for (const Clause& c : h.wcnf.hard) ASSERT_TRUE(is_horn(c));
  for (const SoftClause& s : h.wcnf.soft) {
    ASSERT_EQ(s.clause.size(), 1u);
    ASSERT_TRUE(s.clause.lits[0].positive());
  }
}

}  // namespace

TEST(Henc, Example1) {
  const HencResult h = henc(example1());
  // p_i = 2i-1, n_i = 2i
  const int p1 = 1, n1 = 2, p2 = 3, n2 = 4, p3 = 5, n3 = 6;
  const std::vector<Clause> hard{clause_of({-n1, -p1}), clause_of({-n2, -p2}), clause_of({-n3, -p3}),
                                 clause_of({-n1, -p2, -n3}), clause_of({-n2, -n3}), clause_of({-p1, -p3})};
  EXPECT_EQ(as_set(h.wcnf.hard), as_set(hard));
  EXPECT_EQ(h.wcnf.hard.size(), 6u);
  std::vector<Clause> soft;
  for (const auto& s : h.wcnf.soft) soft.push_back(s.clause);
  EXPECT_EQ(as_set(soft), as_set({clause_of({n1}), clause_of({p1}), clause_of({n2}), clause_of({p2}),
                                  clause_of({n3}), clause_of({p3})}));
  EXPECT_EQ(h.target, 3u);
  EXPECT_EQ(h.wcnf.num_vars, 6);
  EXPECT_EQ(h.p_clause_ids, (std::vector<std::size_t>{0, 1, 2}));
  expect_horn(h);
}

TEST(Henc, PhpShape) {
  for (int m = 1; m <= 5; ++m) {
    const CnfFormula f = gen::gen_php({m, gen::AtMost1::Pairwise}).formula;
    const HencResult h = henc(f);
    const std::size_t vars = m * (m + 1);
    EXPECT_EQ(h.wcnf.soft.size(), 2 * vars);
    EXPECT_EQ(h.wcnf.hard.size(), f.clauses.size() + vars);
    EXPECT_EQ(h.wcnf.num_vars, static_cast<int>(2 * vars));
    expect_horn(h);
    const HencResult d = drop_p(h);
    EXPECT_EQ(h.wcnf.hard.size() - d.wcnf.hard.size(), vars);
    EXPECT_TRUE(d.p_clause_ids.empty());
    const HencResult r = restore_p(d);
    EXPECT_EQ(as_set(r.wcnf.hard), as_set(h.wcnf.hard));
  }
}

TEST(Henc, SingleVariable) {
  const HencResult h = henc({1, {clause_of({1})}});
  EXPECT_EQ(as_set(h.wcnf.hard), as_set({clause_of({-1, -2}), clause_of({-2})}));
  EXPECT_EQ(oracle::maxsat(h.wcnf), 1u);
  EXPECT_THROW(henc({0, {}}), Error);
}

TEST(Henc, CostOfDecodedWitness) {
  const HencResult h = henc(example1());
  Assignment x(3);
  x.set(1, false);
  x.set(2, false);
  x.set(3, true);
  ASSERT_TRUE(satisfies(x, example1()));
  EXPECT_EQ(cost(h.wcnf, encode_assignment(h, x)), 3u);
  EXPECT_EQ(oracle::maxsat(h.wcnf), 3u);
}

TEST(Henc, AtMostNSatisfiedSofts) {
  oracle::Rng rng(21);
  for (int round = 0; round < 150; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 6, 12);
    const HencResult h = henc(f);
    const std::size_t n = f.num_vars;
    for (std::uint64_t bits = 0; bits < (1ULL << h.wcnf.num_vars); ++bits) {
      if (!oracle::all_true(h.wcnf.hard, bits)) continue;
      std::size_t sat = 0;
      for (const auto& s : h.wcnf.soft) sat += oracle::clause_true(s.clause, bits);
      ASSERT_LE(sat, n);
    }
  }
}

TEST(Henc, SatIffOptimumEqualsTarget) {
  oracle::Rng rng(8);
  for (int round = 0; round < 200; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 8, 24);
    const HencResult h = henc(f);
    const auto opt = oracle::maxsat(h.wcnf);
    ASSERT_TRUE(opt.has_value());
    if (oracle::is_sat(f))
      ASSERT_EQ(*opt, h.target);
    else
      ASSERT_GE(*opt, h.target + 1);
  }
}

TEST(Henc, DropPIsRelaxation) {
  oracle::Rng rng(9);
  for (int round = 0; round < 100; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 6, 12);
    const HencResult h = henc(f);
    EXPECT_LE(*oracle::maxsat(drop_p(h).wcnf), *oracle::maxsat(h.wcnf));
  }
  const HencResult php = drop_p(henc(gen::gen_php({2, gen::AtMost1::Pairwise}).formula));
  EXPECT_EQ(oracle::maxsat(php.wcnf), 7u);
}

TEST(Decode, Example1) {
  const HencResult h = henc(example1());
  Assignment a = Assignment::from_bits(6, 0);
  a.set(5, true);  // p3
  a.set(2, true);  // n1
  a.set(4, true);  // n2
  const Assignment x = decode(h, a);
  EXPECT_FALSE(x.is_true(1));
  EXPECT_FALSE(x.is_true(2));
  EXPECT_TRUE(x.is_true(3));
  EXPECT_TRUE(satisfies(x, example1()));

  Assignment short_a = a;
  short_a.set(4, false);
  EXPECT_THROW(decode(h, short_a), NoWitness);
}

TEST(Decode, RoundTripOnSatisfiableFormulas) {
  oracle::Rng rng(12);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    const CnfFormula f = oracle::random_cnf(rng, 10, 20);
    const auto bits = oracle::sat(f.num_vars, f.clauses);
    if (!bits) continue;
    const Assignment x = Assignment::from_bits(f.num_vars, *bits);
    for (const HencResult& h : {henc(f), henc_reduced(f)}) {
      const Assignment a = encode_assignment(h, x);
      ASSERT_EQ(cost(h.wcnf, a), h.target);
      ASSERT_EQ(decode(h, a), x);
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Decode, DroppedPCanLackWitness) {
  // x1 and -x1 with an unused x2: without P both rails of x1 can be 1 at cost N.
  const CnfFormula f{2, {clause_of({1}), clause_of({-1})}};
  const HencResult h = drop_p(henc(f));
  Assignment a = Assignment::from_bits(4, 0);
  a.set(1, false);
  a.set(2, false);
  a.set(3, true);
  a.set(4, true);
  ASSERT_EQ(cost(h.wcnf, a), 2u);
  EXPECT_THROW(decode(h, a), NoWitness);
}

TEST(Reduced, HornInputNeedsNoDualRails) {
  const CnfFormula f{3, {clause_of({-1, 2}), clause_of({-2, -3}), clause_of({1})}};
  const HencResult h = henc_reduced(f);
  EXPECT_EQ(h.map.dual_count(), 0u);
  EXPECT_EQ(h.target, 0u);
  EXPECT_TRUE(h.wcnf.soft.empty());
  EXPECT_EQ(h.wcnf.hard.size(), f.clauses.size());
}

TEST(Reduced, GreedyKeepsSharedVariable) {
  // (a v b) and (a v c): a stays single-rail, b and c become dual-rail.
  const CnfFormula f{3, {clause_of({1, 2}), clause_of({1, 3})}};
  const HencResult h = henc_reduced(f);
  EXPECT_EQ(h.map.rail(1).kind, Rail::Kind::Single);
  EXPECT_EQ(h.map.rail(2).kind, Rail::Kind::Dual);
  EXPECT_EQ(h.map.rail(3).kind, Rail::Kind::Dual);
  for (const Clause& c : h.wcnf.hard) EXPECT_TRUE(is_horn(c));
  for (std::size_t j = 0; j < f.clauses.size(); ++j)
    EXPECT_EQ(positive_count(h.wcnf.hard[h.p_clause_ids.size() + j]), 1u);
}

TEST(Reduced, EquisatisfiableWithBasic) {
  oracle::Rng rng(31);
  for (int round = 0; round < 200; ++round) {
    CnfFormula f = oracle::random_cnf(rng, 10, 30);
    const HencResult h = henc_reduced(f);
    for (const Clause& c : h.wcnf.hard) ASSERT_TRUE(is_horn(c));
    const bool sat = oracle::is_sat(f);
    const auto opt = oracle::maxsat(h.wcnf);
    if (sat) {
      ASSERT_EQ(opt, h.target) << round;
    } else {
      ASSERT_TRUE(!opt || *opt > h.target) << round;
    }
  }
}

#include <gtest/gtest.h>

#include <bit>

#include "hornmax/cardinality.hpp"
#include "hornmax/cdcl.hpp"
#include "oracles.hpp"

using namespace hornmax;

namespace {

std::vector<Lit> inputs(int n) {
  std::vector<Lit> xs;
  for (int i = 1; i <= n; ++i) xs.push_back(Lit::pos(i));
  return xs;
}

std::vector<Lit> fixing(int n, std::uint64_t x) {
  std::vector<Lit> as;
  for (int i = 1; i <= n; ++i) as.push_back((x >> (i - 1)) & 1U ? Lit::pos(i) : Lit::neg(i));
  return as;
}

}  // namespace

TEST(Totalizer, ExhaustiveSemantics) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < n; ++k) {
      VarPool pool(n);
      const auto xs = inputs(n);
      Totalizer t(xs, pool);
      const auto cs = t.enforce(k);
      const auto bound = t.at_most_assumption(k);
      ASSERT_TRUE(bound.has_value());
      CdclSolver s(pool.num_vars());
      s.add_clauses(cs);
      for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        auto as = fixing(n, x);
        as.push_back(*bound);
        const bool ok = std::popcount(x) <= k;
        ASSERT_EQ(s.solve(as).status == SatStatus::Sat, ok) << n << " " << k << " " << x;
        if (!ok) {
          const UpResult up = s.propagate_only(as);
          ASSERT_TRUE(up.conflict) << "not detected by propagation";
        }
      }
    }
    VarPool pool(n);
    const auto xs = inputs(n);
    Totalizer t(xs, pool);
    t.enforce(n);
    EXPECT_FALSE(t.at_most_assumption(n).has_value());
  }
}

TEST(Totalizer, IncrementalBoundsAndInputs) {
  const int n = 5;
  VarPool pool(n + 3);
  const auto xs = inputs(n);
  Totalizer t(xs, pool);
  CdclSolver s(0);
  auto feed = [&](const std::vector<Clause>& cs) {
    s.ensure_vars(pool.num_vars());
    s.add_clauses(cs);
  };
  feed(t.enforce(1));
  feed(t.enforce(3));
  const std::vector<Lit> more{Lit::pos(6), Lit::pos(7), Lit::pos(8)};
  feed(t.add_inputs(more));
  EXPECT_EQ(t.num_inputs(), 8u);
  for (int k : {3, 4, 6}) {
    feed(t.enforce(k));
    const Lit b = *t.at_most_assumption(k);
    for (std::uint64_t x = 0; x < 256; ++x) {
      auto as = fixing(8, x);
      as.push_back(b);
      ASSERT_EQ(s.solve(as).status == SatStatus::Sat, std::popcount(x) <= k) << k << " " << x;
    }
  }
  EXPECT_THROW(t.enforce(2), Error);
}

TEST(Totalizer, ActivationMakesTreeInert) {
  const int n = 4;
  VarPool pool(n);
  const Lit act = Lit::pos(pool.fresh());
  const auto xs = inputs(n);
  Totalizer t(xs, pool, act);
  const auto cs = t.enforce(1);
  for (const Clause& c : cs) EXPECT_NE(std::find(c.lits.begin(), c.lits.end(), ~act), c.lits.end());
  CdclSolver s(pool.num_vars());
  s.add_clauses(cs);
  auto as = fixing(n, 0b1111);
  as.push_back(*t.at_most_assumption(1));
  EXPECT_EQ(s.solve(as).status, SatStatus::Sat);
  as.push_back(act);
  EXPECT_EQ(s.solve(as).status, SatStatus::Unsat);
}

TEST(SeqCounter, EdgeBounds) {
  VarPool pool(4);
  const auto xs = inputs(4);
  EXPECT_TRUE(encode_seqcounter(xs, 4, pool).empty());
  EXPECT_TRUE(encode_seqcounter(xs, 9, pool).empty());
  const auto zero = encode_seqcounter(xs, 0, pool);
  ASSERT_EQ(zero.size(), 4u);
  for (const Clause& c : zero) EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(pool.num_vars(), 4);
}

TEST(SeqCounter, ExhaustiveBounds) {
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) {
      VarPool pool(n);
      const auto xs = inputs(n);
      const auto cs = encode_seqcounter(xs, k, pool);
      CdclSolver s(pool.num_vars());
      s.add_clauses(cs);
      for (std::uint64_t x = 0; x < (1ULL << n); ++x)
        ASSERT_EQ(s.solve(fixing(n, x)).status == SatStatus::Sat, std::popcount(x) <= k);
    }
}

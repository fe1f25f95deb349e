#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hornmax/formula.hpp"

namespace hornmax {

class NotHorn : public Error {
 public:
  using Error::Error;
};

enum class SatStatus { Sat, Unsat, Unknown };

struct LturOutcome {
  SatStatus status = SatStatus::Sat;
  Assignment model;                 // total; set when Sat
  std::vector<std::size_t> core;    // indices into the assumption list; set when Unsat
  std::uint64_t propagations = 0;   // one per literal assignment, assumptions included
};

/// Linear-time unit resolution for Horn clauses under assumptions.
///
/// Forward chaining computes the minimal model: each clause keeps a counter of negative
/// literals whose variable is not yet true; when it reaches zero the head (if any) is set
/// true, or a conflict is reported for goal clauses. Negative assumptions act as extra goal
/// clauses. Facts are propagated first, then assumptions one at a time in list order, each
/// to fixpoint, with a FIFO queue. On conflict the implication ancestry is walked back to the
/// assumptions that caused it.
class HornSolver {
 public:
  HornSolver(int num_vars, std::span<const Clause> clauses);

  LturOutcome solve(std::span<const Lit> assumptions = {});

  int num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return heads_.size(); }
  /// Total literal occurrences over all clauses.
  std::size_t size() const { return literal_count_; }

 private:
  static constexpr int kNoReason = -1;

  struct Reason {
    int clause = kNoReason;      // clause that derived the variable
    int assumption = kNoReason;  // or the assumption that set it
  };

  bool assign_true(Var v, Reason why, std::uint64_t& props);
  int propagate(std::uint64_t& props);  // returns conflicting clause or kNoReason
  void collect_core(int clause, Var extra, std::vector<std::size_t>& core) const;

  int num_vars_;
  std::size_t literal_count_ = 0;
  std::vector<Var> heads_;                        // 0 for goal clauses
  std::vector<std::vector<Var>> body_;            // negated variables of each clause
  std::vector<std::vector<int>> occurs_negated_;  // var -> clauses with -var

  // Per-solve state.
  std::vector<int> missing_;
  std::vector<Value> value_;
  std::vector<Reason> reason_;
  std::vector<int> negative_assumption_;  // var -> assumption index that forces it false
  std::vector<Var> queue_;
  std::size_t head_ = 0;
  int conflict_var_ = 0;  // head already forced false when the conflict clause fired
};

}  // namespace hornmax

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hornmax/formula.hpp"
#include "hornmax/ltur.hpp"

namespace hornmax {

/// Resource limits for a solving call. Zero / nullopt means unlimited.
struct Budget {
  std::uint64_t max_propagations = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  bool expired(std::uint64_t propagations) const {
    if (max_propagations != 0 && propagations >= max_propagations) return true;
    return deadline && std::chrono::steady_clock::now() >= *deadline;
  }
};

struct SatResult {
  SatStatus status = SatStatus::Unknown;
  Assignment model;               // Sat only
  std::vector<std::size_t> core;  // Unsat only: indices into the assumption list
  std::uint64_t propagations = 0;
};

/// Outcome of propagating assumptions without making any decision.
struct UpResult {
  bool conflict = false;
  std::vector<std::size_t> core;      // assumption indices in the conflict's ancestry
  std::vector<int> clauses;           // ids of the input clauses used to derive the conflict
  std::uint64_t propagations = 0;
};

/// Small CDCL solver: two watched literals, first-UIP learning, activity-based decisions
/// with phase saving, Luby restarts. Assumptions are the first decisions; a falsified
/// assumption yields a core over the assumption list.
class CdclSolver {
 public:
  explicit CdclSolver(int num_vars = 0);

  Var new_var();
  void ensure_vars(int n);
  int num_vars() const { return num_vars_; }

  /// Adds a permanent clause; returns its id. Must be called between solves.
  int add_clause(const Clause& c);
  void add_clauses(std::span<const Clause> cs) {
    for (const Clause& c : cs) add_clause(c);
  }

  SatResult solve(std::span<const Lit> assumptions = {}, const Budget& budget = {});

  /// Assigns the assumptions in order, each followed by unit propagation, stopping at the
  /// first conflict. No decisions and no learning.
  UpResult propagate_only(std::span<const Lit> assumptions);

  std::uint64_t total_propagations() const { return total_props_; }

 private:
  static constexpr int kNone = -1;

  struct ClauseData {
    std::vector<Lit> lits;
    int input_id = kNone;  // kNone for learnt clauses
    bool learnt = false;
    bool deleted = false;
    int lbd = 0;
  };

  Value lit_value(Lit l) const;
  void enqueue(Lit l, int reason);
  int propagate();  // returns conflicting clause index or kNone
  void new_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
  int level() const { return static_cast<int>(trail_lim_.size()); }
  void backtrack(int lvl);
  void attach(int ci);
  std::vector<Lit> analyze(int conflict, int& backjump);
  std::vector<Lit> analyze_final(Lit falsified);
  void ancestry(std::vector<Var> start, std::vector<Lit>& decisions, std::vector<int>* clauses);
  void bump(Var v);
  void heap_push(Var v);
  bool locked(int ci) const;
  void reduce_learnts();
  void minimize(std::vector<Lit>& learnt);
  Var pick_branch();
  std::vector<std::size_t> to_core(std::span<const Lit> assumptions, const std::vector<Lit>& lits) const;

  int num_vars_ = 0;
  std::vector<ClauseData> clauses_;
  std::vector<std::vector<int>> watches_;  // literal index -> clause indices
  std::vector<Value> assigns_;
  std::vector<int> levels_;
  std::vector<int> reasons_;
  std::vector<bool> phase_;
  std::vector<double> activity_;
  double act_inc_ = 1.0;
  std::vector<std::pair<double, Var>> heap_;  // lazy: may hold stale entries
  std::vector<char> seen_;
  std::size_t num_learnts_ = 0;
  std::size_t max_learnts_ = 4000;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  bool root_conflict_ = false;
  int input_clauses_ = 0;
  std::uint64_t total_props_ = 0;
  std::uint64_t call_props_ = 0;
};

}  // namespace hornmax

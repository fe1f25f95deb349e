#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hornmax/cdcl.hpp"
#include "hornmax/formula.hpp"
#include "hornmax/ltur.hpp"

namespace hornmax {

enum class MaxSatStatus { Optimal, Infeasible, BudgetExceeded };

const char* to_string(MaxSatStatus s);

/// One solver event: a core, or a bound increase without new soft clauses.
struct TraceRecord {
  std::string phase;                // "disjoint", "core", "bound", "hs"
  std::size_t component = 0;
  std::vector<std::size_t> core;    // soft ids of the input formula
  std::uint64_t propagations = 0;   // spent by the check that produced this record
  std::uint64_t lb = 0;             // lower bound after the record
  int bound = -1;                   // cardinality bound after the record, -1 if none
};

struct MaxSatResult {
  MaxSatStatus status = MaxSatStatus::Optimal;
  std::uint64_t cost = 0;         // optimum when Optimal
  std::uint64_t lower_bound = 0;  // best proven bound (equals cost when Optimal)
  Assignment model;               // over the input variables when Optimal
  std::vector<TraceRecord> trace;
  std::uint64_t propagations = 0;
  std::vector<std::uint64_t> block_costs;  // filled by solve_partitioned
};

struct SolveOptions {
  Budget budget;
  /// Solve variable-disjoint parts of the instance independently.
  bool split_components = true;
};

/// Soft clauses as assumption literals: a unit soft is assumed directly, any other soft
/// gets a blocking variable b with hard clause (c or b) and assumption (not b).
struct Selectors {
  std::vector<Lit> lits;           // per soft id
  std::vector<Clause> extra_hard;  // blocking clauses
  int num_vars = 0;                // after blocking variables
};

Selectors make_selectors(const WcnfFormula& f);

/// A variable-connected part of a formula, renumbered densely from 1.
struct SubInstance {
  WcnfFormula formula;
  std::vector<Var> to_global;          // local var -> input var (index 0 unused)
  std::vector<std::size_t> soft_ids;   // local soft id -> input soft id
};

/// Connected components of the variable-interaction graph (clauses sharing a variable are
/// connected). Components without soft clauses are kept: they still have to be satisfiable.
std::vector<SubInstance> split_components(const WcnfFormula& f);

/// Writes a local model into a global one through `to_global`.
void lift_model(const SubInstance& sub, const Assignment& local, Assignment& global);

/// Tracks propagations against a shared budget across many solver calls.
class BudgetTracker {
 public:
  explicit BudgetTracker(const Budget& b) : budget_(b) {}
  void charge(std::uint64_t props) { used_ += props; }
  std::uint64_t used() const { return used_; }
  bool exhausted() const;
  /// Budget for the next call.
  Budget remaining() const;

 private:
  Budget budget_;
  std::uint64_t used_ = 0;
};

/// Satisfiability oracle over a fixed hard set: LTUR while everything is Horn, CDCL otherwise.
class CoreOracle {
 public:
  CoreOracle(int num_vars, const std::vector<Clause>& hard);

  struct Answer {
    SatStatus status = SatStatus::Unknown;
    std::vector<std::size_t> core;  // assumption indices
    Assignment model;
    std::uint64_t propagations = 0;
  };

  Answer check(std::span<const Lit> assumptions, BudgetTracker& budget);
  /// Adds a clause; switches to CDCL when the clause is not Horn.
  void add(const Clause& c);
  void ensure_vars(int n) { sat_.ensure_vars(n); }
  bool horn() const { return horn_.has_value(); }

 private:
  int num_vars_;
  std::vector<Clause> horn_clauses_;
  std::optional<HornSolver> horn_;
  bool horn_stale_ = false;
  CdclSolver sat_;
};

}  // namespace hornmax

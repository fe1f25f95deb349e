#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hornmax/formula.hpp"
#include "hornmax/maxsat.hpp"

namespace hornmax::msu3 {

/// Core-guided MaxSAT for unit soft weights. A disjoint-core phase peels cores over the
/// original softs, then relaxed softs feed one incremental totalizer whose bound equals the
/// lower bound; the loop ends at the first satisfiable check.
MaxSatResult solve(const WcnfFormula& f, const SolveOptions& opt = {});

/// Solves each block of soft ids separately. Blocks must not be linked through hard clauses;
/// `block_costs` holds the per-block optima and `cost` their sum.
MaxSatResult solve_partitioned(const WcnfFormula& f, const std::vector<std::vector<std::size_t>>& blocks,
                               const SolveOptions& opt = {});

class CertificationFailure : public Error {
 public:
  using Error::Error;
};

struct CertStep {
  char constraint = 'L';  // 'L' (pigeon) or 'M' (hole)
  int index = 0;          // pigeon i or hole j
  int iteration = 1;      // k within the constraint
  std::size_t core_size = 0;
  std::uint64_t propagations = 0;
};

struct CertReport {
  int holes = 0;
  bool p_clauses = false;
  std::uint64_t lb = 0;
  std::uint64_t lb_pigeons = 0;  // from the L constraints
  std::uint64_t lb_holes = 0;    // from the M constraints
  std::uint64_t up_steps = 0;    // propagations over all scheduled checks
  std::vector<CertStep> per_phase;
  std::string notes;
};

/// Replays the core schedule on the Horn encoding of pairwise PHP with `holes` holes: one
/// propagation conflict per pigeon constraint, then per hole k conflicts bounded by a fresh
/// totalizer AtMost(k-1) over the relaxation literals. Throws CertificationFailure when a
/// scheduled check does not conflict, or when its conflict depends on a P clause.
CertReport certify_php_cg(int holes, bool keep_p = false);

}  // namespace hornmax::msu3

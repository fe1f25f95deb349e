#pragma once

#include <cstdint>
#include <vector>

#include "hornmax/formula.hpp"
#include "hornmax/maxsat.hpp"

namespace hornmax::ihs {

using Core = std::vector<std::size_t>;  // sorted soft ids

/// Pairwise-disjoint cores found by assuming every soft clause and removing each core's
/// members until the rest is satisfiable. Returns nullopt when the hard clauses are
/// unsatisfiable on their own.
std::optional<std::vector<Core>> disjoint_cores(const WcnfFormula& f, const Budget& budget = {});

/// Exact minimum-cardinality hitting set by branch and bound. Branches on the element that
/// hits the most open sets (lowest id on ties), including it first; bounds with a greedy
/// disjoint packing and prunes dominated elements. An empty set in `sets` has no hitting set
/// and raises Error.
std::vector<std::size_t> min_hitting_set(const std::vector<Core>& sets);

/// Implicit hitting set loop: disjoint cores, then alternate an exact minimum hitting set h
/// with a check of the hard clauses plus all soft clauses outside h.
MaxSatResult solve(const WcnfFormula& f, const SolveOptions& opt = {});

}  // namespace hornmax::ihs

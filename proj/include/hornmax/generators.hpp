#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hornmax/formula.hpp"

namespace hornmax::gen {

enum class AtMost1 { Pairwise, SeqCounter };

const char* to_string(AtMost1 e);
AtMost1 parse_atmost1(std::string_view s);

struct PhpParams {
  int holes = 1;  // pigeons = holes + 1
  AtMost1 atmost1 = AtMost1::Pairwise;
};

struct UrqParams {
  int n = 3;
  std::uint64_t seed = 0;
  int index = 1;
};

/// Names of the DIMACS variables of a generated formula (index 0 unused).
class VarLayout {
 public:
  Var add(std::string name);
  Var index_of(std::string_view name) const;  // 0 if absent
  const std::string& name(Var v) const { return names_.at(v); }
  int num_vars() const { return static_cast<int>(names_.size()) - 1; }

 private:
  std::vector<std::string> names_{""};
  std::unordered_map<std::string, Var> index_;
};

struct PhpInstance {
  CnfFormula formula;
  VarLayout layout;
  int holes = 0;
  /// DIMACS index of x[pigeon][hole], both 1-based.
  Var x(int pigeon, int hole) const { return (pigeon - 1) * holes + hole; }
};

PhpInstance gen_php(const PhpParams& p);

/// Multigraph underlying a URQ instance: left nodes 0..n²-1, right nodes n²..2n²-1.
struct ParityGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // edge e is DIMACS variable e+1
  std::vector<std::uint8_t> charge;        // per node, 0 or 1
};

/// Random connected 5-regular bipartite multigraph on 2n² nodes with one odd charge.
ParityGraph urq_graph(const UrqParams& p);

/// Tseitin CNF: for every node, XOR of incident edge variables equals the node's charge.
CnfFormula tseitin(const ParityGraph& g);

CnfFormula gen_urq(const UrqParams& p);

/// Disjunction of two formulas through one fresh selector s (the last variable):
/// clauses of `a` get +s appended, clauses of `b` get -s.
CnfFormula combine_or(const CnfFormula& a, const CnfFormula& b);

CnfFormula gen_comb(int holes, const UrqParams& urq);

enum class Family { PhpPairwise, PhpSeqCounter, Urq, Comb };

const char* to_string(Family f);
Family parse_family(std::string_view s);

/// One member of a benchmark family, reproducible from its fields alone.
struct InstanceSpec {
  Family family = Family::PhpPairwise;
  int holes = 0;  // PHP and COMB
  UrqParams urq;  // URQ and COMB

  std::string label() const;
  /// Provenance comment for generated files.
  std::string provenance() const;
  CnfFormula generate() const;
};

/// Standard benchmark suite for a family: PHP with 5..37 and 40..100 (step 5) pigeons,
/// URQ n=3..30 x 3 indices, COMB m in {7,9,11,13} x n=3..10 x 3 indices.
std::vector<InstanceSpec> benchmark_family(Family f);

}  // namespace hornmax::gen

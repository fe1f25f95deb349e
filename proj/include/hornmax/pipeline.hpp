#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hornmax/formula.hpp"
#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"
#include "hornmax/maxsat.hpp"

namespace hornmax {

enum class Algo { Msu3, Ihs };

const char* to_string(Algo a);
Algo parse_algo(std::string_view s);

MaxSatResult solve_maxsat(const WcnfFormula& f, Algo algo, const SolveOptions& opt = {});

enum class Verdict { Sat, Unsat, Unknown };

const char* to_string(Verdict v);

struct DecideOptions {
  Algo algo = Algo::Msu3;
  bool drop_p = false;
  bool reduce_vars = false;
  SolveOptions solve;
};

/// Satisfiability of an original formula read off the MaxSAT optimum of its Horn encoding.
struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::uint64_t cost = 0;     // optimum (or best lower bound when Unknown)
  std::uint64_t target = 0;
  Assignment model;           // original variables, when Sat
  MaxSatResult maxsat;        // of the last solve
  bool restored_p = false;    // the P clauses had to be put back
  std::uint64_t propagations = 0;  // over all solves
};

/// Decides from an existing encoding. When the P clauses are absent and the optimum does not
/// settle the question (cost at or below the target without a decodable witness), the P
/// clauses are restored and the instance is solved again.
Decision decide_encoded(const HencResult& h, const DecideOptions& opt);

Decision decide(const CnfFormula& f, const DecideOptions& opt);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<std::pair<double, double>>& points);

struct BenchRow {
  std::string family;
  std::string instance;
  std::string algo;
  std::string status;   // solved | timeout | error
  std::string verdict;  // sat | unsat | unknown
  std::int64_t cost = -1;
  std::uint64_t target = 0;
  std::uint64_t wall_us = 0;
  std::uint64_t propagations = 0;

  bool operator==(const BenchRow&) const = default;
};

struct BenchConfig {
  std::vector<gen::InstanceSpec> instances;
  std::vector<Algo> algos{Algo::Msu3};
  bool drop_p = false;
  bool reduce_vars = false;
  std::uint64_t budget_ms = 0;     // per (instance, algo); 0 = unlimited
  std::uint64_t budget_props = 0;  // per solve; 0 = unlimited
  int jobs = 1;
};

/// One row per (instance, algo), ordered by instance then algo regardless of `jobs`.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

extern const char* const kBenchCsvHeader;
void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_csv(std::istream& is);

/// Solved rows per (family, algo).
std::map<std::pair<std::string, std::string>, int> solved_counts(const std::vector<BenchRow>& rows);

/// Gnuplot script drawing a cactus plot (instances solved within a time) per algorithm.
std::string gnuplot_script(const std::string& csv_path, const std::vector<Algo>& algos);

}  // namespace hornmax

// hornmax command line: gen, encode, solve, certify, bench.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "hornmax/dimacs.hpp"
#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"
#include "hornmax/msu3.hpp"
#include "hornmax/mxres.hpp"
#include "hornmax/pipeline.hpp"

using namespace hornmax;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// "a..b" or "a"
std::pair<long long, long long> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const long long v = std::stoll(s);
      return {v, v};
    }
    const long long lo = std::stoll(s.substr(0, dots)), hi = std::stoll(s.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("bad range " + s);
  }
}

std::vector<Algo> parse_algos(const std::vector<std::string>& names) {
  std::vector<Algo> out;
  for (const auto& n : names) {
    try {
      out.push_back(parse_algo(n));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

Budget make_budget(std::uint64_t ms, std::uint64_t props) {
  Budget b;
  b.max_propagations = props;
  if (ms > 0) b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
  return b;
}

std::uint64_t default_budget_ms() {
  if (const char* env = std::getenv("HORNMAX_TIME_BUDGET_MS")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("HORNMAX_TIME_BUDGET_MS is not a number: ") + env);
    }
  }
  return 10000;
}

void print_model(const Assignment& a) {
  std::ostringstream line;
  line << 'v';
  for (Var v = 1; v <= a.num_vars(); ++v) line << ' ' << (a.is_true(v) ? v : -v);
  line << " 0\n";
  std::cout << line.str();
}

void write_trace(const std::string& path, const MaxSatResult& r) {
  std::ostringstream os;
  for (const TraceRecord& t : r.trace) {
    json j{{"phase", t.phase},   {"component", t.component}, {"core", t.core},
           {"propagations", t.propagations}, {"lb", t.lb}};
    j["bound"] = t.bound >= 0 ? json(t.bound) : json(nullptr);
    os << j.dump() << '\n';
  }
  write_output(path, os.str());
}

// ---- gen ----

struct GenArgs {
  int holes = 1;
  std::string enc = "pairwise";
  int n = 3;
  std::uint64_t seed = 0;
  int index = 1;
  std::string out;
};

int run_gen(const std::string& kind, const GenArgs& a) {
  gen::InstanceSpec spec;
  if (kind == "php") {
    spec.family = gen::parse_atmost1(a.enc) == gen::AtMost1::Pairwise ? gen::Family::PhpPairwise
                                                                      : gen::Family::PhpSeqCounter;
    spec.holes = a.holes;
  } else {
    spec.family = kind == "urq" ? gen::Family::Urq : gen::Family::Comb;
    spec.holes = a.holes;
    spec.urq = {a.n, a.seed, a.index};
  }
  write_output(a.out, dimacs::write_cnf(spec.generate(), {spec.provenance()}));
  return kExitOk;
}

// ---- encode ----

int run_encode(const std::string& in, const std::string& out, bool drop, bool reduce) {
  const std::string text = read_input(in);
  if (dimacs::looks_like_wcnf(text)) throw UsageError("encode expects a CNF formula");
  const CnfFormula f = dimacs::parse_cnf(text).formula;
  HencResult h = reduce ? henc_reduced(f) : henc(f);
  if (drop) h = drop_p(h);
  write_output(out, dimacs::write_wcnf(h.wcnf, sidecar_comments(h)));
  return kExitOk;
}

// ---- solve ----

struct SolveArgs {
  std::string algo = "msu3";
  std::string in;
  bool drop_p = false;
  bool reduce_vars = false;
  std::string trace;
  std::uint64_t budget_ms = 0;
  std::uint64_t budget_props = 0;
  bool no_split = false;
};

int report_decision(const Decision& d, const SolveArgs& a) {
  if (!a.trace.empty()) write_trace(a.trace, d.maxsat);
  std::cout << "c target " << d.target << "\n";
  std::cout << "c propagations " << d.propagations << "\n";
  if (d.restored_p) std::cout << "c P clauses restored to decode a witness\n";
  switch (d.verdict) {
    case Verdict::Sat:
      std::cout << "o " << d.cost << "\n";
      std::cout << "s SATISFIABLE(original)\n";
      print_model(d.model);
      return kExitSat;
    case Verdict::Unsat:
      if (d.maxsat.status == MaxSatStatus::Optimal)
        std::cout << "o " << d.cost << "\n";
      else if (d.maxsat.status == MaxSatStatus::BudgetExceeded)
        std::cout << "c lower bound " << d.maxsat.lower_bound << "\n";
      else
        std::cout << "c hard clauses infeasible\n";
      std::cout << "s UNSATISFIABLE(original)\n";
      return kExitUnsat;
    case Verdict::Unknown:
      std::cout << "c lower bound " << d.maxsat.lower_bound << "\n";
      std::cout << "s UNKNOWN\n";
      return kExitOk;
  }
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  const Algo algo = parse_algos({a.algo}).front();
  DecideOptions opt;
  opt.algo = algo;
  opt.drop_p = a.drop_p;
  opt.reduce_vars = a.reduce_vars;
  opt.solve.budget = make_budget(a.budget_ms, a.budget_props);
  opt.solve.split_components = !a.no_split;

  const std::string text = read_input(a.in);
  if (!dimacs::looks_like_wcnf(text)) return report_decision(decide(dimacs::parse_cnf(text).formula, opt), a);

  const dimacs::ParsedWcnf p = dimacs::parse_wcnf(text);
  if (auto h = from_sidecar(p.formula, p.comments)) {
    if (a.reduce_vars) throw UsageError("--reduce-vars applies to CNF input only");
    if (a.drop_p && !h->p_dropped) *h = drop_p(*h);
    return report_decision(decide_encoded(*h, opt), a);
  }

  // Plain MaxSAT instance: report the optimum itself.
  if (a.drop_p || a.reduce_vars) throw UsageError("--drop-p and --reduce-vars need a CNF or an encoded WCNF");
  const MaxSatResult r = solve_maxsat(p.formula, algo, opt.solve);
  if (!a.trace.empty()) write_trace(a.trace, r);
  std::cout << "c propagations " << r.propagations << "\n";
  switch (r.status) {
    case MaxSatStatus::Optimal:
      std::cout << "o " << r.cost << "\n";
      std::cout << "s OPTIMUM FOUND\n";
      print_model(r.model);
      break;
    case MaxSatStatus::Infeasible:
      std::cout << "s UNSATISFIABLE\n";
      break;
    case MaxSatStatus::BudgetExceeded:
      std::cout << "c lower bound " << r.lower_bound << "\n";
      std::cout << "s UNKNOWN\n";
      break;
  }
  return kExitOk;
}

// ---- certify ----

struct CertifyArgs {
  std::string mode = "core-guided";
  int holes = 1;
  int max_holes = 0;
  bool clausal = false;
  bool keep_p = false;
  std::string script;
};

json script_json(const mxres::MrReport& r) {
  json steps = json::array();
  for (const auto& s : r.script) {
    json derived = json::array();
    for (const auto& d : s.derived) derived.push_back(d);
    steps.push_back({{"constraint", std::string(1, s.constraint)},
                     {"index", s.index},
                     {"phase", s.phase},
                     {"step", s.step},
                     {"left", s.left},
                     {"right", s.right},
                     {"pivot", s.pivot},
                     {"derived", derived},
                     {"literal_work", s.literal_work}});
  }
  return {{"holes", r.holes},       {"clausal", r.clausal}, {"p_clauses", r.p_clauses},
          {"empties", r.empties},   {"steps_total", r.steps}, {"steps", steps}};
}

int run_certify(const CertifyArgs& a) {
  const int hi = std::max(a.holes, a.max_holes);
  if (a.holes < 1) throw UsageError("--holes must be at least 1");
  std::vector<std::pair<double, double>> fit;
  std::string notes;
  if (a.mode == "core-guided") {
    std::cout << std::setw(5) << "m" << std::setw(10) << "lb" << std::setw(12) << "pigeons" << std::setw(10)
              << "holes" << std::setw(14) << "up_steps" << "\n";
    for (int m = a.holes; m <= hi; ++m) {
      const msu3::CertReport r = msu3::certify_php_cg(m, a.keep_p);
      std::cout << std::setw(5) << m << std::setw(10) << r.lb << std::setw(12) << r.lb_pigeons << std::setw(10)
                << r.lb_holes << std::setw(14) << r.up_steps << "\n";
      fit.push_back({double(m), double(r.up_steps)});
      notes = r.notes;
    }
  } else if (a.mode == "mxres") {
    std::cout << std::setw(5) << "m" << std::setw(10) << "empties" << std::setw(12) << "steps" << std::setw(14)
              << "literal_work" << std::setw(10) << "reuse" << "\n";
    mxres::MrReport last;
    for (int m = a.holes; m <= hi; ++m) {
      last = mxres::certify_php_mr(m, a.clausal, a.keep_p);
      std::cout << std::setw(5) << m << std::setw(10) << last.empties << std::setw(12) << last.steps
                << std::setw(14) << last.literal_work << std::setw(10) << (last.no_reuse ? "none" : "VIOLATED")
                << "\n";
      fit.push_back({double(m), double(a.clausal ? last.literal_work : last.steps)});
    }
    if (!a.script.empty()) write_output(a.script, script_json(last).dump(1) + "\n");
  } else {
    throw UsageError("unknown mode " + a.mode + " (core-guided or mxres)");
  }
  std::cout << "c P clauses " << (a.keep_p ? "kept" : "dropped") << "\n";
  if (fit.size() >= 2)
    std::cout << "c fitted exponent " << std::fixed << std::setprecision(3) << loglog_slope(fit) << "\n";
  if (!notes.empty()) std::cout << "c note: " << notes << "\n";
  return kExitOk;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::string> families;
  bool standard = false;
  std::string holes = "1..6";
  std::string n = "3";
  std::string seeds = "0";
  std::string indices = "1";
  std::vector<std::string> algos{"msu3"};
  int jobs = 1;
  std::string csv;
  std::string gnuplot;
  std::optional<std::uint64_t> budget_ms;
  std::uint64_t budget_props = 0;
  bool drop_p = false;
  bool reduce_vars = false;
};

std::vector<gen::InstanceSpec> bench_instances(const BenchArgs& a) {
  std::vector<gen::InstanceSpec> out;
  for (const std::string& name : a.families) {
    gen::Family fam;
    try {
      fam = gen::parse_family(name);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (a.standard) {
      const auto all = gen::benchmark_family(fam);
      out.insert(out.end(), all.begin(), all.end());
      continue;
    }
    const auto [h0, h1] = parse_range(a.holes);
    const auto [n0, n1] = parse_range(a.n);
    const auto [s0, s1] = parse_range(a.seeds);
    const auto [i0, i1] = parse_range(a.indices);
    const bool php = fam == gen::Family::PhpPairwise || fam == gen::Family::PhpSeqCounter;
    for (long long h = php || fam == gen::Family::Comb ? h0 : 0; h <= (php || fam == gen::Family::Comb ? h1 : 0); ++h) {
      if (php) {
        out.push_back({fam, static_cast<int>(h), {}});
        continue;
      }
      for (long long n = n0; n <= n1; ++n)
        for (long long s = s0; s <= s1; ++s)
          for (long long i = i0; i <= i1; ++i)
            out.push_back({fam, static_cast<int>(h),
                           {static_cast<int>(n), static_cast<std::uint64_t>(s), static_cast<int>(i)}});
    }
  }
  return out;
}

int run_bench_cmd(const BenchArgs& a) {
  if (a.families.empty()) throw UsageError("bench needs at least one --family");
  BenchConfig cfg;
  cfg.instances = bench_instances(a);
  cfg.algos = parse_algos(a.algos);
  cfg.jobs = std::max(1, a.jobs);
  cfg.budget_ms = a.budget_ms ? *a.budget_ms : default_budget_ms();
  cfg.budget_props = a.budget_props;
  cfg.drop_p = a.drop_p;
  cfg.reduce_vars = a.reduce_vars;
  const std::vector<BenchRow> rows = run_bench(cfg);

  std::ostringstream csv;
  write_csv(csv, rows);
  write_output(a.csv, csv.str());
  if (!a.gnuplot.empty()) {
    if (a.csv.empty() || a.csv == "-") throw UsageError("--gnuplot needs --csv FILE");
    write_output(a.gnuplot, gnuplot_script(a.csv, cfg.algos));
  }
  std::ostream& summary = (a.csv.empty() || a.csv == "-") ? std::cerr : std::cout;
  for (const auto& [key, solved] : solved_counts(rows))
    summary << "c solved " << key.first << " " << key.second << " " << solved << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horn MaxSAT toolkit: dual-rail encoding, MaxSAT solving and PHP certificates"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark formula as DIMACS CNF");
  gen->require_subcommand(1);
  auto* gen_php = gen->add_subcommand("php", "Pigeonhole: holes+1 pigeons into holes");
  gen_php->add_option("--holes", gen_args.holes, "Number of holes")->required()->check(CLI::PositiveNumber);
  gen_php->add_option("--enc", gen_args.enc, "At-most-one encoding")->check(CLI::IsMember({"pairwise", "seqcounter"}));
  gen_php->add_option("--out", gen_args.out, "Output file (default stdout)");
  auto* gen_urq = gen->add_subcommand("urq", "Parity (Tseitin) formula over a random expander");
  gen_urq->add_option("--n", gen_args.n, "Graph parameter (2n^2 nodes)")->check(CLI::Range(3, 1000));
  gen_urq->add_option("--seed", gen_args.seed, "Random seed");
  gen_urq->add_option("--index", gen_args.index, "Instance index")->check(CLI::PositiveNumber);
  gen_urq->add_option("--out", gen_args.out, "Output file (default stdout)");
  auto* gen_comb = gen->add_subcommand("comb", "Disjunction of a pigeonhole and a parity formula");
  gen_comb->add_option("--holes", gen_args.holes, "Number of holes")->required()->check(CLI::PositiveNumber);
  gen_comb->add_option("--n", gen_args.n, "Graph parameter")->check(CLI::Range(3, 1000));
  gen_comb->add_option("--seed", gen_args.seed, "Random seed");
  gen_comb->add_option("--index", gen_args.index, "Instance index")->check(CLI::PositiveNumber);
  gen_comb->add_option("--out", gen_args.out, "Output file (default stdout)");

  std::string enc_in, enc_out;
  bool enc_drop = false, enc_reduce = false;
  auto* encode = app.add_subcommand("encode", "Dual-rail Horn MaxSAT encoding of a CNF");
  encode->add_option("--in", enc_in, "Input CNF (default stdin)");
  encode->add_option("--out", enc_out, "Output WCNF (default stdout)");
  encode->add_flag("--drop-p", enc_drop, "Omit the (not p or not n) clauses");
  encode->add_flag("--reduce-vars", enc_reduce, "Keep some variables single-rail");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Decide a CNF (or an encoded WCNF) through MaxSAT");
  solve->add_option("--algo", solve_args.algo, "msu3 or ihs")->check(CLI::IsMember({"msu3", "ihs"}));
  solve->add_option("--in", solve_args.in, "Input CNF or WCNF (default stdin)");
  solve->add_flag("--drop-p", solve_args.drop_p, "Solve without the (not p or not n) clauses");
  solve->add_flag("--reduce-vars", solve_args.reduce_vars, "Use the variable-reduced encoding (CNF input)");
  solve->add_option("--trace", solve_args.trace, "Write solver events as JSON lines");
  solve->add_option("--budget-ms", solve_args.budget_ms, "Wall-clock limit in milliseconds (0 = none)");
  solve->add_option("--budget-props", solve_args.budget_props, "Propagation limit (0 = none)");
  solve->add_flag("--no-split", solve_args.no_split, "Do not solve variable-disjoint parts separately");

  CertifyArgs cert_args;
  auto* certify = app.add_subcommand("certify", "Replay the scripted PHP lower-bound derivations");
  certify->add_option("--mode", cert_args.mode, "core-guided or mxres")
      ->check(CLI::IsMember({"core-guided", "mxres"}));
  certify->add_option("--holes", cert_args.holes, "Holes (first of the range)")->required();
  certify->add_option("--max-holes", cert_args.max_holes, "Last number of holes");
  certify->add_flag("--clausal", cert_args.clausal, "Expand negated clauses (mxres)");
  certify->add_flag("--keep-p", cert_args.keep_p, "Keep the (not p or not n) clauses");
  certify->add_option("--script", cert_args.script, "Write the resolution steps of the last m as JSON (mxres)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run solvers over generated families and emit CSV");
  bench->add_option("--family", bench_args.families, "php-pw, php-sc, urq or comb (repeatable)")->delimiter(',');
  bench->add_flag("--standard", bench_args.standard, "Use the standard member list of each family");
  bench->add_option("--holes", bench_args.holes, "Holes range a..b (php, comb)");
  bench->add_option("--n", bench_args.n, "Graph parameter range (urq, comb)");
  bench->add_option("--seeds", bench_args.seeds, "Seed range (urq, comb)");
  bench->add_option("--indices", bench_args.indices, "Index range (urq, comb)");
  bench->add_option("--algos", bench_args.algos, "Solvers")->delimiter(',');
  bench->add_option("--jobs", bench_args.jobs, "Parallel workers");
  bench->add_option("--csv", bench_args.csv, "CSV output (default stdout)");
  bench->add_option("--gnuplot", bench_args.gnuplot, "Write a cactus-plot gnuplot script");
  bench->add_option("--budget-ms", bench_args.budget_ms,
                    "Per-run wall-clock limit (default $HORNMAX_TIME_BUDGET_MS or 10000)");
  bench->add_option("--budget-props", bench_args.budget_props, "Per-run propagation limit");
  bench->add_flag("--drop-p", bench_args.drop_p, "Encode without the (not p or not n) clauses");
  bench->add_flag("--reduce-vars", bench_args.reduce_vars, "Variable-reduced encoding");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      if (*gen_php) return run_gen("php", gen_args);
      if (*gen_urq) return run_gen("urq", gen_args);
      return run_gen("comb", gen_args);
    }
    if (*encode) return run_encode(enc_in, enc_out, enc_drop, enc_reduce);
    if (*solve) return run_solve(solve_args);
    if (*certify) return run_certify(cert_args);
    if (*bench) return run_bench_cmd(bench_args);
  } catch (const UsageError& e) {
    std::cerr << "hornmax: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "hornmax: " << e.what() << "\n";
    return kExitIo;
  } catch (const dimacs::ParseError& e) {
    std::cerr << "hornmax: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "hornmax: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

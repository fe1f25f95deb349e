#include "hornmax/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "hornmax/ihs.hpp"
#include "hornmax/msu3.hpp"

namespace hornmax {

const char* to_string(Algo a) { return a == Algo::Msu3 ? "msu3" : "ihs"; }

Algo parse_algo(std::string_view s) {
  if (s == "msu3") return Algo::Msu3;
  if (s == "ihs") return Algo::Ihs;
  throw Error("unknown algorithm: " + std::string(s));
}

MaxSatResult solve_maxsat(const WcnfFormula& f, Algo algo, const SolveOptions& opt) {
  return algo == Algo::Msu3 ? msu3::solve(f, opt) : ihs::solve(f, opt);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Decision decide_encoded(const HencResult& h, const DecideOptions& opt) {
  Decision d;
  d.target = h.target;
  d.maxsat = solve_maxsat(h.wcnf, opt.algo, opt.solve);
  d.propagations = d.maxsat.propagations;
  const MaxSatResult& r = d.maxsat;
  d.cost = r.cost;

  if (r.status == MaxSatStatus::BudgetExceeded) {
    // A relaxation bound above the target already refutes the original formula.
    d.verdict = r.lower_bound > h.target ? Verdict::Unsat : Verdict::Unknown;
    return d;
  }
  if (r.status == MaxSatStatus::Infeasible) {
    d.verdict = Verdict::Unsat;
    return d;
  }
  if (r.cost > h.target) {
    d.verdict = Verdict::Unsat;
    return d;
  }
  if (r.cost == h.target) {
    try {
      d.model = decode(h, r.model);
      d.verdict = Verdict::Sat;
      return d;
    } catch (const NoWitness&) {
      if (!h.p_dropped) throw;
    }
  }
  if (!h.p_dropped) throw Error("optimum below the target with the P clauses present");
  const std::uint64_t spent = d.propagations;
  DecideOptions again = opt;
  if (again.solve.budget.max_propagations != 0)
    again.solve.budget.max_propagations =
        spent >= again.solve.budget.max_propagations ? 1 : again.solve.budget.max_propagations - spent;
  Decision full = decide_encoded(restore_p(h), again);
  full.restored_p = true;
  full.propagations += spent;
  return full;
}

Decision decide(const CnfFormula& f, const DecideOptions& opt) {
  HencResult h = opt.reduce_vars ? henc_reduced(f) : henc(f);
  if (opt.drop_p) h = drop_p(h);
  return decide_encoded(h, opt);
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw Error("slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    if (x <= 0 || y <= 0) throw Error("log-log fit needs positive values");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  const double den = n * sxx - sx * sx;
  if (den == 0) throw Error("degenerate fit");
  return (n * sxy - sx * sy) / den;
}

namespace {

BenchRow bench_one(const gen::InstanceSpec& spec, Algo algo, const BenchConfig& cfg) {
  BenchRow row;
  row.family = gen::to_string(spec.family);
  row.instance = spec.label();
  row.algo = to_string(algo);
  const auto start = std::chrono::steady_clock::now();
  try {
    const CnfFormula f = spec.generate();
    DecideOptions opt;
    opt.algo = algo;
    opt.drop_p = cfg.drop_p;
    opt.reduce_vars = cfg.reduce_vars;
    opt.solve.budget.max_propagations = cfg.budget_props;
    if (cfg.budget_ms > 0) opt.solve.budget.deadline = start + std::chrono::milliseconds(cfg.budget_ms);
    const Decision d = decide(f, opt);
    row.target = d.target;
    row.propagations = d.propagations;
    row.verdict = to_string(d.verdict);
    if (d.maxsat.status == MaxSatStatus::Optimal) {
      row.cost = static_cast<std::int64_t>(d.cost);
      if (d.verdict == Verdict::Sat && !satisfies(d.model, f)) throw Error("decoded model does not satisfy the formula");
    }
    row.status = d.verdict == Verdict::Unknown ? "timeout" : "solved";
  } catch (const std::exception&) {
    row.status = "error";
    row.verdict = "unknown";
  }
  row.wall_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count());
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  const std::size_t tasks = cfg.instances.size() * cfg.algos.size();
  std::vector<BenchRow> rows(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++)
      rows[t] = bench_one(cfg.instances[t / cfg.algos.size()], cfg.algos[t % cfg.algos.size()], cfg);
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(tasks, 1))));
  std::vector<std::thread> pool;
  for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

const char* const kBenchCsvHeader = "family,instance,algo,status,verdict,cost,target,wall_us,propagations";

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchCsvHeader << '\n';
  for (const BenchRow& r : rows)
    os << csv_field(r.family) << ',' << csv_field(r.instance) << ',' << r.algo << ',' << r.status << ','
       << r.verdict << ',' << r.cost
       << ',' << r.target << ',' << r.wall_us << ',' << r.propagations << '\n';
}

std::vector<BenchRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBenchCsvHeader) throw Error("unexpected CSV header: " + line);
  std::vector<BenchRow> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 9) throw Error("bad CSV row: " + line);
    BenchRow r;
    r.family = cells[0];
    r.instance = cells[1];
    r.algo = cells[2];
    r.status = cells[3];
    r.verdict = cells[4];
    try {
      r.cost = std::stoll(cells[5]);
      r.target = std::stoull(cells[6]);
      r.wall_us = std::stoull(cells[7]);
      r.propagations = std::stoull(cells[8]);
    } catch (const std::logic_error&) {
      throw Error("bad number in CSV row: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::map<std::pair<std::string, std::string>, int> solved_counts(const std::vector<BenchRow>& rows) {
  std::map<std::pair<std::string, std::string>, int> out;
  for (const BenchRow& r : rows) {
    int& c = out[{r.family, r.algo}];
    if (r.status == "solved") ++c;
  }
  return out;
}

std::string gnuplot_script(const std::string& csv_path, const std::vector<Algo>& algos) {
  std::ostringstream os;
  os << "# cactus plot: instances solved (x) within a wall time (y)\n"
     << "set datafile separator ','\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output '" << csv_path << ".png'\n"
     << "set xlabel 'instances solved'\n"
     << "set ylabel 'wall time (s)'\n"
     << "set logscale y\n"
     << "set key left top\n";
  os << "plot";
  for (std::size_t i = 0; i < algos.size(); ++i) {
    const char* a = to_string(algos[i]);
    os << (i ? ", \\\n    " : " ") << "\"< awk -F, '$3==\\\"" << a << "\\\" && $4==\\\"solved\\\" {print $8/1e6}' "
       << csv_path << " | sort -g | awk '{print NR\\\",\\\"$1}'\" using 1:2 with linespoints title '" << a << "'";
  }
  os << '\n';
  return os.str();
}

}  // namespace hornmax

// Python bindings. Formulas cross the boundary as DIMACS integer lists.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hornmax/dimacs.hpp"
#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"
#include "hornmax/ihs.hpp"
#include "hornmax/ltur.hpp"
#include "hornmax/msu3.hpp"
#include "hornmax/mxres.hpp"
#include "hornmax/pipeline.hpp"

namespace py = pybind11;
using namespace hornmax;

namespace {

using IntClause = std::vector<int>;

Clause to_clause(const IntClause& c) {
  Clause out;
  for (int l : c) {
    if (l == 0) throw Error("literal 0 is not allowed");
    out.lits.push_back(Lit(l));
  }
  return out;
}

IntClause from_clause(const Clause& c) {
  IntClause out;
  for (Lit l : c) out.push_back(l.dimacs());
  return out;
}

std::vector<Clause> to_clauses(const std::vector<IntClause>& cs) {
  std::vector<Clause> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(to_clause(c));
  return out;
}

std::vector<IntClause> from_clauses(const std::vector<Clause>& cs) {
  std::vector<IntClause> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(from_clause(c));
  return out;
}

// Signed literal per variable; unassigned variables are left out.
std::vector<int> model_list(const Assignment& a) {
  std::vector<int> out;
  for (Var v = 1; v <= a.num_vars(); ++v)
    if (a.get(v) != Value::Unassigned) out.push_back(a.is_true(v) ? v : -v);
  return out;
}

Assignment model_from(int num_vars, const std::vector<int>& lits) {
  Assignment a(num_vars);
  for (int l : lits) {
    const Var v = l < 0 ? -l : l;
    if (v == 0 || v > num_vars) throw Error("model literal out of range: " + std::to_string(l));
    a.set(v, l > 0);
  }
  for (Var v = 1; v <= num_vars; ++v)
    if (a.get(v) == Value::Unassigned) a.set(v, false);
  return a;
}

Budget make_budget(std::uint64_t ms, std::uint64_t props) {
  Budget b;
  b.max_propagations = props;
  if (ms > 0) b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
  return b;
}

py::dict trace_dict(const TraceRecord& t) {
  py::dict d;
  d["phase"] = t.phase;
  d["component"] = t.component;
  d["core"] = t.core;
  d["propagations"] = t.propagations;
  d["lb"] = t.lb;
  d["bound"] = t.bound >= 0 ? py::object(py::int_(t.bound)) : py::object(py::none());
  return d;
}

py::dict result_dict(const MaxSatResult& r) {
  py::dict d;
  d["status"] = std::string(to_string(r.status));
  d["cost"] = r.status == MaxSatStatus::Optimal ? py::object(py::int_(r.cost)) : py::object(py::none());
  d["lower_bound"] = r.lower_bound;
  d["model"] = model_list(r.model);
  d["propagations"] = r.propagations;
  py::list trace;
  for (const auto& t : r.trace) trace.append(trace_dict(t));
  d["trace"] = trace;
  return d;
}

SolveOptions solve_options(std::uint64_t budget_ms, std::uint64_t budget_props, bool split) {
  SolveOptions o;
  o.budget = make_budget(budget_ms, budget_props);
  o.split_components = split;
  return o;
}

}  // namespace

PYBIND11_MODULE(_hornmax, m) {
  m.doc() = "Dual-rail Horn MaxSAT encodings, MaxSAT solvers and PHP certificates";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<dimacs::ParseError> parse_error(m, "ParseError", error.ptr());
  static py::exception<NoWitness> no_witness(m, "NoWitness", error.ptr());
  static py::exception<NotHorn> not_horn(m, "NotHorn", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dimacs::ParseError& e) {
      PyErr_SetString(parse_error.ptr(), e.what());
    } catch (const NoWitness& e) {
      PyErr_SetString(no_witness.ptr(), e.what());
    } catch (const NotHorn& e) {
      PyErr_SetString(not_horn.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<CnfFormula>(m, "Cnf")
      .def(py::init([](int num_vars, const std::vector<IntClause>& clauses) {
             CnfFormula f{num_vars, to_clauses(clauses)};
             f.validate();
             return f;
           }),
           py::arg("num_vars"), py::arg("clauses"))
      .def_readonly("num_vars", &CnfFormula::num_vars)
      .def_property_readonly("clauses", [](const CnfFormula& f) { return from_clauses(f.clauses); })
      .def("to_dimacs", [](const CnfFormula& f) { return dimacs::write_cnf(f); })
      .def("__eq__", [](const CnfFormula& a, const CnfFormula& b) { return a == b; })
      .def("__repr__", [](const CnfFormula& f) {
        return "<Cnf vars=" + std::to_string(f.num_vars) + " clauses=" + std::to_string(f.clauses.size()) + ">";
      });

  py::class_<WcnfFormula>(m, "Wcnf")
      .def(py::init([](int num_vars, const std::vector<IntClause>& hard,
                       const std::vector<std::pair<IntClause, std::uint64_t>>& soft) {
             WcnfFormula f;
             f.num_vars = num_vars;
             f.hard = to_clauses(hard);
             for (const auto& [c, w] : soft) f.soft.push_back({to_clause(c), w});
             f.validate();
             return f;
           }),
           py::arg("num_vars"), py::arg("hard"), py::arg("soft"))
      .def_readonly("num_vars", &WcnfFormula::num_vars)
      .def_property_readonly("hard", [](const WcnfFormula& f) { return from_clauses(f.hard); })
      .def_property_readonly("soft",
                             [](const WcnfFormula& f) {
                               std::vector<std::pair<IntClause, std::uint64_t>> out;
                               for (const auto& s : f.soft) out.emplace_back(from_clause(s.clause), s.weight);
                               return out;
                             })
      .def("to_dimacs", [](const WcnfFormula& f) { return dimacs::write_wcnf(f); })
      .def("cost",
           [](const WcnfFormula& f, const std::vector<int>& model) {
             return cost(f, model_from(f.num_vars, model));
           })
      .def("__repr__", [](const WcnfFormula& f) {
        return "<Wcnf vars=" + std::to_string(f.num_vars) + " hard=" + std::to_string(f.hard.size()) +
               " soft=" + std::to_string(f.soft.size()) + ">";
      });

  py::class_<HencResult>(m, "Encoding")
      .def_readonly("wcnf", &HencResult::wcnf)
      .def_readonly("target", &HencResult::target)
      .def_readonly("p_clause_ids", &HencResult::p_clause_ids)
      .def_readonly("p_dropped", &HencResult::p_dropped)
      .def("rail",
           [](const HencResult& h, Var v) {
             const Rail r = h.map.rail(v);
             if (r.kind == Rail::Kind::Dual) return py::tuple(py::make_tuple("dual", r.p, r.n));
             return py::tuple(py::make_tuple("single", r.p));
           })
      .def("decode", [](const HencResult& h, const std::vector<int>& model) {
        return model_list(decode(h, model_from(h.wcnf.num_vars, model)));
      });

  m.def("parse_cnf", [](const std::string& text) { return dimacs::parse_cnf(text).formula; }, py::arg("text"));
  m.def("parse_wcnf", [](const std::string& text) { return dimacs::parse_wcnf(text).formula; }, py::arg("text"));

  m.def("gen_php",
        [](int holes, const std::string& enc) { return gen::gen_php({holes, gen::parse_atmost1(enc)}).formula; },
        py::arg("holes"), py::arg("enc") = "pairwise");
  m.def("gen_urq", [](int n, std::uint64_t seed, int index) { return gen::gen_urq({n, seed, index}); },
        py::arg("n") = 3, py::arg("seed") = 0, py::arg("index") = 1);
  m.def("gen_comb",
        [](int holes, int n, std::uint64_t seed, int index) { return gen::gen_comb(holes, {n, seed, index}); },
        py::arg("holes"), py::arg("n") = 3, py::arg("seed") = 0, py::arg("index") = 1);

  m.def("encode",
        [](const CnfFormula& f, bool drop, bool reduce) {
          HencResult h = reduce ? henc_reduced(f) : henc(f);
          return drop ? drop_p(h) : h;
        },
        py::arg("cnf"), py::arg("drop_p") = false, py::arg("reduce_vars") = false);
  m.def("restore_p", &restore_p, py::arg("encoding"));

  m.def("horn_solve",
        [](int num_vars, const std::vector<IntClause>& clauses, const std::vector<int>& assumptions) {
          const std::vector<Clause> cs = to_clauses(clauses);
          HornSolver s(num_vars, cs);
          std::vector<Lit> as;
          for (int l : assumptions) as.push_back(Lit(l));
          const LturOutcome o = s.solve(as);
          py::dict d;
          d["sat"] = o.status == SatStatus::Sat;
          d["model"] = o.status == SatStatus::Sat ? model_list(o.model) : std::vector<int>{};
          d["core"] = o.core;
          d["propagations"] = o.propagations;
          return d;
        },
        py::arg("num_vars"), py::arg("clauses"), py::arg("assumptions") = std::vector<int>{});

  m.def("solve_maxsat",
        [](const WcnfFormula& f, const std::string& algo, std::uint64_t budget_ms, std::uint64_t budget_props,
           bool split) {
          MaxSatResult r;
          {
            py::gil_scoped_release release;
            r = solve_maxsat(f, parse_algo(algo), solve_options(budget_ms, budget_props, split));
          }
          return result_dict(r);
        },
        py::arg("wcnf"), py::arg("algo") = "msu3", py::arg("budget_ms") = 0, py::arg("budget_props") = 0,
        py::arg("split_components") = true);

  m.def("decide",
        [](const CnfFormula& f, const std::string& algo, bool drop, bool reduce, std::uint64_t budget_ms,
           std::uint64_t budget_props) {
          DecideOptions opt;
          opt.algo = parse_algo(algo);
          opt.drop_p = drop;
          opt.reduce_vars = reduce;
          opt.solve = solve_options(budget_ms, budget_props, true);
          Decision dec;
          {
            py::gil_scoped_release release;
            dec = decide(f, opt);
          }
          py::dict d;
          d["verdict"] = std::string(to_string(dec.verdict));
          d["cost"] = dec.cost;
          d["target"] = dec.target;
          d["model"] = dec.verdict == Verdict::Sat ? model_list(dec.model) : std::vector<int>{};
          d["restored_p"] = dec.restored_p;
          d["propagations"] = dec.propagations;
          d["maxsat"] = result_dict(dec.maxsat);
          return d;
        },
        py::arg("cnf"), py::arg("algo") = "msu3", py::arg("drop_p") = false, py::arg("reduce_vars") = false,
        py::arg("budget_ms") = 0, py::arg("budget_props") = 0);

  m.def("min_hitting_set", &ihs::min_hitting_set, py::arg("sets"));

  m.def("certify_core_guided",
        [](int holes, bool keep_p) {
          const msu3::CertReport r = msu3::certify_php_cg(holes, keep_p);
          py::dict d;
          d["holes"] = r.holes;
          d["lb"] = r.lb;
          d["lb_pigeons"] = r.lb_pigeons;
          d["lb_holes"] = r.lb_holes;
          d["up_steps"] = r.up_steps;
          d["phases"] = r.per_phase.size();
          return d;
        },
        py::arg("holes"), py::arg("keep_p") = false);
  m.def("certify_mxres",
        [](int holes, bool clausal, bool keep_p) {
          const mxres::MrReport r = mxres::certify_php_mr(holes, clausal, keep_p);
          py::dict d;
          d["holes"] = r.holes;
          d["empties"] = r.empties;
          d["empties_pigeons"] = r.empties_pigeons;
          d["empties_holes"] = r.empties_holes;
          d["steps"] = r.steps;
          d["literal_work"] = r.literal_work;
          d["no_reuse"] = r.no_reuse;
          return d;
        },
        py::arg("holes"), py::arg("clausal") = false, py::arg("keep_p") = false);

  m.def("loglog_slope", &loglog_slope, py::arg("points"));

  m.def("bench_csv",
        [](const std::vector<std::string>& families, int holes_lo, int holes_hi, const std::vector<std::string>& algos,
           std::uint64_t budget_ms, int jobs, bool drop) {
          BenchConfig cfg;
          for (const auto& name : families) {
            const gen::Family fam = gen::parse_family(name);
            for (int h = holes_lo; h <= holes_hi; ++h) cfg.instances.push_back({fam, h, {}});
          }
          cfg.algos.clear();
          for (const auto& a : algos) cfg.algos.push_back(parse_algo(a));
          cfg.budget_ms = budget_ms;
          cfg.jobs = jobs;
          cfg.drop_p = drop;
          std::ostringstream os;
          {
            py::gil_scoped_release release;
            write_csv(os, run_bench(cfg));
          }
          return os.str();
        },
        py::arg("families"), py::arg("holes_lo"), py::arg("holes_hi"), py::arg("algos") = std::vector<std::string>{"msu3"},
        py::arg("budget_ms") = 0, py::arg("jobs") = 1, py::arg("drop_p") = false);
}

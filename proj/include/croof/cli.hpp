#pragma once

// Command-line front end: sweep, point, reference, classify.
//
// CSV columns (sweep and point):
//   p,measure,numeric_lb,analytic,upper_bound,iterations,final_y,termination,runtime_seconds,seed
// Floats use 12 significant digits; optional fields are left empty.
//
// Exit codes: 0 ok, 1 bad configuration or input, 2 some run hit the
// iteration cap, 3 numeric anomaly (solver failure, inconsistent measure
// value, or an incumbent later refuted by the oracle). classify exits 0
// whenever a label was produced.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "croof/ccpa.hpp"
#include "croof/errors.hpp"
#include "croof/measures.hpp"
#include "croof/reference.hpp"
#include "croof/state_io.hpp"

namespace croof::cli {

enum ExitCode : int { kOk = 0, kBadConfig = 1, kIterationCap = 2, kAnomaly = 3 };

struct RunConfig {
  std::optional<reference::Family> family;
  std::string state_file;
  std::string measure = "tau";
  double pmin = 0.0;
  double pmax = 1.0;
  int steps = 11;
  std::optional<double> p;  // single family point (point, classify)
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  std::optional<int> max_iters;
  std::optional<int> starts;
  int upper_bound_samples = 0;
  std::optional<double> threshold;  // classify; default 10 epsilon
  bool timing = false;
  std::string out;
  std::string witness_out;

  void validate() const {
    if (measure != "tau" && measure != "pi") throw InputError("--measure must be tau or pi");
    if (!(pmin <= pmax)) throw InputError("--pmin must not exceed --pmax");
    if (pmin < 0.0 || pmax > 1.0) throw InputError("grid must lie in [0, 1]");
    if (steps < 1) throw InputError("--steps must be >= 1");
    if (!(epsilon > 0.0)) throw InputError("--eps must be positive");
    if (max_iters && *max_iters < 1) throw InputError("--max-iters must be >= 1");
    if (starts && *starts < 1) throw InputError("--starts must be >= 1");
    if (upper_bound_samples < 0) throw InputError("--upper-bound-samples must be >= 0");
    if (p && !(*p >= 0.0 && *p <= 1.0)) throw InputError("--p must lie in [0, 1]");
    if (threshold && !(*threshold >= 0.0)) throw InputError("--threshold must be non-negative");
  }
};

inline std::vector<double> grid(double pmin, double pmax, int steps) {
  if (steps == 1) return {pmin};
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = pmin + (pmax - pmin) * i / (steps - 1);
  g.back() = pmax;
  return g;
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline const char* kCsvHeader =
    "p,measure,numeric_lb,analytic,upper_bound,iterations,final_y,termination,runtime_seconds,seed";

inline SolveOptions solve_options(const RunConfig& cfg, int rank_hint) {
  SolveOptions opt;
  opt.epsilon = cfg.epsilon;
  opt.max_iters = cfg.max_iters;
  OracleConfig oc = OracleConfig::for_rank(rank_hint);
  if (cfg.starts) oc.num_starts = *cfg.starts;
  oc.rng_seed = cfg.seed;
  opt.oracle = oc;
  return opt;
}

struct PointOutcome {
  CcpaResult result;
  double seconds = 0.0;
  std::optional<double> upper_bound;
};

inline PointOutcome evaluate(const DensityMatrix& rho, const PureStateMeasure& m, const RunConfig& cfg) {
  const auto inst = build_instance(rho, m);
  PointOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  out.result = solve_convex_roof(rho, m, solve_options(cfg, inst.rank));
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (cfg.upper_bound_samples > 0)
    out.upper_bound = upper_bound_random_decomposition(rho, m, cfg.upper_bound_samples, cfg.seed);
  return out;
}

inline std::string csv_row(std::optional<double> p, const std::string& measure, const PointOutcome& o,
                           std::optional<double> analytic, const RunConfig& cfg) {
  std::string row;
  row += p ? fmt(*p) : "";
  row += "," + measure;
  row += "," + fmt(o.result.lower_bound);
  row += "," + (analytic ? fmt(*analytic) : std::string());
  row += "," + (o.upper_bound ? fmt(*o.upper_bound) : std::string());
  row += "," + std::to_string(o.result.iterations);
  row += "," + fmt(o.result.final_y);
  row += "," + to_string(o.result.termination);
  row += "," + (cfg.timing ? fmt(o.seconds) : std::string());
  row += "," + std::to_string(cfg.seed);
  return row;
}

inline int exit_code_for(Termination t) {
  switch (t) {
    case Termination::converged:
      return kOk;
    case Termination::iteration_cap:
      return kIterationCap;
    case Termination::oracle_suspect:
      return kAnomaly;
  }
  return kAnomaly;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

inline DensityMatrix resolve_state(const RunConfig& cfg) {
  if (!cfg.state_file.empty()) {
    if (cfg.family) throw InputError("give either --state or --family, not both");
    return io::load_state(cfg.state_file);
  }
  if (!cfg.family || !cfg.p) throw InputError("a state is required: --state FILE or --family F --p P");
  return reference::family_state(reference::FamilyPoint(*cfg.family, *cfg.p));
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  if (!cfg.family) throw InputError("sweep requires --family");
  const auto m = measure_by_name(cfg.measure);
  Output o(cfg.out, out);
  *o << kCsvHeader << "\n";
  int code = kOk;
  for (double p : grid(cfg.pmin, cfg.pmax, cfg.steps)) {
    const auto rho = reference::family_state(reference::FamilyPoint(*cfg.family, p));
    const auto r = evaluate(rho, m, cfg);
    *o << csv_row(p, cfg.measure, r, reference::analytic_value(*cfg.family, cfg.measure, p), cfg) << "\n";
    (*o).flush();
    code = std::max(code, exit_code_for(r.result.termination));
    if (r.result.termination != Termination::converged)
      err << "p=" << fmt(p) << ": " << to_string(r.result.termination) << "\n";
  }
  return code;
}

inline void write_witness(const std::string& path, const DensityMatrix& rho, const CcpaResult& r) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open witness file '" + path + "'");
  io::json doc{{"dims", rho.dims()},
               {"lower_bound", r.lower_bound},
               {"objective", r.witness_objective},
               {"matrix", io::matrix_json(r.witness_matrix)}};
  f << doc.dump(1) << "\n";
}

inline int cmd_point(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  cfg.validate();
  const auto rho = resolve_state(cfg);
  const auto m = measure_by_name(cfg.measure);
  const auto r = evaluate(rho, m, cfg);
  out << "measure:           " << cfg.measure << "\n"
      << "lower_bound:       " << fmt(r.result.lower_bound) << "\n"
      << "termination:       " << to_string(r.result.termination) << "\n"
      << "iterations:        " << r.result.iterations << "\n"
      << "final_y:           " << fmt(r.result.final_y) << "\n"
      << "witness_objective: " << fmt(r.result.witness_objective) << "\n";
  if (r.upper_bound) out << "upper_bound:       " << fmt(*r.upper_bound) << "\n";
  if (!cfg.witness_out.empty()) write_witness(cfg.witness_out, rho, r.result);
  if (!cfg.out.empty()) {
    Output o(cfg.out, out);
    std::optional<double> analytic;
    if (cfg.family && cfg.p) analytic = reference::analytic_value(*cfg.family, cfg.measure, *cfg.p);
    *o << kCsvHeader << "\n" << csv_row(cfg.p, cfg.measure, r, analytic, cfg) << "\n";
  }
  return exit_code_for(r.result.termination);
}

inline int cmd_reference(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  cfg.validate();
  if (!cfg.family) throw InputError("reference requires --family");
  if (*cfg.family == reference::Family::werner && cfg.measure == "pi")
    throw InputError("no analytic pi curve exists for the werner family");
  Output o(cfg.out, out);
  *o << "p,measure,analytic\n";
  for (double p : grid(cfg.pmin, cfg.pmax, cfg.steps))
    *o << fmt(p) << "," << cfg.measure << "," << fmt(*reference::analytic_value(*cfg.family, cfg.measure, p)) << "\n";
  return kOk;
}

struct Classification {
  std::string label;
  double tau_lb = 0.0;
  std::optional<double> pi_lb;
  Termination tau_termination = Termination::converged;
  std::optional<Termination> pi_termination;
};

inline Classification classify(const DensityMatrix& rho, const RunConfig& cfg) {
  const double thr = cfg.threshold.value_or(10.0 * cfg.epsilon);
  Classification c;
  const auto t = evaluate(rho, tau_measure(), cfg);
  c.tau_lb = t.result.lower_bound;
  c.tau_termination = t.result.termination;
  if (c.tau_lb > thr) {
    c.label = "GHZ\\W";
    return c;
  }
  const auto p = evaluate(rho, pi_measure(), cfg);
  c.pi_lb = p.result.lower_bound;
  c.pi_termination = p.result.termination;
  c.label = *c.pi_lb > thr ? "W\\B" : "B-compatible";
  return c;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  cfg.validate();
  const auto rho = resolve_state(cfg);
  const auto c = classify(rho, cfg);
  out << "label:  " << c.label << "\n"
      << "tau_lb: " << fmt(c.tau_lb) << " (" << to_string(c.tau_termination) << ")\n";
  if (c.pi_lb) out << "pi_lb:  " << fmt(*c.pi_lb) << " (" << to_string(*c.pi_termination) << ")\n";
  // lower bounds stay valid under an iteration cap or a refuted incumbent, so the label stands
  return kOk;
}

/// Parses argv and dispatches; never throws.
inline int run_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Convex-roof entanglement lower bounds by cutting planes"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string family;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--measure", cfg.measure, "tau or pi")->capture_default_str();
    sub->add_option("--eps", cfg.epsilon, "CCPA tolerance")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "oracle random seed")->capture_default_str();
    sub->add_option("--max-iters", cfg.max_iters, "iteration cap (default by rank)");
    sub->add_option("--starts", cfg.starts, "multistart count per oracle call (default by rank)");
    sub->add_option("--upper-bound-samples", cfg.upper_bound_samples, "random decompositions for an upper bound");
    sub->add_option("--out", cfg.out, "CSV output file (default stdout)");
    sub->add_flag("--timing", cfg.timing, "fill the runtime_seconds column");
  };
  auto with_grid = [&](CLI::App* sub) {
    sub->add_option("--family", family, "ghz-w or werner")->required();
    sub->add_option("--pmin", cfg.pmin)->capture_default_str();
    sub->add_option("--pmax", cfg.pmax)->capture_default_str();
    sub->add_option("--steps", cfg.steps)->capture_default_str();
  };
  auto with_state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state_file, "JSON state file");
    sub->add_option("--family", family, "ghz-w or werner (with --p)");
    sub->add_option("--p", cfg.p, "family parameter");
  };

  auto* sweep = app.add_subcommand("sweep", "lower bounds along a family grid");
  common(sweep);
  with_grid(sweep);
  auto* point = app.add_subcommand("point", "lower bound and witness for one state");
  common(point);
  with_state(point);
  point->add_option("--witness-out", cfg.witness_out, "write the witness as JSON");
  auto* ref = app.add_subcommand("reference", "analytic curves");
  ref->add_option("--measure", cfg.measure)->capture_default_str();
  ref->add_option("--out", cfg.out);
  with_grid(ref);
  auto* cls = app.add_subcommand("classify", "GHZ\\W, W\\B or B-compatible");
  common(cls);
  with_state(cls);
  cls->add_option("--threshold", cfg.threshold, "certification threshold (default 10 eps)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kBadConfig;
  }

  try {
    if (!family.empty()) cfg.family = reference::family_from_string(family);
    if (*sweep) return cmd_sweep(cfg, out, err);
    if (*point) return cmd_point(cfg, out, err);
    if (*ref) return cmd_reference(cfg, out, err);
    return cmd_classify(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n" << e.dump() << "\n";
    return kAnomaly;
  } catch (const ConsistencyError& e) {
    err << "numeric anomaly: " << e.what() << "\n";
    return kAnomaly;
  } catch (const std::exception& e) {
    err << "numeric anomaly: " << e.what() << "\n";
    return kAnomaly;
  }
}

}  // namespace croof::cli

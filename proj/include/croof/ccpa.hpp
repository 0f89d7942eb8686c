#pragma once

// Central cutting-plane algorithm for the finite-coordinate convex-roof dual.
//
// Each iteration solves the master LP for the deepest point (x, y) of the
// current localization polytope, then asks the separation oracle for
//   min_{unit psi in H_rho}  E(psi) + <psi, x>.
// A non-negative minimum makes x an incumbent (objective cut through x);
// otherwise the minimizing psi yields a feasibility cut. The loop stops once
// the master optimum y drops below epsilon.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "croof/dual.hpp"
#include "croof/lp.hpp"
#include "croof/measures.hpp"
#include "croof/nelder_mead.hpp"
#include "croof/qlinalg.hpp"
#include "croof/random.hpp"

namespace croof {

struct OracleConfig {
  int num_starts = 64;
  int local_iters = 400;
  double local_tol = 1e-9;
  double feas_tol = 1e-7;
  std::uint64_t rng_seed = 0;
  int verify_starts_multiplier = 4;
  double simplex_scale = 0.15;
  // Most recent separating states reused as extra starting points.
  int warm_starts = 8;
  // Stop a multistart pass once a start has found a violation deeper than feas_tol.
  bool stop_on_violation = true;

  /// 64 starts at rank 2, 512 at rank 8.
  static OracleConfig for_rank(int rank) {
    OracleConfig cfg;
    cfg.num_starts = std::max(64, 8 * rank * rank);
    return cfg;
  }

  void validate() const {
    if (num_starts <= 0 || local_iters <= 0 || !(local_tol > 0.0) || !(feas_tol > 0.0) ||
        verify_starts_multiplier <= 0 || !(simplex_scale > 0.0) || warm_starts < 0) {
      throw InputError("OracleConfig: all settings must be positive");
    }
  }
};

inline int default_max_iters(int rank) { return rank <= 2 ? 200 : 2000; }

/// E([psi]) + <psi, x> for psi = sum_k a_k |phi_k>, evaluated on unnormalized
/// real parameter vectors (re a_0, im a_0, re a_1, ...). Holds scratch space,
/// so one instance must not be shared between threads.
class SubspaceObjective {
 public:
  SubspaceObjective(const DualInstance& inst, std::span<const double> x)
      : inst_(inst), r_(inst.rank), n_(inst.eigenvectors.rows()), xop_(from_coords(x, inst.basis)),
        v_(inst.eigenvectors.data().begin(), inst.eigenvectors.data().end()), a_(r_), amps_(n_) {}

  int rank() const noexcept { return r_; }

  double operator()(std::span<const double> params) {
    ++evaluations_;
    double norm2 = 0.0;
    for (double p : params) norm2 += p * p;
    if (!(norm2 > 1e-24)) return std::numeric_limits<double>::max();
    const double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < r_; ++k) a_[k] = cplx(params[2 * k] * inv, params[2 * k + 1] * inv);
    return value(a_);
  }

  /// Objective at unit coefficients.
  double value(std::span<const cplx> a) { return measure_value(a) + quadratic(a); }

  double measure_value(std::span<const cplx> a) {
    for (int i = 0; i < n_; ++i) {
      cplx s = 0.0;
      const cplx* row = &v_[static_cast<std::size_t>(i) * r_];
      for (int k = 0; k < r_; ++k) s += row[k] * a[k];
      amps_[i] = s;
    }
    return inst_.measure.evaluate(amps_);
  }

  /// <a| X |a> = <psi, x>.
  double quadratic(std::span<const cplx> a) const {
    double q = 0.0;
    for (int i = 0; i < r_; ++i) {
      cplx row = 0.0;
      for (int j = 0; j < r_; ++j) row += xop_(i, j) * a[j];
      q += (std::conj(a[i]) * row).real();
    }
    return q;
  }

  long evaluations() const noexcept { return evaluations_; }

 private:
  const DualInstance& inst_;
  int r_, n_;
  ComplexMatrix xop_;
  std::vector<cplx> v_;
  std::vector<cplx> a_, amps_;
  long evaluations_ = 0;
};

struct OracleResult {
  double value = std::numeric_limits<double>::infinity();
  double measure_value = 0.0;
  std::vector<cplx> coeffs;   // unit vector in the eigenbasis of rho
  std::vector<double> coords; // basis coordinates of the projector
  int starts = 0;
  long evaluations = 0;
};

namespace detail {

inline bool better(double v, const std::vector<double>& coords, const OracleResult& best) {
  if (v != best.value) return v < best.value;
  return std::lexicographical_compare(coords.begin(), coords.end(), best.coords.begin(), best.coords.end());
}

inline std::vector<double> to_params(std::span<const cplx> a) {
  std::vector<double> p(2 * a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    p[2 * k] = a[k].real();
    p[2 * k + 1] = a[k].imag();
  }
  return p;
}

}  // namespace detail

/// Approximate global minimum of E([psi]) + <psi, x> over unit psi in H_rho by
/// multistart Nelder-Mead. `stream` selects an independent, reproducible
/// random sequence; `seeds` are tried before the Haar-random starts.
inline OracleResult oracle(std::span<const double> x, const DualInstance& inst, const OracleConfig& cfg,
                           std::uint64_t stream = 0, std::span<const std::vector<cplx>> seeds = {}) {
  cfg.validate();
  if (static_cast<int>(x.size()) != inst.coord_dim()) throw InputError("oracle: x has the wrong dimension");
  for (double v : x)
    if (std::abs(v) > inst.box_bound + 1e-9) throw InputError("oracle: x lies outside the box");

  SubspaceObjective obj(inst, x);
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  Rng rng(seq);
  const NelderMeadOptions nm{cfg.simplex_scale, cfg.local_iters, cfg.local_tol};
  const int r = inst.rank;

  OracleResult best;
  const int total = static_cast<int>(seeds.size()) + cfg.num_starts;
  for (int s = 0; s < total; ++s) {
    std::vector<cplx> start =
        s < static_cast<int>(seeds.size()) ? seeds[s] : haar_vector(r, rng);
    auto local = nelder_mead([&](const std::vector<double>& p) { return obj(p); }, detail::to_params(start), nm);
    std::vector<cplx> a(r);
    double norm = 0.0;
    for (int k = 0; k < r; ++k) {
      a[k] = cplx(local.x[2 * k], local.x[2 * k + 1]);
      norm += std::norm(a[k]);
    }
    norm = std::sqrt(norm);
    for (auto& z : a) z /= norm;
    const double mv = obj.measure_value(a);
    const double v = mv + obj.quadratic(a);
    auto coords = pure_coords(a, inst);
    ++best.starts;
    if (best.coeffs.empty() || detail::better(v, coords, best)) {
      best.value = v;
      best.measure_value = mv;
      best.coeffs = std::move(a);
      best.coords = std::move(coords);
    }
    if (cfg.stop_on_violation && best.value < -cfg.feas_tol) break;
  }
  best.evaluations = obj.evaluations();
  return best;
}

// ---------------------------------------------------------------------------

enum class Termination { converged, iteration_cap, oracle_suspect };

inline std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::iteration_cap:
      return "iteration_cap";
    case Termination::oracle_suspect:
      return "oracle_suspect";
  }
  return "unknown";
}

struct Incumbent {
  int iteration = 0;
  double lower_bound = 0.0;
};

struct IterationRecord {
  int iteration = 0;
  double y = 0.0;
  double c_dot_x = 0.0;
  double oracle_value = 0.0;
  bool accepted = false;
};

struct CcpaResult {
  double lower_bound = 0.0;
  std::vector<double> witness_coords;
  ComplexMatrix witness_matrix;
  double witness_objective = 0.0;  // tr(rho X) = -lower_bound
  int iterations = 0;
  double final_y = 0.0;
  std::vector<Incumbent> incumbent_history;
  Termination termination = Termination::converged;
  std::vector<PureState> active_states;
  std::vector<IterationRecord> trace;
  // min over convex weights of |sum q_i psi_i - c| over active states; NaN if none
  // (active: E(psi) + <psi, w> <= 10 epsilon)
  double kkt_residual = std::numeric_limits<double>::quiet_NaN();
  long oracle_evaluations = 0;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Distance from c to the convex hull of `points` (Frank-Wolfe with exact line search).
inline double hull_distance(const std::vector<std::vector<double>>& points, std::span<const double> c) {
  if (points.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t d = c.size();
  std::vector<double> cur(d, 0.0);
  for (const auto& p : points)
    for (std::size_t j = 0; j < d; ++j) cur[j] += p[j] / static_cast<double>(points.size());
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> grad(d);
    for (std::size_t j = 0; j < d; ++j) grad[j] = cur[j] - c[j];
    std::size_t best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = dot(grad, points[i]);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    std::vector<double> dir(d);
    double dd = 0.0, gd = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dir[j] = points[best][j] - cur[j];
      dd += dir[j] * dir[j];
      gd += grad[j] * dir[j];
    }
    if (dd < 1e-30 || gd >= -1e-16) break;
    const double t = std::clamp(-gd / dd, 0.0, 1.0);
    for (std::size_t j = 0; j < d; ++j) cur[j] += t * dir[j];
  }
  double dist = 0.0;
  for (std::size_t j = 0; j < d; ++j) dist += (cur[j] - c[j]) * (cur[j] - c[j]);
  return std::sqrt(dist);
}

}  // namespace detail

/// Runs the cutting-plane loop on an instance of rank >= 2.
inline CcpaResult run(const DualInstance& inst, double epsilon, double e_bar, int max_iters, const OracleConfig& cfg) {
  if (inst.rank < 2) throw InputError("ccpa::run: rank-1 states take the pure-state shortcut");
  if (!(epsilon > 0.0)) throw InputError("ccpa::run: epsilon must be positive");
  if (!(e_bar > 0.0)) throw InputError("ccpa::run: e_bar must be positive");
  if (max_iters <= 0) throw InputError("ccpa::run: max_iters must be positive");
  cfg.validate();

  const int dim = inst.coord_dim();
  lp::MasterProgram mp(inst.c, inst.box_bound, e_bar);

  struct Accepted {
    std::vector<double> x;
    double lower_bound;
    int iteration;
    bool valid;
  };
  std::vector<Accepted> accepted;
  bool suspect = false;
  std::deque<std::vector<cplx>> recent;
  struct Found {
    std::vector<cplx> coeffs;
    std::vector<double> coords;
    double measure_value;
  };
  std::vector<Found> found;

  CcpaResult res;
  std::uint64_t stream = 0;

  auto audit = [&](const OracleResult& o) {
    for (auto& a : accepted) {
      if (!a.valid) continue;
      if (o.measure_value + detail::dot(o.coords, a.x) < -cfg.feas_tol) {
        a.valid = false;
        suspect = true;
      }
    }
  };
  auto remember = [&](const OracleResult& o) {
    found.push_back({o.coeffs, o.coords, o.measure_value});
    recent.push_front(o.coeffs);
    while (static_cast<int>(recent.size()) > cfg.warm_starts) recent.pop_back();
  };
  auto seeds = [&]() { return std::vector<std::vector<cplx>>(recent.begin(), recent.end()); };

  bool converged = false;
  int k = 0;
  for (k = 1; k <= max_iters; ++k) {
    const auto sol = lp::solve(mp);
    IterationRecord rec;
    rec.iteration = k;
    rec.y = sol.y;
    rec.c_dot_x = detail::dot(inst.c, sol.x);
    res.final_y = sol.y;
    if (std::abs(sol.y) < epsilon) {
      rec.oracle_value = std::numeric_limits<double>::quiet_NaN();
      res.trace.push_back(rec);
      converged = true;
      break;
    }

    const auto warm = seeds();
    auto o = oracle(sol.x, inst, cfg, stream++, warm);
    res.oracle_evaluations += o.evaluations;
    audit(o);
    if (o.value >= -cfg.feas_tol) {
      OracleConfig verify_cfg = cfg;
      verify_cfg.num_starts = cfg.num_starts * cfg.verify_starts_multiplier;
      auto v = oracle(sol.x, inst, verify_cfg, stream++, warm);
      res.oracle_evaluations += v.evaluations;
      audit(v);
      if (v.value < o.value) o = std::move(v);
    }
    rec.oracle_value = o.value;
    remember(o);
    if (o.value >= -cfg.feas_tol) {
      rec.accepted = true;
      accepted.push_back({sol.x, -rec.c_dot_x, k, true});
      mp = mp.append_cut(lp::LinearCut::objective_cut(inst.c, rec.c_dot_x));
    } else {
      mp = mp.append_cut(lp::LinearCut::feasibility_cut(o.coords, o.measure_value));
    }
    res.trace.push_back(rec);
  }
  res.iterations = std::min(k, max_iters);

  for (const auto& a : accepted) res.incumbent_history.push_back({a.iteration, a.lower_bound});

  // best surviving incumbent; w = 0 is always feasible
  std::vector<double> w(dim, 0.0);
  double lb = 0.0;
  for (const auto& a : accepted) {
    if (a.valid && a.lower_bound > lb) {
      lb = a.lower_bound;
      w = a.x;
    }
  }
  res.lower_bound = lb;
  res.witness_coords = w;
  const auto wit = witness_from_solution(w, inst);
  res.witness_matrix = wit.matrix;
  res.witness_objective = wit.objective;
  res.termination = suspect ? Termination::oracle_suspect
                            : (converged ? Termination::converged : Termination::iteration_cap);

  // central iterates keep every cut slack by about y, so activity is judged on the epsilon scale
  const double active_tol = 10.0 * epsilon + cfg.feas_tol;
  std::vector<std::vector<double>> kkt_points;
  for (const auto& f : found) {
    const double residual = f.measure_value + detail::dot(f.coords, w);
    if (residual <= active_tol) {
      res.active_states.push_back(embed_pure(f.coeffs, inst));
      kkt_points.push_back(f.coords);
    }
  }
  res.kkt_residual = detail::hull_distance(kkt_points, inst.c);
  return res;
}

/// Settings for the convenience front end; unset values follow the rank defaults.
struct SolveOptions {
  double epsilon = 1e-3;
  std::optional<double> e_bar;
  std::optional<int> max_iters;
  std::optional<OracleConfig> oracle;
  double rank_cutoff = kDefaultRankCutoff;
};

/// Convex-roof lower bound of `measure` at rho. Rank-1 states are evaluated directly.
inline CcpaResult solve_convex_roof(const DensityMatrix& rho, const PureStateMeasure& measure,
                                    const SolveOptions& opt = {}) {
  const auto inst = build_instance(rho, measure, opt.rank_cutoff);
  if (inst.rank == 1) {
    const std::vector<cplx> one = {1.0};
    const auto phi = embed_pure(one, inst);
    CcpaResult res;
    res.lower_bound = measure.evaluate(phi);
    res.witness_coords = {-res.lower_bound};
    const auto wit = witness_from_solution(res.witness_coords, inst);
    res.witness_matrix = wit.matrix;
    res.witness_objective = wit.objective;
    res.termination = Termination::converged;
    res.active_states.push_back(phi);
    res.kkt_residual = 0.0;
    return res;
  }
  const OracleConfig cfg = opt.oracle.value_or(OracleConfig::for_rank(inst.rank));
  return run(inst, opt.epsilon, opt.e_bar.value_or(1.0 + inst.c_norm()), opt.max_iters.value_or(default_max_iters(inst.rank)),
             cfg);
}

// ---------------------------------------------------------------------------

/// Smallest average measure over random pure-state decompositions of rho.
/// Each decomposition mixes the eigen-decomposition with a Haar isometry of
/// size L x r, L uniform in [r, 2r]; the result bounds the convex roof from above.
inline double upper_bound_random_decomposition(const DensityMatrix& rho, const PureStateMeasure& measure, int samples,
                                               std::uint64_t seed) {
  if (samples < 1) throw InputError("upper_bound_random_decomposition: samples must be >= 1");
  const auto inst = build_instance(rho, measure);
  const int r = inst.rank;
  const int n = inst.eigenvectors.rows();
  if (r == 1) return measure.evaluate(inst.eigenvectors.column(0));
  Rng rng(seed);
  std::uniform_int_distribution<int> size_pick(r, 2 * r);
  std::vector<double> sqrt_l(r);
  for (int k = 0; k < r; ++k) sqrt_l[k] = std::sqrt(inst.eigenvalues[k]);
  double best = std::numeric_limits<double>::infinity();
  std::vector<cplx> amps(n);
  for (int s = 0; s < samples; ++s) {
    const int L = size_pick(rng);
    const auto u = haar_isometry(L, r, rng);
    double avg = 0.0;
    for (int l = 0; l < L; ++l) {
      double weight = 0.0;
      for (int i = 0; i < n; ++i) {
        cplx a = 0.0;
        for (int k = 0; k < r; ++k) a += u(l, k) * sqrt_l[k] * inst.eigenvectors(i, k);
        amps[i] = a;
        weight += std::norm(a);
      }
      if (weight < 1e-300) continue;
      const double inv = 1.0 / std::sqrt(weight);
      for (auto& a : amps) a *= inv;
      avg += weight * measure.evaluate(amps);
    }
    best = std::min(best, avg);
  }
  return best;
}

}  // namespace croof

#pragma once

// Dense LP for the cutting-plane master programs:
//
//   max y  over (x, y) in R^n x R
//   s.t.   objective cuts    <a, x> + g y <= b      (g > 0)
//          feasibility cuts  <a, x> + g y >= b      (g < 0)
//          -B <= x_j <= B
//
// Solved by a bounded-variable primal simplex written in active-set form: the
// nonbasic set is a list of n + 1 tight constraints (a cut, a bound on x_j, or
// "x_j still at its starting value 0"), and the basis inverse is the inverse
// of the matrix of their gradients. Bland's rule (smallest index) picks both
// the entering and the leaving constraint, with x_j indexed j, y indexed n and
// the slack of cut i indexed n + 1 + i.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "croof/errors.hpp"

namespace croof::lp {

inline constexpr double kPivotTol = 1e-11;
inline constexpr double kFeasTol = 1e-9;
inline constexpr double kOptTol = 1e-11;

struct LinearCut {
  enum class Kind { objective, feasibility };

  Kind kind = Kind::objective;
  std::vector<double> normal;
  double offset = 0.0;
  double y_coeff = 0.0;

  /// <c, x> + y |c| <= bound
  static LinearCut objective_cut(std::span<const double> c, double bound) {
    return {Kind::objective, {c.begin(), c.end()}, bound, norm2(c)};
  }

  /// <psi, x> - y |psi| >= -value
  static LinearCut feasibility_cut(std::span<const double> psi, double value) {
    return {Kind::feasibility, {psi.begin(), psi.end()}, -value, -norm2(psi)};
  }

  /// Residual of the cut at (x, y); >= 0 means satisfied.
  double slack(std::span<const double> x, double y) const {
    double s = y_coeff * y;
    for (std::size_t j = 0; j < normal.size(); ++j) s += normal[j] * x[j];
    return kind == Kind::objective ? offset - s : s - offset;
  }

  static double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double q : v) s += q * q;
    return std::sqrt(s);
  }
};

struct Solution {
  std::vector<double> x;
  double y = 0.0;
  int iterations = 0;
  double max_violation = 0.0;    // over cuts and box
  double min_multiplier = 0.0;   // dual feasibility certificate (>= -kOptTol at optimum)
};

/// Immutable: append_cut returns a new program sharing the existing cuts.
class MasterProgram {
 public:
  /// The Step-0 program: max y s.t. <c, x> + y |c| <= e_bar, |x_m| <= box.
  MasterProgram(std::span<const double> c, double box, double e_bar) : dim_(static_cast<int>(c.size())), box_(box), e_bar_(e_bar) {
    if (dim_ <= 0) throw InputError("MasterProgram: empty coordinate vector");
    if (!(box >= 0.0)) throw InputError("MasterProgram: box bound must be non-negative");
    if (!(LinearCut::norm2(c) > 0.0)) throw InputError("MasterProgram: c must be nonzero");
    cuts_.push_back(std::make_shared<const LinearCut>(LinearCut::objective_cut(c, e_bar)));
  }

  MasterProgram append_cut(LinearCut cut) const {
    if (static_cast<int>(cut.normal.size()) != dim_) throw InputError("append_cut: cut normal has wrong dimension");
    if (cut.kind == LinearCut::Kind::objective ? !(cut.y_coeff > 0.0) : !(cut.y_coeff < 0.0)) {
      throw InputError("append_cut: y coefficient has the wrong sign for the cut kind");
    }
    MasterProgram next = *this;
    next.cuts_.push_back(std::make_shared<const LinearCut>(std::move(cut)));
    return next;
  }

  int dimension() const noexcept { return dim_; }
  double box_bound() const noexcept { return box_; }
  double initial_bound() const noexcept { return e_bar_; }
  int num_cuts() const noexcept { return static_cast<int>(cuts_.size()); }
  const LinearCut& cut(int i) const { return *cuts_[i]; }

 private:
  int dim_;
  double box_;
  double e_bar_;
  std::vector<std::shared_ptr<const LinearCut>> cuts_;
};

inline MasterProgram append_cut(const MasterProgram& mp, LinearCut cut) { return mp.append_cut(std::move(cut)); }

namespace detail {

/// Dense square inverse by Gauss-Jordan with partial pivoting; false if singular.
inline bool invert(std::vector<double>& a, int n) {
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-14) return false;
    if (piv != col) {
      for (int k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    }
    const double d = 1.0 / a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] *= d;
      inv[col * n + k] *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      if (f == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  a.swap(inv);
  return true;
}

class ActiveSetSimplex {
 public:
  explicit ActiveSetSimplex(const MasterProgram& mp)
      : mp_(mp), n_(mp.dimension()), nz_(n_ + 1), m_(mp.num_cuts()), box_(mp.box_bound()) {
    // every cut as a <= row over z = (x, y)
    rows_.assign(static_cast<std::size_t>(m_) * nz_, 0.0);
    rhs_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const auto& c = mp.cut(i);
      const double sgn = c.kind == LinearCut::Kind::objective ? 1.0 : -1.0;
      for (int j = 0; j < n_; ++j) rows_[i * nz_ + j] = sgn * c.normal[j];
      rows_[i * nz_ + n_] = sgn * c.y_coeff;
      rhs_[i] = sgn * c.offset;
    }
  }

  Solution solve() {
    start_at_origin();
    const int max_iter = 100 * (m_ + nz_) + 1000;
    int since_refactor = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
      if (since_refactor >= 40) {
        refactor();
        since_refactor = 0;
      }
      // multipliers are row n of the inverse
      int pos = -1;
      double sigma = 0.0;
      int best_index = std::numeric_limits<int>::max();
      for (int p = 0; p < nz_; ++p) {
        const double mu = inv_[n_ * nz_ + p];
        const Entry& e = work_[p];
        bool eligible = false;
        double s = 1.0;
        if (e.kind == Kind::pin) {
          eligible = std::abs(mu) > kOptTol;
          s = mu > 0.0 ? -1.0 : 1.0;
        } else {
          eligible = mu < -kOptTol;
        }
        if (eligible && bland_index(e) < best_index) {
          best_index = bland_index(e);
          pos = p;
          sigma = s;
        }
      }
      if (pos < 0) return finish(iter);

      // d = -sigma * column pos of the inverse
      std::vector<double> d(nz_);
      double dmax = 0.0;
      for (int i = 0; i < nz_; ++i) {
        d[i] = -sigma * inv_[i * nz_ + pos];
        dmax = std::max(dmax, std::abs(d[i]));
      }
      const double piv_tol = kPivotTol * std::max(1.0, dmax);
      const Entry leaving = work_[pos];
      release(leaving);

      double best_t = std::numeric_limits<double>::infinity();
      Entry blocker{};
      int blocker_index = std::numeric_limits<int>::max();
      double blocker_rate = 0.0;
      auto consider = [&](double t, const Entry& e, double rate) {
        t = std::max(0.0, t);
        const int bi = bland_index(e);
        const double tie = 1e-12 * (1.0 + std::abs(best_t == std::numeric_limits<double>::infinity() ? t : best_t));
        if (t < best_t - tie || (std::abs(t - best_t) <= tie && bi < blocker_index)) {
          best_t = t;
          blocker = e;
          blocker_index = bi;
          blocker_rate = rate;
        }
      };
      for (int i = 0; i < m_; ++i) {
        if (row_active_[i]) continue;
        const double* g = &rows_[static_cast<std::size_t>(i) * nz_];
        double rate = 0.0, lhs = 0.0;
        for (int j = 0; j < nz_; ++j) {
          rate += g[j] * d[j];
          lhs += g[j] * z_[j];
        }
        if (rate > piv_tol) consider((rhs_[i] - lhs) / rate, Entry{Kind::row, i}, rate);
      }
      for (int j = 0; j < n_; ++j) {
        if (bound_[j] != Kind::none) continue;
        if (d[j] > piv_tol) consider((box_ - z_[j]) / d[j], Entry{Kind::upper, j}, d[j]);
        if (d[j] < -piv_tol) consider((z_[j] + box_) / -d[j], Entry{Kind::lower, j}, -d[j]);
      }
      if (!std::isfinite(best_t)) throw SolverError("master LP: unbounded direction", dump(iter));

      for (int i = 0; i < nz_; ++i) z_[i] += best_t * d[i];
      enter(blocker, pos);
      if (!replace_row(pos, gradient(blocker), blocker_rate)) {
        refactor();
      }
      ++since_refactor;
    }
    throw SolverError("master LP: iteration limit reached", dump(max_iter));
  }

 private:
  enum class Kind { none, row, lower, upper, pin };
  struct Entry {
    Kind kind = Kind::none;
    int index = -1;
  };

  int bland_index(const Entry& e) const { return e.kind == Kind::row ? n_ + 1 + e.index : e.index; }

  std::vector<double> gradient(const Entry& e) const {
    std::vector<double> g(nz_, 0.0);
    switch (e.kind) {
      case Kind::row:
        std::copy_n(&rows_[static_cast<std::size_t>(e.index) * nz_], nz_, g.begin());
        break;
      case Kind::upper:
      case Kind::pin:
        g[e.index] = 1.0;
        break;
      case Kind::lower:
        g[e.index] = -1.0;
        break;
      case Kind::none:
        break;
    }
    return g;
  }

  double target(const Entry& e) const {
    switch (e.kind) {
      case Kind::row:
        return rhs_[e.index];
      case Kind::upper:
      case Kind::lower:
        return box_;
      default:
        return 0.0;
    }
  }

  void release(const Entry& e) {
    if (e.kind == Kind::row) {
      row_active_[e.index] = false;
    } else {
      bound_[e.index] = Kind::none;
    }
  }

  void enter(const Entry& e, int pos) {
    if (e.kind == Kind::row) {
      row_active_[e.index] = true;
    } else {
      bound_[e.index] = e.kind;
    }
    work_[pos] = e;
  }

  void start_at_origin() {
    z_.assign(nz_, 0.0);
    row_active_.assign(m_, false);
    bound_.assign(n_, Kind::pin);
    work_.assign(nz_, Entry{});
    for (int j = 0; j < n_; ++j) work_[j] = Entry{Kind::pin, j};
    // y from the tightest cut at x = 0
    int first = -1;
    double y = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m_; ++i) {
      const double g = rows_[static_cast<std::size_t>(i) * nz_ + n_];
      if (g <= 0.0) continue;
      const double v = rhs_[i] / g;
      if (first < 0 || v < y - 1e-15 * (1.0 + std::abs(y))) {
        y = v;
        first = i;
      }
    }
    if (first < 0) throw SolverError("master LP: no cut bounds y from above");
    z_[n_] = y;
    enter(Entry{Kind::row, first}, n_);
    refactor();
  }

  /// Recompute the basis inverse and snap z onto the working constraints.
  void refactor() {
    std::vector<double> g(static_cast<std::size_t>(nz_) * nz_);
    for (int p = 0; p < nz_; ++p) {
      const auto row = gradient(work_[p]);
      std::copy(row.begin(), row.end(), g.begin() + static_cast<std::ptrdiff_t>(p) * nz_);
    }
    if (!invert(g, nz_)) throw SolverError("master LP: singular working set", dump(-1));
    inv_.swap(g);
    std::vector<double> z(nz_, 0.0);
    for (int i = 0; i < nz_; ++i) {
      double s = 0.0;
      for (int p = 0; p < nz_; ++p) s += inv_[i * nz_ + p] * target(work_[p]);
      z[i] = s;
    }
    z_.swap(z);
  }

  /// Sherman-Morrison update for replacing working row `pos` by `g_new`.
  bool replace_row(int pos, const std::vector<double>& g_new, double rate) {
    // denominator g_new . inv[:, pos] equals -sigma * rate up to sign; recompute for accuracy
    std::vector<double> col(nz_);
    double denom = 0.0;
    for (int i = 0; i < nz_; ++i) {
      col[i] = inv_[i * nz_ + pos];
      denom += g_new[i] * col[i];
    }
    if (std::abs(denom) < kPivotTol * std::max(1.0, std::abs(rate))) return false;
    // u^T inv, with u = g_new - g_old; g_old^T inv = e_pos^T
    std::vector<double> w(nz_, 0.0);
    for (int i = 0; i < nz_; ++i) {
      if (g_new[i] == 0.0) continue;
      for (int k = 0; k < nz_; ++k) w[k] += g_new[i] * inv_[i * nz_ + k];
    }
    w[pos] -= 1.0;
    for (int i = 0; i < nz_; ++i) {
      const double f = col[i] / denom;
      if (f == 0.0) continue;
      for (int k = 0; k < nz_; ++k) inv_[i * nz_ + k] -= f * w[k];
    }
    return true;
  }

  Solution finish(int iter) {
    refactor();
    Solution s;
    s.x.assign(z_.begin(), z_.begin() + n_);
    s.y = z_[n_];
    s.iterations = iter;
    double viol = 0.0;
    for (int j = 0; j < n_; ++j) viol = std::max(viol, std::abs(s.x[j]) - box_);
    for (int i = 0; i < m_; ++i) viol = std::max(viol, -mp_.cut(i).slack(s.x, s.y));
    s.max_violation = std::max(0.0, viol);
    double mu_min = std::numeric_limits<double>::infinity();
    for (int p = 0; p < nz_; ++p) {
      if (work_[p].kind == Kind::pin) continue;
      mu_min = std::min(mu_min, inv_[n_ * nz_ + p]);
    }
    s.min_multiplier = std::isfinite(mu_min) ? mu_min : 0.0;
    if (s.max_violation > kFeasTol) {
      throw SolverError("master LP: solution violates constraints by " + std::to_string(s.max_violation), dump(iter));
    }
    return s;
  }

  std::string dump(int iter) const {
    std::ostringstream os;
    os << "iteration " << iter << ", " << m_ << " cuts, dim " << n_ << ", box " << box_ << "\nworking set:";
    for (const auto& e : work_) {
      const char* k = e.kind == Kind::row ? "row" : e.kind == Kind::lower ? "lower" : e.kind == Kind::upper ? "upper" : "pin";
      os << ' ' << k << ':' << e.index;
    }
    os << "\nz:";
    for (double v : z_) os << ' ' << v;
    return os.str();
  }

  const MasterProgram& mp_;
  int n_, nz_, m_;
  double box_;
  std::vector<double> rows_, rhs_;
  std::vector<double> z_, inv_;
  std::vector<bool> row_active_;
  std::vector<Kind> bound_;
  std::vector<Entry> work_;
};

}  // namespace detail

/// Optimal (x, y) of the master program.
inline Solution solve(const MasterProgram& mp) { return detail::ActiveSetSimplex(mp).solve(); }

}  // namespace croof::lp

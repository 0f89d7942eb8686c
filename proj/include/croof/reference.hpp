#pragma once

// Closed-form three-tangle and pi-tangle curves for two three-qubit families:
//   ghz_w:  rho_p  = p [GHZ] + (1 - p) [W]
//   werner: rho'_p = p [GHZ] + (1 - p) I / 8

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "croof/qlinalg.hpp"
#include "croof/states.hpp"

namespace croof::reference {

enum class Family { ghz_w, werner };

inline std::string to_string(Family f) { return f == Family::ghz_w ? "ghz-w" : "werner"; }

inline Family family_from_string(const std::string& s) {
  if (s == "ghz-w" || s == "ghz_w") return Family::ghz_w;
  if (s == "werner") return Family::werner;
  throw InputError("unknown family '" + s + "' (expected ghz-w or werner)");
}

struct FamilyPoint {
  Family family;
  double p;

  FamilyPoint(Family f, double prob) : family(f), p(prob) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("family parameter p must lie in [0, 1]");
  }
};

struct Constants {
  double s = 8.0 * std::sqrt(6.0) / 9.0;
  double p0 = std::pow(s, 2.0 / 3.0) / (1.0 + std::pow(s, 2.0 / 3.0));
  double p1 = 0.5 + 1.0 / (2.0 * std::sqrt(1.0 + s * s));
  double p_w = 0.6955427;
  double p_b = 3.0 / 7.0;
};

inline const Constants& constants() {
  static const Constants k{};
  return k;
}

namespace detail {
inline void require_unit_interval(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("family parameter p must lie in [0, 1]");
}
}  // namespace detail

inline DensityMatrix state_ghz_w(double p) {
  detail::require_unit_interval(p);
  const ComplexMatrix m = ghz_state().projector() * cplx(p) + w_state().projector() * cplx(1.0 - p);
  return DensityMatrix({2, 2, 2}, m);
}

inline DensityMatrix state_werner(double p) {
  detail::require_unit_interval(p);
  const ComplexMatrix m = ghz_state().projector() * cplx(p) + ComplexMatrix::identity(8) * cplx((1.0 - p) / 8.0);
  return DensityMatrix({2, 2, 2}, m);
}

inline DensityMatrix family_state(const FamilyPoint& fp) {
  return fp.family == Family::ghz_w ? state_ghz_w(fp.p) : state_werner(fp.p);
}

/// |p^2 - s sqrt(p (1-p)^3)|, the three-tangle of the GHZ/W superposition with zero relative phase.
inline double tau3(double p) {
  const double s = constants().s;
  return std::abs(p * p - s * std::sqrt(p * std::pow(1.0 - p, 3)));
}

/// Linear interpolation from the point p1 to the GHZ endpoint.
inline double tau3_conv(double p, double p1) {
  const double s = constants().s;
  return (p - p1 + (1.0 - p) * (p1 * p1 - s * std::sqrt(p1 * std::pow(1.0 - p1, 3)))) / (1.0 - p1);
}

inline double tau_ghz_w(double p) {
  detail::require_unit_interval(p);
  const auto& k = constants();
  if (p <= k.p0) return 0.0;
  if (p <= k.p1) return tau3(p);
  return tau3_conv(p, k.p1);
}

inline double tau_werner(double p) {
  detail::require_unit_interval(p);
  const double pw = constants().p_w;
  return p <= pw ? 0.0 : (p - pw) / (1.0 - pw);
}

/// Monic quartic coefficients, ascending powers: c0 + c1 l + c2 l^2 + c3 l^3 + l^4.
inline std::array<double, 5> lambda_polynomial(double p) {
  const double q = std::pow(p * (1.0 - p), 1.5);
  const double r6 = std::sqrt(6.0);
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  const double c0 = -p * q / (6.0 * r6) - 41.0 / 648.0 * p4 + 149.0 / 648.0 * p3 - 13.0 / 54.0 * p2 + 7.0 / 81.0 * p -
                    1.0 / 81.0;
  const double c1 = q / (3.0 * r6) - 7.0 / 27.0 * p3 + 7.0 / 18.0 * p2 - p / 6.0 + 1.0 / 27.0;
  const double c2 = 5.0 / 36.0 * p2 - p / 9.0 + 2.0 / 9.0;
  return {c0, c1, c2, -1.0, 1.0};
}

inline std::complex<double> eval_polynomial(const std::array<double, 5>& c, std::complex<double> x) {
  std::complex<double> v = c[4];
  for (int k = 3; k >= 0; --k) v = v * x + c[k];
  return v;
}

/// All four roots of the quartic, from balanced companion-matrix eigenvalues
/// followed by a few Newton polishing steps.
inline std::array<std::complex<double>, 4> lambda_quartic(double p) {
  detail::require_unit_interval(p);
  const auto c = lambda_polynomial(p);
  Eigen::Matrix<double, 5, 1> coeffs;
  for (int k = 0; k < 5; ++k) coeffs(k) = c[k];
  Eigen::PolynomialSolver<double, 4> solver(coeffs);
  std::array<std::complex<double>, 4> roots{};
  for (int k = 0; k < 4; ++k) {
    std::complex<double> x = solver.roots()(k);
    for (int it = 0; it < 4; ++it) {
      std::complex<double> d = 4.0 * x * x * x + 3.0 * c[3] * x * x + 2.0 * c[2] * x + c[1];
      if (std::abs(d) < 1e-14) break;
      const std::complex<double> step = eval_polynomial(c, x) / d;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    roots[k] = x;
  }
  return roots;
}

inline double sum_abs_lambda(double p) {
  double s = 0.0;
  for (const auto& r : lambda_quartic(p)) s += std::abs(r);
  return s;
}

/// 5q^2 - 4q + 8 - 18 (sum |lambda_i(q)| - 1)^2, the bracket shared by all three pieces.
inline double pi_bracket(double q) {
  const double d = sum_abs_lambda(q) - 1.0;
  return 5.0 * q * q - 4.0 * q + 8.0 - 18.0 * d * d;
}

inline double pi_ghz_w(double p) {
  detail::require_unit_interval(p);
  const auto& k = constants();
  if (p <= k.p0) return (4.0 * (std::sqrt(5.0) - 1.0) * (k.p0 - p) + p * pi_bracket(k.p0)) / (9.0 * k.p0);
  if (p <= k.p1) return pi_bracket(p) / 9.0;
  return (p - k.p1 + (1.0 - p) * pi_bracket(k.p1) / 9.0) / (1.0 - k.p1);
}

/// Analytic convex-roof value where one is known.
inline std::optional<double> analytic_value(Family family, const std::string& measure, double p) {
  if (measure == "tau") return family == Family::ghz_w ? tau_ghz_w(p) : tau_werner(p);
  if (measure == "pi" && family == Family::ghz_w) return pi_ghz_w(p);
  return std::nullopt;
}

}  // namespace croof::reference

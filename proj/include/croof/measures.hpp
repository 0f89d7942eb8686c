#pragma once

// Pure-state entanglement quantifiers for two and three qubits.
//
// Three-qubit amplitudes use the library's little-endian convention:
// amplitude index = a + 2*b + 4*c for qubits A (0), B (1), C (2).

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>

#include "croof/qlinalg.hpp"

namespace croof {

inline constexpr double kClampTol = 1e-9;

enum class Party : int { A = 0, B = 1, C = 2 };

/// Rounding below zero is clamped; anything more negative is a bug.
inline double clamp_nonnegative(double v, const char* who) {
  if (v >= 0.0) return v;
  if (v >= -kClampTol) return 0.0;
  throw ConsistencyError(std::string(who) + ": value " + std::to_string(v) + " is negative beyond rounding");
}

namespace detail {

using Mat4 = std::array<cplx, 16>;

inline void require_dims(const Dims& dims, const Dims& want, const char* who) {
  if (dims != want) throw InputError(std::string(who) + ": unexpected subsystem dimensions");
}

inline void require_three_qubits(const PureState& psi, const char* who) { require_dims(psi.dims(), {2, 2, 2}, who); }

/// Qubit `first` and `second` kept, the third traced; returns the vectors
/// u_z (z = traced qubit value) with rho = sum_z u_z u_z^dagger, 4-vectors
/// indexed first + 2*second.
inline std::array<std::array<cplx, 4>, 2> pair_vectors(std::span<const cplx> amps, int first, int second) {
  const int third = 3 - first - second;
  std::array<std::array<cplx, 4>, 2> u{};
  for (int idx = 0; idx < 8; ++idx) {
    const int x = (idx >> first) & 1;
    const int y = (idx >> second) & 1;
    const int z = (idx >> third) & 1;
    u[z][x + 2 * y] = amps[idx];
  }
  return u;
}

/// tr of the squared single-qubit reduction of `party`.
inline double single_purity(std::span<const cplx> amps, int party) {
  double p0 = 0.0, p1 = 0.0;
  cplx off = 0.0;
  const int bit = 1 << party;
  for (int idx = 0; idx < 8; ++idx) {
    if (idx & bit) continue;
    p0 += std::norm(amps[idx]);
    p1 += std::norm(amps[idx | bit]);
    off += amps[idx] * std::conj(amps[idx | bit]);
  }
  return p0 * p0 + p1 * p1 + 2.0 * std::norm(off);
}

inline double bipartition_concurrence_sq(std::span<const cplx> amps, int party) {
  return std::max(0.0, 2.0 * (1.0 - single_purity(amps, party)));
}

/// Squared concurrence of rho = u0 u0^dagger + u1 u1^dagger. The Wootters
/// values are the singular values of T_ij = u_i^T (sy x sy) u_j, so
/// C^2 = (s1 - s2)^2 = |T|_F^2 - 2 |det T|.
inline double rank2_concurrence_sq(const std::array<std::array<cplx, 4>, 2>& u) {
  auto t = [](const std::array<cplx, 4>& a, const std::array<cplx, 4>& b) {
    return -a[0] * b[3] + a[1] * b[2] + a[2] * b[1] - a[3] * b[0];
  };
  const cplx t00 = t(u[0], u[0]);
  const cplx t01 = t(u[0], u[1]);
  const cplx t11 = t(u[1], u[1]);
  const double frob = std::norm(t00) + 2.0 * std::norm(t01) + std::norm(t11);
  const double det = std::abs(t00 * t11 - t01 * t01);
  return std::max(0.0, frob - 2.0 * det);
}

/// Negativity ||rho^{T_first}||_1 - 1 of the pair reduction.
inline double pair_negativity(const std::array<std::array<cplx, 4>, 2>& u) {
  Mat4 pt{};
  // rho[(x,y),(x',y')] lands at [(x',y),(x,y')] after transposing the first qubit.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int xp = 0; xp < 2; ++xp)
        for (int yp = 0; yp < 2; ++yp) {
          const int i = x + 2 * y, j = xp + 2 * yp;
          const cplx v = u[0][i] * std::conj(u[0][j]) + u[1][i] * std::conj(u[1][j]);
          pt[(xp + 2 * y) * 4 + (x + 2 * yp)] = v;
        }
  jacobi_hermitian(pt.data(), 4, nullptr);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::abs(pt[i * 4 + i].real());
  return std::max(0.0, s - 1.0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Three-qubit kernels on raw unit-norm amplitudes. No validation.

/// Unclamped residual tangle C^2_{A(BC)} - C^2_{AB} - C^2_{AC}.
inline double three_tangle_raw(std::span<const cplx> amps) {
  const double ca = detail::bipartition_concurrence_sq(amps, 0);
  const double cab = detail::rank2_concurrence_sq(detail::pair_vectors(amps, 0, 1));
  const double cac = detail::rank2_concurrence_sq(detail::pair_vectors(amps, 0, 2));
  return ca - cab - cac;
}

/// Unclamped pi-tangle (pi_A + pi_B + pi_C) / 3.
inline double pi_tangle_raw(std::span<const cplx> amps) {
  // For a pure state the one-vs-two negativity equals the bipartition concurrence.
  double single = 0.0;
  for (int q = 0; q < 3; ++q) single += detail::bipartition_concurrence_sq(amps, q);
  const double nab = detail::pair_negativity(detail::pair_vectors(amps, 0, 1));
  const double nac = detail::pair_negativity(detail::pair_vectors(amps, 0, 2));
  const double nbc = detail::pair_negativity(detail::pair_vectors(amps, 1, 2));
  return (single - 2.0 * (nab * nab + nac * nac + nbc * nbc)) / 3.0;
}

// ---------------------------------------------------------------------------

/// Two-qubit concurrence max{0, l1 - l2 - l3 - l4}, the l_i being square roots
/// of the eigenvalues of rho * rho_tilde, taken from sqrt(rho) rho_tilde sqrt(rho).
inline double concurrence_2q(const DensityMatrix& rho) {
  detail::require_dims(rho.dims(), {2, 2}, "concurrence_2q");
  const auto es = eigh(rho.matrix());
  ComplexMatrix sqrt_rho(4, 4);
  for (int k = 0; k < 4; ++k) {
    const double s = std::sqrt(std::max(0.0, es.values[k]));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) sqrt_rho(i, j) += s * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  ComplexMatrix flip(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const ComplexMatrix tilde = flip * rho.matrix().conjugate() * flip;
  ComplexMatrix r = sqrt_rho * tilde * sqrt_rho;
  // symmetrize away rounding
  r = (r + r.adjoint()) * cplx(0.5);
  auto w = eigvalsh(r);
  for (double v : w) {
    if (v < -1e-12) throw ConsistencyError("concurrence_2q: negative eigenvalue of rho*rho_tilde");
  }
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, w[3 - i]));
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// sqrt(2 (1 - tr rho_X^2)) for the single-qubit reduction of `part`.
inline double concurrence_bipartition(const PureState& psi, Party part) {
  detail::require_three_qubits(psi, "concurrence_bipartition");
  std::vector<int> traced;
  for (int q = 0; q < 3; ++q)
    if (q != static_cast<int>(part)) traced.push_back(q);
  const ComplexMatrix red = partial_trace(psi.projector(), psi.dims(), traced);
  const double purity = (red * red).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

inline double three_tangle(const PureState& psi) {
  detail::require_three_qubits(psi, "three_tangle");
  return std::min(1.0, clamp_nonnegative(three_tangle_raw(psi.amplitudes()), "three_tangle"));
}

/// ||rho^{T_partition}||_1 - 1, the partial transpose taken over every listed subsystem.
inline double negativity(const DensityMatrix& rho, std::span<const int> partition) {
  if (partition.empty()) throw InputError("negativity: empty partition");
  detail::check_subsystems(rho.dims(), partition, "negativity");
  if (partition.size() == rho.dims().size()) throw InputError("negativity: partition must be a proper subset");
  ComplexMatrix m = rho.matrix();
  for (int s : partition) m = partial_transpose(m, rho.dims(), s);
  return clamp_nonnegative(trace_norm(m) - 1.0, "negativity");
}

inline double negativity(const DensityMatrix& rho, std::initializer_list<int> partition) {
  return negativity(rho, std::span<const int>(partition.begin(), partition.size()));
}

inline double pi_tangle(const PureState& psi) {
  detail::require_three_qubits(psi, "pi_tangle");
  return clamp_nonnegative(pi_tangle_raw(psi.amplitudes()), "pi_tangle");
}

// ---------------------------------------------------------------------------

/// A continuous, non-negative, normalized pure-state monotone as seen by the
/// dual solver.
struct PureStateMeasure {
  std::string name;
  Dims dims;
  std::function<double(std::span<const cplx>)> kernel;
  double normalized_upper_bound = 1.0;

  /// Hot path: amplitudes are assumed unit-norm on `dims`. Values within
  /// rounding of the admissible range are clamped; others throw.
  double evaluate(std::span<const cplx> amps) const {
    const double v = kernel(amps);
    if (!(v >= -kClampTol && v <= normalized_upper_bound + kClampTol)) {
      throw MeasureNormalizationError(name + ": value " + std::to_string(v) + " outside [0, " +
                                      std::to_string(normalized_upper_bound) + "]");
    }
    return std::clamp(v, 0.0, normalized_upper_bound);
  }

  double evaluate(const PureState& psi) const {
    if (psi.dims() != dims) throw InputError(name + ": state has the wrong subsystem dimensions");
    return evaluate(psi.amplitudes());
  }
};

inline PureStateMeasure tau_measure() { return {"tau", {2, 2, 2}, three_tangle_raw, 1.0}; }
inline PureStateMeasure pi_measure() { return {"pi", {2, 2, 2}, pi_tangle_raw, 1.0}; }

inline PureStateMeasure measure_by_name(const std::string& name) {
  if (name == "tau") return tau_measure();
  if (name == "pi") return pi_measure();
  throw InputError("unknown measure '" + name + "' (expected tau or pi)");
}

}  // namespace croof

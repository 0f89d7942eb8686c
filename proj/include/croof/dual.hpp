#pragma once

// Finite-coordinate form of the convex-roof dual. A mixed state rho of rank r
// is restricted to its range H_rho; Hermitian operators on H_rho are expanded
// in an orthonormal basis {Z_m}, so the dual reads
//
//   -inf <c, x>   s.t.   E(psi) + <psi, x> >= 0  for unit psi in H_rho,
//                        |x_m| <= r (r - 1) lambda_max / lambda_min.

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "croof/measures.hpp"
#include "croof/qlinalg.hpp"

namespace croof {

inline constexpr double kDefaultRankCutoff = 1e-12;
inline constexpr double kMaxDiscardedMass = 1e-12;

struct DualInstance {
  int rank = 0;
  std::vector<double> eigenvalues;  // ascending, retained only
  ComplexMatrix eigenvectors;       // full dim x rank, orthonormal columns
  HermitianBasis basis;
  std::vector<double> c;
  double box_bound = 0.0;
  PureStateMeasure measure;
  Dims original_dims;
  DensityMatrix rho;

  int coord_dim() const noexcept { return rank * rank; }
  double c_norm() const {
    double s = 0.0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
  }
  double lambda_min() const { return eigenvalues.front(); }
  double lambda_max() const { return eigenvalues.back(); }
  /// Operator-norm radius containing every optimal witness.
  double ball_radius() const { return (rank - 1) * lambda_max() / lambda_min(); }
};

/// Eigenvalues below rank_cutoff * lambda_max are dropped. Dropping more than
/// 1e-12 total weight is refused rather than renormalized away.
inline DualInstance build_instance(const DensityMatrix& rho, const PureStateMeasure& measure,
                                   double rank_cutoff = kDefaultRankCutoff) {
  if (!(rank_cutoff > 0.0 && rank_cutoff < 1.0)) throw InputError("build_instance: rank_cutoff must lie in (0, 1)");
  if (rho.dims() != measure.dims) throw InputError("build_instance: state dimensions do not match the measure");
  const auto es = eigh(rho.matrix());
  const int n = rho.dim();
  const double threshold = rank_cutoff * es.values.back();
  std::vector<int> kept;
  double discarded = 0.0;
  for (int k = 0; k < n; ++k) {
    if (es.values[k] >= threshold && es.values[k] > 0.0) {
      kept.push_back(k);
    } else {
      discarded += std::abs(es.values[k]);
    }
  }
  if (kept.empty()) throw InputError("build_instance: state has rank 0");
  if (discarded > kMaxDiscardedMass) {
    throw InputError("build_instance: discarded eigenvalue mass " + std::to_string(discarded) +
                     " exceeds 1e-12; lower rank_cutoff");
  }
  const int r = static_cast<int>(kept.size());
  std::vector<double> lambda(r);
  ComplexMatrix vecs(n, r);
  for (int k = 0; k < r; ++k) {
    lambda[k] = es.values[kept[k]];
    for (int i = 0; i < n; ++i) vecs(i, k) = es.vectors(i, kept[k]);
  }
  const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  for (auto& l : lambda) l /= total;

  HermitianBasis basis = gell_mann_basis(r);
  // rho restricted to its range is diag(lambda) in the retained eigenbasis.
  std::vector<double> c(basis.size(), 0.0);
  for (int m = 0; m < basis.size(); ++m) {
    double s = 0.0;
    for (int k = 0; k < r; ++k) s += lambda[k] * basis[m](k, k).real();
    c[m] = s;
  }
  const double box = r * (r - 1) * lambda.back() / lambda.front();
  return DualInstance{r,     std::move(lambda), std::move(vecs), std::move(basis), std::move(c), box, measure,
                      rho.dims(), rho};
}

namespace detail {
inline void require_unit(std::span<const cplx> coeffs, int r, const char* who) {
  if (static_cast<int>(coeffs.size()) != r) throw InputError(std::string(who) + ": coefficient count must equal rank");
  if (std::abs(vector_norm(coeffs) - 1.0) > kNormTol) throw InputError(std::string(who) + ": coefficients not unit norm");
}
}  // namespace detail

/// sum_k coeffs_k |phi_k> on the full Hilbert space.
inline PureState embed_pure(std::span<const cplx> coeffs, const DualInstance& inst) {
  detail::require_unit(coeffs, inst.rank, "embed_pure");
  const int n = inst.eigenvectors.rows();
  std::vector<cplx> amps(n);
  for (int i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (int k = 0; k < inst.rank; ++k) s += inst.eigenvectors(i, k) * coeffs[k];
    amps[i] = s;
  }
  return PureState::normalized(inst.original_dims, std::move(amps));
}

/// Basis coordinates of the projector |a><a| on H_rho.
inline std::vector<double> pure_coords(std::span<const cplx> coeffs, const DualInstance& inst) {
  detail::require_unit(coeffs, inst.rank, "pure_coords");
  std::vector<double> out(inst.basis.size());
  for (int m = 0; m < inst.basis.size(); ++m) {
    const auto& z = inst.basis[m];
    cplx s = 0.0;
    for (int i = 0; i < inst.rank; ++i) {
      cplx row = 0.0;
      for (int j = 0; j < inst.rank; ++j) row += z(i, j) * coeffs[j];
      s += std::conj(coeffs[i]) * row;
    }
    out[m] = s.real();
  }
  return out;
}

struct Witness {
  ComplexMatrix matrix;  // on the full Hilbert space, zero off H_rho
  double objective = 0.0;  // tr(rho X)
};

/// Lifts sum_m x_m Z_m from H_rho to the full space.
inline Witness witness_from_solution(std::span<const double> x, const DualInstance& inst) {
  if (static_cast<int>(x.size()) != inst.coord_dim()) throw InputError("witness_from_solution: wrong coordinate count");
  const ComplexMatrix local = from_coords(x, inst.basis);
  const ComplexMatrix full = inst.eigenvectors * local * inst.eigenvectors.adjoint();
  ComplexMatrix herm = (full + full.adjoint()) * cplx(0.5);
  const double objective = (inst.rho.matrix() * herm).trace().real();
  return Witness{std::move(herm), objective};
}

/// Largest |eigenvalue| of the operator with coordinates x.
inline double operator_norm(std::span<const double> x, const DualInstance& inst) {
  const auto w = eigvalsh(from_coords(x, inst.basis));
  return std::max(std::abs(w.front()), std::abs(w.back()));
}

}  // namespace croof

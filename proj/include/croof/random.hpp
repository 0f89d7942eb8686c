#pragma once

// Haar-distributed states and unitaries from a caller-owned engine.

#include <cmath>
#include <random>
#include <vector>

#include "croof/qlinalg.hpp"

namespace croof {

using Rng = std::mt19937_64;

template <class Engine>
std::vector<cplx> gaussian_vector(int n, Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) {
    const double re = g(rng);
    const double im = g(rng);
    z = cplx(re, im);
  }
  return v;
}

/// Uniform (Haar) unit vector in C^n.
template <class Engine>
std::vector<cplx> haar_vector(int n, Engine& rng) {
  auto v = gaussian_vector(n, rng);
  const double norm = vector_norm(v);
  for (auto& z : v) z /= norm;
  return v;
}

template <class Engine>
PureState haar_state(const Dims& dims, Engine& rng) {
  return PureState(dims, haar_vector(total_dim(dims), rng));
}

/// rows x cols matrix with Haar-distributed orthonormal columns (rows >= cols),
/// from Gram-Schmidt on a Ginibre matrix.
template <class Engine>
ComplexMatrix haar_isometry(int rows, int cols, Engine& rng) {
  if (cols > rows) throw InputError("haar_isometry: need rows >= cols");
  ComplexMatrix q(rows, cols);
  for (int j = 0; j < cols; ++j) {
    auto v = gaussian_vector(rows, rng);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (int i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * v[i];
        for (int i = 0; i < rows; ++i) v[i] -= proj * q(i, k);
      }
    const double norm = vector_norm(v);
    for (int i = 0; i < rows; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

template <class Engine>
ComplexMatrix haar_unitary(int n, Engine& rng) {
  return haar_isometry(n, n, rng);
}

template <class Engine>
ComplexMatrix random_hermitian(int n, Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = g(rng);
    for (int j = i + 1; j < n; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      h(i, j) = cplx(re, im);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

}  // namespace croof

#pragma once

#include <cmath>
#include <vector>

#include "croof/qlinalg.hpp"

namespace croof {

/// (|000> + |111>) / sqrt(2)
inline PureState ghz_state() {
  std::vector<cplx> a(8);
  a[0] = a[7] = 1.0 / std::sqrt(2.0);
  return PureState({2, 2, 2}, std::move(a));
}

/// (|001> + |010> + |100>) / sqrt(3)
inline PureState w_state() {
  std::vector<cplx> a(8);
  a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
  return PureState({2, 2, 2}, std::move(a));
}

/// (|00> + |11>) / sqrt(2)
inline PureState bell_phi_plus() {
  std::vector<cplx> a(4);
  a[0] = a[3] = 1.0 / std::sqrt(2.0);
  return PureState({2, 2}, std::move(a));
}

inline PureState product_state(const std::vector<std::vector<cplx>>& factors) {
  Dims dims;
  for (const auto& f : factors) dims.push_back(static_cast<int>(f.size()));
  return PureState::normalized(std::move(dims), tensor_product(factors));
}

inline DensityMatrix maximally_mixed(const Dims& dims) {
  const int n = total_dim(dims);
  return DensityMatrix(dims, ComplexMatrix::identity(n) * cplx(1.0 / n));
}

}  // namespace croof

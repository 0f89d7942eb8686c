#pragma once

// Dense complex linear algebra for small tensor-product Hilbert spaces
// (total dimension up to a few dozen, in practice <= 8).
//
// Tensor factors are ordered little-endian: subsystem 0 is the fastest
// varying digit of a basis index, i = i_0 + d_0*(i_1 + d_1*(i_2 + ...)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "croof/errors.hpp"

namespace croof {

using cplx = std::complex<double>;
using Dims = std::vector<int>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}
  ComplexMatrix(int rows, int cols, std::vector<cplx> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (static_cast<long>(data_.size()) != checked_size(rows, cols)) {
      throw InputError("ComplexMatrix: entry count does not match rows*cols");
    }
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
  }

  /// |u><v|
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    ComplexMatrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  std::vector<cplx> column(int j) const {
    std::vector<cplx> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m = *this;
    for (auto& z : m.data_) z = std::conj(z);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Largest entrywise |M - M^dagger|; infinity for non-square matrices.
  double hermiticity_defect() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
      for (int j = i; j < cols_; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

  bool is_hermitian(double tol = kHermitianTol) const {
    return hermiticity_defect() <= tol * std::max(1.0, max_abs());
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("ComplexMatrix: product shape mismatch");
    ComplexMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (int j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  std::vector<cplx> apply(std::span<const cplx> v) const {
    if (static_cast<int>(v.size()) != cols_) throw InputError("ComplexMatrix: vector length mismatch");
    std::vector<cplx> out(rows_);
    for (int i = 0; i < rows_; ++i) {
      cplx s = 0.0;
      for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  /// Entrywise maximum distance.
  friend double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_shape(b);
    double d = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k) d = std::max(d, std::abs(a.data_[k] - b.data_[k]));
    return d;
  }

 private:
  static long checked_size(int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw InputError("ComplexMatrix: dimensions must be positive");
    return static_cast<long>(rows) * cols;
  }
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("ComplexMatrix: shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

/// Standard Kronecker product a (x) b; b's index varies fastest.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

inline int total_dim(const Dims& dims) {
  if (dims.empty()) throw InputError("empty subsystem dimension list");
  int n = 1;
  for (int d : dims) {
    if (d <= 0) throw InputError("subsystem dimensions must be positive");
    n *= d;
  }
  return n;
}

/// Operator on the joint space from per-subsystem factors, factor k acting on subsystem k.
inline ComplexMatrix tensor_product(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw InputError("tensor_product: no factors");
  ComplexMatrix m = factors.back();
  for (auto it = factors.rbegin() + 1; it != factors.rend(); ++it) m = kron(m, *it);
  return m;
}

inline std::vector<cplx> tensor_product(const std::vector<std::vector<cplx>>& factors) {
  if (factors.empty()) throw InputError("tensor_product: no factors");
  std::vector<cplx> v = factors.back();
  for (auto it = factors.rbegin() + 1; it != factors.rend(); ++it) {
    std::vector<cplx> next(v.size() * it->size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t k = 0; k < it->size(); ++k) next[i * it->size() + k] = v[i] * (*it)[k];
    v = std::move(next);
  }
  return v;
}

inline double vector_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// <u|v>
inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

class PureState {
 public:
  PureState(Dims dims, std::vector<cplx> amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (static_cast<int>(amps_.size()) != total_dim(dims_)) {
      throw InputError("PureState: amplitude count does not match subsystem dimensions");
    }
    if (std::abs(vector_norm(amps_) - 1.0) > kNormTol) throw InputError("PureState: amplitudes are not unit norm");
  }

  /// Rescales any nonzero vector to unit norm.
  static PureState normalized(Dims dims, std::vector<cplx> amplitudes) {
    const double n = vector_norm(amplitudes);
    if (!(n > 0.0)) throw InputError("PureState: zero vector cannot be normalized");
    for (auto& a : amplitudes) a /= n;
    return PureState(std::move(dims), std::move(amplitudes));
  }

  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx operator[](int i) const { return amps_[i]; }

  ComplexMatrix projector() const { return ComplexMatrix::outer(amps_, amps_); }

 private:
  Dims dims_;
  std::vector<cplx> amps_;
};

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic complex Jacobi rotations.

namespace detail {

/// In-place Jacobi on a row-major Hermitian n x n array. On exit the diagonal
/// of `a` holds the eigenvalues (unsorted); `v` (if non-null) holds the
/// eigenvectors as columns.
inline void jacobi_hermitian(cplx* a, int n, cplx* v) {
  if (v) {
    std::fill(v, v + n * n, cplx{});
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  double total = 0.0;
  for (int i = 0; i < n * n; ++i) total += std::norm(a[i]);
  const double threshold = 1e-14 * std::max(1.0, std::sqrt(total));
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(a[p * n + q]);
    if (std::sqrt(off) < threshold) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a[p * n + q];
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const cplx phase = apq / mag;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx sp = s * phase;
        const cplx sc = s * std::conj(phase);
        // A <- A J with J = [[c, s*phase], [-s*conj(phase), c]] on (p, q)
        for (int k = 0; k < n; ++k) {
          const cplx akp = a[k * n + p];
          const cplx akq = a[k * n + q];
          a[k * n + p] = c * akp - sc * akq;
          a[k * n + q] = sp * akp + c * akq;
        }
        // A <- J^dagger A
        for (int k = 0; k < n; ++k) {
          const cplx apk = a[p * n + k];
          const cplx aqk = a[q * n + k];
          a[p * n + k] = c * apk - sp * aqk;
          a[q * n + k] = sc * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();
        if (v) {
          for (int k = 0; k < n; ++k) {
            const cplx vkp = v[k * n + p];
            const cplx vkq = v[k * n + q];
            v[k * n + p] = c * vkp - sc * vkq;
            v[k * n + q] = sp * vkp + c * vkq;
          }
        }
      }
    }
  }
}

inline void require_hermitian(const ComplexMatrix& m, const char* who) {
  if (!m.square()) throw InputError(std::string(who) + ": matrix is not square");
  if (!m.is_hermitian()) throw InputError(std::string(who) + ": matrix is not Hermitian within tolerance");
}

}  // namespace detail

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns, matching `values`
};

inline EigenSystem eigh(const ComplexMatrix& m) {
  detail::require_hermitian(m, "eigh");
  const int n = m.rows();
  std::vector<cplx> a(m.data().begin(), m.data().end());
  std::vector<cplx> v(static_cast<std::size_t>(n) * n);
  detail::jacobi_hermitian(a.data(), n, v.data());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a[i * n + i].real() < a[j * n + j].real(); });
  EigenSystem es{std::vector<double>(n), ComplexMatrix(n, n)};
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    es.values[k] = a[src * n + src].real();
    for (int i = 0; i < n; ++i) es.vectors(i, k) = v[i * n + src];
  }
  return es;
}

inline std::vector<double> eigvalsh(const ComplexMatrix& m) {
  detail::require_hermitian(m, "eigvalsh");
  const int n = m.rows();
  std::vector<cplx> a(m.data().begin(), m.data().end());
  detail::jacobi_hermitian(a.data(), n, nullptr);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = a[i * n + i].real();
  std::sort(w.begin(), w.end());
  return w;
}

inline double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double w : eigvalsh(m)) s += std::abs(w);
  return s;
}

// ---------------------------------------------------------------------------

class DensityMatrix {
 public:
  DensityMatrix(Dims dims, ComplexMatrix matrix) : dims_(std::move(dims)), m_(std::move(matrix)) {
    const int n = total_dim(dims_);
    if (m_.rows() != n || m_.cols() != n) throw InputError("DensityMatrix: size does not match subsystem dimensions");
    if (m_.hermiticity_defect() > kHermitianTol) throw InputError("DensityMatrix: hermiticity violated");
    if (std::abs(m_.trace() - 1.0) > kHermitianTol) throw InputError("DensityMatrix: trace is not 1");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const cplx avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
        m_(i, j) = avg;
        m_(j, i) = std::conj(avg);
      }
    for (int i = 0; i < n; ++i) m_(i, i) = m_(i, i).real();
    if (eigvalsh(m_).front() < -kHermitianTol) throw InputError("DensityMatrix: PSD violated (negative eigenvalue)");
  }

  static DensityMatrix from_pure(const PureState& psi) { return DensityMatrix(psi.dims(), psi.projector()); }

  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  Dims dims_;
  ComplexMatrix m_;
};

namespace detail {

inline std::vector<int> strides(const Dims& dims) {
  std::vector<int> s(dims.size());
  int acc = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

inline void check_subsystems(const Dims& dims, std::span<const int> subsystems, const char* who) {
  for (std::size_t i = 0; i < subsystems.size(); ++i) {
    const int s = subsystems[i];
    if (s < 0 || s >= static_cast<int>(dims.size())) {
      throw InputError(std::string(who) + ": subsystem index " + std::to_string(s) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (subsystems[j] == s) throw InputError(std::string(who) + ": repeated subsystem index");
  }
}

}  // namespace detail

/// Reduced operator on the subsystems not listed in `traced` (kept in original order).
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::span<const int> traced) {
  detail::check_subsystems(dims, traced, "partial_trace");
  const int n = total_dim(dims);
  if (m.rows() != n || m.cols() != n) throw InputError("partial_trace: matrix size does not match dims");
  const auto stride = detail::strides(dims);
  std::vector<bool> is_traced(dims.size(), false);
  for (int s : traced) is_traced[s] = true;
  Dims kept_dims;
  std::vector<int> kept, gone;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) (is_traced[k] ? gone : kept).push_back(k);
  for (int k : kept) kept_dims.push_back(dims[k]);
  if (kept.empty()) {
    ComplexMatrix scalar(1, 1);
    scalar(0, 0) = m.trace();
    return scalar;
  }
  const int nk = total_dim(kept_dims);
  int ng = 1;
  for (int k : gone) ng *= dims[k];

  // Offsets in the full index for every kept / traced multi-index.
  auto offsets = [&](const std::vector<int>& subs, int count) {
    std::vector<int> off(count, 0);
    for (int idx = 0; idx < count; ++idx) {
      int rem = idx, o = 0;
      for (int s : subs) {
        o += (rem % dims[s]) * stride[s];
        rem /= dims[s];
      }
      off[idx] = o;
    }
    return off;
  };
  const auto koff = offsets(kept, nk);
  const auto goff = offsets(gone, ng);

  ComplexMatrix out(nk, nk);
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < nk; ++j) {
      cplx s = 0.0;
      for (int g = 0; g < ng; ++g) s += m(koff[i] + goff[g], koff[j] + goff[g]);
      out(i, j) = s;
    }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced) {
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), traced);
  Dims kept;
  for (int k = 0; k < static_cast<int>(rho.dims().size()); ++k)
    if (std::find(traced.begin(), traced.end(), k) == traced.end()) kept.push_back(rho.dims()[k]);
  if (kept.empty()) kept.push_back(1);
  return DensityMatrix(std::move(kept), std::move(reduced));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> traced) {
  return partial_trace(rho, std::span<const int>(traced.begin(), traced.size()));
}

/// Transpose of the tensor factor `subsystem` only.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims, int subsystem) {
  const int sub[1] = {subsystem};
  detail::check_subsystems(dims, sub, "partial_transpose");
  const int n = total_dim(dims);
  if (m.rows() != n || m.cols() != n) throw InputError("partial_transpose: matrix size does not match dims");
  const int stride = detail::strides(dims)[subsystem];
  const int d = dims[subsystem];
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const int di = (i / stride) % d;
    for (int j = 0; j < n; ++j) {
      const int dj = (j / stride) % d;
      // swap the subsystem digits of row and column
      const int i2 = i + (dj - di) * stride;
      const int j2 = j + (di - dj) * stride;
      out(i2, j2) = m(i, j);
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, int subsystem) {
  return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

// ---------------------------------------------------------------------------
// Orthonormal Hermitian operator bases.

class HermitianBasis {
 public:
  HermitianBasis(int dim, std::vector<ComplexMatrix> elements) : dim_(dim), elems_(std::move(elements)) {
    if (dim <= 0) throw InputError("HermitianBasis: dimension must be positive");
    if (static_cast<int>(elems_.size()) != dim * dim) throw InputError("HermitianBasis: need dim^2 elements");
    for (const auto& z : elems_) {
      if (z.rows() != dim || z.cols() != dim) throw InputError("HermitianBasis: element has wrong size");
      if (!z.is_hermitian()) throw InputError("HermitianBasis: element is not Hermitian");
    }
  }

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(elems_.size()); }
  const ComplexMatrix& operator[](int m) const { return elems_[m]; }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elems_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> elems_;
};

/// Generalized Gell-Mann basis normalized to tr(Z_m Z_n) = delta_mn.
/// Order: I/sqrt(r), symmetric pairs (j<k), antisymmetric pairs (j<k), diagonal family.
inline HermitianBasis gell_mann_basis(int r) {
  if (r < 1) throw InputError("gell_mann_basis: r must be >= 1");
  std::vector<ComplexMatrix> e;
  e.reserve(static_cast<std::size_t>(r) * r);
  e.push_back(ComplexMatrix::identity(r) * cplx(1.0 / std::sqrt(double(r))));
  const double h = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k) {
      ComplexMatrix z(r, r);
      z(j, k) = h;
      z(k, j) = h;
      e.push_back(std::move(z));
    }
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k) {
      ComplexMatrix z(r, r);
      z(j, k) = cplx(0.0, -h);
      z(k, j) = cplx(0.0, h);
      e.push_back(std::move(z));
    }
  for (int l = 1; l < r; ++l) {
    ComplexMatrix z(r, r);
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int j = 0; j < l; ++j) z(j, j) = norm;
    z(l, l) = -l * norm;
    e.push_back(std::move(z));
  }
  return HermitianBasis(r, std::move(e));
}

/// Real expansion coefficients tr(Z_m H).
inline std::vector<double> to_coords(const ComplexMatrix& h, const HermitianBasis& basis) {
  const int r = basis.dim();
  if (h.rows() != r || h.cols() != r) throw InputError("to_coords: size mismatch with basis");
  detail::require_hermitian(h, "to_coords");
  std::vector<double> x(basis.size());
  for (int m = 0; m < basis.size(); ++m) {
    const auto& z = basis[m];
    cplx s = 0.0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) s += z(i, j) * h(j, i);
    if (std::abs(s.imag()) > kHermitianTol * std::max(1.0, h.max_abs()) * r) {
      throw ConsistencyError("to_coords: coefficient has non-negligible imaginary part");
    }
    x[m] = s.real();
  }
  return x;
}

inline ComplexMatrix from_coords(std::span<const double> x, const HermitianBasis& basis) {
  if (static_cast<int>(x.size()) != basis.size()) throw InputError("from_coords: coordinate length mismatch");
  const int r = basis.dim();
  ComplexMatrix h(r, r);
  for (int m = 0; m < basis.size(); ++m) {
    if (x[m] == 0.0) continue;
    const auto& z = basis[m];
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) h(i, j) += x[m] * z(i, j);
  }
  return h;
}

}  // namespace croof

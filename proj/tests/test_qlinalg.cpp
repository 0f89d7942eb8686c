#include <gtest/gtest.h>

#include <cmath>

#include "croof/qlinalg.hpp"
#include "croof/random.hpp"
#include "croof/states.hpp"

namespace croof {
namespace {

ComplexMatrix diag2(double a, double b) {
  const double d[2] = {a, b};
  return ComplexMatrix::diagonal(d);
}

DensityMatrix random_density(const Dims& dims, Rng& rng) {
  const int n = total_dim(dims);
  ComplexMatrix a(n, n);
  std::normal_distribution<double> nd;
  for (auto& z : a.data()) z = cplx(nd(rng), nd(rng));
  ComplexMatrix m = a * a.adjoint();
  m *= cplx(1.0 / m.trace().real());
  return DensityMatrix(dims, m);
}

TEST(PartialTrace, GhzReducesToMaximallyMixedQubit) {
  const auto rho = DensityMatrix::from_pure(ghz_state());
  const auto red = partial_trace(rho, {1, 2});
  EXPECT_LT(max_abs_diff(red.matrix(), diag2(0.5, 0.5)), 1e-15);
}

TEST(PartialTrace, ProductStateRecoversFactor) {
  Rng rng(3);
  const auto a = random_density({2}, rng);
  const auto b = random_density({2}, rng);
  const DensityMatrix ab({2, 2}, tensor_product({a.matrix(), b.matrix()}));
  EXPECT_LT(max_abs_diff(partial_trace(ab, {1}).matrix(), a.matrix()), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {0}).matrix(), b.matrix()), 1e-14);
}

TEST(PartialTrace, WStateTwoQubitReduction) {
  const auto red = partial_trace(DensityMatrix::from_pure(w_state()), {2});
  std::vector<cplx> psi_plus(4);
  psi_plus[1] = psi_plus[2] = 1.0 / std::sqrt(2.0);
  std::vector<cplx> zero(4);
  zero[0] = 1.0;
  const ComplexMatrix expected =
      ComplexMatrix::outer(zero, zero) * cplx(1.0 / 3.0) + ComplexMatrix::outer(psi_plus, psi_plus) * cplx(2.0 / 3.0);
  EXPECT_LT(max_abs_diff(red.matrix(), expected), 1e-15);
}

TEST(PartialTrace, ComposesAndPreservesTrace) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density({2, 2, 2}, rng);
    const auto once = partial_trace(rho, {1, 2});
    const auto twice = partial_trace(partial_trace(rho, {2}), {1});
    EXPECT_LT(max_abs_diff(once.matrix(), twice.matrix()), 1e-12);
    EXPECT_NEAR(once.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, RejectsBadIndex) {
  const auto rho = DensityMatrix::from_pure(ghz_state());
  EXPECT_THROW(partial_trace(rho, {3}), InputError);
  EXPECT_THROW(partial_trace(rho, {1, 1}), InputError);
}

TEST(PartialTranspose, BellStateSpectrum) {
  const auto rho = DensityMatrix::from_pure(bell_phi_plus());
  const auto w = eigvalsh(partial_transpose(rho, 0));
  EXPECT_NEAR(w[0], -0.5, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(w[i], 0.5, 1e-14);
  EXPECT_NEAR(trace_norm(partial_transpose(rho, 0)), 2.0, 1e-13);
}

TEST(PartialTranspose, ProductStateMatchesFactorTranspose) {
  Rng rng(5);
  const auto a = random_density({2}, rng);
  const auto b = random_density({2}, rng);
  const DensityMatrix ab({2, 2}, tensor_product({a.matrix(), b.matrix()}));
  const auto pt = partial_transpose(ab, 0);
  EXPECT_LT(max_abs_diff(pt, tensor_product({a.matrix().transpose(), b.matrix()})), 1e-15);
  EXPECT_GE(eigvalsh(pt).front(), -1e-14);
}

TEST(PartialTranspose, IsAnInvolutionAndHermitian) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto rho = random_density({2, 2, 2}, rng);
    for (int s = 0; s < 3; ++s) {
      const auto pt = partial_transpose(rho, s);
      EXPECT_TRUE(pt.is_hermitian());
      EXPECT_EQ(max_abs_diff(partial_transpose(pt, rho.dims(), s), rho.matrix()), 0.0);
    }
  }
  EXPECT_THROW(partial_transpose(DensityMatrix::from_pure(ghz_state()), 5), InputError);
}

TEST(TraceNorm, Basics) {
  Rng rng(2);
  EXPECT_NEAR(trace_norm(random_density({2, 2}, rng).matrix()), 1.0, 1e-13);
  EXPECT_NEAR(trace_norm(diag2(1.0, -1.0)), 2.0, 1e-15);
  ComplexMatrix bad(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(trace_norm(bad), InputError);
}

TEST(TraceNorm, DominatesAbsoluteTrace) {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto h = random_hermitian(6, rng);
    EXPECT_GE(trace_norm(h) + 1e-12, std::abs(h.trace().real()));
  }
}

TEST(Eigh, SmallExamples) {
  const auto half = eigh(ComplexMatrix::identity(2) * cplx(0.5));
  EXPECT_DOUBLE_EQ(half.values[0], 0.5);
  EXPECT_DOUBLE_EQ(half.values[1], 0.5);
  const auto d = eigh(diag2(0.1, 0.9));
  EXPECT_DOUBLE_EQ(d.values[0], 0.1);
  EXPECT_DOUBLE_EQ(d.values[1], 0.9);
  EXPECT_LT(max_abs_diff(d.vectors, ComplexMatrix::identity(2)), 1e-15);
}

TEST(Eigh, GhzWMixtureAtOneHalf) {
  const ComplexMatrix m = (ghz_state().projector() + w_state().projector()) * cplx(0.5);
  const auto w = eigvalsh(m);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(w[i], 0.0, 1e-14);
  EXPECT_NEAR(w[6], 0.5, 1e-14);
  EXPECT_NEAR(w[7], 0.5, 1e-14);
}

TEST(Eigh, ResidualAndReconstructionOnRandomMatrices) {
  Rng rng(99);
  for (int n = 1; n <= 8; ++n) {
    for (int t = 0; t < 10; ++t) {
      const auto m = random_hermitian(n, rng);
      const auto es = eigh(m);
      const double scale = std::max(1.0, m.frobenius_norm());
      for (int k = 0; k + 1 < n; ++k) EXPECT_LE(es.values[k], es.values[k + 1]);
      const auto vv = es.vectors.adjoint() * es.vectors;
      EXPECT_LT(max_abs_diff(vv, ComplexMatrix::identity(n)), 1e-8);
      for (int k = 0; k < n; ++k) {
        const auto col = es.vectors.column(k);
        const auto mv = m.apply(col);
        double res = 0.0;
        for (int i = 0; i < n; ++i) res = std::max(res, std::abs(mv[i] - es.values[k] * col[i]));
        EXPECT_LT(res, 1e-8 * scale);
      }
      const auto rec = es.vectors * ComplexMatrix::diagonal(es.values) * es.vectors.adjoint();
      EXPECT_LT(max_abs_diff(rec, m), 1e-8 * scale);
    }
  }
}

TEST(GellMann, SmallBases) {
  const auto b1 = gell_mann_basis(1);
  ASSERT_EQ(b1.size(), 1);
  EXPECT_DOUBLE_EQ(b1[0](0, 0).real(), 1.0);

  const double h = 1.0 / std::sqrt(2.0);
  const auto b2 = gell_mann_basis(2);
  ASSERT_EQ(b2.size(), 4);
  ComplexMatrix id(2, 2), sx(2, 2), sy(2, 2), sz(2, 2);
  id(0, 0) = id(1, 1) = h;
  sx(0, 1) = sx(1, 0) = h;
  sy(0, 1) = cplx(0, -h);
  sy(1, 0) = cplx(0, h);
  sz(0, 0) = h;
  sz(1, 1) = -h;
  EXPECT_LT(max_abs_diff(b2[0], id), 1e-15);
  EXPECT_LT(max_abs_diff(b2[1], sx), 1e-15);
  EXPECT_LT(max_abs_diff(b2[2], sy), 1e-15);
  EXPECT_LT(max_abs_diff(b2[3], sz), 1e-15);
}

TEST(GellMann, GramMatrixIsIdentity) {
  for (int r = 1; r <= 8; ++r) {
    const auto b = gell_mann_basis(r);
    ASSERT_EQ(b.size(), r * r);
    EXPECT_LT(max_abs_diff(b[0], ComplexMatrix::identity(r) * cplx(1.0 / std::sqrt(double(r)))), 1e-15);
    for (int m = 0; m < b.size(); ++m)
      for (int n = 0; n < b.size(); ++n) {
        const cplx g = (b[m] * b[n]).trace();
        EXPECT_NEAR(g.real(), m == n ? 1.0 : 0.0, 1e-10);
        EXPECT_NEAR(g.imag(), 0.0, 1e-10);
      }
  }
}

TEST(Coords, IdentityAndZero) {
  for (int r : {2, 3, 8}) {
    const auto b = gell_mann_basis(r);
    const auto x = to_coords(ComplexMatrix::identity(r) * cplx(1.0 / r), b);
    EXPECT_NEAR(x[0], 1.0 / std::sqrt(double(r)), 1e-15);
    for (int m = 1; m < b.size(); ++m) EXPECT_NEAR(x[m], 0.0, 1e-15);

    std::vector<double> zero(b.size(), 0.0);
    EXPECT_EQ(from_coords(zero, b).max_abs(), 0.0);
    std::vector<double> e0(b.size(), 0.0);
    e0[0] = 1.0;
    EXPECT_LT(max_abs_diff(from_coords(e0, b), b[0]), 1e-15);
  }
  EXPECT_THROW(to_coords(ComplexMatrix::identity(3), gell_mann_basis(2)), InputError);
}

TEST(Coords, ParsevalRoundtripAndProjectorNorm) {
  Rng rng(17);
  for (int r = 1; r <= 8; ++r) {
    const auto b = gell_mann_basis(r);
    for (int t = 0; t < 5; ++t) {
      const auto a = random_hermitian(r, rng);
      const auto c = random_hermitian(r, rng);
      const auto xa = to_coords(a, b);
      const auto xc = to_coords(c, b);
      double dot = 0.0;
      for (int m = 0; m < b.size(); ++m) dot += xa[m] * xc[m];
      EXPECT_NEAR(dot, (a * c).trace().real(), 1e-10);
      EXPECT_LT(max_abs_diff(from_coords(xa, b), a), 1e-10);

      const auto v = haar_vector(r, rng);
      const auto xp = to_coords(ComplexMatrix::outer(v, v), b);
      double n2 = 0.0;
      for (double q : xp) n2 += q * q;
      EXPECT_NEAR(std::sqrt(n2), 1.0, 1e-10);
    }
  }
}

TEST(DensityMatrix, NamesViolatedInvariant) {
  ComplexMatrix m = ComplexMatrix::identity(2) * cplx(0.5);
  m(0, 1) = 0.3;
  try {
    DensityMatrix({2}, m);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("hermiticity"), std::string::npos);
  }
  try {
    DensityMatrix({2}, ComplexMatrix::identity(2));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
  try {
    DensityMatrix({2}, diag2(1.5, -0.5));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("PSD"), std::string::npos);
  }
}

TEST(PureState, RejectsUnnormalized) {
  EXPECT_THROW(PureState({2}, {1.0, 1.0}), InputError);
  EXPECT_THROW(PureState({2, 2}, {1.0, 0.0}), InputError);
  EXPECT_NO_THROW(PureState::normalized({2}, {1.0, 1.0}));
}

}  // namespace
}  // namespace croof

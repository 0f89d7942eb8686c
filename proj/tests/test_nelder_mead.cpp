#include <gtest/gtest.h>

#include <cmath>

#include "croof/nelder_mead.hpp"

using croof::nelder_mead;
using croof::NelderMeadOptions;

TEST(NelderMead, Quadratic) {
  auto f = [](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * (x[i] - 0.5 * i) * (x[i] - 0.5 * i);
    return s;
  };
  NelderMeadOptions opt;
  opt.max_iterations = 5000;
  opt.f_tolerance = 1e-14;
  const auto r = nelder_mead(f, std::vector<double>(4, 1.0), opt);
  EXPECT_LT(r.f, 1e-10);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.x[i], 0.5 * i, 1e-4);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](const std::vector<double>& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.max_iterations = 5000;
  opt.f_tolerance = 1e-16;
  opt.initial_step = 0.5;
  const auto r = nelder_mead(f, {-1.2, 1.0}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, RespectsIterationCap) {
  int calls = 0;
  auto f = [&](const std::vector<double>& x) {
    ++calls;
    return x[0] * x[0] + x[1] * x[1];
  };
  NelderMeadOptions opt;
  opt.max_iterations = 3;
  opt.f_tolerance = 0.0;
  const auto r = nelder_mead(f, {5.0, 5.0}, opt);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_EQ(r.evaluations, calls);
}

TEST(NelderMead, Deterministic) {
  auto f = [](const std::vector<double>& x) { return std::cos(3 * x[0]) + x[1] * x[1] + 0.1 * x[0] * x[0]; };
  const auto a = nelder_mead(f, {0.3, 0.2});
  const auto b = nelder_mead(f, {0.3, 0.2});
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.f, b.f);
}

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

#include "cadence/noise.hpp"

using namespace cadence;

namespace {

double binom_sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST(Noise, BitErrorRates) {
  BitErrorRates z = bit_error_rates(0.0);
  EXPECT_EQ(z.eps_g, 0.0);
  EXPECT_EQ(z.eps_c, 0.0);
  EXPECT_EQ(z.eps_d, 0.0);

  BitErrorRates a = bit_error_rates(1.5e-4);
  EXPECT_DOUBLE_EQ(a.eps_g, 1.0e-4);
  EXPECT_DOUBLE_EQ(a.eps_c, 4.0e-5);
  EXPECT_DOUBLE_EQ(a.eps_d, 4.0e-5);
  EXPECT_DOUBLE_EQ(a.eps_c, 2.0 * a.eps_g / 5.0);

  BitErrorRates b = bit_error_rates(3e-3);
  EXPECT_DOUBLE_EQ(b.eps_g, 2e-3);
  EXPECT_DOUBLE_EQ(b.eps_c, 8e-4);
  EXPECT_DOUBLE_EQ(b.eps_d, 8e-4);

  EXPECT_THROW(bit_error_rates(-0.1), std::invalid_argument);
  EXPECT_THROW(bit_error_rates(1.1), std::invalid_argument);
}

TEST(Noise, MakeNoise) {
  NoiseParams n = make_noise(3e-3);
  EXPECT_DOUBLE_EQ(n.p_meas, 2e-3);
  EXPECT_DOUBLE_EQ(n.eps_g(), 2e-3);
  EXPECT_DOUBLE_EQ(3 * n.cnot_class(), 0.8 * 3e-3);
  EXPECT_EQ(make_noise(3e-3, false).p_meas, 0.0);
}

TEST(Noise, OneQubitFaultRate) {
  Rng zero(1);
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(sample_one_qubit_fault(zero, 0.0));

  for (auto [eps, p] : {std::pair{0.3, 0.2}, std::pair{1.0, 2.0 / 3.0}}) {
    Rng rng(42);
    const int n = 1000000;
    int k = 0;
    for (int i = 0; i < n; ++i) k += sample_one_qubit_fault(rng, eps);
    EXPECT_NEAR(double(k) / n, p, 3 * binom_sigma(p, n)) << "eps=" << eps;
  }
}

TEST(Noise, TwoQubitFaultClasses) {
  Rng zero(2);
  for (int i = 0; i < 1000; ++i) {
    XFault f = sample_two_qubit_fault(zero, 0.0);
    EXPECT_FALSE(f.control || f.target);
  }

  const double eps = 0.15;
  const int n = 1000000;
  Rng rng(7);
  int c_only = 0, t_only = 0, both = 0, ctl = 0;
  for (int i = 0; i < n; ++i) {
    XFault f = sample_two_qubit_fault(rng, eps);
    c_only += f.control && !f.target;
    t_only += !f.control && f.target;
    both += f.control && f.target;
    ctl += f.control;
  }
  const double p = 4 * eps / 15;  // 0.04
  EXPECT_NEAR(double(c_only) / n, p, 3 * binom_sigma(p, n));
  EXPECT_NEAR(double(t_only) / n, p, 3 * binom_sigma(p, n));
  EXPECT_NEAR(double(both) / n, p, 3 * binom_sigma(p, n));
  EXPECT_NEAR(double(ctl) / n, 8 * eps / 15, 3 * binom_sigma(8 * eps / 15, n));
}

TEST(Noise, FifteenPauliMultinomial) {
  const double eps = 0.3;
  const int n = 10000000;
  Rng rng(11);
  std::array<int, 16> counts{};
  for (int i = 0; i < n; ++i) ++counts[sample_two_qubit_pauli(rng, eps).index()];
  const double p = eps / 15;
  for (int k = 1; k < 16; ++k) EXPECT_NEAR(double(counts[k]) / n, p, 4 * binom_sigma(p, n)) << "class " << k;
  EXPECT_NEAR(double(counts[0]) / n, 1 - eps, 4 * binom_sigma(1 - eps, n));
}

TEST(Noise, GeometricGapMean) {
  for (double p : {0.5, 0.01}) {
    Rng rng(3);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double g = double(rng.geometric(p));
      sum += g;
      sum2 += g * g;
    }
    double mean = (1 - p) / p;
    double var = (1 - p) / (p * p);
    EXPECT_NEAR(sum / n, mean, 4 * std::sqrt(var / n)) << p;
  }
  Rng rng(4);
  EXPECT_EQ(rng.geometric(1.0), 0u);
  EXPECT_EQ(rng.geometric(0.0), std::numeric_limits<std::uint64_t>::max());
}

TEST(Noise, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t m : {0ull, 1ull, 12345ull})
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(m, i));
  EXPECT_EQ(seen.size(), 3000u);
  EXPECT_EQ(derive_seed(9, 9), derive_seed(9, 9));
}

TEST(Noise, UniformRange) {
  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

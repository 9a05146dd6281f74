#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/spectral.hpp"

using toda::JacobiMatrix;
using toda::SpectralData;

namespace {

const SpectralData kTwoSite{{-1.0, 1.0}, {0.5, 0.5}};

bool throws_code(const std::function<void()>& f, toda::ErrorCode code) {
  try {
    f();
  } catch (const toda::TodaError& e) {
    return e.code() == code;
  }
  return false;
}

double jacobi_gap(const JacobiMatrix& a, const JacobiMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.diag()[i] - b.diag()[i]));
  for (std::size_t i = 0; i + 1 < a.size(); ++i) d = std::max(d, std::abs(a.offdiag()[i] - b.offdiag()[i]));
  return d;
}

}  // namespace

TEST(DirectTransform, Examples) {
  const auto a = toda::direct_transform(JacobiMatrix({0.0, 0.0}, {1.0}));
  EXPECT_LE(oracle::max_abs_diff(a.z, {-1.0, 1.0}), 1e-15);
  EXPECT_LE(oracle::max_abs_diff(a.rho, {0.5, 0.5}), 1e-15);

  const auto b = toda::direct_transform(JacobiMatrix({1.25}, {}));
  EXPECT_EQ(b.z, std::vector<double>{1.25});
  EXPECT_EQ(b.rho, std::vector<double>{1.0});

  const auto c = toda::direct_transform(JacobiMatrix({0.0, 0.0, 0.0}, {1.0, 1.0}));
  EXPECT_LE(oracle::max_abs_diff(c.z, {-std::sqrt(2.0), 0.0, std::sqrt(2.0)}), 1e-14);
  EXPECT_LE(oracle::max_abs_diff(c.rho, {0.25, 0.5, 0.25}), 1e-14);
}

TEST(DirectTransform, ResolventOracleProperty) {
  auto g = oracle::rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto jm = oracle::random_jacobi(g, static_cast<std::size_t>(1 + trial % 8));
    const auto s = toda::direct_transform(jm);
    const auto m = toda::validate(s);
    EXPECT_TRUE(m.rat_n && m.rat_n_prime && m.interlaces);
    for (int j = 0; j < 5; ++j) {
      const std::complex<double> x{oracle::uniform(g, -4.0, 4.0), oracle::uniform(g, 0.1, 2.0)};
      const auto want = oracle::resolvent00(jm, x);
      EXPECT_LE(std::abs(toda::weyl_eval(s, x) - want), 1e-11 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(WeylEval, Examples) {
  EXPECT_NEAR(toda::weyl_eval(kTwoSite, 2.0), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(toda::weyl_eval(kTwoSite, 3.0), -3.0 / 8.0, 1e-15);
  const SpectralData one{{0.4}, {1.0}};
  EXPECT_NEAR(toda::weyl_eval(one, 2.0), 1.0 / (0.4 - 2.0), 1e-15);
  EXPECT_TRUE(throws_code([] { toda::weyl_eval(kTwoSite, 1.0); }, toda::ErrorCode::PoleEvaluation));
}

TEST(WeylEval, ThreeFormsAgreeProperty) {
  auto g = oracle::rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 8);
    const auto jm = oracle::random_jacobi(g, n);
    const auto s = toda::direct_transform(jm);
    const auto zeros = toda::gammas(s);
    for (int j = 0; j < 5; ++j) {
      const double x = oracle::uniform(g, -5.0, 5.0);
      const double a = toda::weyl_eval(s, x);
      const auto pq = toda::pq_polynomials(jm, x);
      const double b = -pq.Q[n] / pq.P[n];
      double c = -zeros.q0;
      for (double gm : zeros.gamma) c *= x - gm;
      for (double zk : s.z) c /= x - zk;
      const double scale = std::max(1.0, std::abs(a));
      EXPECT_LE(std::abs(a - b), 1e-8 * scale);
      EXPECT_LE(std::abs(a - c), 1e-8 * scale);
      EXPECT_LE(std::abs(b - c), 1e-8 * scale);
    }
  }
}

TEST(Gammas, Examples) {
  const auto a = toda::gammas(kTwoSite);
  ASSERT_EQ(a.gamma.size(), 1u);
  EXPECT_NEAR(a.gamma[0], 0.0, 1e-15);
  EXPECT_NEAR(a.q0, 1.0, 1e-15);

  const auto b = toda::gammas(SpectralData{{0.0, 2.0}, {0.25, 0.75}});
  EXPECT_NEAR(b.gamma[0], 0.5, 1e-15);
  EXPECT_NEAR(b.q0, 1.0, 1e-15);

  const auto c = toda::gammas(SpectralData{{0.3}, {0.7}});
  EXPECT_TRUE(c.gamma.empty());
  EXPECT_EQ(c.q0, 0.7);
}

TEST(Gammas, InterlaceProperty) {
  auto g = oracle::rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = toda::direct_transform(oracle::random_jacobi(g, static_cast<std::size_t>(2 + trial % 7)));
    const auto zeros = toda::gammas(s);
    ASSERT_EQ(zeros.gamma.size() + 1, s.size());
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      EXPECT_LT(s.z[k], zeros.gamma[k]);
      EXPECT_LT(zeros.gamma[k], s.z[k + 1]);
    }
  }
}

TEST(Moments, Examples) {
  const auto m = toda::moments(kTwoSite, 6);
  const std::vector<double> want{1.0, 0.0, 1.0, 0.0, 1.0, 0.0};
  EXPECT_LE(oracle::max_abs_diff(m.s, want), 1e-15);
  const auto one = toda::moments(SpectralData{{1.5}, {1.0}}, 4);
  for (std::size_t p = 0; p < 4; ++p) EXPECT_NEAR(one.s[p], std::pow(1.5, static_cast<double>(p)), 1e-14);
}

TEST(Moments, MatchMatrixPowersProperty) {
  auto g = oracle::rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const auto jm = oracle::random_jacobi(g, static_cast<std::size_t>(1 + trial % 6));
    const auto m = toda::moments(toda::direct_transform(jm), 8);
    EXPECT_NEAR(m.s[0], 1.0, 1e-13);
    for (int p = 0; p < 8; ++p) {
      const double want = oracle::matrix_power(jm.dense(), p)(0, 0);
      EXPECT_NEAR(m.s[static_cast<std::size_t>(p)], want, 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(InverseTransform, Examples) {
  const auto a = toda::inverse_transform(kTwoSite);
  EXPECT_LE(jacobi_gap(a, JacobiMatrix({0.0, 0.0}, {1.0})), 1e-15);
  const auto b = toda::inverse_transform(SpectralData{{0.8}, {1.0}});
  EXPECT_EQ(b, JacobiMatrix({0.8}, {}));
  EXPECT_TRUE(throws_code([] { toda::inverse_transform(SpectralData{{-1.0, 1.0}, {2.0, -1.0}}); },
                          toda::ErrorCode::NotInRatNPrime));
  EXPECT_TRUE(throws_code([] { toda::inverse_transform(SpectralData{{-1.0, 1.0}, {0.25, 0.25}}); },
                          toda::ErrorCode::NotInRatNPrime));
}

TEST(InverseTransform, RoundTripProperty) {
  auto g = oracle::rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 8);
    const auto jm = oracle::random_jacobi(g, n);
    const auto back = toda::inverse_transform(toda::direct_transform(jm));
    EXPECT_LE(jacobi_gap(back, jm), 1e-10 * (1.0 + jm.max_abs())) << "N = " << n;
  }
}

TEST(InverseTransform, ContinuedFractionAgreesProperty) {
  auto g = oracle::rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 5);
    const auto jm = oracle::random_jacobi(g, n);
    const auto s = toda::direct_transform(jm);
    EXPECT_LE(jacobi_gap(toda::inverse_transform_continued_fraction(s), jm), 1e-8 * (1.0 + jm.max_abs()));
  }
}

TEST(SpectralFromMoments, RecoversData) {
  auto g = oracle::rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 4);
    const auto s = oracle::random_spectral(g, n, -2.0, 2.0, 0.3);
    const auto back = toda::spectral_from_moments(toda::moments(s, 2 * n), n);
    EXPECT_LE(oracle::max_abs_diff(back.z, s.z), 1e-8);
    EXPECT_LE(oracle::max_abs_diff(back.rho, s.rho), 1e-8);
  }
}

TEST(Validate, Examples) {
  const auto a = toda::validate(kTwoSite);
  EXPECT_TRUE(a.rat_n);
  EXPECT_TRUE(a.rat_n_prime);
  EXPECT_TRUE(a.interlaces);

  const auto b = toda::validate(SpectralData{{-1.0, 1.0}, {2.0, -1.0}});
  EXPECT_TRUE(b.rat_n);
  EXPECT_FALSE(b.rat_n_prime);

  EXPECT_FALSE(toda::validate(SpectralData{{1.0, 1.0}, {0.5, 0.5}}).rat_n);
}

TEST(SpectralData, StateLayout) {
  const auto x = kTwoSite.zrho_state();
  ASSERT_EQ(x.size(), 4);
  EXPECT_EQ(x(0), -1.0);
  EXPECT_EQ(x(3), 0.5);
  const auto back = SpectralData::from_zrho_state(x);
  EXPECT_EQ(back.z, kTwoSite.z);
  EXPECT_EQ(back.rho, kTwoSite.rho);
  EXPECT_EQ(kTwoSite.q0(), 1.0);
}

TEST(WeylFunction, PartialFractionsRecoverData) {
  auto g = oracle::rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = oracle::random_spectral(g, static_cast<std::size_t>(1 + trial % 8));
    const auto pf = toda::weyl_function(s).partial_fractions();
    EXPECT_LE(oracle::max_abs_diff(pf.poles, s.z), 1e-10);
    EXPECT_LE(oracle::max_abs_diff(pf.rho, s.rho), 1e-10);
  }
}

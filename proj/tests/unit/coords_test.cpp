#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toda/coords.hpp"
#include "toda/errors.hpp"
#include "toda/flows.hpp"

using namespace toda;

namespace {

const SpectralData kTwoSite{{-1.0, 1.0}, {0.5, 0.5}};

bool throws_code(const std::function<void()>& f, ErrorCode code) {
  try {
    f();
  } catch (const TodaError& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST(ZqChart, Examples) {
  const auto c = zq_chart(kTwoSite);
  ASSERT_EQ(c.values.size(), 4u);
  EXPECT_EQ(c.values[0], -1.0);
  EXPECT_NEAR(c.values[2], -1.0, 1e-15);
  EXPECT_NEAR(c.values[3], 1.0, 1e-15);
  EXPECT_EQ(q_at_poles(SpectralData{{0.3}, {1.0}}), std::vector<double>{1.0});
}

TEST(ZqChart, NumeratorAndSignsProperty) {
  auto g = oracle::rng(81);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 7);
    const auto s = oracle::random_spectral(g, n);
    const auto q = q_at_poles(s);
    const auto zeros = gammas(s);
    const auto num = Polynomial::from_roots(zeros.gamma, zeros.q0);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(num(s.z[k]), q[k], 1e-10 * std::max(1.0, std::abs(q[k])));
      EXPECT_GT(q[k] * ((n - 1 - k) % 2 == 0 ? 1.0 : -1.0), 0.0);
    }
  }
}

TEST(ActionCoords, Examples) {
  EXPECT_EQ(action_coords(kTwoSite, WeightFn::power(0)), (std::vector<double>{-1.0, 1.0}));
  const auto a = action_coords(SpectralData{{1.0, 4.0}, {0.5, 0.5}}, WeightFn::power(1));
  EXPECT_EQ(a[0], 0.0);
  EXPECT_NEAR(a[1], std::log(4.0), 1e-15);
  const auto b = action_coords(SpectralData{{1.0, 2.0}, {0.5, 0.5}}, WeightFn::power(2));
  EXPECT_NEAR(b[0], -1.0, 1e-15);
  EXPECT_NEAR(b[1], -0.5, 1e-15);
  EXPECT_TRUE(throws_code([] { action_coords(kTwoSite, WeightFn::power(1)); }, ErrorCode::DomainViolation));
}

TEST(AngleCoords, Examples) {
  const auto t = angle_coords(kTwoSite);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0], 0.0, 1e-15);

  const auto s3 = direct_transform(JacobiMatrix({0.0, 0.0, 0.0}, {1.0, 1.0}));
  const auto t3 = angle_coords(s3);
  ASSERT_EQ(t3.size(), 2u);
  // q(z_k) = p'(z_k) rho_k: p' = 3z^2 - 2 at (-r2, 0, r2) gives (4, -2, 4) times (1/4, 1/2, 1/4).
  EXPECT_NEAR(t3[0], std::log(1.0), 1e-13);
  EXPECT_NEAR(t3[1], std::log(1.0), 1e-13);

  EXPECT_LE(oracle::max_abs_diff(angle_coords(exact_flow(s3, 1, 0.0)), t3), 1e-15);
  EXPECT_TRUE(throws_code([] { angle_coords(SpectralData{{-1.0, 1.0}, {2.0, -1.0}}); }, ErrorCode::SignViolation));
}

TEST(GammaPiChart, Examples) {
  const auto c = gamma_pi_chart(kTwoSite);
  ASSERT_EQ(c.values.size(), 2u);
  EXPECT_NEAR(c.values[0], 0.0, 1e-15);
  EXPECT_NEAR(c.values[1], 0.0, 1e-15);
  ASSERT_TRUE(c.casimirs.has_value());
  EXPECT_NEAR(c.casimirs->second, 0.0, 1e-15);
  EXPECT_NEAR(c.casimirs->first, 0.0, 1e-15);
  EXPECT_TRUE(throws_code([] { gamma_pi_chart(SpectralData{{-1.0, 1.0}, {2.0, -1.0}}); }, ErrorCode::SignViolation));
}

TEST(CasimirValues, MatchTraceAndDeterminant) {
  auto g = oracle::rng(82);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = oracle::random_spectral(g, 4, 0.5, 4.0);
    const auto jm = inverse_transform(s);
    const auto a1 = action_angle_chart(s, WeightFn::power(0));
    EXPECT_NEAR(a1.casimirs->first, jm.dense().trace(), 1e-12);
    const auto az = action_angle_chart(s, WeightFn::power(1));
    EXPECT_NEAR(az.casimirs->first, std::log(jm.dense().determinant()), 1e-11);
    const auto a2 = action_angle_chart(s, WeightFn::power(2));
    EXPECT_NEAR(a2.casimirs->first, -jm.dense().inverse().trace(), 1e-11);
  }
}

TEST(ChartJacobians, MatchFiniteDifferences) {
  auto g = oracle::rng(83);
  const auto one = WeightFn::power(0);
  const auto zed = WeightFn::power(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 4);
    const auto s = oracle::random_spectral(g, n, -3.0, 3.0, 0.3);
    const auto sp = oracle::random_spectral(g, n, 0.5, 6.0, 0.3);
    const auto x = s.zrho_state();
    auto check = [](const JacobianFn& jf, const StateMap& map, const Eigen::VectorXd& at) {
      const Eigen::MatrixXd a = jf(at);
      const Eigen::MatrixXd b = oracle::fd_jacobian(map, at);
      return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff());
    };
    EXPECT_LE(check(zq_jacobian(n), zq_map(n), x), 1e-7);
    EXPECT_LE(check(iy_jacobian(one, n), iy_map(one, n), x), 1e-7);
    EXPECT_LE(check(iy_jacobian(zed, n), iy_map(zed, n), sp.zrho_state()), 1e-7);
    EXPECT_LE(check(action_angle_jacobian(one, n), action_angle_map(one, n), x), 1e-7);
    EXPECT_LE(check(gamma_pi_jacobian(one, n), gamma_pi_map(one, n), x), 1e-7);
  }
}

TEST(VerifyCanonical, IyAndActionAngleCharts) {
  auto g = oracle::rng(84);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 4);
    for (int f = 0; f <= 2; ++f) {
      const auto wf = WeightFn::power(f);
      const auto s = f == 0 ? oracle::random_spectral(g, n) : oracle::random_spectral(g, n, 0.5, 6.0);
      const auto x = s.zrho_state();
      const auto iy = verify_canonical(iy_jacobian(wf, n), zrho_tensor(wf, n), x, canonical_pattern(ChartId::IY, n), 1e-6);
      EXPECT_TRUE(iy.pass) << "f = z^" << f << " deviation " << iy.max_deviation;
    }
    const auto s = oracle::random_spectral(g, n);
    const auto aa = verify_canonical(action_angle_jacobian(WeightFn::power(0), n),
                                     zrho_restricted_tensor(WeightFn::power(0), n), s.zrho_state(),
                                     canonical_pattern(ChartId::ActionAngle, n), 1e-6);
    EXPECT_TRUE(aa.pass) << aa.max_deviation;
  }
}

TEST(VerifyCanonical, FiniteDifferencePathOnWellSeparatedPoles) {
  auto g = oracle::rng(85);
  const auto s = oracle::random_spectral(g, 3, -3.0, 3.0, 0.8);
  const auto rep = verify_canonical(iy_map(WeightFn::power(0), 3), zrho_tensor(WeightFn::power(0), 3), s.zrho_state(),
                                    canonical_pattern(ChartId::IY, 3), 1e-6);
  EXPECT_TRUE(rep.pass) << rep.max_deviation;
}

TEST(VerifyCanonical, ZqBrackets) {
  auto g = oracle::rng(86);
  for (int f = 0; f <= 1; ++f) {
    const auto wf = WeightFn::power(f);
    const auto s = oracle::random_spectral(g, 4, 0.5, 6.0);
    const auto q = q_at_poles(s);
    Tensor expected = Tensor::Zero(8, 8);
    for (Eigen::Index k = 0; k < 4; ++k) {
      expected(4 + k, k) = wf(s.z[static_cast<std::size_t>(k)]) * q[static_cast<std::size_t>(k)];
      expected(k, 4 + k) = -expected(4 + k, k);
    }
    const auto rep = verify_canonical(zq_jacobian(4), zrho_tensor(wf, 4), s.zrho_state(), expected, 1e-10);
    EXPECT_TRUE(rep.pass) << rep.max_deviation;
  }
  EXPECT_TRUE(throws_code([] { canonical_pattern(ChartId::ZQ, 3); }, ErrorCode::InvalidInput));
}

TEST(VerifyCanonical, GammaPiHasReversedOrientation) {
  // Measured: {gamma_k, pi_n} = -delta and {Phi_1, Phi_2} = -1, so the
  // expected pattern fails by exactly 2 and its negative passes.
  auto g = oracle::rng(87);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 4);
    const auto s = oracle::random_spectral(g, n);
    const auto base = zrho_tensor(WeightFn::power(0), n);
    const Tensor pattern = canonical_pattern(ChartId::GammaPi, n);
    const auto as_stated = verify_canonical(gamma_pi_jacobian(WeightFn::power(0), n), base, s.zrho_state(), pattern, 1e-6);
    EXPECT_FALSE(as_stated.pass);
    EXPECT_NEAR(as_stated.max_deviation, 2.0, 1e-9);
    const auto flipped = verify_canonical(gamma_pi_jacobian(WeightFn::power(0), n), base, s.zrho_state(), -pattern, 1e-6);
    EXPECT_TRUE(flipped.pass) << flipped.max_deviation;
  }
}

TEST(AngleFlow, AnglesMoveLinearly) {
  auto g = oracle::rng(88);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = oracle::random_spectral(g, static_cast<std::size_t>(2 + trial % 4));
    const int k = 1 + trial % 3;
    const auto t0 = angle_coords(s);
    const auto t1 = angle_coords(exact_flow(s, k, 0.4));
    const auto t2 = angle_coords(exact_flow(s, k, 0.8));
    for (std::size_t j = 0; j < t0.size(); ++j) {
      EXPECT_NEAR(t2[j] - 2.0 * t1[j] + t0[j], 0.0, 1e-6);
      // Rate z_j^k - z_0^k.
      EXPECT_NEAR((t1[j] - t0[j]) / 0.4, std::pow(s.z[j + 1], k) - std::pow(s.z[0], k), 1e-9);
    }
  }
}

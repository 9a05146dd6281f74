#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
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

// [A, L] from dense matrices with A = (upper(L^k) - lower(L^k)) / 2.
Eigen::VectorXd dense_lax(const JacobiMatrix& jm, int k) {
  const Eigen::MatrixXd l = jm.dense();
  const Eigen::MatrixXd lk = oracle::matrix_power(l, k);
  const Eigen::MatrixXd a =
      (Eigen::MatrixXd(lk.triangularView<Eigen::StrictlyUpper>()) - Eigen::MatrixXd(lk.triangularView<Eigen::StrictlyLower>())) / 2.0;
  const Eigen::MatrixXd dl = a * l - l * a;
  const auto n = static_cast<Eigen::Index>(jm.size());
  Eigen::VectorXd out(2 * n - 1);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = dl(i, i);
  for (Eigen::Index i = 0; i + 1 < n; ++i) out(n + i) = dl(i, i + 1);
  return out;
}

double rel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST(Hamiltonian, Examples) {
  const JacobiMatrix jm({0.0, 0.0}, {1.0});
  EXPECT_NEAR(hamiltonian(jm, 1), 1.0, 1e-15);
  EXPECT_NEAR(hamiltonian(kTwoSite, 2), 0.0, 1e-15);
  auto g = oracle::rng(61);
  const auto r = oracle::random_jacobi(g, 5);
  EXPECT_NEAR(hamiltonian(r, 0), r.dense().trace(), 1e-13);
  for (int n = 0; n <= 3; ++n)
    EXPECT_NEAR(hamiltonian(r, n), hamiltonian(direct_transform(r), n), 1e-11 * (1.0 + std::abs(hamiltonian(r, n))));
}

TEST(Hamiltonian, GradientMatchesFiniteDifferences) {
  auto g = oracle::rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    const auto jm = oracle::random_jacobi(g, n);
    for (int k = 0; k <= 3; ++k) {
      auto h = [n, k](const Eigen::VectorXd& x) {
        return oracle::matrix_power(JacobiMatrix::from_cv_state(x, n).dense(), k + 1).trace() / (k + 1);
      };
      const auto fd = oracle::fd_gradient(h, jm.cv_state());
      EXPECT_LE(rel(hamiltonian_gradient(jm, k), fd), 1e-7) << "k = " << k;
    }
  }
}

TEST(Lax, GeneratorExample) {
  const auto a = lax_a(JacobiMatrix({0.0, 0.0}, {1.0}), 1);
  EXPECT_EQ(a(0, 1), 0.5);
  EXPECT_EQ(a(1, 0), -0.5);
  EXPECT_EQ(a(0, 0), 0.0);
}

TEST(Lax, RhsExamples) {
  const auto r = lax_rhs(JacobiMatrix({0.0, 0.0}, {1.0}), 1);
  EXPECT_NEAR(r(0), 1.0, 1e-15);
  EXPECT_NEAR(r(1), -1.0, 1e-15);
  EXPECT_NEAR(r(2), 0.0, 1e-15);
  const auto one = lax_rhs(JacobiMatrix({2.0}, {}), 1);
  ASSERT_EQ(one.size(), 1);
  EXPECT_EQ(one(0), 0.0);
}

TEST(Lax, MatchesDenseCommutatorProperty) {
  auto g = oracle::rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const auto jm = oracle::random_jacobi(g, static_cast<std::size_t>(2 + trial % 5));
    for (int k = 1; k <= 4; ++k) {
      const Eigen::VectorXd want = dense_lax(jm, k);
      EXPECT_LE((lax_rhs(jm, k) - want).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, want.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(Lax, FirstFlowIsTheToda) {
  auto g = oracle::rng(64);
  const auto jm = oracle::random_jacobi(g, 5);
  const auto r = lax_rhs(jm, 1);
  const auto v = jm.diag();
  const auto c = jm.offdiag();
  for (std::size_t k = 0; k < 5; ++k) {
    const double ck = k < 4 ? c[k] : 0.0;
    const double cm = k > 0 ? c[k - 1] : 0.0;
    EXPECT_NEAR(r(static_cast<Eigen::Index>(k)), ck * ck - cm * cm, 1e-14);
  }
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r(static_cast<Eigen::Index>(5 + k)), c[k] * (v[k + 1] - v[k]) / 2.0, 1e-14);
}

TEST(HamiltonianField, PZeroIsLaxFlow) {
  auto g = oracle::rng(65);
  for (int trial = 0; trial < 20; ++trial) {
    const auto jm = oracle::random_jacobi(g, static_cast<std::size_t>(2 + trial % 4));
    for (int k = 1; k <= 3; ++k) {
      const Eigen::VectorXd lax = lax_rhs(jm, k);
      EXPECT_LE(rel(hamiltonian_field(jm, k, 0), lax), 1e-10) << "k = " << k;
    }
  }
}

TEST(HamiltonianField, HigherBracketsGiveTwiceTheFlow) {
  // pi_1 grad H_(k-1) and pi_2 grad H_(k-2) agree with each other and equal
  // 2 pi_0 grad H_k. Measured, not corrected.
  auto g = oracle::rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    const auto jm = oracle::random_jacobi(g, static_cast<std::size_t>(2 + trial % 4));
    for (int k = 1; k <= 3; ++k) {
      const Eigen::VectorXd x0 = hamiltonian_field(jm, k, 0);
      EXPECT_LE(rel(hamiltonian_field(jm, k, 1), 2.0 * x0), 1e-10);
      if (k >= 2) EXPECT_LE(rel(hamiltonian_field(jm, k, 2), hamiltonian_field(jm, k, 1)), 1e-10);
    }
  }
  const auto jm = oracle::random_jacobi(g, 3);
  EXPECT_TRUE(throws_code([&] { hamiltonian_field(jm, 1, 2); }, ErrorCode::InvalidInput));
}

TEST(SpectralField, Examples) {
  const auto r = spectral_field(kTwoSite, 1);
  EXPECT_EQ(r(0), 0.0);
  EXPECT_EQ(r(1), 0.0);
  EXPECT_NEAR(r(2), -0.5, 1e-16);
  EXPECT_NEAR(r(3), 0.5, 1e-16);

  const auto fixed = spectral_field(SpectralData{{-1.0, 0.5, 2.0}, {1.0, 0.0, 0.0}}, 2);
  EXPECT_EQ(fixed.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SpectralField, ConservesNormalizationAndMatchesRestrictedTensor) {
  auto g = oracle::rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 4);
    const auto s = oracle::random_spectral(g, n, 0.5, 3.0);
    const auto x = s.zrho_state();
    for (int k = 1; k <= 3; ++k) {
      const Eigen::VectorXd field = spectral_field(s, k);
      EXPECT_LE(std::abs(field.tail(static_cast<Eigen::Index>(n)).sum()), 1e-14);
      // restricted(f = z^p) applied to grad H_(k-p), with grad H_m = (z^m, 0).
      for (int p = 0; p <= std::min(k, 2); ++p) {
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) grad(static_cast<Eigen::Index>(j)) = std::pow(s.z[j], k - p);
        const Eigen::VectorXd via = zrho_restricted_tensor(WeightFn::power(p), n).tensor(x) * grad;
        EXPECT_LE((via - field).cwiseAbs().maxCoeff(), 1e-13 * std::max(1.0, field.cwiseAbs().maxCoeff()))
            << "k = " << k << ", p = " << p;
      }
    }
  }
}

TEST(ExactFlow, Examples) {
  const auto a = exact_flow(kTwoSite, 1, std::log(2.0));
  EXPECT_NEAR(a.rho[0], 0.2, 1e-15);
  EXPECT_NEAR(a.rho[1], 0.8, 1e-15);
  EXPECT_EQ(a.z, kTwoSite.z);

  const auto same = exact_flow(kTwoSite, 1, 0.0);
  EXPECT_EQ(same.rho, kTwoSite.rho);

  const auto late = exact_flow(SpectralData{{-1.0, 0.0, 1.0}, {0.3, 0.3, 0.4}}, 1, 50.0);
  EXPECT_NEAR(late.rho[2], 1.0, 1e-10);
  EXPECT_NEAR(late.rho[0], 0.0, 1e-10);

  EXPECT_NO_THROW(exact_flow(SpectralData{{-3.0, 3.0}, {0.5, 0.5}}, 3, 100.0));
  EXPECT_TRUE(throws_code([] { exact_flow(SpectralData{{-3.0, 3.0}, {0.5, 0.5}}, 3, 1e308); }, ErrorCode::OverflowGuard));
  EXPECT_TRUE(throws_code([] { exact_flow(SpectralData{{-1.0, 1.0}, {2.0, -1.0}}, 1, 1.0); }, ErrorCode::NotInRatNPrime));
}

TEST(ExactFlow, SemigroupAndOdeProperty) {
  auto g = oracle::rng(68);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = oracle::random_spectral(g, static_cast<std::size_t>(1 + trial % 6));
    const int k = 1 + trial % 3;
    const double t1 = oracle::uniform(g, -1.0, 1.0), t2 = oracle::uniform(g, -1.0, 1.0);
    const auto a = exact_flow(exact_flow(s, k, t1), k, t2);
    const auto b = exact_flow(s, k, t1 + t2);
    EXPECT_LE(oracle::max_abs_diff(a.rho, b.rho), 1e-12);
    // Five-point difference in t reproduces the ODE right-hand side.
    double rate = 1.0;
    for (double z : s.z) rate = std::max(rate, std::pow(std::abs(z), k));
    const double h = 1e-3 / rate;
    const auto p1 = exact_flow(s, k, h), m1 = exact_flow(s, k, -h);
    const auto p2 = exact_flow(s, k, 2.0 * h), m2 = exact_flow(s, k, -2.0 * h);
    const auto field = spectral_field(s, k);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double d = (8.0 * (p1.rho[j] - m1.rho[j]) - (p2.rho[j] - m2.rho[j])) / (12.0 * h);
      const double want = field(static_cast<Eigen::Index>(s.size() + j));
      EXPECT_NEAR(d, want, 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Rk4, ZeroFieldAndGrid) {
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(3, 0.7);
  const auto traj = rk4([](const Eigen::VectorXd& x) { return Eigen::VectorXd::Zero(x.size()); }, x0, 0.3, 1.0,
                        Chart::CV, 2);
  ASSERT_EQ(traj.times.size(), 5u);
  EXPECT_EQ(traj.times.back(), 1.0);
  for (const auto& s : traj.states) EXPECT_EQ(s, x0);
  for (std::size_t i = 1; i < traj.times.size(); ++i) EXPECT_LT(traj.times[i - 1], traj.times[i]);

  EXPECT_TRUE(throws_code([&] { rk4([](const Eigen::VectorXd& x) { return x; }, x0, 0.0, 1.0, Chart::CV, 2); },
                          ErrorCode::InvalidInput));
  EXPECT_TRUE(throws_code(
      [&] { rk4([](const Eigen::VectorXd& x) { return Eigen::VectorXd(x.array().square()); }, x0, 0.1, 100.0, Chart::CV, 2); },
      ErrorCode::NonFiniteState));
}

TEST(Rk4, SpectralFieldMatchesExactFlow) {
  auto g = oracle::rng(69);
  const auto s = oracle::random_spectral(g, 4);
  const auto traj = rk4([](const Eigen::VectorXd& x) { return spectral_field(SpectralData::from_zrho_state(x), 1); },
                        s.zrho_state(), 1e-3, 1.0, Chart::ZRHO, 4);
  const auto exact = exact_flow(s, 1, 1.0);
  const auto end = SpectralData::from_zrho_state(traj.states.back());
  EXPECT_LE(oracle::max_abs_diff(end.rho, exact.rho), 1e-10);
}

TEST(Rk4, LaxFlowIsIsospectral) {
  FlowSpec spec;
  spec.method = FlowMethod::Rk4Lax;
  spec.t_final = 1.0;
  const auto traj = evolve(spec, JacobiMatrix({0.0, 0.0}, {1.0}));
  for (double d : traj.spectrum_drift) EXPECT_LE(d, 1e-9);
}

TEST(Evolve, LaxMatchesExactAndConserves) {
  auto g = oracle::rng(70);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial);
    const auto jm = oracle::random_jacobi(g, n);
    FlowSpec spec;
    spec.method = FlowMethod::Rk4Lax;
    spec.t_final = 5.0;
    spec.record_every = 500;
    const auto traj = evolve(spec, jm);
    for (double d : traj.spectrum_drift) EXPECT_LE(d, 1e-8);
    const auto end = direct_transform(JacobiMatrix::from_cv_state(traj.states.back(), n));
    const auto exact = exact_flow(direct_transform(jm), 1, 5.0);
    EXPECT_LE(oracle::max_abs_diff(end.rho, exact.rho), 1e-7);
    for (int h = 0; h <= 3; ++h) {
      const double h0 = hamiltonian(jm, h);
      EXPECT_NEAR(hamiltonian(JacobiMatrix::from_cv_state(traj.states.back(), n), h), h0, 1e-8 * std::max(1.0, std::abs(h0)));
    }
  }
}

TEST(Evolve, HamiltonianMethodAndSpectralStart) {
  auto g = oracle::rng(71);
  const auto jm = oracle::random_jacobi(g, 3);
  FlowSpec spec;
  spec.k = 2;
  spec.method = FlowMethod::Rk4Hamiltonian;
  spec.p = 0;
  spec.t_final = 0.5;
  const auto traj = evolve(spec, jm);
  const auto end = direct_transform(JacobiMatrix::from_cv_state(traj.states.back(), 3));
  const auto exact = exact_flow(direct_transform(jm), 2, 0.5);
  EXPECT_LE(oracle::max_abs_diff(end.rho, exact.rho), 1e-9);

  FlowSpec ex;
  ex.t_final = std::log(2.0);
  ex.dt = std::log(2.0);
  const auto et = evolve(ex, kTwoSite);
  EXPECT_EQ(et.chart, Chart::ZRHO);
  EXPECT_NEAR(et.states.back()(2), 0.2, 1e-15);

  FlowSpec zero;
  const auto z = evolve(zero, kTwoSite);
  ASSERT_EQ(z.times.size(), 1u);
  EXPECT_EQ(z.states[0], kTwoSite.zrho_state());

  FlowSpec bad;
  bad.method = FlowMethod::Rk4Hamiltonian;
  bad.k = 1;
  bad.p = 2;
  bad.t_final = 1.0;
  EXPECT_TRUE(throws_code([&] { evolve(bad, jm); }, ErrorCode::InvalidInput));
}

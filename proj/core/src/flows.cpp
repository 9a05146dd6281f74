#include "toda/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toda/errors.hpp"

namespace toda {

namespace {

constexpr double kOffPatternTol = 1e-12;

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, int k) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

void require_k(int k) {
  if (k < 1) raise(ErrorCode::InvalidInput, "hierarchy index k must be >= 1");
}

bool finite(const Eigen::VectorXd& x) { return x.allFinite(); }

double max_displacement(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Time grid shared by every method: steps of dt, the last one shortened.
std::size_t step_count(double dt, double t_final) {
  if (!(dt > 0.0)) raise(ErrorCode::InvalidInput, "dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) raise(ErrorCode::InvalidInput, "t_final must be finite and >= 0");
  const double steps = std::ceil(t_final / dt - 1e-9);
  return static_cast<std::size_t>(std::max(steps, 0.0));
}

double time_at(std::size_t i, std::size_t steps, double dt, double t_final) {
  return i == steps ? t_final : static_cast<double>(i) * dt;
}

}  // namespace

double hamiltonian(const SpectralData& s, int n) {
  if (n < 0) raise(ErrorCode::InvalidInput, "H_n needs n >= 0");
  double acc = 0.0;
  for (double z : s.z) acc += std::pow(z, n + 1);
  return acc / static_cast<double>(n + 1);
}

double hamiltonian(const JacobiMatrix& jm, int n) {
  SpectralData s;
  s.z = eigen(jm).values;
  return hamiltonian(s, n);
}

Eigen::VectorXd hamiltonian_gradient(const JacobiMatrix& jm, int n) {
  if (n < 0) raise(ErrorCode::InvalidInput, "H_n needs n >= 0");
  const auto nn = static_cast<Eigen::Index>(jm.size());
  const Eigen::MatrixXd ln = matrix_power(jm.dense(), n);
  Eigen::VectorXd g(2 * nn - 1);
  for (Eigen::Index i = 0; i < nn; ++i) g(i) = ln(i, i);
  for (Eigen::Index i = 0; i + 1 < nn; ++i) g(nn + i) = 2.0 * ln(i, i + 1);
  return g;
}

Eigen::MatrixXd lax_a(const JacobiMatrix& jm, int k) {
  require_k(k);
  const Eigen::MatrixXd lk = matrix_power(jm.dense(), k);
  Eigen::MatrixXd upper = lk.triangularView<Eigen::StrictlyUpper>();
  Eigen::MatrixXd lower = lk.triangularView<Eigen::StrictlyLower>();
  return (upper - lower) / 2.0;
}

Eigen::VectorXd lax_rhs(const JacobiMatrix& jm, int k) {
  const Eigen::MatrixXd l = jm.dense();
  const Eigen::MatrixXd a = lax_a(jm, k);
  const Eigen::MatrixXd comm = a * l - l * a;
  const auto nn = static_cast<Eigen::Index>(jm.size());
  const double scale = std::max(1.0, std::pow(jm.max_abs(), k + 1));
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = 0; j < nn; ++j)
      if (std::abs(i - j) >= 2 && std::abs(comm(i, j)) > kOffPatternTol * scale) {
        std::ostringstream os;
        os << "[A_" << k << ", L] has off-tridiagonal entry (" << i << "," << j << ") = " << comm(i, j);
        raise(ErrorCode::StructureViolation, os.str());
      }
  Eigen::VectorXd out(2 * nn - 1);
  for (Eigen::Index i = 0; i < nn; ++i) out(i) = comm(i, i);
  for (Eigen::Index i = 0; i + 1 < nn; ++i) out(nn + i) = comm(i, i + 1);
  return out;
}

Eigen::VectorXd hamiltonian_field(const JacobiMatrix& jm, int k, int p) {
  require_k(k);
  if (p < 0 || p > std::min(k, 2)) raise(ErrorCode::InvalidInput, "need 0 <= p <= min(k, 2)");
  const auto pi = pi_cv(p, jm.size());
  return pi.tensor(jm.cv_state()) * hamiltonian_gradient(jm, k - p);
}

Eigen::VectorXd spectral_field(const SpectralData& s, int k) {
  require_k(k);
  if (s.z.empty() || s.z.size() != s.rho.size()) raise(ErrorCode::InvalidInput, "malformed spectral data");
  const auto nn = static_cast<Eigen::Index>(s.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) mean += std::pow(s.z[i], k) * s.rho[i];
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out(nn + i) = (std::pow(s.z[u], k) - mean) * s.rho[u];
  }
  return out;
}

SpectralData exact_flow(const SpectralData& s, int k, double t) {
  require_k(k);
  if (!validate(s).rat_n_prime) raise(ErrorCode::NotInRatNPrime, "exact flow needs Rat_N' data");
  std::vector<double> expo(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    expo[i] = std::pow(s.z[i], k) * t + std::log(s.rho[i]);
    if (!std::isfinite(expo[i])) {
      std::ostringstream os;
      os << "exponent z_" << i << "^" << k << " t is not representable";
      raise(ErrorCode::OverflowGuard, os.str());
    }
  }
  const double top = *std::max_element(expo.begin(), expo.end());
  double total = 0.0;
  SpectralData out{s.z, std::vector<double>(s.size())};
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.rho[i] = std::exp(expo[i] - top);
    total += out.rho[i];
  }
  for (double& r : out.rho) r /= total;
  return out;
}

Trajectory rk4(const VectorField& field, const Eigen::VectorXd& initial, double dt, double t_final, Chart chart,
               std::size_t n, const DriftMonitor& monitor, std::size_t record_every) {
  const std::size_t steps = step_count(dt, t_final);
  if (record_every == 0) record_every = 1;
  Trajectory traj;
  traj.chart = chart;
  traj.n = n;
  auto record = [&](double t, const Eigen::VectorXd& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    const auto drift = monitor ? monitor(x) : std::pair<double, double>{0.0, 0.0};
    traj.sum_rho_drift.push_back(drift.first);
    traj.spectrum_drift.push_back(drift.second);
  };

  Eigen::VectorXd x = initial;
  record(0.0, x);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = time_at(i, steps, dt, t_final);
    const double t1 = time_at(i + 1, steps, dt, t_final);
    const double h = t1 - t0;
    const Eigen::VectorXd k1 = field(x);
    const Eigen::VectorXd k2 = field(x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = field(x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = field(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(x)) {
      std::ostringstream os;
      os << "state became non-finite at t = " << t1;
      raise(ErrorCode::NonFiniteState, os.str());
    }
    if ((i + 1) % record_every == 0 || i + 1 == steps) record(t1, x);
  }
  return traj;
}

Trajectory evolve(const FlowSpec& spec, const JacobiMatrix& initial) {
  const std::size_t n = initial.size();
  if (spec.method == FlowMethod::ExactSpectral) return evolve(spec, direct_transform(initial));

  const auto z0 = eigen(initial).values;
  DriftMonitor monitor = [n, z0](const Eigen::VectorXd& x) {
    // Off-diagonals that are no longer positive have left the Jacobi class.
    for (std::size_t i = n; i < 2 * n - 1; ++i)
      if (!(x(static_cast<Eigen::Index>(i)) > 0.0))
        return std::pair<double, double>{std::numeric_limits<double>::infinity(),
                                         std::numeric_limits<double>::infinity()};
    const auto s = direct_transform(JacobiMatrix::from_cv_state(x, n));
    return std::pair<double, double>{std::abs(s.q0() - 1.0), max_displacement(s.z, z0)};
  };
  VectorField field;
  if (spec.method == FlowMethod::Rk4Lax) {
    field = [n, k = spec.k](const Eigen::VectorXd& x) { return lax_rhs(JacobiMatrix::from_cv_state(x, n), k); };
  } else {
    if (spec.p < 0 || spec.p > std::min(spec.k, 2)) raise(ErrorCode::InvalidInput, "need 0 <= p <= min(k, 2)");
    field = [n, k = spec.k, p = spec.p](const Eigen::VectorXd& x) {
      return hamiltonian_field(JacobiMatrix::from_cv_state(x, n), k, p);
    };
  }
  try {
    return rk4(field, initial.cv_state(), spec.dt, spec.t_final, Chart::CV, n, monitor, spec.record_every);
  } catch (const TodaError& e) {
    // An intermediate stage with c <= 0 is a blow-up of the integration, not
    // bad user input.
    if (e.code() == ErrorCode::InvalidInput) raise(ErrorCode::NonFiniteState, e.what());
    throw;
  }
}

Trajectory evolve(const FlowSpec& spec, const SpectralData& initial) {
  if (spec.method != FlowMethod::ExactSpectral) return evolve(spec, inverse_transform(initial));
  require_k(spec.k);
  const std::size_t steps = step_count(spec.dt, spec.t_final);
  const std::size_t every = std::max<std::size_t>(spec.record_every, 1);
  Trajectory traj;
  traj.chart = Chart::ZRHO;
  traj.n = initial.size();
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i != 0 && i % every != 0 && i != steps) continue;
    const double t = time_at(i, steps, spec.dt, spec.t_final);
    const auto s = exact_flow(initial, spec.k, t);
    traj.times.push_back(t);
    traj.states.push_back(s.zrho_state());
    traj.sum_rho_drift.push_back(std::abs(s.q0() - 1.0));
    traj.spectrum_drift.push_back(0.0);
  }
  return traj;
}

}  // namespace toda

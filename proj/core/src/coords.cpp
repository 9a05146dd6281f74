#include "toda/coords.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toda/errors.hpp"

namespace toda {

namespace {

double sign_power(std::size_t e) { return e % 2 == 0 ? 1.0 : -1.0; }

double checked_log(double arg, const char* what, std::size_t k) {
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << what << " argument " << arg << " at index " << k << " is not positive";
    raise(ErrorCode::SignViolation, os.str());
  }
  return std::log(arg);
}

std::pair<double, double> casimir_values(const SpectralData& s, const WeightFn& f) {
  double phi1 = 0.0;
  for (double z : s.z) phi1 += f.antiderivative(z);
  return {phi1, std::log(s.q0())};
}

Eigen::VectorXd to_vector(const std::vector<double>& xs) {
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

// Rows d ln|q(z_k)| over the z-rho state.
Eigen::MatrixXd log_q_rows(const SpectralData& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == k) continue;
      const double inv = 1.0 / (s.z[ku] - s.z[static_cast<std::size_t>(m)]);
      d(k, k) += inv;
      d(k, m) -= inv;
    }
    d(k, n + k) = 1.0 / s.rho[ku];
  }
  return d;
}

Eigen::MatrixXd action_rows(const SpectralData& s, const WeightFn& f) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) d(k, k) = 1.0 / f(s.z[static_cast<std::size_t>(k)]);
  return d;
}

Eigen::RowVectorXd log_q0_row(const SpectralData& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::RowVectorXd d = Eigen::RowVectorXd::Zero(2 * n);
  d.tail(n).setConstant(1.0 / s.q0());
  return d;
}

}  // namespace

std::string to_string(ChartId id) {
  switch (id) {
    case ChartId::ZQ:
      return "ZQ";
    case ChartId::IY:
      return "IY";
    case ChartId::ActionAngle:
      return "ACTION_ANGLE";
    case ChartId::GammaPi:
      return "GAMMA_PI";
  }
  return "?";
}

std::vector<double> q_at_poles(const SpectralData& s) {
  if (s.z.empty() || s.z.size() != s.rho.size()) raise(ErrorCode::InvalidInput, "malformed spectral data");
  std::vector<double> q(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    double dp = 1.0;
    for (std::size_t m = 0; m < s.size(); ++m)
      if (m != k) dp *= s.z[k] - s.z[m];
    q[k] = dp * s.rho[k];
  }
  return q;
}

ChartValues zq_chart(const SpectralData& s) {
  ChartValues out{ChartId::ZQ, s.z, std::nullopt};
  const auto q = q_at_poles(s);
  out.values.insert(out.values.end(), q.begin(), q.end());
  return out;
}

std::vector<double> action_coords(const SpectralData& s, const WeightFn& f) {
  std::vector<double> out;
  out.reserve(s.size());
  for (double z : s.z) out.push_back(f.antiderivative(z));
  return out;
}

ChartValues iy_chart(const SpectralData& s, const WeightFn& f) {
  ChartValues out{ChartId::IY, action_coords(s, f), std::nullopt};
  for (double q : q_at_poles(s)) out.values.push_back(std::log(std::abs(q)));
  return out;
}

std::vector<double> angle_coords(const SpectralData& s) {
  const auto q = q_at_poles(s);
  std::vector<double> theta;
  theta.reserve(q.size() - 1);
  for (std::size_t k = 1; k < q.size(); ++k) theta.push_back(checked_log(sign_power(k) * q[k] / q[0], "angle", k));
  return theta;
}

ChartValues action_angle_chart(const SpectralData& s, const WeightFn& f) {
  ChartValues out{ChartId::ActionAngle, angle_coords(s), casimir_values(s, f)};
  const auto actions = action_coords(s, f);
  out.values.insert(out.values.end(), actions.begin(), actions.end());
  return out;
}

ChartValues gamma_pi_chart(const SpectralData& s, const WeightFn& f) {
  const auto member = validate(s);
  const bool positive = std::all_of(s.rho.begin(), s.rho.end(), [](double r) { return r > 0.0; });
  if (!member.rat_n || !positive || !member.interlaces)
    raise(ErrorCode::SignViolation, "gamma-pi chart needs positive residues and interlacing zeros");
  const auto zeros = gammas(s);
  const Polynomial p = weyl_denominator(s);
  const std::size_t n = s.size();
  ChartValues out{ChartId::GammaPi, zeros.gamma, casimir_values(s, f)};
  for (std::size_t k = 1; k < n; ++k)
    out.values.push_back(checked_log(sign_power(n + k) * p(zeros.gamma[k - 1]), "gamma-pi", k));
  return out;
}

StateMap zq_map(std::size_t n) {
  return [n](const Eigen::VectorXd& x) {
    (void)n;
    return to_vector(zq_chart(SpectralData::from_zrho_state(x)).values);
  };
}

StateMap iy_map(const WeightFn& f, std::size_t n) {
  return [f, n](const Eigen::VectorXd& x) {
    (void)n;
    return to_vector(iy_chart(SpectralData::from_zrho_state(x), f).values);
  };
}

StateMap action_angle_map(const WeightFn& f, std::size_t n) {
  return [f, n](const Eigen::VectorXd& x) {
    const auto s = SpectralData::from_zrho_state(x);
    const auto chart = action_angle_chart(s, f);
    // values = (theta_1..theta_{N-1}, I_0..I_{N-1}); drop I_0.
    Eigen::VectorXd out(static_cast<Eigen::Index>(2 * n));
    Eigen::Index i = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) out(i++) = chart.values[k];
    for (std::size_t k = 1; k < n; ++k) out(i++) = chart.values[n - 1 + k];
    out(i++) = chart.casimirs->first;
    out(i) = chart.casimirs->second;
    return out;
  };
}

StateMap gamma_pi_map(const WeightFn& f, std::size_t n) {
  return [f, n](const Eigen::VectorXd& x) {
    (void)n;
    const auto chart = gamma_pi_chart(SpectralData::from_zrho_state(x), f);
    auto values = chart.values;
    values.push_back(chart.casimirs->first);
    values.push_back(chart.casimirs->second);
    return to_vector(values);
  };
}

JacobianFn zq_jacobian(std::size_t n) {
  return [n](const Eigen::VectorXd& x) {
    const auto s = SpectralData::from_zrho_state(x);
    const auto nn = static_cast<Eigen::Index>(n);
    const auto q = to_vector(q_at_poles(s));
    Eigen::MatrixXd j(2 * nn, 2 * nn);
    j.topRows(nn) = Eigen::MatrixXd::Identity(nn, 2 * nn);
    j.bottomRows(nn) = q.asDiagonal() * log_q_rows(s);
    return j;
  };
}

JacobianFn iy_jacobian(const WeightFn& f, std::size_t n) {
  return [f, n](const Eigen::VectorXd& x) {
    const auto s = SpectralData::from_zrho_state(x);
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd j(2 * nn, 2 * nn);
    j.topRows(nn) = action_rows(s, f);
    j.bottomRows(nn) = log_q_rows(s);
    return j;
  };
}

JacobianFn action_angle_jacobian(const WeightFn& f, std::size_t n) {
  return [f, n](const Eigen::VectorXd& x) {
    const auto s = SpectralData::from_zrho_state(x);
    const auto nn = static_cast<Eigen::Index>(n);
    const Eigen::MatrixXd dy = log_q_rows(s);
    const Eigen::MatrixXd di = action_rows(s, f);
    Eigen::MatrixXd j(2 * nn, 2 * nn);
    for (Eigen::Index k = 1; k < nn; ++k) {
      j.row(k - 1) = dy.row(k) - dy.row(0);
      j.row(nn - 2 + k) = di.row(k);
    }
    j.row(2 * nn - 2) = di.colwise().sum();
    j.row(2 * nn - 1) = log_q0_row(s);
    return j;
  };
}

JacobianFn gamma_pi_jacobian(const WeightFn& f, std::size_t n) {
  return [f, n](const Eigen::VectorXd& x) {
    const auto s = SpectralData::from_zrho_state(x);
    const auto nn = static_cast<Eigen::Index>(n);
    const auto zeros = gammas(s);
    const Polynomial p = weyl_denominator(s);
    const Polynomial dp = p.derivative();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * nn, 2 * nn);
    for (Eigen::Index a = 0; a + 1 < nn; ++a) {
      const double g = zeros.gamma[static_cast<std::size_t>(a)];
      // gamma solves S(gamma) = sum rho_k / (gamma - z_k) = 0, so
      // d gamma = -(dS at fixed gamma) / S'(gamma).
      double ds = 0.0;
      for (std::size_t k = 0; k < n; ++k) ds -= s.rho[k] / ((g - s.z[k]) * (g - s.z[k]));
      Eigen::RowVectorXd dg(2 * nn);
      for (Eigen::Index k = 0; k < nn; ++k) {
        const double w = 1.0 / (g - s.z[static_cast<std::size_t>(k)]);
        dg(k) = -s.rho[static_cast<std::size_t>(k)] * w * w / ds;
        dg(nn + k) = -w / ds;
      }
      j.row(a) = dg;
      // pi = sum_m ln|gamma - z_m|.
      Eigen::RowVectorXd dpi = (dp(g) / p(g)) * dg;
      for (Eigen::Index m = 0; m < nn; ++m) dpi(m) -= 1.0 / (g - s.z[static_cast<std::size_t>(m)]);
      j.row(nn - 1 + a) = dpi;
    }
    j.row(2 * nn - 2) = action_rows(s, f).colwise().sum();
    j.row(2 * nn - 1) = log_q0_row(s);
    return j;
  };
}

Tensor canonical_pattern(ChartId id, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  Tensor t = Tensor::Zero(2 * nn, 2 * nn);
  auto unit = [&t](Eigen::Index i, Eigen::Index j) {
    t(i, j) = 1.0;
    t(j, i) = -1.0;
  };
  switch (id) {
    case ChartId::ZQ:
      raise(ErrorCode::InvalidInput, "the z-q chart is not canonical; compare {q(z_k), z_n} directly");
    case ChartId::IY:
      for (Eigen::Index k = 0; k < nn; ++k) unit(nn + k, k);
      break;
    case ChartId::ActionAngle:
      for (Eigen::Index k = 0; k + 1 < nn; ++k) unit(k, nn - 1 + k);
      break;
    case ChartId::GammaPi:
      for (Eigen::Index k = 0; k + 1 < nn; ++k) unit(k, nn - 1 + k);
      unit(2 * nn - 2, 2 * nn - 1);
      break;
  }
  return t;
}

CanonicalReport verify_canonical(const StateMap& chart, const PoissonStructure& structure,
                                 const Eigen::VectorXd& state, const Tensor& expected, double tol) {
  CanonicalReport rep;
  rep.measured = pushforward(structure, chart, state);
  rep.expected = expected;
  if (rep.measured.rows() != expected.rows() || rep.measured.cols() != expected.cols())
    raise(ErrorCode::InvalidInput, "expected pattern has the wrong dimension");
  rep.max_deviation = (rep.measured - expected).cwiseAbs().maxCoeff(&rep.worst_row, &rep.worst_col);
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

CanonicalReport verify_canonical(const JacobianFn& jacobian, const PoissonStructure& structure,
                                 const Eigen::VectorXd& state, const Tensor& expected, double tol) {
  CanonicalReport rep;
  const Eigen::MatrixXd j = jacobian(state);
  rep.measured = j * structure.tensor(state) * j.transpose();
  rep.expected = expected;
  if (rep.measured.rows() != expected.rows() || rep.measured.cols() != expected.cols())
    raise(ErrorCode::InvalidInput, "expected pattern has the wrong dimension");
  rep.max_deviation = (rep.measured - expected).cwiseAbs().maxCoeff(&rep.worst_row, &rep.worst_col);
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

}  // namespace toda

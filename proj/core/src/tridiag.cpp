#include "toda/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "toda/errors.hpp"

namespace toda {

namespace {

constexpr int kMaxQlIterations = 60;

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

JacobiMatrix::JacobiMatrix(std::vector<double> v, std::vector<double> c) : v_(std::move(v)), c_(std::move(c)) {
  if (v_.empty()) raise(ErrorCode::InvalidInput, "Jacobi matrix needs N >= 1");
  if (c_.size() + 1 != v_.size()) {
    std::ostringstream os;
    os << "off-diagonal length " << c_.size() << " does not match N-1 = " << v_.size() - 1;
    raise(ErrorCode::InvalidInput, os.str());
  }
  if (!all_finite(v_) || !all_finite(c_)) raise(ErrorCode::InvalidInput, "non-finite Jacobi entry");
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!(c_[k] > 0.0)) {
      std::ostringstream os;
      os << "off-diagonal c_" << k << " = " << c_[k] << " must be positive";
      raise(ErrorCode::InvalidInput, os.str());
    }
  }
}

double JacobiMatrix::closure() const noexcept {
  double prod = 1.0;
  for (double ck : c_) prod *= ck;
  return 1.0 / prod;
}

double JacobiMatrix::recurrence_coeff(std::size_t n) const noexcept {
  return n + 1 < v_.size() ? c_[n] : closure();
}

Eigen::MatrixXd JacobiMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = v_[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = c_[static_cast<std::size_t>(i)];
    m(i + 1, i) = c_[static_cast<std::size_t>(i)];
  }
  return m;
}

Eigen::VectorXd JacobiMatrix::cv_state() const {
  Eigen::VectorXd s(static_cast<Eigen::Index>(v_.size() + c_.size()));
  std::size_t i = 0;
  for (double x : v_) s(static_cast<Eigen::Index>(i++)) = x;
  for (double x : c_) s(static_cast<Eigen::Index>(i++)) = x;
  return s;
}

JacobiMatrix JacobiMatrix::from_cv_state(const Eigen::Ref<const Eigen::VectorXd>& state, std::size_t n) {
  if (static_cast<std::size_t>(state.size()) != 2 * n - 1)
    raise(ErrorCode::InvalidInput, "c-v state has the wrong dimension");
  std::vector<double> v(state.data(), state.data() + n);
  std::vector<double> c(state.data() + n, state.data() + 2 * n - 1);
  return JacobiMatrix(std::move(v), std::move(c));
}

double JacobiMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

JacobiMatrix flaschka(const PhasePoint& pt) {
  const std::size_t n = pt.q.size();
  if (n == 0 || pt.p.size() != n) raise(ErrorCode::InvalidInput, "phase point needs matching q and p, N >= 1");
  std::vector<double> v(n);
  std::vector<double> c(n - 1);
  for (std::size_t k = 0; k < n; ++k) v[k] = -pt.p[k];
  for (std::size_t k = 0; k + 1 < n; ++k) c[k] = std::exp(0.5 * (pt.q[k] - pt.q[k + 1]));
  return JacobiMatrix(std::move(v), std::move(c));
}

PhasePoint unflaschka(const JacobiMatrix& jm, double q0) {
  const std::size_t n = jm.size();
  PhasePoint pt{std::vector<double>(n), std::vector<double>(n)};
  pt.q[0] = q0;
  for (std::size_t k = 0; k + 1 < n; ++k) pt.q[k + 1] = pt.q[k] - 2.0 * std::log(jm.offdiag()[k]);
  for (std::size_t k = 0; k < n; ++k) pt.p[k] = -jm.diag()[k];
  return pt;
}

EigenDecomposition eigen(const JacobiMatrix& jm) {
  const std::size_t n = jm.size();
  std::vector<double> d(jm.diag().begin(), jm.diag().end());
  std::vector<double> e(n, 0.0);
  std::copy(jm.offdiag().begin(), jm.offdiag().end(), e.begin());
  std::vector<double> w(n, 0.0);
  w[0] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iter > kMaxQlIterations) raise(ErrorCode::ConvergenceFailure, "tridiagonal QL did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        // First row of the accumulated rotation.
        f = w[i + 1];
        w[i + 1] = s * w[i] + c * f;
        w[i] = c * w[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (std::size_t idx : order) {
    out.values.push_back(d[idx]);
    out.first_components.push_back(std::abs(w[idx]));
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!(out.values[k] > out.values[k - 1]))
      raise(ErrorCode::ConvergenceFailure, "eigenvalues not simple; input is not a valid Jacobi matrix");
  }
  return out;
}

double truncated_charpoly(const JacobiMatrix& jm, std::ptrdiff_t k, std::ptrdiff_t p, double z) {
  if (k > p) return 1.0;
  const auto n = static_cast<std::ptrdiff_t>(jm.size());
  if (k < 0 || p >= n) raise(ErrorCode::InvalidInput, "truncation indices out of range");
  const auto v = jm.diag();
  const auto c = jm.offdiag();
  double prev = 1.0;
  double cur = v[static_cast<std::size_t>(k)] - z;
  for (std::ptrdiff_t j = k + 1; j <= p; ++j) {
    const double cj = c[static_cast<std::size_t>(j - 1)];
    const double next = (v[static_cast<std::size_t>(j)] - z) * cur - cj * cj * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

PQValues pq_polynomials(const JacobiMatrix& jm, double z) {
  const std::size_t n = jm.size();
  const auto v = jm.diag();
  PQValues out{std::vector<double>(n + 1), std::vector<double>(n + 1)};
  auto& P = out.P;
  auto& Q = out.Q;

  // c_{n-1} y_{n-1} + v_n y_n + c_n y_{n+1} = z y_n
  // P_{-1} = 0 removes the lower term of the first row.
  P[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lower = i == 0 ? 0.0 : jm.recurrence_coeff(i - 1) * P[i - 1];
    P[i + 1] = ((z - v[i]) * P[i] - lower) / jm.recurrence_coeff(i);
  }

  Q[0] = 0.0;
  Q[1] = 1.0 / jm.recurrence_coeff(0);
  for (std::size_t i = 1; i < n; ++i) {
    Q[i + 1] = ((z - v[i]) * Q[i] - jm.recurrence_coeff(i - 1) * Q[i - 1]) / jm.recurrence_coeff(i);
  }
  return out;
}

double trace_power(const JacobiMatrix& jm, int m) {
  if (m < -1) raise(ErrorCode::InvalidInput, "trace_power supports m >= -1");
  if (m == 0) return static_cast<double>(jm.size());
  const auto spec = eigen(jm);
  double acc = 0.0;
  for (double z : spec.values) {
    if (m == -1) {
      if (std::abs(z) <= 1e-12) raise(ErrorCode::SingularMatrix, "tr L^{-1} of a singular Jacobi matrix");
      acc += 1.0 / z;
    } else {
      acc += std::pow(z, m);
    }
  }
  return acc;
}

}  // namespace toda

#pragma once

// Jacobi (symmetric tridiagonal, positive off-diagonal) matrices and the
// three-term recurrence machinery of the open lattice.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace toda {

/// Positions and momenta of the N-particle lattice.
struct PhasePoint {
  std::vector<double> q;
  std::vector<double> p;

  std::size_t size() const noexcept { return q.size(); }
};

/// Flaschka data: diagonal v (N entries) and off-diagonal c (N-1 entries, all
/// strictly positive). Construction rejects anything else.
class JacobiMatrix {
 public:
  JacobiMatrix(std::vector<double> v, std::vector<double> c);

  std::size_t size() const noexcept { return v_.size(); }
  std::span<const double> diag() const noexcept { return v_; }
  std::span<const double> offdiag() const noexcept { return c_; }

  /// c_{N-1} = prod c_k^{-1}; closes the recurrence at the last row. Equal to
  /// 1 for N = 1.
  double closure() const noexcept;

  /// Recurrence coefficient c_n for 0 <= n <= N-1, using closure() at N-1.
  double recurrence_coeff(std::size_t n) const noexcept;

  Eigen::MatrixXd dense() const;
  /// (v_0..v_{N-1}, c_0..c_{N-2}), the layout of the c-v chart.
  Eigen::VectorXd cv_state() const;
  static JacobiMatrix from_cv_state(const Eigen::Ref<const Eigen::VectorXd>& state, std::size_t n);

  double max_abs() const noexcept;

  friend bool operator==(const JacobiMatrix&, const JacobiMatrix&) = default;

 private:
  std::vector<double> v_;
  std::vector<double> c_;
};

JacobiMatrix flaschka(const PhasePoint& pt);
/// Inverse of flaschka with the translation gauge fixed by q_0 = q0.
PhasePoint unflaschka(const JacobiMatrix& jm, double q0);

struct EigenDecomposition {
  std::vector<double> values;            ///< strictly increasing
  std::vector<double> first_components;  ///< e_0 . u_k, normalized positive
};

/// Implicit-shift QL on the tridiagonal form, accumulating only the first row
/// of the eigenvector matrix.
EigenDecomposition eigen(const JacobiMatrix& jm);

/// det(L_[k,p] - z I) by the three-term determinant recurrence; 1 when k > p.
double truncated_charpoly(const JacobiMatrix& jm, std::ptrdiff_t k, std::ptrdiff_t p, double z);

/// P_0..P_N and Q_0..Q_N of the eigenvalue recurrence at z.
struct PQValues {
  std::vector<double> P;
  std::vector<double> Q;
};
PQValues pq_polynomials(const JacobiMatrix& jm, double z);

/// tr L^m for m >= 0 and tr L^{-1} for m = -1, from the spectrum.
double trace_power(const JacobiMatrix& jm, int m);

}  // namespace toda

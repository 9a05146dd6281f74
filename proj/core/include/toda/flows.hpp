#pragma once

// The commuting flows X_k of the hierarchy: Lax form on Jacobi matrices,
// Hamiltonian form through pi_0, pi_1, pi_2, and the explicit flow on the
// spectral data.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "toda/brackets.hpp"
#include "toda/spectral.hpp"
#include "toda/tridiag.hpp"

namespace toda {

enum class FlowMethod { ExactSpectral, Rk4Lax, Rk4Hamiltonian };

struct FlowSpec {
  int k = 1;
  FlowMethod method = FlowMethod::ExactSpectral;
  int p = 0;  ///< bracket index for Rk4Hamiltonian, 0 <= p <= min(k, 2)
  double t_final = 0.0;
  double dt = 1e-3;
  std::size_t record_every = 1;
};

/// States in a single chart (CV for the RK4 methods, ZRHO for the exact one),
/// with Sum rho - 1 and the max eigenvalue displacement per sample.
struct Trajectory {
  Chart chart = Chart::CV;
  std::size_t n = 0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> sum_rho_drift;
  std::vector<double> spectrum_drift;
};

/// H_n = tr L^(n+1) / (n+1) = sum z_k^(n+1) / (n+1).
double hamiltonian(const JacobiMatrix& jm, int n);
double hamiltonian(const SpectralData& s, int n);
/// Gradient of H_n in the c-v chart: d/dv_i = (L^n)_ii, d/dc_i = 2 (L^n)_{i,i+1}.
Eigen::VectorXd hamiltonian_gradient(const JacobiMatrix& jm, int n);

/// A_k = ((L^k)_upper - (L^k)_lower) / 2.
Eigen::MatrixXd lax_a(const JacobiMatrix& jm, int k);
/// [A_k, L] read off the tridiagonal pattern, as (v', c') in the c-v chart.
/// Throws StructureViolation if the commutator leaves the pattern.
Eigen::VectorXd lax_rhs(const JacobiMatrix& jm, int k);

/// pi_p grad H_{k-p} in the c-v chart.
Eigen::VectorXd hamiltonian_field(const JacobiMatrix& jm, int k, int p);

/// (z', rho') with z' = 0 and rho'_n = (z_n^k - sum_s z_s^k rho_s) rho_n.
Eigen::VectorXd spectral_field(const SpectralData& s, int k);

/// rho_n(t) proportional to rho_n e^(z_n^k t), normalized in log-sum-exp
/// form. Throws OverflowGuard if an exponent is not representable.
SpectralData exact_flow(const SpectralData& s, int k, double t);

using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
/// Returns (sum_rho_drift, spectrum_drift) for a state.
using DriftMonitor = std::function<std::pair<double, double>(const Eigen::VectorXd&)>;

/// Classic RK4 from 0 to t_final; the last step is shortened to land on
/// t_final. Throws NonFiniteState on blow-up.
Trajectory rk4(const VectorField& field, const Eigen::VectorXd& initial, double dt, double t_final, Chart chart,
               std::size_t n, const DriftMonitor& monitor = {}, std::size_t record_every = 1);

/// Runs spec from a Jacobi matrix or from spectral data. RK4 methods work in
/// the c-v chart, the exact method in the z-rho chart.
Trajectory evolve(const FlowSpec& spec, const JacobiMatrix& initial);
Trajectory evolve(const FlowSpec& spec, const SpectralData& initial);

}  // namespace toda

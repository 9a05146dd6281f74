#pragma once

// Darboux charts on the spectral data and the numeric check that a chart
// brings a bracket to constant canonical form.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "toda/brackets.hpp"
#include "toda/spectral.hpp"

namespace toda {

enum class ChartId { ZQ, IY, ActionAngle, GammaPi };

std::string to_string(ChartId id);

struct ChartValues {
  ChartId chart = ChartId::ZQ;
  std::vector<double> values;
  /// (Phi_1, Phi_2) for the charts of the restricted space.
  std::optional<std::pair<double, double>> casimirs;
};

/// q(z_k) = p'(z_k) rho_k.
std::vector<double> q_at_poles(const SpectralData& s);

/// (z_0..z_{N-1}, q(z_0)..q(z_{N-1})).
ChartValues zq_chart(const SpectralData& s);

/// I_k = F(z_k). Throws DomainViolation where F is undefined.
std::vector<double> action_coords(const SpectralData& s, const WeightFn& f);

/// (I_0..I_{N-1}, y_0..y_{N-1}) with y_k = ln |q(z_k)|.
ChartValues iy_chart(const SpectralData& s, const WeightFn& f);

/// theta_k = ln((-1)^k q(z_k) / q(z_0)), k = 1..N-1. Throws SignViolation
/// if an argument is not positive.
std::vector<double> angle_coords(const SpectralData& s);

/// (theta_1..theta_{N-1}, I_0..I_{N-1}) with casimirs (Phi_1, Phi_2).
ChartValues action_angle_chart(const SpectralData& s, const WeightFn& f);

/// (gamma_1..gamma_{N-1}, pi_1..pi_{N-1}) with pi_k = ln((-1)^(N+k) p(gamma_k))
/// and casimirs (Phi_1, Phi_2 = ln q0). Throws SignViolation without
/// interlacing.
ChartValues gamma_pi_chart(const SpectralData& s, const WeightFn& f = WeightFn::power(0));

/// The charts as maps of the z-rho state, each onto 2N coordinates.
/// Action-angle drops I_0 in favour of Phi_1 = sum I_k:
/// (theta_1.., I_1.., Phi_1, Phi_2). Gamma-pi is (gamma.., pi.., Phi_1, Phi_2).
StateMap zq_map(std::size_t n);
StateMap iy_map(const WeightFn& f, std::size_t n);
StateMap action_angle_map(const WeightFn& f, std::size_t n);
StateMap gamma_pi_map(const WeightFn& f, std::size_t n);

/// Analytic Jacobians of the maps above with respect to the z-rho state.
/// Finite differences lose about 1e-6 near close poles, where ln|z_k - z_m|
/// curves sharply, so the canonical checks use these instead.
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;
JacobianFn zq_jacobian(std::size_t n);
JacobianFn iy_jacobian(const WeightFn& f, std::size_t n);
JacobianFn action_angle_jacobian(const WeightFn& f, std::size_t n);
JacobianFn gamma_pi_jacobian(const WeightFn& f, std::size_t n);

/// Expected constant brackets in each chart's map coordinates.
/// IY: {y_k, I_k} = 1. ActionAngle: {theta_k, I_k} = 1. GammaPi:
/// {gamma_k, pi_k} = 1 and {Phi_1, Phi_2} = 1. Everything else 0.
Tensor canonical_pattern(ChartId id, std::size_t n);

struct CanonicalReport {
  Tensor measured;
  Tensor expected;
  double max_deviation = 0.0;
  Eigen::Index worst_row = 0;
  Eigen::Index worst_col = 0;
  bool pass = false;
};

CanonicalReport verify_canonical(const StateMap& chart, const PoissonStructure& structure,
                                 const Eigen::VectorXd& state, const Tensor& expected, double tol);
/// Same check with J pi J^T built from an analytic Jacobian.
CanonicalReport verify_canonical(const JacobianFn& jacobian, const PoissonStructure& structure,
                                 const Eigen::VectorXd& state, const Tensor& expected, double tol);

}  // namespace toda

#pragma once

// Poisson structures of the lattice in the q-p, c-v and z-rho charts, the
// residue form of the bracket of Weyl functions, Dirac reduction, and the
// numeric checks (Jacobi identity, pushforward, Casimirs) used to verify them.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "toda/spectral.hpp"

namespace toda {

enum class Chart { QP, CV, ZRHO };

std::string_view to_string(Chart chart);
/// 2N for QP and ZRHO, 2N - 1 for CV.
std::size_t chart_dimension(Chart chart, std::size_t n);

/// The entire function f(z) weighting the bracket, with the antiderivative F
/// of 1/f where one is known.
class WeightFn {
 public:
  using Complex = std::complex<double>;

  /// f(z) = z^n. F(z) = z for n = 0, ln z for n = 1, -1/((n-1) z^(n-1))
  /// otherwise; the last two require z > 0.
  static WeightFn power(int n);
  static WeightFn custom(std::function<Complex(Complex)> f, std::function<Complex(Complex)> df,
                         std::function<double(double)> antiderivative, std::string label);

  double operator()(double z) const;
  Complex operator()(Complex z) const;
  double derivative(double z) const;

  /// n for POWER n, empty for a custom weight.
  std::optional<int> power_index() const noexcept { return power_; }
  const std::string& label() const noexcept { return label_; }

  bool has_antiderivative() const noexcept;
  /// Throws DomainViolation outside the declared domain.
  double antiderivative(double z) const;

 private:
  WeightFn() = default;

  std::optional<int> power_;
  std::function<Complex(Complex)> f_;
  std::function<Complex(Complex)> df_;
  std::function<double(double)> big_f_;
  std::string label_;
};

using Tensor = Eigen::MatrixXd;
using TensorFn = std::function<Tensor(const Eigen::VectorXd&)>;

struct PoissonStructure {
  Chart chart = Chart::ZRHO;
  std::size_t n = 0;
  std::optional<WeightFn> weight;
  bool restricted = false;
  std::string label;
  TensorFn tensor_fn;

  std::size_t dimension() const { return chart_dimension(chart, n); }
  /// Evaluates the tensor; rejects states of the wrong dimension.
  Tensor tensor(const Eigen::VectorXd& state) const;
};

/// A scalar function of the state with its gradient.
struct ScalarFunction {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

/// Which {v_k, v_{k+1}} entry pi1_cv uses. The 2 v_k^2 variant exists only to
/// reproduce the comparison that selected 2 c_k^2.
enum class Pi1Variant { CSquared, VSquared };

/// Canonical {q_k, p_k} = 1 on (q_0..q_{N-1}, p_0..p_{N-1}).
PoissonStructure pi0_qp(std::size_t n);
/// Linear, quadratic and cubic brackets on (v_0..v_{N-1}, c_0..c_{N-2}).
PoissonStructure pi0_cv(std::size_t n);
PoissonStructure pi1_cv(std::size_t n, Pi1Variant variant = Pi1Variant::CSquared);
PoissonStructure pi2_cv(std::size_t n);
/// pi_p for p in {0, 1, 2}.
PoissonStructure pi_cv(int p, std::size_t n);

/// Bracket of the Weyl functions in (z_0..z_{N-1}, rho_0..rho_{N-1}).
PoissonStructure zrho_tensor(const WeightFn& f, std::size_t n);
/// Its reduction to q0 = const, sum F(z_k) = const, in closed form.
PoissonStructure zrho_restricted_tensor(const WeightFn& f, std::size_t n);

/// Contribution of each pole O_k to the contour bracket and the remaining
/// residues of the same differential. The circles are clockwise, so
/// value = sum(pole_terms) = residue_p + residue_q + residue_inf.
struct BracketBreakdown {
  std::complex<double> value;
  std::vector<std::complex<double>> pole_terms;
  std::complex<double> residue_p;
  std::complex<double> residue_q;
  /// Residue at infinity; only known in closed form for f = z^n.
  std::optional<std::complex<double>> residue_inf;
};

/// {chi(p), chi(q)}^f = (chi(p) - chi(q)) sum_k rho_k f(z_k) / ((z_k - p)(z_k - q)).
std::complex<double> analytic_bracket(const SpectralData& s, std::complex<double> p, std::complex<double> q,
                                      const WeightFn& f);
BracketBreakdown analytic_bracket_breakdown(const SpectralData& s, std::complex<double> p,
                                            std::complex<double> q, const WeightFn& f);

/// Residue sum of the modified differential, whose extra term carries
/// chi(p) chi(q) / q0.
std::complex<double> restricted_bracket(const SpectralData& s, std::complex<double> p, std::complex<double> q,
                                        const WeightFn& f);
BracketBreakdown restricted_bracket_breakdown(const SpectralData& s, std::complex<double> p,
                                              std::complex<double> q, const WeightFn& f);

/// Closed forms in chi(p), chi(q) alone, available for f = 1 and f = z.
std::optional<std::complex<double>> closed_form_bracket(const SpectralData& s, std::complex<double> p,
                                                        std::complex<double> q, const WeightFn& f,
                                                        bool restricted);

/// Gradient of chi(x) in the z-rho chart.
Eigen::VectorXcd weyl_gradient(const SpectralData& s, std::complex<double> x);

/// pi' = pi + (u2 u1^T - u1 u2^T) / c with u_i = pi grad phi_i and
/// c = {phi1, phi2}. Evaluation throws ConstraintBracketNotUnit when
/// |c - 1| > 1e-8.
PoissonStructure dirac_restrict(const PoissonStructure& base, ScalarFunction phi1, ScalarFunction phi2);

/// Phi_1 = sum F(z_k) and Phi_2 = log q0 on the z-rho chart.
ScalarFunction casimir_phi1(const WeightFn& f, std::size_t n);
ScalarFunction casimir_phi2(std::size_t n);

/// Casimir of pi_p on the c-v chart: tr L, det L, tr L^{-1} for p = 0, 1, 2,
/// with analytic gradients.
ScalarFunction cv_casimir(int p, std::size_t n);

struct IndexTriple {
  std::size_t i, j, k;
};

/// max over triples of |sum_cyc sum_l d_l pi_ij pi_lk|, derivatives by central
/// differences with h = eps^(1/3) (1 + |x_l|). Empty triples means all.
double jacobi_residual(const PoissonStructure& p, const Eigen::VectorXd& state,
                       const std::vector<IndexTriple>& triples = {});

using StateMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central-difference Jacobian of map at state.
Eigen::MatrixXd fd_jacobian(const StateMap& map, const Eigen::VectorXd& state);

/// J pi J^T, the structure expressed in the chart reached by map.
Tensor pushforward(const PoissonStructure& p, const StateMap& map, const Eigen::VectorXd& state);

/// ||pi grad phi||_inf.
double casimir_residual(const PoissonStructure& p, const ScalarFunction& phi, const Eigen::VectorXd& state);

/// Copy of p with {z_k, z_n} = 1 for all k < n in the z-rho chart ({x_0, x_1}
/// = 1 in the others); a negative control for the Jacobi check.
PoissonStructure corrupted(const PoissonStructure& p);

}  // namespace toda

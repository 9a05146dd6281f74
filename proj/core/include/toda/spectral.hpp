#pragma once

// Direct and inverse spectral transforms between Jacobi matrices and the
// pole/residue data of their Weyl functions.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "toda/poly.hpp"
#include "toda/tridiag.hpp"

namespace toda {

/// Poles z_k (strictly increasing) and weights rho_k of
/// chi(z) = sum rho_k / (z_k - z).
struct SpectralData {
  std::vector<double> z;
  std::vector<double> rho;

  std::size_t size() const noexcept { return z.size(); }
  /// Leading coefficient of the numerator q(z); equals sum rho_k.
  double q0() const noexcept;

  /// (z_0..z_{N-1}, rho_0..rho_{N-1}), the layout of the z-rho chart.
  Eigen::VectorXd zrho_state() const;
  static SpectralData from_zrho_state(const Eigen::Ref<const Eigen::VectorXd>& state);
};

struct Moments {
  std::vector<double> s;
};

/// Rat_N / Rat_N' membership.
struct Membership {
  bool rat_n = false;
  bool rat_n_prime = false;
  bool interlaces = false;
};

/// Zeros gamma_1..gamma_{N-1} of the numerator of -chi and its leading
/// coefficient q0.
struct WeylZeros {
  std::vector<double> gamma;
  double q0 = 0.0;
};

SpectralData direct_transform(const JacobiMatrix& jm);

std::complex<double> weyl_eval(const SpectralData& s, std::complex<double> x);
double weyl_eval(const SpectralData& s, double x);

/// q(z) = sum_k rho_k prod_{m != k} (z - z_m), so chi = -q / p.
Polynomial weyl_numerator(const SpectralData& s);
/// p(z) = prod (z - z_k), monic.
Polynomial weyl_denominator(const SpectralData& s);
RationalFunction weyl_function(const SpectralData& s);

WeylZeros gammas(const SpectralData& s);

Moments moments(const SpectralData& s, std::size_t count);

Membership validate(const SpectralData& s);

/// Lanczos on diag(z) started from (sqrt rho_k), with full
/// reorthogonalization. Throws NotInRatNPrime outside Rat_N'.
JacobiMatrix inverse_transform(const SpectralData& s);

/// Stieltjes continued fraction of chi by polynomial Euclid. Independent of
/// the Lanczos route; well conditioned only for small N (<= 5 or so).
JacobiMatrix inverse_transform_continued_fraction(const SpectralData& s);

/// Jacobi's moment route: recovers (z, rho) of size n from s_0..s_{2n-1} via
/// the Hankel system for p(z) and the Vandermonde system for rho.
SpectralData spectral_from_moments(const Moments& m, std::size_t n);

}  // namespace toda

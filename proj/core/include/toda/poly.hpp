#pragma once

// Real polynomials and rational functions with simple real poles.

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace toda {

/// Dense real polynomial, coefficients in ascending degree.
///
/// Trailing coefficients below 1e-14 * max|coeff| are trimmed on construction,
/// so degree() is the numerical degree. The zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  static Polynomial constant(double value);
  /// leading * prod (z - r_i). Requires leading != 0.
  static Polynomial from_roots(std::span<const double> roots, double leading = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(int power) const noexcept;
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> x) const noexcept;

  /// sum |a_i| |x|^i, the natural rounding scale of evaluating at x.
  double magnitude_at(double x) const noexcept;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();

  std::vector<double> coeffs_;
};

/// Quotient and remainder of a / b (b nonzero).
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Roots of a polynomial whose roots are all real and simple, ascending.
///
/// Roots of P' bracket the roots of P (Rolle), so the roots are isolated
/// recursively from the derivative chain and refined by bisection. Throws
/// NonRealOrMultipleRoots when an isolating interval has no sign change.
std::vector<double> real_roots(const Polynomial& p);

/// Pole / weight list of a proper rational function. For a Weyl function
/// chi(z) = sum rho_k / (z_k - z) the weights are rho_k = -Res_{z_k} chi.
struct PartialFractions {
  std::vector<double> poles;
  std::vector<double> rho;
};

struct Infinity {};
inline constexpr Infinity infinity{};

class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  /// Requires deg num < deg den and simple real poles. Returns the cached
  /// decomposition when this value was produced by with_pole_cache().
  PartialFractions partial_fractions() const;
  /// Copy carrying a precomputed pole/residue cache.
  RationalFunction with_pole_cache() const;
  bool has_pole_cache() const noexcept { return cache_.has_value(); }

  std::complex<double> residue_at(std::complex<double> pole) const;
  /// Residue at infinity, -[coefficient of 1/z] of the Laurent expansion,
  /// computed from the exact polynomial remainder.
  double residue_at(Infinity) const;

 private:
  Polynomial num_;
  Polynomial den_;
  std::optional<PartialFractions> cache_;
};

}  // namespace toda

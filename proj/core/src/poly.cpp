#include "toda/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toda/errors.hpp"

namespace toda {

namespace {

constexpr double kTrimRelative = 1e-14;
constexpr double kPoleCoincidence = 1e-12;

template <typename T>
T horner(std::span<const double> c, T x) {
  T acc{0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_of(double x) { return (x > 0) - (x < 0); }

// Bisection on [a, b] where p changes sign; returns the endpoint with the
// smaller |p| once the bracket has collapsed to adjacent doubles.
double bisect(const Polynomial& p, double a, double b) {
  double fa = p(a);
  double fb = p(b);
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::constant(double value) { return Polynomial(std::vector<double>{value}); }

Polynomial Polynomial::from_roots(std::span<const double> roots, double leading) {
  if (leading == 0.0) raise(ErrorCode::InvalidInput, "from_roots requires a nonzero leading coefficient");
  std::vector<double> c{leading};
  c.reserve(roots.size() + 1);
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  double scale = 0.0;
  for (double a : coeffs_) scale = std::max(scale, std::abs(a));
  const double cutoff = kTrimRelative * scale;
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cutoff) coeffs_.pop_back();
}

double Polynomial::coeff(int power) const noexcept {
  if (power < 0 || power > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::operator()(double x) const noexcept { return horner<double>(coeffs_, x); }

std::complex<double> Polynomial::operator()(std::complex<double> x) const noexcept {
  return horner<std::complex<double>>(coeffs_, x);
}

double Polynomial::magnitude_at(double x) const noexcept {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& a : coeffs_) a *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) raise(ErrorCode::InvalidInput, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<double> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<double> quot(static_cast<std::size_t>(a.degree() - db + 1), 0.0);
  for (int k = a.degree() - db; k >= 0; --k) {
    const double t = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * b.coeff(j);
    rem[static_cast<std::size_t>(k + db)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(std::max(db, 0)));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<double> real_roots(const Polynomial& p) {
  if (p.is_zero()) raise(ErrorCode::InvalidInput, "roots of the zero polynomial are undefined");
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  const std::vector<double> critical = real_roots(p.derivative());

  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p.coeff(i) / p.leading()));
  bound += 1.0;

  std::vector<double> knots;
  knots.reserve(critical.size() + 2);
  knots.push_back(-bound);
  knots.insert(knots.end(), critical.begin(), critical.end());
  knots.push_back(bound);

  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const int sa = sign_of(p(a));
    const int sb = sign_of(p(b));
    if (sa == 0 || sb == 0 || sa == sb) {
      std::ostringstream os;
      os << "no simple real root isolated in [" << a << ", " << b << "] (degree " << n << ")";
      raise(ErrorCode::NonRealOrMultipleRoots, os.str());
    }
    roots.push_back(bisect(p, a, b));
  }
  return roots;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) raise(ErrorCode::InvalidInput, "rational function with zero denominator");
}

double RationalFunction::operator()(double x) const { return num_(x) / den_(x); }

std::complex<double> RationalFunction::operator()(std::complex<double> x) const { return num_(x) / den_(x); }

PartialFractions RationalFunction::partial_fractions() const {
  if (cache_) return *cache_;
  if (num_.degree() >= den_.degree())
    raise(ErrorCode::InvalidInput, "partial fractions need deg(num) < deg(den)");
  PartialFractions out;
  out.poles = real_roots(den_);
  for (std::size_t k = 1; k < out.poles.size(); ++k) {
    const double gap = out.poles[k] - out.poles[k - 1];
    const double scale = std::max({1.0, std::abs(out.poles[k]), std::abs(out.poles[k - 1])});
    if (gap <= kPoleCoincidence * scale) raise(ErrorCode::MultiplePole, "denominator roots coincide");
  }
  const Polynomial dden = den_.derivative();
  out.rho.reserve(out.poles.size());
  for (double z : out.poles) out.rho.push_back(-num_(z) / dden(z));
  return out;
}

RationalFunction RationalFunction::with_pole_cache() const {
  RationalFunction copy = *this;
  copy.cache_ = partial_fractions();
  return copy;
}

std::complex<double> RationalFunction::residue_at(std::complex<double> pole) const {
  const std::complex<double> d = den_(pole);
  const double scale = den_.magnitude_at(std::abs(pole));
  if (std::abs(d) > 1e-8 * std::max(scale, 1.0))
    raise(ErrorCode::NotASimplePole, "point is not a pole of the denominator");
  const std::complex<double> dd = den_.derivative()(pole);
  if (std::abs(dd) <= 1e-10 * std::max(den_.derivative().magnitude_at(std::abs(pole)), 1.0))
    raise(ErrorCode::NotASimplePole, "pole is not simple");
  return num_(pole) / dd;
}

double RationalFunction::residue_at(Infinity) const {
  // R = quotient + rem / den; polynomials have no residue at infinity and
  // rem/den ~ rem_{d-1} / (den_d z) + O(1/z^2).
  const auto [quot, rem] = divmod(num_, den_);
  (void)quot;
  const int d = den_.degree();
  if (d < 1 || rem.degree() != d - 1) return 0.0;
  return -rem.leading() / den_.leading();
}

}  // namespace toda

#include "toda/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "toda/errors.hpp"

namespace toda {

namespace {

constexpr double kNormalizationTol = 1e-10;

void require_same_size(const SpectralData& s) {
  if (s.z.empty() || s.z.size() != s.rho.size())
    raise(ErrorCode::InvalidInput, "spectral data needs N >= 1 poles and as many residues");
}

bool strictly_increasing(const std::vector<double>& z) {
  for (std::size_t k = 1; k < z.size(); ++k)
    if (!(z[k] > z[k - 1])) return false;
  return true;
}

}  // namespace

double SpectralData::q0() const noexcept { return std::accumulate(rho.begin(), rho.end(), 0.0); }

Eigen::VectorXd SpectralData::zrho_state() const {
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::VectorXd out(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out(k) = z[static_cast<std::size_t>(k)];
    out(n + k) = rho[static_cast<std::size_t>(k)];
  }
  return out;
}

SpectralData SpectralData::from_zrho_state(const Eigen::Ref<const Eigen::VectorXd>& state) {
  if (state.size() % 2 != 0) raise(ErrorCode::InvalidInput, "z-rho state must have even dimension");
  const auto n = state.size() / 2;
  SpectralData s;
  s.z.assign(state.data(), state.data() + n);
  s.rho.assign(state.data() + n, state.data() + 2 * n);
  return s;
}

SpectralData direct_transform(const JacobiMatrix& jm) {
  const auto dec = eigen(jm);
  SpectralData s;
  s.z = dec.values;
  s.rho.reserve(dec.first_components.size());
  for (double u : dec.first_components) s.rho.push_back(u * u);
  return s;
}

std::complex<double> weyl_eval(const SpectralData& s, std::complex<double> x) {
  require_same_size(s);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::complex<double> gap = s.z[k] - x;
    if (std::abs(gap) <= 1e-14 * std::max(1.0, std::abs(s.z[k])))
      raise(ErrorCode::PoleEvaluation, "Weyl function evaluated at a pole");
    acc += s.rho[k] / gap;
  }
  return acc;
}

double weyl_eval(const SpectralData& s, double x) { return weyl_eval(s, std::complex<double>(x, 0.0)).real(); }

Polynomial weyl_numerator(const SpectralData& s) {
  require_same_size(s);
  Polynomial q;
  std::vector<double> others;
  others.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    others.clear();
    for (std::size_t m = 0; m < s.size(); ++m)
      if (m != k) others.push_back(s.z[m]);
    if (s.rho[k] != 0.0) q += Polynomial::from_roots(others, s.rho[k]);
  }
  return q;
}

Polynomial weyl_denominator(const SpectralData& s) {
  require_same_size(s);
  return Polynomial::from_roots(s.z, 1.0);
}

RationalFunction weyl_function(const SpectralData& s) {
  return RationalFunction(-1.0 * weyl_numerator(s), weyl_denominator(s));
}

WeylZeros gammas(const SpectralData& s) {
  const Polynomial q = weyl_numerator(s);
  WeylZeros out;
  out.q0 = s.q0();
  if (q.degree() >= 1) out.gamma = real_roots(q);
  return out;
}

Moments moments(const SpectralData& s, std::size_t count) {
  require_same_size(s);
  if (count == 0) raise(ErrorCode::InvalidInput, "moments needs count >= 1");
  Moments m;
  m.s.assign(count, 0.0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    double zp = 1.0;
    for (std::size_t p = 0; p < count; ++p) {
      m.s[p] += zp * s.rho[k];
      zp *= s.z[k];
    }
  }
  return m;
}

Membership validate(const SpectralData& s) {
  Membership out;
  if (s.z.empty() || s.z.size() != s.rho.size()) return out;
  const bool finite = std::all_of(s.z.begin(), s.z.end(), [](double x) { return std::isfinite(x); }) &&
                      std::all_of(s.rho.begin(), s.rho.end(), [](double x) { return std::isfinite(x); });
  const bool nonzero = std::none_of(s.rho.begin(), s.rho.end(), [](double r) { return r == 0.0; });
  out.rat_n = finite && nonzero && strictly_increasing(s.z);
  if (!out.rat_n) return out;

  const bool positive = std::all_of(s.rho.begin(), s.rho.end(), [](double r) { return r > 0.0; });
  out.rat_n_prime = positive && std::abs(s.q0() - 1.0) <= kNormalizationTol;

  try {
    const auto zeros = gammas(s);
    bool ok = zeros.gamma.size() + 1 == s.size();
    for (std::size_t k = 0; ok && k < zeros.gamma.size(); ++k)
      ok = s.z[k] < zeros.gamma[k] && zeros.gamma[k] < s.z[k + 1];
    out.interlaces = ok;
  } catch (const TodaError&) {
    out.interlaces = false;
  }
  return out;
}

JacobiMatrix inverse_transform(const SpectralData& s) {
  require_same_size(s);
  const auto member = validate(s);
  if (!member.rat_n_prime) {
    std::ostringstream os;
    os << "not in Rat_N': poles must be strictly increasing, residues positive and summing to 1 (sum = "
       << s.q0() << ")";
    raise(ErrorCode::NotInRatNPrime, os.str());
  }

  const auto n = static_cast<Eigen::Index>(s.size());
  const Eigen::Map<const Eigen::VectorXd> diag(s.z.data(), n);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) basis(k, 0) = std::sqrt(s.rho[static_cast<std::size_t>(k)]);
  basis.col(0).normalize();

  std::vector<double> v(static_cast<std::size_t>(n));
  std::vector<double> c(static_cast<std::size_t>(n - 1));
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd w = diag.cwiseProduct(basis.col(j));
    v[static_cast<std::size_t>(j)] = basis.col(j).dot(w);
    if (j + 1 == n) break;
    w -= v[static_cast<std::size_t>(j)] * basis.col(j);
    if (j > 0) w -= c[static_cast<std::size_t>(j - 1)] * basis.col(j - 1);
    // Two passes of classical Gram-Schmidt against every previous vector.
    for (int pass = 0; pass < 2; ++pass) {
      const auto done = basis.leftCols(j + 1);
      w -= done * (done.transpose() * w);
    }
    const double beta = w.norm();
    if (!(beta > 0.0)) raise(ErrorCode::NotInRatNPrime, "Lanczos breakdown: spectral data is degenerate");
    c[static_cast<std::size_t>(j)] = beta;
    basis.col(j + 1) = w / beta;
  }
  return JacobiMatrix(std::move(v), std::move(c));
}

JacobiMatrix inverse_transform_continued_fraction(const SpectralData& s) {
  require_same_size(s);
  if (!validate(s).rat_n_prime) raise(ErrorCode::NotInRatNPrime, "continued fraction needs Rat_N' data");

  // chi = -q/p with p monic of degree m and q of leading coefficient 1.
  // p = (z - a) q + r gives 1/chi = a - z - r/q, so the tail
  // r / (c^2 q) = -q_next / p_next with p_next = q and q_next = -r / c^2.
  Polynomial p = weyl_denominator(s);
  Polynomial q = weyl_numerator(s) * (1.0 / s.q0());
  std::vector<double> v;
  std::vector<double> c;
  while (true) {
    auto [quot, rem] = divmod(p, q);
    if (quot.degree() != 1) raise(ErrorCode::NotInRatNPrime, "continued fraction lost degree structure");
    v.push_back(-quot.coeff(0) / quot.coeff(1));
    if (q.degree() == 0) break;
    const double c2 = -rem.leading();
    if (!(c2 > 0.0) || rem.degree() != q.degree() - 1)
      raise(ErrorCode::NotInRatNPrime, "continued fraction produced a non-positive c^2");
    c.push_back(std::sqrt(c2));
    p = std::move(q);
    q = rem * (-1.0 / c2);
  }
  return JacobiMatrix(std::move(v), std::move(c));
}

SpectralData spectral_from_moments(const Moments& m, std::size_t n) {
  if (n == 0 || m.s.size() < 2 * n) raise(ErrorCode::InvalidInput, "need at least 2n moments");
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd hankel(nn, nn);
  Eigen::VectorXd rhs(nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j < nn; ++j) hankel(i, j) = m.s[static_cast<std::size_t>(i + j)];
    rhs(i) = -m.s[static_cast<std::size_t>(i + nn)];
  }
  const Eigen::VectorXd a = hankel.colPivHouseholderQr().solve(rhs);
  std::vector<double> coeffs(a.data(), a.data() + nn);
  coeffs.push_back(1.0);
  SpectralData out;
  out.z = real_roots(Polynomial(std::move(coeffs)));
  if (out.z.size() != n) raise(ErrorCode::NonRealOrMultipleRoots, "moment polynomial lost degree");

  Eigen::MatrixXd vander(nn, nn);
  Eigen::VectorXd s(nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index k = 0; k < nn; ++k) vander(i, k) = std::pow(out.z[static_cast<std::size_t>(k)], static_cast<double>(i));
    s(i) = m.s[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd rho = vander.colPivHouseholderQr().solve(s);
  out.rho.assign(rho.data(), rho.data() + nn);
  return out;
}

}  // namespace toda

#include "toda/brackets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "toda/errors.hpp"

namespace toda {

namespace {

using Complex = std::complex<double>;

constexpr double kUnitBracketTol = 1e-8;
constexpr double kCoincidence = 1e-12;

double fd_step(double x) { return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(x)); }

// Adds val at (i, j) and its antisymmetric partner.
void put(Tensor& t, Eigen::Index i, Eigen::Index j, double val) {
  t(i, j) += val;
  t(j, i) -= val;
}

void check_state(const Eigen::VectorXd& state, std::size_t expected, std::string_view what) {
  if (static_cast<std::size_t>(state.size()) != expected) {
    std::ostringstream os;
    os << what << ": state has dimension " << state.size() << ", expected " << expected;
    raise(ErrorCode::InvalidInput, os.str());
  }
}

void check_distinct_poles(const Eigen::VectorXd& state, Eigen::Index n) {
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index m = k + 1; m < n; ++m) {
      const double scale = std::max({1.0, std::abs(state(k)), std::abs(state(m))});
      if (std::abs(state(k) - state(m)) <= kCoincidence * scale)
        raise(ErrorCode::CoincidentPoles, "z-rho tensor evaluated at coincident poles");
    }
}

bool near(Complex a, Complex b) { return std::abs(a - b) <= kCoincidence * std::max({1.0, std::abs(a), std::abs(b)}); }

void check_points(const SpectralData& s, Complex p, Complex q) {
  if (s.z.empty() || s.z.size() != s.rho.size()) raise(ErrorCode::InvalidInput, "malformed spectral data");
  if (near(p, q)) raise(ErrorCode::CoincidentPoints, "bracket points p and q coincide");
  for (double z : s.z)
    if (near(p, z) || near(q, z)) raise(ErrorCode::CoincidentPoints, "bracket point coincides with a pole");
}

// h_m(p, q) = sum_{a=0}^m p^a q^(m-a).
Complex complete_homogeneous(int m, Complex p, Complex q) {
  Complex acc{0.0, 0.0};
  for (int a = 0; a <= m; ++a) acc += std::pow(p, a) * std::pow(q, m - a);
  return acc;
}

// The clockwise residue sum of K f chi / ((z - p)(z - q)) dz over the poles,
// with the residues at p, q and infinity of the same form.
BracketBreakdown residue_sum(const SpectralData& s, Complex p, Complex q, const WeightFn& f, Complex k_factor) {
  const Complex chi_p = weyl_eval(s, p);
  const Complex chi_q = weyl_eval(s, q);
  BracketBreakdown out;
  out.pole_terms.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Complex zk{s.z[k], 0.0};
    out.pole_terms.push_back(k_factor * s.rho[k] * f(zk) / ((zk - p) * (zk - q)));
  }
  out.value = Complex{0.0, 0.0};
  for (const auto& t : out.pole_terms) out.value += t;
  out.residue_p = k_factor * f(p) * chi_p / (p - q);
  out.residue_q = k_factor * f(q) * chi_q / (q - p);
  if (const auto n = f.power_index()) {
    // chi = -sum s_j z^(-j-1); the z^(-1) coefficient of the integrand gives
    // Res_inf = K sum_{j+m=n-2} s_j h_m(p, q).
    Complex acc{0.0, 0.0};
    if (*n >= 2) {
      const auto mom = moments(s, static_cast<std::size_t>(*n - 1));
      for (int j = 0; j <= *n - 2; ++j) acc += mom.s[static_cast<std::size_t>(j)] * complete_homogeneous(*n - 2 - j, p, q);
    }
    out.residue_inf = k_factor * acc;
  }
  return out;
}

Complex restricted_factor(const SpectralData& s, Complex p, Complex q) {
  const Complex chi_p = weyl_eval(s, p);
  const Complex chi_q = weyl_eval(s, q);
  return (chi_p - chi_q) - (p - q) * chi_p * chi_q / s.q0();
}

}  // namespace

std::string_view to_string(Chart chart) {
  switch (chart) {
    case Chart::QP:
      return "QP";
    case Chart::CV:
      return "CV";
    case Chart::ZRHO:
      return "ZRHO";
  }
  return "?";
}

std::size_t chart_dimension(Chart chart, std::size_t n) { return chart == Chart::CV ? 2 * n - 1 : 2 * n; }

WeightFn WeightFn::power(int n) {
  if (n < 0) raise(ErrorCode::InvalidInput, "weight z^n needs n >= 0");
  WeightFn w;
  w.power_ = n;
  w.f_ = [n](Complex z) { return n == 0 ? Complex{1.0, 0.0} : std::pow(z, n); };
  w.df_ = [n](Complex z) { return n == 0 ? Complex{0.0, 0.0} : static_cast<double>(n) * std::pow(z, n - 1); };
  w.big_f_ = [n](double z) {
    if (n == 0) return z;
    if (!(z > 0.0)) {
      std::ostringstream os;
      os << "antiderivative of z^-" << n << " needs z > 0, got " << z;
      raise(ErrorCode::DomainViolation, os.str());
    }
    if (n == 1) return std::log(z);
    return -1.0 / (static_cast<double>(n - 1) * std::pow(z, n - 1));
  };
  w.label_ = n == 0 ? "1" : n == 1 ? "z" : "z^" + std::to_string(n);
  return w;
}

WeightFn WeightFn::custom(std::function<Complex(Complex)> f, std::function<Complex(Complex)> df,
                          std::function<double(double)> antiderivative, std::string label) {
  if (!f || !df) raise(ErrorCode::InvalidInput, "custom weight needs f and f'");
  WeightFn w;
  w.f_ = std::move(f);
  w.df_ = std::move(df);
  w.big_f_ = std::move(antiderivative);
  w.label_ = std::move(label);
  return w;
}

double WeightFn::operator()(double z) const { return f_(Complex{z, 0.0}).real(); }
WeightFn::Complex WeightFn::operator()(Complex z) const { return f_(z); }
double WeightFn::derivative(double z) const { return df_(Complex{z, 0.0}).real(); }
bool WeightFn::has_antiderivative() const noexcept { return static_cast<bool>(big_f_); }

double WeightFn::antiderivative(double z) const {
  if (!big_f_) raise(ErrorCode::InvalidInput, "weight '" + label_ + "' has no antiderivative");
  return big_f_(z);
}

Tensor PoissonStructure::tensor(const Eigen::VectorXd& state) const {
  check_state(state, dimension(), label);
  return tensor_fn(state);
}

PoissonStructure pi0_qp(std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidInput, "pi0_qp needs N >= 1");
  PoissonStructure ps{Chart::QP, n, std::nullopt, false, "pi0_qp", {}};
  const auto nn = static_cast<Eigen::Index>(n);
  ps.tensor_fn = [nn](const Eigen::VectorXd&) {
    Tensor t = Tensor::Zero(2 * nn, 2 * nn);
    for (Eigen::Index k = 0; k < nn; ++k) put(t, k, nn + k, 1.0);
    return t;
  };
  return ps;
}

PoissonStructure pi0_cv(std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidInput, "pi0_cv needs N >= 1");
  PoissonStructure ps{Chart::CV, n, std::nullopt, false, "pi0_cv", {}};
  const auto nn = static_cast<Eigen::Index>(n);
  ps.tensor_fn = [nn](const Eigen::VectorXd& x) {
    Tensor t = Tensor::Zero(2 * nn - 1, 2 * nn - 1);
    for (Eigen::Index k = 0; k + 1 < nn; ++k) {
      const Eigen::Index ck = nn + k;
      put(t, ck, k, -x(ck) / 2.0);
      put(t, ck, k + 1, x(ck) / 2.0);
    }
    return t;
  };
  return ps;
}

PoissonStructure pi1_cv(std::size_t n, Pi1Variant variant) {
  if (n == 0) raise(ErrorCode::InvalidInput, "pi1_cv needs N >= 1");
  const bool v_squared = variant == Pi1Variant::VSquared;
  PoissonStructure ps{Chart::CV, n, std::nullopt, false, v_squared ? "pi1_cv[2v^2]" : "pi1_cv", {}};
  const auto nn = static_cast<Eigen::Index>(n);
  ps.tensor_fn = [nn, v_squared](const Eigen::VectorXd& x) {
    Tensor t = Tensor::Zero(2 * nn - 1, 2 * nn - 1);
    for (Eigen::Index k = 0; k + 1 < nn; ++k) {
      const Eigen::Index ck = nn + k;
      const double c = x(ck);
      if (k + 2 < nn) put(t, ck, ck + 1, c * x(ck + 1) / 2.0);
      put(t, ck, k, -c * x(k));
      put(t, ck, k + 1, c * x(k + 1));
      put(t, k, k + 1, v_squared ? 2.0 * x(k) * x(k) : 2.0 * c * c);
    }
    return t;
  };
  return ps;
}

PoissonStructure pi2_cv(std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidInput, "pi2_cv needs N >= 1");
  PoissonStructure ps{Chart::CV, n, std::nullopt, false, "pi2_cv", {}};
  const auto nn = static_cast<Eigen::Index>(n);
  ps.tensor_fn = [nn](const Eigen::VectorXd& x) {
    Tensor t = Tensor::Zero(2 * nn - 1, 2 * nn - 1);
    for (Eigen::Index k = 0; k + 1 < nn; ++k) {
      const Eigen::Index ck = nn + k;
      const double c = x(ck);
      const double vk = x(k);
      const double vk1 = x(k + 1);
      if (k + 2 < nn) {
        const double c1 = x(ck + 1);
        put(t, ck, ck + 1, c * c1 * vk1);
        put(t, ck + 1, k, -c * c * c1);
        put(t, ck, k + 2, c * c1 * c1);
      }
      put(t, ck, k, -c * vk * vk - c * c * c);
      put(t, ck, k + 1, c * vk1 * vk1 + c * c * c);
      put(t, k, k + 1, 2.0 * c * c * (vk + vk1));
    }
    return t;
  };
  return ps;
}

PoissonStructure pi_cv(int p, std::size_t n) {
  switch (p) {
    case 0:
      return pi0_cv(n);
    case 1:
      return pi1_cv(n);
    case 2:
      return pi2_cv(n);
    default:
      raise(ErrorCode::InvalidInput, "closed-form c-v brackets exist only for p = 0, 1, 2");
  }
}

PoissonStructure zrho_tensor(const WeightFn& f, std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidInput, "zrho_tensor needs N >= 1");
  PoissonStructure ps{Chart::ZRHO, n, f, false, "zrho[" + f.label() + "]", {}};
  const auto nn = static_cast<Eigen::Index>(n);
  ps.tensor_fn = [nn, f](const Eigen::VectorXd& x) {
    check_distinct_poles(x, nn);
    Tensor t = Tensor::Zero(2 * nn, 2 * nn);
    Eigen::VectorXd fz(nn);
    for (Eigen::Index k = 0; k < nn; ++k) fz(k) = f(x(k));
    for (Eigen::Index k = 0; k < nn; ++k) {
      put(t, nn + k, k, x(nn + k) * fz(k));
      for (Eigen::Index m = k + 1; m < nn; ++m)
        put(t, nn + k, nn + m, (fz(k) + fz(m)) * x(nn + k) * x(nn + m) / (x(m) - x(k)));
    }
    return t;
  };
  return ps;
}

PoissonStructure zrho_restricted_tensor(const WeightFn& f, std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidInput, "zrho_restricted_tensor needs N >= 1");
  PoissonStructure ps{Chart::ZRHO, n, f, true, "zrho'[" + f.label() + "]", {}};
  const auto nn = static_cast<Eigen::Index>(n);
  ps.tensor_fn = [nn, f](const Eigen::VectorXd& x) {
    check_distinct_poles(x, nn);
    const auto z = x.head(nn);
    const auto rho = x.tail(nn);
    const double q0 = rho.sum();
    Eigen::VectorXd fz(nn);
    for (Eigen::Index k = 0; k < nn; ++k) fz(k) = f(z(k));
    // A_j = sum_{m != j} (f_j + f_m) rho_m / (z_m - z_j)
    Eigen::VectorXd a = Eigen::VectorXd::Zero(nn);
    for (Eigen::Index j = 0; j < nn; ++j)
      for (Eigen::Index m = 0; m < nn; ++m)
        if (m != j) a(j) += (fz(j) + fz(m)) * rho(m) / (z(m) - z(j));

    Tensor t = Tensor::Zero(2 * nn, 2 * nn);
    for (Eigen::Index k = 0; k < nn; ++k) {
      for (Eigen::Index m = 0; m < nn; ++m) {
        const double diag = k == m ? rho(k) * fz(m) : 0.0;
        put(t, nn + k, m, diag - fz(m) * rho(k) * rho(m) / q0);
      }
      for (Eigen::Index m = k + 1; m < nn; ++m) {
        const double rr = rho(k) * rho(m);
        put(t, nn + k, nn + m, (fz(k) + fz(m)) * rr / (z(m) - z(k)) + rr / q0 * (a(m) - a(k)));
      }
    }
    return t;
  };
  return ps;
}

BracketBreakdown analytic_bracket_breakdown(const SpectralData& s, Complex p, Complex q, const WeightFn& f) {
  check_points(s, p, q);
  return residue_sum(s, p, q, f, weyl_eval(s, p) - weyl_eval(s, q));
}

Complex analytic_bracket(const SpectralData& s, Complex p, Complex q, const WeightFn& f) {
  return analytic_bracket_breakdown(s, p, q, f).value;
}

BracketBreakdown restricted_bracket_breakdown(const SpectralData& s, Complex p, Complex q, const WeightFn& f) {
  check_points(s, p, q);
  return residue_sum(s, p, q, f, restricted_factor(s, p, q));
}

Complex restricted_bracket(const SpectralData& s, Complex p, Complex q, const WeightFn& f) {
  return restricted_bracket_breakdown(s, p, q, f).value;
}

std::optional<Complex> closed_form_bracket(const SpectralData& s, Complex p, Complex q, const WeightFn& f,
                                           bool restricted) {
  const auto n = f.power_index();
  if (!n || *n > 1) return std::nullopt;
  check_points(s, p, q);
  const Complex chi_p = weyl_eval(s, p);
  const Complex chi_q = weyl_eval(s, q);
  const Complex weight_sum = *n == 0 ? (chi_p - chi_q) / (p - q) : (p * chi_p - q * chi_q) / (p - q);
  const Complex k_factor = restricted ? restricted_factor(s, p, q) : chi_p - chi_q;
  return k_factor * weight_sum;
}

Eigen::VectorXcd weyl_gradient(const SpectralData& s, Complex x) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::VectorXcd g(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex gap = s.z[static_cast<std::size_t>(k)] - x;
    g(k) = -s.rho[static_cast<std::size_t>(k)] / (gap * gap);
    g(n + k) = 1.0 / gap;
  }
  return g;
}

PoissonStructure dirac_restrict(const PoissonStructure& base, ScalarFunction phi1, ScalarFunction phi2) {
  PoissonStructure ps = base;
  ps.restricted = true;
  ps.label = "dirac(" + base.label + ")";
  ps.tensor_fn = [base, phi1 = std::move(phi1), phi2 = std::move(phi2)](const Eigen::VectorXd& x) {
    const Tensor t = base.tensor(x);
    const Eigen::VectorXd g1 = phi1.gradient(x);
    const Eigen::VectorXd g2 = phi2.gradient(x);
    const Eigen::VectorXd u1 = t * g1;
    const Eigen::VectorXd u2 = t * g2;
    const double c = g1.dot(u2);
    if (!(std::abs(c - 1.0) <= kUnitBracketTol)) {
      std::ostringstream os;
      os << "constraint bracket {phi1, phi2} = " << c << ", Dirac reduction needs 1";
      raise(ErrorCode::ConstraintBracketNotUnit, os.str());
    }
    return Tensor(t + (u2 * u1.transpose() - u1 * u2.transpose()) / c);
  };
  return ps;
}

ScalarFunction casimir_phi1(const WeightFn& f, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  ScalarFunction phi;
  phi.value = [f, nn](const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < nn; ++k) acc += f.antiderivative(x(k));
    return acc;
  };
  phi.gradient = [f, nn](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * nn);
    for (Eigen::Index k = 0; k < nn; ++k) g(k) = 1.0 / f(x(k));
    return g;
  };
  return phi;
}

ScalarFunction casimir_phi2(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  ScalarFunction phi;
  phi.value = [nn](const Eigen::VectorXd& x) { return std::log(x.tail(nn).sum()); };
  phi.gradient = [nn](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * nn);
    g.tail(nn).setConstant(1.0 / x.tail(nn).sum());
    return g;
  };
  return phi;
}

ScalarFunction cv_casimir(int p, std::size_t n) {
  if (p < 0 || p > 2) raise(ErrorCode::InvalidInput, "c-v Casimirs exist for p = 0, 1, 2");
  const auto nn = static_cast<Eigen::Index>(n);
  // Gradient of a spectral function g(L) from the symmetric matrix G = dg/dL
  // on the tridiagonal pattern: d/dv_i = G_ii, d/dc_i = 2 G_{i,i+1}.
  auto pattern = [nn](const Eigen::MatrixXd& g) {
    Eigen::VectorXd out(2 * nn - 1);
    for (Eigen::Index i = 0; i < nn; ++i) out(i) = g(i, i);
    for (Eigen::Index i = 0; i + 1 < nn; ++i) out(nn + i) = 2.0 * g(i, i + 1);
    return out;
  };
  auto dense = [n](const Eigen::VectorXd& x) { return JacobiMatrix::from_cv_state(x, n).dense(); };
  ScalarFunction phi;
  switch (p) {
    case 0:
      phi.value = [nn](const Eigen::VectorXd& x) { return x.head(nn).sum(); };
      phi.gradient = [nn](const Eigen::VectorXd&) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * nn - 1);
        g.head(nn).setOnes();
        return g;
      };
      break;
    case 1:
      phi.value = [dense](const Eigen::VectorXd& x) { return dense(x).determinant(); };
      phi.gradient = [dense, pattern](const Eigen::VectorXd& x) {
        const Eigen::MatrixXd l = dense(x);
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(l);
        return pattern(lu.determinant() * lu.inverse());
      };
      break;
    default:
      phi.value = [dense](const Eigen::VectorXd& x) { return dense(x).inverse().trace(); };
      phi.gradient = [dense, pattern](const Eigen::VectorXd& x) {
        const Eigen::MatrixXd inv = dense(x).inverse();
        return Eigen::VectorXd(-pattern(inv * inv));
      };
      break;
  }
  return phi;
}

double jacobi_residual(const PoissonStructure& p, const Eigen::VectorXd& state, const std::vector<IndexTriple>& triples) {
  const auto d = static_cast<Eigen::Index>(p.dimension());
  check_state(state, p.dimension(), p.label);
  const Tensor t = p.tensor(state);
  std::vector<Tensor> dt(static_cast<std::size_t>(d));
  for (Eigen::Index l = 0; l < d; ++l) {
    const double h = fd_step(state(l));
    Eigen::VectorXd plus = state;
    Eigen::VectorXd minus = state;
    plus(l) += h;
    minus(l) -= h;
    dt[static_cast<std::size_t>(l)] = (p.tensor(plus) - p.tensor(minus)) / (plus(l) - minus(l));
  }
  auto term = [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    double acc = 0.0;
    for (Eigen::Index l = 0; l < d; ++l) acc += dt[static_cast<std::size_t>(l)](i, j) * t(l, k);
    return acc;
  };
  auto cyclic = [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    return std::abs(term(i, j, k) + term(j, k, i) + term(k, i, j));
  };

  double worst = 0.0;
  if (triples.empty()) {
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = i + 1; j < d; ++j)
        for (Eigen::Index k = j + 1; k < d; ++k) worst = std::max(worst, cyclic(i, j, k));
  } else {
    for (const auto& tr : triples) {
      if (std::max({tr.i, tr.j, tr.k}) >= static_cast<std::size_t>(d))
        raise(ErrorCode::InvalidInput, "Jacobi triple index out of range");
      worst = std::max(worst, cyclic(static_cast<Eigen::Index>(tr.i), static_cast<Eigen::Index>(tr.j),
                                     static_cast<Eigen::Index>(tr.k)));
    }
  }
  return worst;
}

Eigen::MatrixXd fd_jacobian(const StateMap& map, const Eigen::VectorXd& state) {
  const Eigen::VectorXd y0 = map(state);
  Eigen::MatrixXd jac(y0.size(), state.size());
  for (Eigen::Index l = 0; l < state.size(); ++l) {
    const double h = fd_step(state(l));
    Eigen::VectorXd plus = state;
    Eigen::VectorXd minus = state;
    plus(l) += h;
    minus(l) -= h;
    jac.col(l) = (map(plus) - map(minus)) / (plus(l) - minus(l));
  }
  return jac;
}

Tensor pushforward(const PoissonStructure& p, const StateMap& map, const Eigen::VectorXd& state) {
  const Eigen::MatrixXd jac = fd_jacobian(map, state);
  return jac * p.tensor(state) * jac.transpose();
}

double casimir_residual(const PoissonStructure& p, const ScalarFunction& phi, const Eigen::VectorXd& state) {
  return (p.tensor(state) * phi.gradient(state)).cwiseAbs().maxCoeff();
}

PoissonStructure corrupted(const PoissonStructure& p) {
  if (p.dimension() < 2) raise(ErrorCode::InvalidInput, "nothing to corrupt in a 1-dimensional chart");
  PoissonStructure out = p;
  out.label = "corrupted(" + p.label + ")";
  // In the z-rho chart every {z_k, z_n} becomes 1; elsewhere only {x_0, x_1}.
  const auto block = static_cast<Eigen::Index>(p.chart == Chart::ZRHO ? p.n : 2);
  out.tensor_fn = [inner = p.tensor_fn, block](const Eigen::VectorXd& x) {
    Tensor t = inner(x);
    for (Eigen::Index i = 0; i < block; ++i)
      for (Eigen::Index j = i + 1; j < block; ++j) {
        t(i, j) = 1.0;
        t(j, i) = -1.0;
      }
    return t;
  };
  return out;
}

}  // namespace toda

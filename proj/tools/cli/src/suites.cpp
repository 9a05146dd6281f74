#include "toda/cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "toda/brackets.hpp"
#include "toda/cli/envelope.hpp"
#include "toda/cli/random_states.hpp"
#include "toda/coords.hpp"
#include "toda/errors.hpp"
#include "toda/flows.hpp"
#include "toda/spectral.hpp"

namespace toda::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PropertyDecl {
  std::string name;
  double tolerance;
  bool at_least = false;
  std::string note;
};

using Measurements = std::vector<std::pair<std::string, double>>;
using TrialFn = std::function<void(std::size_t n, std::mt19937_64& rng, Measurements& out)>;

struct SuiteDef {
  std::string name;
  std::size_t n_min;
  std::size_t n_max;
  std::size_t default_trials;
  std::vector<PropertyDecl> props;
  TrialFn trial;
};

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

double jacobi_distance(const JacobiMatrix& a, const JacobiMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.diag()[i] - b.diag()[i]));
  for (std::size_t i = 0; i + 1 < a.size(); ++i) d = std::max(d, std::abs(a.offdiag()[i] - b.offdiag()[i]));
  return d;
}

double relative(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Real evaluation points at least 0.05 away from every pole.
std::vector<double> off_pole_points(std::mt19937_64& rng, const std::vector<double>& poles, std::size_t count) {
  std::uniform_real_distribution<double> uni(-4.0, 4.0);
  std::vector<double> out;
  while (out.size() < count) {
    const double x = uni(rng);
    if (std::all_of(poles.begin(), poles.end(), [x](double z) { return std::abs(z - x) >= 0.05; })) out.push_back(x);
  }
  return out;
}

const PoleRange kSymmetric{-3.0, 3.0, 0.05, 0.0};
const PoleRange kPositive{0.5, 6.0, 0.05, 0.0};

// ---------------------------------------------------------------- roundtrip

SuiteDef roundtrip_suite() {
  SuiteDef def{"roundtrip", 1, 8, 200, {}, {}};
  def.props = {
      {"inverse_lanczos_roundtrip", 1e-10, false, "|inverse(direct(J)) - J|_inf / (1 + |J|_inf)"},
      {"inverse_continued_fraction_roundtrip", 1e-8, false, "same metric, N <= 5"},
      {"sum_rho_minus_one", 1e-10, false, ""},
      {"positivity_and_interlacing_failures", 0.0, false, "count of states with rho <= 0 or broken interlacing"},
      {"weyl_forms_relative_disagreement", 1e-8, false, "pole-residue vs -Q_N/P_N vs factored, 5 points"},
  };
  def.trial = [](std::size_t n, std::mt19937_64& rng, Measurements& out) {
    const JacobiMatrix jm = random_jacobi(rng, n);
    const SpectralData s = direct_transform(jm);
    const double scale = 1.0 + jm.max_abs();
    out.emplace_back("inverse_lanczos_roundtrip", jacobi_distance(inverse_transform(s), jm) / scale);
    if (n <= 5)
      out.emplace_back("inverse_continued_fraction_roundtrip",
                       jacobi_distance(inverse_transform_continued_fraction(s), jm) / scale);
    out.emplace_back("sum_rho_minus_one", std::abs(s.q0() - 1.0));
    const auto member = validate(s);
    const bool positive = std::all_of(s.rho.begin(), s.rho.end(), [](double r) { return r > 0.0; });
    out.emplace_back("positivity_and_interlacing_failures", positive && member.interlaces ? 0.0 : 1.0);

    const auto zeros = gammas(s);
    double worst = 0.0;
    for (double x : off_pole_points(rng, s.z, 5)) {
      const double a = weyl_eval(s, x);
      const auto pq = pq_polynomials(jm, x);
      const double b = -pq.Q[n] / pq.P[n];
      double c = -zeros.q0;
      for (double g : zeros.gamma) c *= x - g;
      for (double z : s.z) c /= x - z;
      worst = std::max({worst, relative(a, b), relative(a, c), relative(b, c)});
    }
    out.emplace_back("weyl_forms_relative_disagreement", worst);
  };
  return def;
}

// ------------------------------------------------------------------- jacobi

SuiteDef jacobi_suite(bool negative_control) {
  SuiteDef def{"jacobi", 2, 5, 100, {}, {}};
  const std::string note = negative_control ? "NEGATIVE CONTROL: tensors corrupted" : "";
  for (int p = 0; p <= 3; ++p) {
    const auto label = WeightFn::power(p).label();
    def.props.push_back({"jacobi_zrho_f=" + label, 1e-6, false, note});
    def.props.push_back({"jacobi_zrho_restricted_f=" + label, 1e-6, false, note});
  }
  def.props.push_back({"negative_control_detected", 1e-3, true, "max residual with every {z_k, z_n} set to 1"});
  def.trial = [negative_control](std::size_t n, std::mt19937_64& rng, Measurements& out) {
    for (int p = 0; p <= 3; ++p) {
      const WeightFn f = WeightFn::power(p);
      const SpectralData s = random_rat_n_prime(rng, n, p == 1 ? kPositive : kSymmetric);
      const Eigen::VectorXd x = s.zrho_state();
      auto base = zrho_tensor(f, n);
      auto restricted = zrho_restricted_tensor(f, n);
      if (negative_control) {
        base = corrupted(base);
        restricted = corrupted(restricted);
      }
      out.emplace_back("jacobi_zrho_f=" + f.label(), jacobi_residual(base, x));
      out.emplace_back("jacobi_zrho_restricted_f=" + f.label(), jacobi_residual(restricted, x));
      if (p == 0) out.emplace_back("negative_control_detected", jacobi_residual(corrupted(zrho_tensor(f, n)), x));
    }
  };
  return def;
}

// ---------------------------------------------------------------- hierarchy

SuiteDef hierarchy_suite() {
  SuiteDef def{"hierarchy", 2, 5, 50, {}, {}};
  def.props = {
      {"hamiltonian_field_agreement_across_p", 1e-10, false,
       "max_p |X(k,p) - X(k,0)| / |X(k,0)|, k <= 3; pi_1, pi_2 as defined give X(k,p) = 2 X(k,0)"},
      {"hamiltonian_field_p1_vs_p2", 1e-10, false, "k = 2, 3"},
      {"hamiltonian_field_pi_p_over_2pi_0", 1e-10, false, "measured normalization |X(k,p) - 2 X(k,0)| / |X(k,0)|"},
      {"lax_rhs_vs_hamiltonian_p0", 1e-10, false, "relative, k <= 3"},
      {"restricted_tensor_flow_identity", 1e-13, false, "zrho'(f=z^p) grad H_{k-p} vs rho' ODE"},
      {"lax_flow_eigenvalue_drift", 1e-8, false, "k = 1, t = 5, dt = 1e-3"},
      {"lax_flow_vs_exact_flow_rho", 1e-7, false, "k = 1, t = 5"},
      {"hamiltonians_conserved", 1e-8, false, "H_0..H_3 along the Lax flow"},
      {"exact_flow_semigroup", 1e-12, false, ""},
  };
  def.trial = [](std::size_t n, std::mt19937_64& rng, Measurements& out) {
    const JacobiMatrix jm = random_jacobi(rng, n);
    double across = 0.0;
    double p12 = 0.0;
    double twice = 0.0;
    double lax = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const Eigen::VectorXd x0 = hamiltonian_field(jm, k, 0);
      const double norm = std::max(x0.cwiseAbs().maxCoeff(), 1e-300);
      for (int p = 1; p <= std::min(k, 2); ++p) {
        const Eigen::VectorXd xp = hamiltonian_field(jm, k, p);
        across = std::max(across, max_abs_diff(xp, x0) / norm);
        twice = std::max(twice, max_abs_diff(xp, 2.0 * x0) / norm);
      }
      if (k >= 2) {
        const Eigen::VectorXd x1 = hamiltonian_field(jm, k, 1);
        const Eigen::VectorXd x2 = hamiltonian_field(jm, k, 2);
        p12 = std::max(p12, max_abs_diff(x1, x2) / std::max(x1.cwiseAbs().maxCoeff(), 1e-300));
      }
      lax = std::max(lax, max_abs_diff(lax_rhs(jm, k), x0) / norm);
    }
    out.emplace_back("hamiltonian_field_agreement_across_p", across);
    out.emplace_back("hamiltonian_field_p1_vs_p2", p12);
    out.emplace_back("hamiltonian_field_pi_p_over_2pi_0", twice);
    out.emplace_back("lax_rhs_vs_hamiltonian_p0", lax);

    const SpectralData s = random_rat_n_prime(rng, n, kSymmetric);
    const Eigen::VectorXd x = s.zrho_state();
    const auto nn = static_cast<Eigen::Index>(n);
    double identity = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const Eigen::VectorXd target = spectral_field(s, k);
      for (int p = 0; p <= std::min(k, 2); ++p) {
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * nn);
        for (Eigen::Index i = 0; i < nn; ++i) grad(i) = std::pow(x(i), k - p);
        const Eigen::VectorXd field = zrho_restricted_tensor(WeightFn::power(p), n).tensor(x) * grad;
        identity = std::max(identity, max_abs_diff(field, target) / (1.0 + target.cwiseAbs().maxCoeff()));
      }
    }
    out.emplace_back("restricted_tensor_flow_identity", identity);

    const JacobiMatrix j0 = inverse_transform(s);
    FlowSpec spec;
    spec.k = 1;
    spec.method = FlowMethod::Rk4Lax;
    spec.t_final = 5.0;
    spec.dt = 1e-3;
    spec.record_every = 5000;
    const auto traj = evolve(spec, j0);
    const auto j_end = JacobiMatrix::from_cv_state(traj.states.back(), n);
    const auto s_end = direct_transform(j_end);
    double drift = 0.0;
    for (double d : traj.spectrum_drift) drift = std::max(drift, d);
    out.emplace_back("lax_flow_eigenvalue_drift", drift);
    const auto exact = exact_flow(s, 1, spec.t_final);
    double rho_gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) rho_gap = std::max(rho_gap, std::abs(s_end.rho[i] - exact.rho[i]));
    out.emplace_back("lax_flow_vs_exact_flow_rho", rho_gap);
    double cons = 0.0;
    for (int m = 0; m <= 3; ++m) {
      Eigen::MatrixXd a = j0.dense();
      Eigen::MatrixXd b = j_end.dense();
      Eigen::MatrixXd pa = a;
      Eigen::MatrixXd pb = b;
      for (int r = 0; r < m; ++r) {
        pa = pa * a;
        pb = pb * b;
      }
      cons = std::max(cons, std::abs(pa.trace() - pb.trace()) / (m + 1));
    }
    out.emplace_back("hamiltonians_conserved", cons);

    const auto half = exact_flow(exact_flow(s, 2, 0.3), 2, 0.4);
    const auto whole = exact_flow(s, 2, 0.7);
    double semi = 0.0;
    for (std::size_t i = 0; i < n; ++i) semi = std::max(semi, std::abs(half.rho[i] - whole.rho[i]));
    out.emplace_back("exact_flow_semigroup", semi);
  };
  return def;
}

// ------------------------------------------------------------------ darboux

SuiteDef darboux_suite() {
  SuiteDef def{"darboux", 2, 5, 20, {}, {}};
  def.props = {
      {"iy_chart_vs_zrho_f=1", 1e-6, false, "{y_k, I_n} = delta, all else 0"},
      {"iy_chart_vs_zrho_f=z", 1e-6, false, "z in [0.5, 6]"},
      {"zq_brackets_f=1", 1e-6, false, "{q(z_k), z_n} = q(z_k) delta, {q, q} = 0"},
      {"action_angle_vs_zrho_restricted_f=1", 1e-6, false, "{theta_k, I_n} = delta, I and theta commute"},
      {"gamma_pi_vs_zrho_f=1", 1e-6, false,
       "{gamma_k, pi_n} = delta, {Phi_1, Phi_2} = 1; measured -delta and -1 under the clockwise orientation"},
      {"angle_flow_linearization", 1e-6, false, "second difference of theta along the k = 1 exact flow"},
      {"chart_jacobians_vs_fd", 1e-4, false, "analytic against central-difference Jacobians, relative"},
  };
  def.trial = [](std::size_t n, std::mt19937_64& rng, Measurements& out) {
    const WeightFn one = WeightFn::power(0);
    const WeightFn zed = WeightFn::power(1);
    const SpectralData s = random_rat_n(rng, n, kSymmetric);
    const Eigen::VectorXd x = s.zrho_state();
    out.emplace_back("iy_chart_vs_zrho_f=1",
                     verify_canonical(iy_jacobian(one, n), zrho_tensor(one, n), x, canonical_pattern(ChartId::IY, n), 1e-6)
                         .max_deviation);
    const SpectralData sp = random_rat_n(rng, n, kPositive);
    out.emplace_back("iy_chart_vs_zrho_f=z",
                     verify_canonical(iy_jacobian(zed, n), zrho_tensor(zed, n), sp.zrho_state(),
                                      canonical_pattern(ChartId::IY, n), 1e-6)
                         .max_deviation);

    // Expected {q_k, z_n} = q_k delta in (z, q) coordinates.
    const auto nn = static_cast<Eigen::Index>(n);
    const auto q = q_at_poles(s);
    Tensor expected = Tensor::Zero(2 * nn, 2 * nn);
    for (Eigen::Index k = 0; k < nn; ++k) {
      expected(nn + k, k) = q[static_cast<std::size_t>(k)];
      expected(k, nn + k) = -q[static_cast<std::size_t>(k)];
    }
    out.emplace_back("zq_brackets_f=1",
                     verify_canonical(zq_jacobian(n), zrho_tensor(one, n), x, expected, 1e-6).max_deviation);

    const SpectralData sn = random_rat_n_prime(rng, n, kSymmetric);
    const Eigen::VectorXd xn = sn.zrho_state();
    out.emplace_back("action_angle_vs_zrho_restricted_f=1",
                     verify_canonical(action_angle_jacobian(one, n), zrho_restricted_tensor(one, n), xn,
                                      canonical_pattern(ChartId::ActionAngle, n), 1e-6)
                         .max_deviation);
    out.emplace_back("gamma_pi_vs_zrho_f=1",
                     verify_canonical(gamma_pi_jacobian(one, n), zrho_tensor(one, n), xn,
                                      canonical_pattern(ChartId::GammaPi, n), 1e-6)
                         .max_deviation);

    const auto th0 = angle_coords(sn);
    const auto th1 = angle_coords(exact_flow(sn, 1, 0.5));
    const auto th2 = angle_coords(exact_flow(sn, 1, 1.0));
    double lin = 0.0;
    for (std::size_t j = 0; j < th0.size(); ++j) lin = std::max(lin, std::abs(th2[j] - 2.0 * th1[j] + th0[j]));
    out.emplace_back("angle_flow_linearization", lin);

    double jac = 0.0;
    auto compare = [&jac](const JacobianFn& analytic, const StateMap& map, const Eigen::VectorXd& at) {
      const Eigen::MatrixXd a = analytic(at);
      jac = std::max(jac, (a - fd_jacobian(map, at)).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff()));
    };
    compare(zq_jacobian(n), zq_map(n), x);
    compare(iy_jacobian(one, n), iy_map(one, n), x);
    compare(iy_jacobian(zed, n), iy_map(zed, n), sp.zrho_state());
    compare(action_angle_jacobian(one, n), action_angle_map(one, n), xn);
    compare(gamma_pi_jacobian(one, n), gamma_pi_map(one, n), xn);
    out.emplace_back("chart_jacobians_vs_fd", jac);
  };
  return def;
}

// ----------------------------------------------------------------- casimirs

SuiteDef casimirs_suite() {
  SuiteDef def{"casimirs", 2, 5, 50, {}, {}};
  def.props = {
      {"pi0_trace_L", 1e-9, false, ""},
      {"pi1_det_L", 1e-9, false, "min |z_k| >= 0.1"},
      {"pi2_trace_L_inverse", 1e-9, false, "min |z_k| >= 0.1"},
  };
  for (int p = 0; p <= 2; ++p) {
    const auto label = WeightFn::power(p).label();
    def.props.push_back({"restricted_phi1_f=" + label, 1e-9, false, "Phi_1 = sum F(z_k)"});
    def.props.push_back({"restricted_phi2_f=" + label, 1e-9, false, "Phi_2 = log q0"});
    def.props.push_back({"dirac_equals_restricted_f=" + label, 1e-10, false, "entrywise"});
    def.props.push_back({"constraint_bracket_unit_f=" + label, 1e-9, false,
                         "|{Phi_1, Phi_2} - 1|; measured {Phi_1, Phi_2} = -1 under the clockwise orientation"});
  }
  def.trial = [](std::size_t n, std::mt19937_64& rng, Measurements& out) {
    PoleRange away = kSymmetric;
    away.min_abs = 0.1;
    const JacobiMatrix jm = inverse_transform(random_rat_n_prime(rng, n, away));
    const Eigen::VectorXd cv = jm.cv_state();
    out.emplace_back("pi0_trace_L", casimir_residual(pi0_cv(n), cv_casimir(0, n), cv));
    out.emplace_back("pi1_det_L", casimir_residual(pi1_cv(n), cv_casimir(1, n), cv));
    out.emplace_back("pi2_trace_L_inverse", casimir_residual(pi2_cv(n), cv_casimir(2, n), cv));

    for (int p = 0; p <= 2; ++p) {
      const WeightFn f = WeightFn::power(p);
      const SpectralData s = random_rat_n(rng, n, p == 0 ? kSymmetric : kPositive);
      const Eigen::VectorXd x = s.zrho_state();
      const auto restricted = zrho_restricted_tensor(f, n);
      const auto phi1 = casimir_phi1(f, n);
      const auto phi2 = casimir_phi2(n);
      out.emplace_back("restricted_phi1_f=" + f.label(), casimir_residual(restricted, phi1, x));
      out.emplace_back("restricted_phi2_f=" + f.label(), casimir_residual(restricted, phi2, x));
      const auto reduced = dirac_restrict(zrho_tensor(f, n), phi2, phi1);
      out.emplace_back("dirac_equals_restricted_f=" + f.label(),
                       (reduced.tensor(x) - restricted.tensor(x)).cwiseAbs().maxCoeff());
      const double c = phi1.gradient(x).dot(zrho_tensor(f, n).tensor(x) * phi2.gradient(x));
      out.emplace_back("constraint_bracket_unit_f=" + f.label(), std::abs(c - 1.0));
    }
  };
  return def;
}

SuiteDef make_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "roundtrip") return roundtrip_suite();
  if (name == "jacobi") return jacobi_suite(opts.negative_control);
  if (name == "hierarchy") return hierarchy_suite();
  if (name == "darboux") return darboux_suite();
  if (name == "casimirs") return casimirs_suite();
  raise(ErrorCode::InvalidInput, "unknown suite '" + name + "'");
}

std::uint64_t stream_id(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string format_sci(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass; });
}

std::vector<std::string> suite_names() { return {"roundtrip", "jacobi", "hierarchy", "darboux", "casimirs"}; }

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  const SuiteDef def = make_suite(name, opts);
  std::size_t n_min = def.n_min;
  std::size_t n_max = def.n_max;
  if (opts.n) {
    if (*opts.n < def.n_min || *opts.n > 16) {
      std::ostringstream os;
      os << "suite '" << name << "' needs " << def.n_min << " <= n <= 16";
      raise(ErrorCode::InvalidInput, os.str());
    }
    n_min = n_max = *opts.n;
  }
  const std::size_t trials = opts.trials.value_or(def.default_trials);
  if (trials == 0) raise(ErrorCode::InvalidInput, "trials must be >= 1");

  // Each trial writes only its own slot; the reduction below runs in trial
  // order, so the report does not depend on scheduling.
  std::vector<Measurements> results(trials);
  std::vector<std::string> failures(trials);
  std::atomic<std::size_t> next{0};
  const std::uint64_t stream = stream_id(name);
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      const std::size_t n = n_min + t % (n_max - n_min + 1);
      auto rng = trial_engine(opts.seed, stream, t);
      try {
        def.trial(n, rng, results[t]);
      } catch (const TodaError& e) {
        failures[t] = std::string(to_string(e.code())) + ": " + e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(trials)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SuiteReport rep;
  rep.suite = name;
  for (std::size_t n = n_min; n <= n_max; ++n) rep.sizes.push_back(n);
  rep.trials = trials;
  rep.seed = opts.seed;
  std::map<std::string, std::size_t> index;
  for (const auto& d : def.props) {
    index[d.name] = rep.properties.size();
    rep.properties.push_back({d.name, 0, 0.0, d.tolerance, d.at_least, false, d.note});
  }
  std::size_t errors = 0;
  std::string first_error;
  for (std::size_t t = 0; t < trials; ++t) {
    if (!failures[t].empty()) {
      if (errors++ == 0) first_error = "trial " + std::to_string(t) + ": " + failures[t];
      continue;
    }
    for (const auto& [prop, value] : results[t]) {
      auto& p = rep.properties.at(index.at(prop));
      ++p.cases;
      const double v = std::isnan(value) ? kInf : value;
      p.measured = std::max(p.measured, v);
    }
  }
  // Properties that never apply at the sampled sizes are left out rather than failed.
  if (errors == 0)
    std::erase_if(rep.properties, [](const PropertyResult& p) { return p.cases == 0; });
  for (auto& p : rep.properties) p.pass = p.cases > 0 && (p.at_least ? p.measured >= p.tolerance : p.measured <= p.tolerance);
  rep.properties.push_back({"trials_without_errors", trials, static_cast<double>(errors), 0.0, false, errors == 0,
                            first_error});
  return rep;
}

std::vector<SuiteReport> run_suites(const std::string& name, const SuiteOptions& opts) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& s : suite_names()) out.push_back(run_suite(s, opts));
  } else {
    out.push_back(run_suite(name, opts));
  }
  return out;
}

nlohmann::json to_json(const std::vector<SuiteReport>& reports) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reports) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) {
      nlohmann::json measured = std::isfinite(p.measured) ? nlohmann::json(p.measured) : nlohmann::json("inf");
      props.push_back({{"name", p.name},
                       {"cases", p.cases},
                       {"measured", measured},
                       {"tolerance", p.tolerance},
                       {"comparison", p.at_least ? ">=" : "<="},
                       {"pass", p.pass},
                       {"note", p.note}});
    }
    suites.push_back({{"suite", r.suite},
                      {"sizes", r.sizes},
                      {"trials", r.trials},
                      {"seed", r.seed},
                      {"pass", r.pass()},
                      {"properties", props}});
    all = all && r.pass();
  }
  return {{"pass", all}, {"suites", suites}, {"meta", meta()}};
}

std::string to_table(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "suite " << r.suite << "  (N ";
    os << r.sizes.front();
    if (r.sizes.size() > 1) os << ".." << r.sizes.back();
    os << ", " << r.trials << " trials, seed " << r.seed << ")  " << (r.pass() ? "PASS" : "FAIL") << '\n';
    for (const auto& p : r.properties) {
      char line[256];
      std::snprintf(line, sizeof line, "  %-4s %-40s %10s %s %-9s", p.pass ? "ok" : "FAIL", p.name.c_str(),
                    format_sci(p.measured).c_str(), p.at_least ? ">=" : "<=", format_sci(p.tolerance).c_str());
      os << line;
      if (!p.pass && !p.note.empty()) os << "  " << p.note;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace toda::cli

#include "toda/cli/commands.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "toda/brackets.hpp"
#include "toda/cli/envelope.hpp"
#include "toda/cli/suites.hpp"
#include "toda/coords.hpp"
#include "toda/flows.hpp"
#include "toda/spectral.hpp"
#include "toda/tridiag.hpp"

namespace toda::cli {

namespace {

using Complex = std::complex<double>;

// Runs body, mapping library errors onto exit codes with a message on err.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const TodaError& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error [InvalidInput]: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path == "-" || path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) raise(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  file << text;
}

JacobiMatrix as_jacobi(const StateEnvelope& env) {
  switch (env.kind()) {
    case StateKind::Phase:
      return flaschka(std::get<PhasePoint>(env.payload));
    case StateKind::Jacobi:
      return std::get<JacobiMatrix>(env.payload);
    case StateKind::Spectral:
      return inverse_transform(std::get<SpectralData>(env.payload));
  }
  raise(ErrorCode::InvalidInput, "unreachable state kind");
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string complex_text(Complex z) {
  std::ostringstream os;
  os << format_double(z.real());
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << format_double(std::abs(z.imag())) << "i";
  return os.str();
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteState:
    case ErrorCode::OverflowGuard:
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::SingularMatrix:
      return kExitBlowUp;
    case ErrorCode::StructureViolation:
      return kExitPropertyFailure;
    default:
      return kExitInvalidInput;
  }
}

int cmd_transform(const TransformOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const StateEnvelope env = read_envelope(opts.input);
    StateEnvelope result{SpectralData{}};
    if (opts.direction == "forward") {
      if (opts.to != "jacobi" && opts.to != "spectral")
        raise(ErrorCode::InvalidInput, "--to must be jacobi or spectral");
      if (env.kind() == StateKind::Spectral) raise(ErrorCode::InvalidInput, "forward transform of spectral data");
      const JacobiMatrix jm = as_jacobi(env);
      if (opts.to == "jacobi") {
        result.payload = jm;
      } else {
        const SpectralData s = direct_transform(jm);
        const JacobiMatrix back = inverse_transform(s);
        double dev = 0.0;
        for (std::size_t i = 0; i < jm.size(); ++i) dev = std::max(dev, std::abs(back.diag()[i] - jm.diag()[i]));
        for (std::size_t i = 0; i + 1 < jm.size(); ++i)
          dev = std::max(dev, std::abs(back.offdiag()[i] - jm.offdiag()[i]));
        err << "round trip |inverse(direct(J)) - J|_inf = " << format_double(dev) << '\n';
        result.payload = s;
      }
    } else if (opts.direction == "inverse") {
      if (env.kind() == StateKind::Phase) raise(ErrorCode::InvalidInput, "inverse transform of a phase point");
      const JacobiMatrix jm = as_jacobi(env);
      if (opts.q0 || env.kind() == StateKind::Jacobi) {
        result.payload = unflaschka(jm, opts.q0.value_or(0.0));
      } else {
        result.payload = jm;
      }
    } else {
      raise(ErrorCode::InvalidInput, "--direction must be forward or inverse");
    }
    emit(opts.output, out, to_json(result).dump(2) + "\n");
    return kExitPass;
  });
}

int cmd_evolve(const EvolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.format != "csv" && opts.format != "json") raise(ErrorCode::InvalidInput, "--out must be csv or json");
    FlowSpec spec;
    spec.k = opts.k;
    spec.p = opts.p;
    spec.t_final = opts.t;
    spec.dt = opts.dt;
    spec.record_every = opts.record_every;
    if (opts.method == "exact") {
      spec.method = FlowMethod::ExactSpectral;
    } else if (opts.method == "rk4-lax") {
      spec.method = FlowMethod::Rk4Lax;
    } else if (opts.method == "rk4-hamiltonian") {
      spec.method = FlowMethod::Rk4Hamiltonian;
    } else {
      raise(ErrorCode::InvalidInput, "--method must be exact, rk4-lax or rk4-hamiltonian");
    }

    const StateEnvelope env = read_envelope(opts.input);
    Trajectory traj;
    SpectralData start;
    if (env.kind() == StateKind::Spectral) {
      start = std::get<SpectralData>(env.payload);
      traj = evolve(spec, start);
    } else {
      const JacobiMatrix jm = as_jacobi(env);
      start = direct_transform(jm);
      traj = evolve(spec, jm);
    }

    if (spec.method != FlowMethod::ExactSpectral) {
      const auto end = direct_transform(JacobiMatrix::from_cv_state(traj.states.back(), traj.n));
      const auto exact = exact_flow(start, spec.k, traj.times.back());
      double gap = 0.0;
      for (std::size_t i = 0; i < end.size(); ++i) gap = std::max(gap, std::abs(end.rho[i] - exact.rho[i]));
      err << "max |rho - exact_flow rho| at t = " << format_double(traj.times.back()) << ": " << format_double(gap)
          << '\n';
    }
    emit(opts.output, out, opts.format == "csv" ? trajectory_csv(traj) : trajectory_json(traj).dump(2) + "\n");
    return kExitPass;
  });
}

int cmd_bracket(const BracketOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.format != "json" && opts.format != "text") raise(ErrorCode::InvalidInput, "--format must be json or text");
    const StateEnvelope env = read_envelope(opts.input);
    if (env.kind() != StateKind::Spectral) raise(ErrorCode::InvalidInput, "bracket needs a spectral envelope");
    const auto& s = std::get<SpectralData>(env.payload);
    if (!validate(s).rat_n) raise(ErrorCode::InvalidInput, "state is not in Rat_N: need distinct increasing poles, nonzero residues");
    const WeightFn f = WeightFn::power(opts.f);
    const Complex p{opts.p_re, opts.p_im};
    const Complex q{opts.q_re, opts.q_im};
    const auto bd = opts.restricted ? restricted_bracket_breakdown(s, p, q, f) : analytic_bracket_breakdown(s, p, q, f);
    const auto closed = closed_form_bracket(s, p, q, f, opts.restricted);

    if (opts.format == "text") {
      out << (opts.restricted ? "restricted" : "unrestricted") << " bracket {chi(p), chi(q)}, f = " << f.label()
          << ", p = " << complex_text(p) << ", q = " << complex_text(q) << '\n';
      out << "value: " << complex_text(bd.value) << '\n';
      for (std::size_t k = 0; k < s.size(); ++k)
        out << "  pole z_" << k << " = " << format_double(s.z[k]) << ": " << complex_text(bd.pole_terms[k]) << '\n';
      out << "residue at p: " << complex_text(bd.residue_p) << '\n';
      out << "residue at q: " << complex_text(bd.residue_q) << '\n';
      if (bd.residue_inf) out << "residue at infinity: " << complex_text(*bd.residue_inf) << '\n';
      if (closed)
        out << "closed form: " << complex_text(*closed) << "  (|difference| = " << format_double(std::abs(*closed - bd.value))
            << ")\n";
      return kExitPass;
    }

    nlohmann::json poles = nlohmann::json::array();
    for (std::size_t k = 0; k < s.size(); ++k) poles.push_back({{"z", s.z[k]}, {"term", complex_json(bd.pole_terms[k])}});
    nlohmann::json j = {{"kind", "bracket"},
                        {"restricted", opts.restricted},
                        {"f", f.label()},
                        {"p", complex_json(p)},
                        {"q", complex_json(q)},
                        {"value", complex_json(bd.value)},
                        {"poles", poles},
                        {"residue_p", complex_json(bd.residue_p)},
                        {"residue_q", complex_json(bd.residue_q)},
                        {"residue_inf", bd.residue_inf ? complex_json(*bd.residue_inf) : nlohmann::json(nullptr)},
                        {"closed_form", closed ? complex_json(*closed) : nlohmann::json(nullptr)},
                        {"closed_form_deviation", closed ? nlohmann::json(std::abs(*closed - bd.value)) : nlohmann::json(nullptr)},
                        {"meta", meta()}};
    out << j.dump(2) << '\n';
    return kExitPass;
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.format != "table" && opts.format != "json") raise(ErrorCode::InvalidInput, "--format must be table or json");
    SuiteOptions so;
    so.n = opts.n;
    so.trials = opts.trials;
    so.seed = opts.seed;
    so.negative_control = opts.negative_control;
    so.jobs = opts.jobs;
    const auto reports = run_suites(opts.suite, so);
    const auto j = to_json(reports);
    if (opts.format == "json") {
      out << j.dump(2) << '\n';
    } else {
      out << to_table(reports);
    }
    if (!opts.report.empty()) emit(opts.report, out, j.dump(2) + "\n");
    return j.at("pass").get<bool>() ? kExitPass : kExitPropertyFailure;
  });
}

int cmd_demo(std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PhasePoint pt{{0.0, 0.0}, {0.0, 0.0}};
    const JacobiMatrix jm = flaschka(pt);
    const SpectralData s = direct_transform(jm);
    const auto zeros = gammas(s);
    const WeightFn one = WeightFn::power(0);
    out << "two-site lattice at rest: q = (0, 0), p = (0, 0)\n";
    out << "  Jacobi matrix       v = (" << format_double(jm.diag()[0]) << ", " << format_double(jm.diag()[1])
        << "), c = (" << format_double(jm.offdiag()[0]) << ")\n";
    out << "  spectrum            z = (" << format_double(s.z[0]) << ", " << format_double(s.z[1]) << ")\n";
    out << "  residues          rho = (" << format_double(s.rho[0]) << ", " << format_double(s.rho[1]) << ")\n";
    out << "  Weyl zero       gamma = (" << format_double(zeros.gamma[0]) << ")\n";
    out << "  {chi(2), chi(3)}      = " << complex_text(analytic_bracket(s, 2.0, 3.0, one)) << "  (-49/576 = "
        << format_double(-49.0 / 576.0) << ")\n";
    out << "  restricted            = " << complex_text(restricted_bracket(s, 2.0, 3.0, one)) << "  (-7/576 = "
        << format_double(-7.0 / 576.0) << ")\n";
    const auto flowed = exact_flow(s, 1, std::log(2.0));
    out << "  X_1 flow to t = ln 2: rho = (" << format_double(flowed.rho[0]) << ", " << format_double(flowed.rho[1])
        << ")\n";
    out << "  angle theta_1         = " << format_double(angle_coords(s)[0]) << '\n';
    return kExitPass;
  });
}

}  // namespace toda::cli

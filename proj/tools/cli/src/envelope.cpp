#include "toda/cli/envelope.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "toda/errors.hpp"

namespace toda::cli {

namespace {

constexpr std::string_view kConventions =
    "flaschka: v_k=-p_k, c_k=exp((q_k-q_{k+1})/2); "
    "weyl: chi(z)=sum rho_k/(z_k-z)=-Q_N/P_N, rho_k=(e_0.u_k)^2; "
    "contours: clockwise, bracket=(chi(p)-chi(q)) sum rho_k f(z_k)/((z_k-p)(z_k-q)); "
    "pi1: {v_k,v_k+1}=2c_k^2; hierarchy: x'=pi grad H, A_k=((L^k)_+-(L^k)_-)/2; "
    "antiderivatives: F=z, ln z, -1/(n z^n); restricted rho-rho: Dirac form";

std::vector<double> number_array(const nlohmann::json& payload, const char* key) {
  if (!payload.contains(key)) raise(ErrorCode::InvalidInput, std::string("payload is missing '") + key + "'");
  const auto& arr = payload.at(key);
  if (!arr.is_array()) raise(ErrorCode::InvalidInput, std::string("payload '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number()) raise(ErrorCode::InvalidInput, std::string("payload '") + key + "' has a non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

void require_length(const std::vector<double>& xs, std::size_t expected, const char* key) {
  if (xs.size() != expected) {
    std::ostringstream os;
    os << "payload '" << key << "' has " << xs.size() << " entries, expected " << expected;
    raise(ErrorCode::InvalidInput, os.str());
  }
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Phase:
      return "phase";
    case StateKind::Jacobi:
      return "jacobi";
    case StateKind::Spectral:
      return "spectral";
  }
  return "?";
}

StateKind state_kind_from_string(const std::string& name) {
  if (name == "phase") return StateKind::Phase;
  if (name == "jacobi") return StateKind::Jacobi;
  if (name == "spectral") return StateKind::Spectral;
  raise(ErrorCode::InvalidInput, "unknown state kind '" + name + "' (phase, jacobi, spectral)");
}

std::size_t StateEnvelope::n() const {
  return std::visit([](const auto& p) { return p.size(); }, payload);
}

std::string tool_version() { return "0.1.0"; }

std::string conventions_hash() {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : kConventions) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json meta() { return {{"version", tool_version()}, {"conventions", conventions_hash()}}; }

nlohmann::json to_json(const StateEnvelope& env) {
  nlohmann::json payload;
  if (const auto* ph = std::get_if<PhasePoint>(&env.payload)) {
    payload = {{"q", ph->q}, {"p", ph->p}};
  } else if (const auto* jm = std::get_if<JacobiMatrix>(&env.payload)) {
    payload = {{"v", std::vector<double>(jm->diag().begin(), jm->diag().end())},
               {"c", std::vector<double>(jm->offdiag().begin(), jm->offdiag().end())}};
  } else {
    const auto& s = std::get<SpectralData>(env.payload);
    payload = {{"z", s.z}, {"rho", s.rho}};
  }
  return {{"kind", to_string(env.kind())}, {"n", env.n()}, {"payload", payload}, {"meta", meta()}};
}

StateEnvelope envelope_from_json(const nlohmann::json& j) {
  if (!j.is_object()) raise(ErrorCode::InvalidInput, "envelope must be a JSON object");
  for (const char* key : {"kind", "n", "payload"})
    if (!j.contains(key)) raise(ErrorCode::InvalidInput, std::string("envelope is missing '") + key + "'");
  if (!j.at("kind").is_string()) raise(ErrorCode::InvalidInput, "envelope 'kind' must be a string");
  if (!j.at("n").is_number_integer() || j.at("n").get<long long>() < 1)
    raise(ErrorCode::InvalidInput, "envelope 'n' must be an integer >= 1");
  const auto n = j.at("n").get<std::size_t>();
  const auto& payload = j.at("payload");
  if (!payload.is_object()) raise(ErrorCode::InvalidInput, "envelope 'payload' must be an object");

  switch (state_kind_from_string(j.at("kind").get<std::string>())) {
    case StateKind::Phase: {
      auto q = number_array(payload, "q");
      auto p = number_array(payload, "p");
      require_length(q, n, "q");
      require_length(p, n, "p");
      return {PhasePoint{std::move(q), std::move(p)}};
    }
    case StateKind::Jacobi: {
      auto v = number_array(payload, "v");
      auto c = number_array(payload, "c");
      require_length(v, n, "v");
      require_length(c, n - 1, "c");
      return {JacobiMatrix(std::move(v), std::move(c))};
    }
    case StateKind::Spectral: {
      auto z = number_array(payload, "z");
      auto rho = number_array(payload, "rho");
      require_length(z, n, "z");
      require_length(rho, n, "rho");
      return {SpectralData{std::move(z), std::move(rho)}};
    }
  }
  raise(ErrorCode::InvalidInput, "unreachable state kind");
}

StateEnvelope read_envelope(const std::string& path) {
  nlohmann::json j;
  try {
    if (path == "-") {
      j = nlohmann::json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) raise(ErrorCode::InvalidInput, "cannot open '" + path + "'");
      j = nlohmann::json::parse(in);
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return envelope_from_json(j);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << 't';
  const char* first = traj.chart == Chart::ZRHO ? "z" : traj.chart == Chart::CV ? "v" : "q";
  const char* second = traj.chart == Chart::ZRHO ? "rho" : traj.chart == Chart::CV ? "c" : "p";
  const std::size_t n_second = traj.chart == Chart::CV ? traj.n - 1 : traj.n;
  for (std::size_t k = 0; k < traj.n; ++k) os << ',' << first << k;
  for (std::size_t k = 0; k < n_second; ++k) os << ',' << second << k;
  os << ",sum_rho_drift,spectrum_drift\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << csv_number(traj.times[i]);
    for (Eigen::Index k = 0; k < traj.states[i].size(); ++k) os << ',' << csv_number(traj.states[i](k));
    os << ',' << csv_number(traj.sum_rho_drift[i]) << ',' << csv_number(traj.spectrum_drift[i]) << '\n';
  }
  return os.str();
}

nlohmann::json trajectory_json(const Trajectory& traj) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& x : traj.states) states.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  return {{"kind", "trajectory"},
          {"chart", std::string(to_string(traj.chart))},
          {"n", traj.n},
          {"times", traj.times},
          {"states", states},
          {"sum_rho_drift", traj.sum_rho_drift},
          {"spectrum_drift", traj.spectrum_drift},
          {"meta", meta()}};
}

std::string format_double(double x) { return nlohmann::json(x).dump(); }

}  // namespace toda::cli

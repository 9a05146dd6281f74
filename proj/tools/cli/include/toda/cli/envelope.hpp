#pragma once

// JSON state envelopes and trajectory export.

#include <cstddef>
#include <string>
#include <variant>

#include "json.hpp"
#include "toda/flows.hpp"
#include "toda/spectral.hpp"
#include "toda/tridiag.hpp"

namespace toda::cli {

enum class StateKind { Phase, Jacobi, Spectral };

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& name);

struct StateEnvelope {
  std::variant<PhasePoint, JacobiMatrix, SpectralData> payload;

  StateKind kind() const noexcept { return static_cast<StateKind>(payload.index()); }
  std::size_t n() const;
};

std::string tool_version();
/// FNV-1a hash of the convention summary, so reports record which sign and
/// scale conventions produced them.
std::string conventions_hash();
nlohmann::json meta();

nlohmann::json to_json(const StateEnvelope& env);
/// Throws TodaError(InvalidInput) naming the violated field.
StateEnvelope envelope_from_json(const nlohmann::json& j);
StateEnvelope read_envelope(const std::string& path);  ///< "-" reads stdin

/// Header `t,<fields>,sum_rho_drift,spectrum_drift`, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
nlohmann::json trajectory_json(const Trajectory& traj);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace toda::cli

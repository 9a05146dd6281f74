#pragma once

// The `toda` subcommands. Each returns the process exit code: 0 pass,
// 1 property failure, 2 input validation, 3 numerical blow-up.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "toda/errors.hpp"

namespace toda::cli {

enum ExitCode : int { kExitPass = 0, kExitPropertyFailure = 1, kExitInvalidInput = 2, kExitBlowUp = 3 };

int exit_code_for(ErrorCode code);

struct TransformOptions {
  std::string input = "-";
  std::string direction = "forward";  ///< forward | inverse
  std::string to = "spectral";        ///< forward target: jacobi | spectral
  std::optional<double> q0;           ///< inverse: continue to phase space with q_0 = q0
  std::string output = "-";
};

struct EvolveOptions {
  std::string input = "-";
  int k = 1;
  double t = 0.0;
  std::string method = "exact";  ///< exact | rk4-lax | rk4-hamiltonian
  int p = 0;
  double dt = 1e-3;
  std::size_t record_every = 1;
  std::string format = "csv";  ///< csv | json
  std::string output = "-";
};

struct BracketOptions {
  std::string input = "-";
  int f = 0;  ///< weight z^f
  double p_re = 0.0;
  double p_im = 0.0;
  double q_re = 0.0;
  double q_im = 0.0;
  bool restricted = false;
  std::string format = "json";  ///< json | text
};

struct VerifyOptions {
  std::string suite = "all";
  std::optional<std::size_t> n;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  bool negative_control = false;
  unsigned jobs = 1;
  std::string format = "table";  ///< table | json
  std::string report;            ///< optional path for the JSON report
};

int cmd_transform(const TransformOptions& opts, std::ostream& out, std::ostream& err);
int cmd_evolve(const EvolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bracket(const BracketOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_demo(std::ostream& out, std::ostream& err);

}  // namespace toda::cli

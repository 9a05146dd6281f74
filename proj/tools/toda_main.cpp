#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "toda/cli/commands.hpp"
#include "toda/cli/json_config.hpp"

using namespace toda::cli;

int main(int argc, char** argv) {
  CLI::App app{"Open Toda lattice: spectral transforms, brackets, flows and their verification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON file mirroring the flags; flags override it");
  app.config_formatter(std::make_shared<JsonConfig>());

  TransformOptions topt;
  auto* transform = app.add_subcommand("transform", "Direct or inverse spectral transform of a state envelope");
  transform->add_option("--input,-i", topt.input, "Envelope file, - for stdin")->capture_default_str();
  transform->add_option("--direction", topt.direction, "forward | inverse")->capture_default_str();
  transform->add_option("--to", topt.to, "Forward target: jacobi | spectral")->capture_default_str();
  transform->add_option("--q0", topt.q0, "Inverse: continue to phase space with this q_0");
  transform->add_option("--output,-o", topt.output, "Output file, - for stdout")->capture_default_str();

  EvolveOptions eopt;
  auto* evolve = app.add_subcommand("evolve", "Integrate the k-th flow of the hierarchy");
  evolve->add_option("--input,-i", eopt.input, "Envelope file, - for stdin")->capture_default_str();
  evolve->add_option("--k", eopt.k, "Hierarchy index k >= 1")->capture_default_str();
  evolve->add_option("--t", eopt.t, "Final time")->capture_default_str();
  evolve->add_option("--method", eopt.method, "exact | rk4-lax | rk4-hamiltonian")->capture_default_str();
  evolve->add_option("--p", eopt.p, "Bracket index for rk4-hamiltonian")->capture_default_str();
  evolve->add_option("--dt", eopt.dt, "Step size")->capture_default_str();
  evolve->add_option("--record-every", eopt.record_every, "Record every m-th step")->capture_default_str();
  evolve->add_option("--out", eopt.format, "csv | json")->capture_default_str();
  evolve->add_option("--output,-o", eopt.output, "Output file, - for stdout")->capture_default_str();

  BracketOptions bopt;
  auto* bracket = app.add_subcommand("bracket", "Evaluate {chi(p), chi(q)} for a spectral envelope");
  bracket->add_option("--input,-i", bopt.input, "Envelope file, - for stdin")->capture_default_str();
  bracket->add_option("--f", bopt.f, "Weight f(z) = z^f")->capture_default_str();
  bracket->add_option("--p", bopt.p_re, "Real part of p")->required();
  bracket->add_option("--q", bopt.q_re, "Real part of q")->required();
  bracket->add_option("--p-im", bopt.p_im, "Imaginary part of p")->capture_default_str();
  bracket->add_option("--q-im", bopt.q_im, "Imaginary part of q")->capture_default_str();
  bracket->add_flag("--restricted", bopt.restricted, "Use the bracket restricted to sum rho = 1");
  bracket->add_option("--format", bopt.format, "json | text")->capture_default_str();

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Run seeded property suites");
  verify->add_option("--suite", vopt.suite, "roundtrip | jacobi | hierarchy | darboux | casimirs | all")
      ->capture_default_str();
  verify->add_option("--n", vopt.n, "Lattice size (default: the suite's range)");
  verify->add_option("--trials", vopt.trials, "Random states per suite");
  verify->add_option("--seed", vopt.seed, "RNG seed")->capture_default_str();
  verify->add_option("--jobs,-j", vopt.jobs, "Worker threads")->capture_default_str();
  verify->add_option("--format", vopt.format, "table | json")->capture_default_str();
  verify->add_option("--report", vopt.report, "Also write the JSON report to this file");
  verify->add_flag("--negative-control", vopt.negative_control)->group("");

  app.add_subcommand("demo", "Print the two-site worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInvalidInput;
  }

  if (transform->parsed()) return cmd_transform(topt, std::cout, std::cerr);
  if (evolve->parsed()) return cmd_evolve(eopt, std::cout, std::cerr);
  if (bracket->parsed()) return cmd_bracket(bopt, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(vopt, std::cout, std::cerr);
  return cmd_demo(std::cout, std::cerr);
}

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "symdesign/kron.hpp"

using namespace symdesign::cli;

int main(int argc, char** argv) {
  CLI::App app{"Moment operators, spectral gaps and design diagnostics for SU(d)-symmetric random circuits"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; flags given on the command line take precedence");

  RunConfig cfg;
  app.add_option("--n", cfg.n, "qudit count, N or LO..HI");
  app.add_option("--m", cfg.m, "bulk width, N or LO..HI");
  app.add_option("--d", cfg.d, "local dimension");
  app.add_option("--k", cfg.k, "moment order");
  app.add_option("--ensemble", cfg.ensemble, "swap or cqa")->check(CLI::IsMember({"swap", "cqa"}));
  app.add_option("--geometry", cfg.geometry, "open, periodic, all-to-all or brickwork")
      ->check(CLI::IsMember({"open", "periodic", "all-to-all", "brickwork"}));
  app.add_option("--tuples", cfg.tuples, "tuple file (one tuple per line) or 'all'");
  app.add_option("--shape", cfg.shape, "partition, e.g. \"(3,2,1)\"");
  app.add_option("--convention", cfg.convention, "gap-scan window pairing: both, projections or qubits");
  app.add_option("--solver", cfg.solver, "auto, dense or iterative");
  app.add_option("--name", cfg.name, "bound name for the bounds command");
  app.add_option("--tol", cfg.tol, "unit-eigenvalue tolerance");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--threads", cfg.threads, "worker threads (0: runtime default)");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples (0 skips sampling)");
  app.add_option("--max-dim", cfg.max_dim, "largest block dimension a scan row may need");
  app.add_option("--dense-limit", cfg.dense_limit, "largest block solved densely");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--gap", cfg.gap, "local gap for the Knabe bound");
  app.add_option("--gamma", cfg.gamma, "subsystem gap for the all-to-all bound");
  app.add_option("--delta", cfg.delta, "spectral gap for step-count bounds");
  app.add_option("--epsilon", cfg.epsilon, "target accuracy");
  app.add_flag("--resume", cfg.resume, "continue a checkpointed scan in --out");
  app.add_flag("--quick", cfg.quick, "verify: small-size subset only");
  app.add_flag("--inject-fault", cfg.inject_fault, "use a corrupted orthogonal form (mutation check)");

  const std::map<std::string, std::pair<std::string, std::function<int(const RunConfig&)>>> commands{
      {"partitions", {"list partitions of n with at most d rows", cmd_partitions}},
      {"rep", {"export an irrep in the orthogonal form as JSON", cmd_rep}},
      {"gap-scan", {"bulk Hamiltonian gaps against the Knabe threshold", cmd_gap_scan}},
      {"all-to-all", {"all-to-all Hamiltonian gaps", cmd_all_to_all}},
      {"brickwork", {"brickwork second singular values", cmd_brickwork}},
      {"counterexample", {"unit-eigenspace counts of the (lambda,lambda;lambda,lambda) block", cmd_counterexample}},
      {"frame-potential", {"second frame potential: exact, closed form, Monte Carlo", cmd_frame_potential}},
      {"bounds", {"evaluate one bound", cmd_bounds}},
      {"convergence", {"design step counts from a given or measured gap", cmd_convergence}},
      {"verify", {"run the invariant suite", cmd_verify}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) subs[name] = app.add_subcommand(name, entry.first)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (cfg.threads == 0) {
    if (const char* env = std::getenv("SYMDESIGN_THREADS")) cfg.threads = std::atoi(env);
  }
  if (cfg.threads < 0) {
    std::cerr << "--threads must be nonnegative\n";
    return kUsage;
  }
  symdesign::set_worker_count(cfg.threads);

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      return commands.at(name).second(cfg);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kFailure;
    }
  }
  return kUsage;
}

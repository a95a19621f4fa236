// snrlab: SNR sweeps for lensless compressive, pinhole and lens imaging.
//
//   snrlab sweep  --arch lci,pai --log2n-min 4 --log2n-max 16 --trials 100 --out sweep.csv
//   snrlab theory --log2n-min 1 --log2n-max 24
//   snrlab oracle --log2n-max 8 --trials 2000 --scene flat
//
// Exit codes: 0 success, 2 usage error, 3 capacity error, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "snrlab/experiment.hpp"

namespace {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kCapacity = 3, kIo = 4 };

struct RawOptions {
  std::string config;
  std::string arch;
  int log2n_min = 0;
  int log2n_max = 0;
  std::size_t trials = 0;
  double x0 = 0.0;
  double sigma = 0.0;
  double rho = 0.0;
  double gain = 0.0;
  std::string scene;
  std::uint64_t seed = 0;
  bool permute = false;
  bool no_shot = false;
  std::string out;
  unsigned workers = 0;
  int oracle_max_log2n = 0;
};

struct OptionHandles {
  CLI::Option* arch;
  CLI::Option* log2n_min;
  CLI::Option* log2n_max;
  CLI::Option* trials;
  CLI::Option* x0;
  CLI::Option* sigma;
  CLI::Option* rho;
  CLI::Option* gain;
  CLI::Option* scene;
  CLI::Option* seed;
  CLI::Option* permute;
  CLI::Option* no_shot;
  CLI::Option* out;
  CLI::Option* workers;
  CLI::Option* oracle_max_log2n;
};

OptionHandles add_sweep_options(CLI::App& cmd, RawOptions& raw) {
  cmd.add_option("--config", raw.config, "JSON config file; flags override its values");
  return OptionHandles{
      cmd.add_option("--arch", raw.arch, "Comma-separated architectures: lci,pai,lai"),
      cmd.add_option("--log2n-min", raw.log2n_min, "Smallest resolution exponent k (n = 2^k)"),
      cmd.add_option("--log2n-max", raw.log2n_max, "Largest resolution exponent k"),
      cmd.add_option("--trials", raw.trials, "Monte-Carlo trials per cell"),
      cmd.add_option("--x0", raw.x0, "Scene brightness in photons"),
      cmd.add_option("--sigma", raw.sigma, "Additive noise std per LCI measurement"),
      cmd.add_option("--rho", raw.rho, "Additive noise std per PAI/LAI pixel"),
      cmd.add_option("--gain", raw.gain, "Lens gain g for LAI"),
      cmd.add_option("--scene", raw.scene, "uniform | flat | image:PATH (binary PGM)"),
      cmd.add_option("--seed", raw.seed, "Master seed"),
      cmd.add_flag("--permute", raw.permute, "Randomly permute sensing-matrix columns"),
      cmd.add_flag("--no-shot", raw.no_shot, "Disable Poisson shot noise"),
      cmd.add_option("--out", raw.out, "Output CSV path (default: stdout)"),
      cmd.add_option("--workers", raw.workers, "Worker threads (0 = all cores)"),
      cmd.add_option("--oracle-max-log2n", raw.oracle_max_log2n, "Largest k for the dense LCI oracle column"),
  };
}

snrlab::SweepConfig build_config(const RawOptions& raw, const OptionHandles& h) {
  snrlab::SweepConfig config;
  if (!raw.config.empty()) config = snrlab::load_config_file(raw.config, config);
  if (h.arch->count()) config.architectures = snrlab::parse_architecture_list(raw.arch);
  if (h.log2n_min->count()) config.log2n_min = raw.log2n_min;
  if (h.log2n_max->count()) config.log2n_max = raw.log2n_max;
  if (h.trials->count()) config.trials = raw.trials;
  if (h.x0->count()) config.x0 = raw.x0;
  if (h.sigma->count()) config.sigma = raw.sigma;
  if (h.rho->count()) config.rho = raw.rho;
  if (h.gain->count()) config.gain = raw.gain;
  if (h.scene->count()) config.scene = snrlab::SceneSpec::parse(raw.scene);
  if (h.seed->count()) config.master_seed = raw.seed;
  if (h.permute->count()) config.permute = raw.permute;
  if (h.no_shot->count()) config.shot_enabled = !raw.no_shot;
  if (h.out->count()) config.output = raw.out;
  if (h.workers->count()) config.workers = raw.workers;
  if (h.oracle_max_log2n->count()) config.oracle_max_log2n = raw.oracle_max_log2n;
  return config;
}

void print_crossover(const snrlab::SweepConfig& config) {
  try {
    const auto n = snrlab::theory_crossover_n(config.x0, config.sigma, config.rho);
    if (n) {
      std::cerr << "crossover: PAI theory falls below the LCI bound from n = " << *n << '\n';
    } else {
      std::cerr << "crossover: none for n <= 2^40\n";
    }
  } catch (const snrlab::DomainError&) {
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SNR simulator for lensless compressive, pinhole and lens aperture imaging"};
  app.require_subcommand(1);

  RawOptions sweep_raw, theory_raw, oracle_raw;
  CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo SNR sweep over n = 2^k");
  CLI::App* theory = app.add_subcommand("theory", "Closed-form SNR curves and ratios, no sampling");
  CLI::App* oracle = app.add_subcommand("oracle", "LCI audit: closed form vs exact propagation vs Monte Carlo");
  const OptionHandles sweep_h = add_sweep_options(*sweep, sweep_raw);
  const OptionHandles theory_h = add_sweep_options(*theory, theory_raw);
  const OptionHandles oracle_h = add_sweep_options(*oracle, oracle_raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (sweep->parsed()) {
      const snrlab::SweepConfig config = build_config(sweep_raw, sweep_h);
      const auto rows = snrlab::run_sweep(config);
      snrlab::write_output(config.output, snrlab::sweep_csv(rows, config.master_seed));
    } else if (theory->parsed()) {
      const snrlab::SweepConfig config = build_config(theory_raw, theory_h);
      const auto rows = snrlab::run_theory(config);
      snrlab::write_output(config.output, snrlab::theory_csv(rows));
      print_crossover(config);
    } else if (oracle->parsed()) {
      snrlab::SweepConfig config = build_config(oracle_raw, oracle_h);
      config.architectures = {snrlab::Architecture::lci};
      const auto rows = snrlab::run_oracle(config);
      snrlab::write_output(config.output, snrlab::oracle_csv(rows));
    }
  } catch (const snrlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const snrlab::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const snrlab::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const snrlab::SizeError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const snrlab::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snrlab/common.hpp"
#include "snrlab/snr_analysis.hpp"

namespace snrlab {

inline constexpr int kMaxLog2n = 24;

enum class SceneKind { uniform, flat, image };

struct SceneSpec {
  SceneKind kind = SceneKind::uniform;
  std::filesystem::path image_path;

  // "uniform", "flat" or "image:PATH".
  static SceneSpec parse(std::string_view text);
  std::string to_string() const;
};

// Defaults: X0 = 1e7, sigma = rho = 5.
// The lens gain default of 100 is an arbitrary choice.
struct SweepConfig {
  std::vector<Architecture> architectures{Architecture::lci, Architecture::pai, Architecture::lai};
  int log2n_min = 4;
  int log2n_max = 12;
  std::size_t trials = 100;
  double x0 = 1e7;
  double sigma = 5.0;
  double rho = 5.0;
  double gain = 100.0;
  bool shot_enabled = true;
  SceneSpec scene;
  std::uint64_t master_seed = 20140101;
  bool permute = false;
  std::string output;  // empty: stdout
  unsigned workers = 0;  // 0: one per hardware thread
  // LCI oracle columns are filled for n <= 2^oracle_max_log2n only; the
  // dense inverse costs O(n^3).
  int oracle_max_log2n = 12;

  // UsageError for malformed values, CapacityError for sizes beyond the guards.
  void validate() const;
};

/// Overlays the keys of a JSON object onto `base`. Keys mirror the long CLI
/// flags with underscores: arch, log2n_min, log2n_max, trials, x0, sigma,
/// rho, gain, scene, seed, permute, shot, out, workers, oracle_max_log2n.
SweepConfig parse_config_json(std::string_view text, SweepConfig base = {});
SweepConfig load_config_file(const std::filesystem::path& path, SweepConfig base = {});

std::vector<Architecture> parse_architecture_list(std::string_view csv);

/// Monte-Carlo sweep: one SnrEstimate per (architecture, n), sorted by
/// architecture then n.
std::vector<SnrEstimate> run_sweep(const SweepConfig& config);

struct TheoryRow {
  std::size_t n = 0;
  std::optional<double> lci_theory;
  std::optional<double> lci_bound;
  std::optional<double> pai_theory;
  std::optional<double> lai_theory;
  std::optional<double> ratio_lci_pai;
  std::optional<double> ratio_lci_lai;
};

std::vector<TheoryRow> run_theory(const SweepConfig& config);

// LCI audit row: closed form vs exact propagation vs Monte Carlo.
struct OracleRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double signal_power = 0.0;
  double oracle_variance = 0.0;
  double mc_noise_power = 0.0;
  std::optional<double> theory_linear;
  double oracle_linear = 0.0;
  double mc_linear = 0.0;
  std::optional<double> gap_theory_oracle;  // |theory - oracle| / oracle
  double gap_mc_oracle = 0.0;               // |mc - oracle| / oracle
};

std::vector<OracleRow> run_oracle(const SweepConfig& config);

// CSV rendering. Floats use the shortest round-trip decimal form; infinite
// values print as "inf", missing optional values as an empty field.
std::string format_number(double value);
std::string sweep_csv(const std::vector<SnrEstimate>& rows, std::uint64_t seed);
std::string theory_csv(const std::vector<TheoryRow>& rows);
std::string oracle_csv(const std::vector<OracleRow>& rows);

/// Writes `content` to `path`, or to stdout when `path` is empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace snrlab

#include "snrlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"
#include "snrlab/architectures.hpp"
#include "snrlab/noise_model.hpp"
#include "snrlab/scene.hpp"

namespace snrlab {

namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

template <typename F>
std::optional<double> try_value(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

StreamLabel stream_label(Architecture arch) {
  switch (arch) {
    case Architecture::lci:
      return StreamLabel::lci;
    case Architecture::pai:
      return StreamLabel::pai;
    case Architecture::lai:
      return StreamLabel::lai;
  }
  return StreamLabel::lci;
}

// Produces the scene for trial t at a fixed n. Uniform scenes are redrawn
// every trial from the scene stream; flat and image scenes are shared.
class SceneSource {
 public:
  SceneSource(const SweepConfig& config, TransformSize n) : config_(config), n_(n) {
    switch (config.scene.kind) {
      case SceneKind::uniform:
        break;
      case SceneKind::flat:
        fixed_ = flat_scene(n, config.x0);
        break;
      case SceneKind::image:
        fixed_ = scene_from_image(config.scene.image_path, n, config.x0);
        break;
    }
  }

  SceneVector at(std::size_t trial) const {
    if (fixed_) return *fixed_;
    RandomStream stream(SeedSpec{config_.master_seed, StreamLabel::scene, n_.value(), trial});
    return random_uniform_scene(n_, static_cast<std::int64_t>(config_.x0), stream);
  }

 private:
  const SweepConfig& config_;
  TransformSize n_;
  std::optional<SceneVector> fixed_;
};

SensingOperator make_operator(const SweepConfig& config, TransformSize n) {
  if (!config.permute) return SensingOperator(n);
  return SensingOperator::with_random_permutation(
      n, SeedSpec{config.master_seed, StreamLabel::permutation, n.value(), 0}.derive());
}

NoiseParams noise_params(const SweepConfig& config) {
  return NoiseParams{config.sigma, config.rho, config.shot_enabled};
}

struct CellOutcome {
  std::vector<double> residuals;
  std::vector<double> oracle_variances;  // empty when no oracle was computed
};

CellOutcome run_cell(const SweepConfig& config, Architecture arch, TransformSize n, const SceneSource& scenes,
                     bool with_oracle) {
  const NoiseParams params = noise_params(config);
  const std::size_t trials = config.trials;
  CellOutcome out;
  out.residuals.assign(trials, 0.0);

  std::optional<SensingOperator> op;
  std::unique_ptr<LciVarianceOracle> oracle;
  if (arch == Architecture::lci) {
    op = make_operator(config, n);
    if (with_oracle) oracle = std::make_unique<LciVarianceOracle>(*op);
  }
  if (with_oracle) out.oracle_variances.assign(trials, 0.0);

  const double nd = static_cast<double>(n.value());
  const double rho2 = config.rho * config.rho;
  detail::parallel_for(trials, config.workers, [&](std::size_t t) {
    const SceneVector scene = scenes.at(t);
    RandomStream stream(SeedSpec{config.master_seed, stream_label(arch), n.value(), t});
    switch (arch) {
      case Architecture::lci:
        out.residuals[t] = run_lci_trial(scene, *op, params, stream).residual_power;
        if (oracle) out.oracle_variances[t] = oracle->total_variance(scene, config.sigma, config.shot_enabled);
        break;
      case Architecture::pai:
        out.residuals[t] = run_pai_trial(scene, params, stream).residual_power;
        if (with_oracle) out.oracle_variances[t] = (config.shot_enabled ? scene.brightness() : 0.0) + nd * rho2;
        break;
      case Architecture::lai:
        out.residuals[t] = run_lai_trial(scene, LensGain(config.gain), params, stream).residual_power;
        if (with_oracle) {
          out.oracle_variances[t] = (config.shot_enabled ? config.gain * scene.brightness() : 0.0) + nd * rho2;
        }
        break;
    }
  });
  return out;
}

double mean_of(const std::vector<double>& v) { return pairwise_sum(v) / static_cast<double>(v.size()); }

double signal_power(const SweepConfig& config, Architecture arch) {
  return arch == Architecture::lai ? config.gain * config.x0 : config.x0;
}

std::optional<double> theory_for(const SweepConfig& config, Architecture arch, double n) {
  switch (arch) {
    case Architecture::lci:
      return try_value([&] { return snr_lci_theory(config.x0, config.sigma, n); });
    case Architecture::pai:
      return try_value([&] { return snr_pai_theory(config.x0, config.rho, n); });
    case Architecture::lai:
      return try_value([&] { return snr_lai_theory(config.x0, config.rho, n, config.gain); });
  }
  return std::nullopt;
}

bool oracle_enabled(const SweepConfig& config, Architecture arch, TransformSize n) {
  if (arch != Architecture::lci) return true;
  return static_cast<int>(n.log2()) <= config.oracle_max_log2n && n.value() <= kDefaultDenseLimit;
}

// Builds every scene source up front so unreadable or undersized images abort
// before any cell runs.
std::vector<SceneSource> prepare_scenes(const SweepConfig& config) {
  std::vector<SceneSource> sources;
  for (int k = config.log2n_min; k <= config.log2n_max; ++k) {
    sources.emplace_back(config, TransformSize(std::size_t{1} << k));
  }
  return sources;
}

double dense_limit_log2() { return std::log2(static_cast<double>(kDefaultDenseLimit)); }

}  // namespace

SceneSpec SceneSpec::parse(std::string_view text) {
  if (text == "uniform") return {SceneKind::uniform, {}};
  if (text == "flat") return {SceneKind::flat, {}};
  constexpr std::string_view prefix = "image:";
  if (text.starts_with(prefix) && text.size() > prefix.size()) {
    return {SceneKind::image, std::filesystem::path(std::string(text.substr(prefix.size())))};
  }
  throw UsageError("scene must be uniform, flat or image:PATH, got '" + std::string(text) + "'");
}

std::string SceneSpec::to_string() const {
  switch (kind) {
    case SceneKind::uniform:
      return "uniform";
    case SceneKind::flat:
      return "flat";
    case SceneKind::image:
      return "image:" + image_path.string();
  }
  return "uniform";
}

void SweepConfig::validate() const {
  if (architectures.empty()) throw UsageError("at least one architecture is required");
  if (log2n_min < 1 || log2n_min > log2n_max) {
    throw UsageError("need 1 <= log2n-min <= log2n-max, got " + std::to_string(log2n_min) + ".." +
                     std::to_string(log2n_max));
  }
  if (log2n_max > kMaxLog2n) {
    throw CapacityError("log2n-max " + std::to_string(log2n_max) + " exceeds the limit of " +
                        std::to_string(kMaxLog2n));
  }
  if (trials < 2) throw UsageError("trials must be >= 2");
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw UsageError("x0 must be finite and >= 0");
  if (scene.kind == SceneKind::uniform && (x0 != std::floor(x0) || x0 > kMaxExactInteger)) {
    throw UsageError("uniform scenes allocate whole photons; x0 must be an integer below 2^53");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw UsageError("sigma must be finite and >= 0");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw UsageError("rho must be finite and >= 0");
  if (!(gain > 0.0) || !std::isfinite(gain)) throw UsageError("gain must be finite and > 0");
  if (oracle_max_log2n < 0) throw UsageError("oracle-max-log2n must be >= 0");
}

std::vector<Architecture> parse_architecture_list(std::string_view csv) {
  std::vector<Architecture> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string_view token = csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start);
    const Architecture arch = parse_architecture(token);
    if (std::find(out.begin(), out.end(), arch) == out.end()) out.push_back(arch);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SweepConfig parse_config_json(std::string_view text, SweepConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "arch") {
        if (value.is_array()) {
          std::string joined;
          for (const auto& a : value) joined += (joined.empty() ? "" : ",") + a.get<std::string>();
          base.architectures = parse_architecture_list(joined);
        } else {
          base.architectures = parse_architecture_list(value.get<std::string>());
        }
      } else if (key == "log2n_min") {
        base.log2n_min = value.get<int>();
      } else if (key == "log2n_max") {
        base.log2n_max = value.get<int>();
      } else if (key == "trials") {
        base.trials = value.get<std::size_t>();
      } else if (key == "x0") {
        base.x0 = value.get<double>();
      } else if (key == "sigma") {
        base.sigma = value.get<double>();
      } else if (key == "rho") {
        base.rho = value.get<double>();
      } else if (key == "gain") {
        base.gain = value.get<double>();
      } else if (key == "scene") {
        base.scene = SceneSpec::parse(value.get<std::string>());
      } else if (key == "seed") {
        base.master_seed = value.get<std::uint64_t>();
      } else if (key == "permute") {
        base.permute = value.get<bool>();
      } else if (key == "shot") {
        base.shot_enabled = value.get<bool>();
      } else if (key == "out") {
        base.output = value.get<std::string>();
      } else if (key == "workers") {
        base.workers = value.get<unsigned>();
      } else if (key == "oracle_max_log2n") {
        base.oracle_max_log2n = value.get<int>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw UsageError(std::string("config value has the wrong type: ") + e.what());
  }
  return base;
}

SweepConfig load_config_file(const std::filesystem::path& path, SweepConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_json(text, std::move(base));
}

std::vector<SnrEstimate> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<SceneSource> scenes = prepare_scenes(config);

  std::vector<SnrEstimate> rows;
  for (Architecture arch : config.architectures) {
    for (int k = config.log2n_min; k <= config.log2n_max; ++k) {
      const TransformSize n(std::size_t{1} << k);
      const bool with_oracle = oracle_enabled(config, arch, n);
      const CellOutcome cell = run_cell(config, arch, n, scenes[static_cast<std::size_t>(k - config.log2n_min)],
                                        with_oracle);

      const double signal = signal_power(config, arch);
      SnrEstimate e = make_estimate(arch, n.value(), config.trials, signal, mean_of(cell.residuals));
      const auto nd = static_cast<double>(n.value());
      e.theory_linear = theory_for(config, arch, nd);
      if (arch == Architecture::lci) {
        e.bound_linear = try_value([&] { return snr_lci_bound(config.x0, config.sigma); });
      }
      if (with_oracle) e.oracle_linear = make_estimate(arch, n.value(), config.trials, signal,
                                                       mean_of(cell.oracle_variances)).snr_linear;
      rows.push_back(e);
    }
  }
  return rows;
}

std::vector<TheoryRow> run_theory(const SweepConfig& config) {
  config.validate();
  std::vector<TheoryRow> rows;
  for (int k = config.log2n_min; k <= config.log2n_max; ++k) {
    const std::size_t n = std::size_t{1} << k;
    const auto nd = static_cast<double>(n);
    TheoryRow row;
    row.n = n;
    row.lci_theory = theory_for(config, Architecture::lci, nd);
    row.lci_bound = try_value([&] { return snr_lci_bound(config.x0, config.sigma); });
    row.pai_theory = theory_for(config, Architecture::pai, nd);
    row.lai_theory = theory_for(config, Architecture::lai, nd);
    row.ratio_lci_pai = try_value([&] { return ratio_lci_pai(config.x0, config.sigma, config.rho, nd); });
    row.ratio_lci_lai = try_value([&] { return ratio_lci_lai(config.x0, config.sigma, config.rho, nd, config.gain); });
    rows.push_back(row);
  }
  return rows;
}

std::vector<OracleRow> run_oracle(const SweepConfig& config) {
  config.validate();
  if (config.log2n_max > dense_limit_log2()) {
    throw CapacityError("oracle mode needs log2n-max <= " + std::to_string(static_cast<int>(dense_limit_log2())));
  }
  const std::vector<SceneSource> scenes = prepare_scenes(config);

  std::vector<OracleRow> rows;
  for (int k = config.log2n_min; k <= config.log2n_max; ++k) {
    const TransformSize n(std::size_t{1} << k);
    const CellOutcome cell =
        run_cell(config, Architecture::lci, n, scenes[static_cast<std::size_t>(k - config.log2n_min)], true);
    OracleRow row;
    row.n = n.value();
    row.trials = config.trials;
    row.signal_power = config.x0;
    row.oracle_variance = mean_of(cell.oracle_variances);
    row.mc_noise_power = mean_of(cell.residuals);
    row.oracle_linear = make_estimate(Architecture::lci, row.n, row.trials, row.signal_power, row.oracle_variance)
                            .snr_linear;
    row.mc_linear = make_estimate(Architecture::lci, row.n, row.trials, row.signal_power, row.mc_noise_power)
                        .snr_linear;
    row.theory_linear = theory_for(config, Architecture::lci, static_cast<double>(row.n));
    if (row.theory_linear && std::isfinite(row.oracle_linear) && row.oracle_linear > 0.0) {
      row.gap_theory_oracle = std::abs(*row.theory_linear - row.oracle_linear) / row.oracle_linear;
    }
    row.gap_mc_oracle = row.oracle_variance > 0.0
                            ? std::abs(row.mc_noise_power - row.oracle_variance) / row.oracle_variance
                            : row.mc_noise_power;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace snrlab

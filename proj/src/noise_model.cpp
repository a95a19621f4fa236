#include "snrlab/noise_model.hpp"

#include <cmath>
#include <string>

#include "snrlab/common.hpp"

namespace snrlab {

void NoiseParams::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be a finite value >= 0");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("rho must be a finite value >= 0");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t SeedSpec::derive() const noexcept {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(label));
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ trial);
  return h;
}

// std::poisson_distribution is exact for every mean: table-free inversion
// below mean 12 and Devroye's rejection sampler above.
std::int64_t sample_shot(double mean, RandomStream& stream) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("shot noise mean must be finite and >= 0, got " + std::to_string(mean));
  }
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(stream.engine());
}

double sample_additive(double std, RandomStream& stream) {
  if (!(std >= 0.0) || !std::isfinite(std)) {
    throw DomainError("additive noise std must be finite and >= 0, got " + std::to_string(std));
  }
  if (std == 0.0) return 0.0;
  return std * stream.standard_normal();
}

std::vector<double> contaminate(std::span<const double> values, const NoiseParams& params, AdditiveSource source,
                                RandomStream& stream) {
  params.validate();
  const double std = source == AdditiveSource::sigma ? params.sigma : params.rho;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    const double base = params.shot_enabled ? static_cast<double>(sample_shot(v, stream)) : v;
    out[i] = base + sample_additive(std, stream);
  }
  return out;
}

}  // namespace snrlab

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace snrlab {

struct NoiseParams {
  double sigma = 0.0;  // additive std per LCI measurement, photon units
  double rho = 0.0;    // additive std per PAI/LAI pixel, photon units
  bool shot_enabled = true;

  void validate() const;
};

// Which consumer a stream feeds. Scenes get their own label so every
// architecture sees the same scene for a given (n, trial).
enum class StreamLabel : std::uint64_t { lci = 1, pai = 2, lai = 3, scene = 4, permutation = 5 };

struct SeedSpec {
  std::uint64_t master_seed = 0;
  StreamLabel label = StreamLabel::scene;
  std::uint64_t n = 0;
  std::uint64_t trial = 0;

  // Counter-style derivation: a pure hash of the four fields, so the stream
  // for a trial never depends on which worker ran it or in what order.
  std::uint64_t derive() const noexcept;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  explicit RandomStream(const SeedSpec& spec) : engine_(spec.derive()) {}

  std::mt19937_64& engine() noexcept { return engine_; }
  double standard_normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// One Poisson(mean) draw. Throws DomainError for negative or non-finite means.
std::int64_t sample_shot(double mean, RandomStream& stream);

/// One zero-mean Gaussian draw with standard deviation `std`.
double sample_additive(double std, RandomStream& stream);

enum class AdditiveSource { sigma, rho };

/// Elementwise Poisson(v) + N(0, std^2), or v + N(0, std^2) with shot noise off.
std::vector<double> contaminate(std::span<const double> values, const NoiseParams& params, AdditiveSource source,
                                RandomStream& stream);

}  // namespace snrlab

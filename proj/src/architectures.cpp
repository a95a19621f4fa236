#include "snrlab/architectures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snrlab/snr_analysis.hpp"

namespace snrlab {

LensGain::LensGain(double g) : g_(g) {
  if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("lens gain must be finite and > 0");
}

LensGain LensGain::from_areas(double sensor_area, double lens_area) {
  if (!(sensor_area > 0.0) || !(lens_area > 0.0)) throw DomainError("sensor and lens areas must be > 0");
  return LensGain(lens_area / sensor_area);
}

double residual_power(std::span<const double> estimate, std::span<const double> reference) {
  if (estimate.size() != reference.size()) throw SizeError("residual_power: length mismatch");
  std::vector<double> sq(estimate.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double d = estimate[i] - reference[i];
    sq[i] = d * d;
  }
  return pairwise_sum(sq);
}

double TrialResult::recompute_residual_power() const { return snrlab::residual_power(reconstructed, reference.pixels()); }

TrialResult run_lci_trial(const SceneVector& scene, const SensingOperator& op, const NoiseParams& params,
                          RandomStream& stream) {
  const std::size_t n = op.size().value();
  if (scene.size() != n) {
    throw SizeError("scene has " + std::to_string(scene.size()) + " pixels, operator expects " + std::to_string(n));
  }
  std::vector<double> y = op.apply(scene.pixels());
  // Every y_i is a sum of nonnegative pixels; the fast transform can leave
  // rounding residue of either sign around exact zeros.
  const double slack = 1e-9 * std::max(scene.brightness(), 1.0);
  for (double& v : y) {
    if (v < 0.0 && v > -slack) v = 0.0;
  }
  const std::vector<double> z = contaminate(y, params, AdditiveSource::sigma, stream);

  TrialResult result;
  result.arch = Architecture::lci;
  result.n = n;
  result.reconstructed = op.apply_inverse(z);
  result.reference = scene;
  result.residual_power = result.recompute_residual_power();
  return result;
}

namespace {

TrialResult direct_trial(Architecture arch, SceneVector reference, const NoiseParams& params, RandomStream& stream) {
  TrialResult result;
  result.arch = arch;
  result.n = reference.size();
  result.reconstructed = contaminate(reference.pixels(), params, AdditiveSource::rho, stream);
  result.reference = std::move(reference);
  result.residual_power = result.recompute_residual_power();
  return result;
}

}  // namespace

TrialResult run_pai_trial(const SceneVector& scene, const NoiseParams& params, RandomStream& stream) {
  return direct_trial(Architecture::pai, scene, params, stream);
}

TrialResult run_lai_trial(const SceneVector& scene, LensGain gain, const NoiseParams& params, RandomStream& stream) {
  return direct_trial(Architecture::lai, scene.scaled(gain.value()), params, stream);
}

}  // namespace snrlab

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "snrlab/common.hpp"
#include "snrlab/noise_model.hpp"
#include "snrlab/scene.hpp"
#include "snrlab/walsh_hadamard.hpp"

namespace snrlab {

// Brightness gain of a lens over a pinhole of the sensor's area.
class LensGain {
 public:
  explicit LensGain(double g);
  static LensGain from_areas(double sensor_area, double lens_area);

  double value() const noexcept { return g_; }

 private:
  double g_;
};

struct TrialResult {
  Architecture arch = Architecture::lci;
  std::size_t n = 0;
  std::vector<double> reconstructed;
  SceneVector reference;  // noiseless target; gain-scaled for LAI
  double residual_power = 0.0;

  double recompute_residual_power() const;
};

/// Sum of squared differences, pairwise-summed.
double residual_power(std::span<const double> estimate, std::span<const double> reference);

// y = A x, z = shot + additive(sigma) on y, x~ = A^-1 z.
TrialResult run_lci_trial(const SceneVector& scene, const SensingOperator& op, const NoiseParams& params,
                          RandomStream& stream);

// x~_i = Poisson(x_i) + N(0, rho^2).
TrialResult run_pai_trial(const SceneVector& scene, const NoiseParams& params, RandomStream& stream);

// PAI at per-pixel means g x_i, measured against g x.
TrialResult run_lai_trial(const SceneVector& scene, LensGain gain, const NoiseParams& params, RandomStream& stream);

}  // namespace snrlab

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "snrlab/architectures.hpp"
#include "snrlab/common.hpp"
#include "snrlab/scene.hpp"
#include "snrlab/walsh_hadamard.hpp"

namespace snrlab {

struct SnrEstimate {
  Architecture arch = Architecture::lci;
  std::size_t n = 0;
  std::size_t trials = 0;
  double signal_power = 0.0;  // X0, or g X0 for LAI
  double noise_power = 0.0;   // mean residual power over the trials
  double snr_linear = 0.0;    // +inf when noise_power == 0
  double snr_db = 0.0;        // to_db(snr_linear)
  std::optional<double> theory_linear;
  std::optional<double> oracle_linear;
  std::optional<double> bound_linear;

  bool infinite() const noexcept;
};

/// Fixed-order recursive pairwise summation. The result depends only on the
/// sequence, never on how it was produced.
double pairwise_sum(std::span<const double> values);

/// Builds an estimate from signal and noise power (snr = signal / sqrt(noise)).
SnrEstimate make_estimate(Architecture arch, std::size_t n, std::size_t trials, double signal_power,
                          double noise_power);

/// Aggregates an ensemble of trials of one (architecture, n) cell. The signal
/// power is the brightness of the first trial's reference.
SnrEstimate empirical_snr(std::span<const TrialResult> trials);

// Exact total variance sum_j var(x~_j) of the LCI reconstruction, by
// propagating independent measurement variances y_i + sigma^2 through a dense
// LU inverse of the materialized operator:
//   sum_i w_i (y_i + sigma^2),  w_i = || column i of A^-1 ||^2.
// Independent of the fast transform path.
class LciVarianceOracle {
 public:
  explicit LciVarianceOracle(const SensingOperator& op, std::size_t dense_limit = kDefaultDenseLimit);

  double total_variance(const SceneVector& scene, double sigma, bool shot_enabled = true) const;

  std::size_t size() const noexcept { return column_weights_.size(); }
  // w_i for each measurement.
  std::span<const double> column_weights() const noexcept { return column_weights_; }
  // (A^T w)_j: the shot-noise variance contributed per unit of pixel j.
  std::span<const double> pixel_weights() const noexcept { return pixel_weights_; }
  double frobenius_weight() const noexcept { return frobenius_weight_; }

 private:
  std::vector<double> column_weights_;
  std::vector<double> pixel_weights_;
  double frobenius_weight_ = 0.0;
};

double lci_variance_oracle(const SceneVector& scene, const SensingOperator& op, double sigma);

// Closed-form predictions.
double snr_lci_theory(double x0, double sigma, double n);
double snr_lci_bound(double x0, double sigma);
double snr_pai_theory(double x0, double rho, double n);
double snr_lai_theory(double x0, double rho, double n, double g);
double ratio_lci_pai(double x0, double sigma, double rho, double n);
double ratio_lci_lai(double x0, double sigma, double rho, double n, double g);

// 10 log10: the SNR here is already an amplitude-over-deviation ratio, and a
// factor of sqrt(2) is quoted as about 1.5 dB.
double to_db(double linear);

/// Smallest n = 2^k (k <= max_log2n) at which the PAI prediction drops below
/// the N-independent LCI bound.
std::optional<std::size_t> theory_crossover_n(double x0, double sigma, double rho, unsigned max_log2n = 40);

}  // namespace snrlab

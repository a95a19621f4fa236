#include "snrlab/snr_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace snrlab {

namespace {

double pairwise_sum_range(const double* data, std::size_t count) {
  if (count <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum_range(data, half) + pairwise_sum_range(data + half, count - half);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be finite and > 0");
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be finite and >= 0");
}

}  // namespace

bool SnrEstimate::infinite() const noexcept { return std::isinf(snr_linear) && snr_linear > 0; }

double pairwise_sum(std::span<const double> values) { return pairwise_sum_range(values.data(), values.size()); }

SnrEstimate make_estimate(Architecture arch, std::size_t n, std::size_t trials, double signal_power,
                          double noise_power) {
  SnrEstimate e;
  e.arch = arch;
  e.n = n;
  e.trials = trials;
  e.signal_power = signal_power;
  e.noise_power = noise_power;
  if (noise_power == 0.0) {
    e.snr_linear = std::numeric_limits<double>::infinity();
    e.snr_db = std::numeric_limits<double>::infinity();
  } else {
    e.snr_linear = signal_power / std::sqrt(noise_power);
    e.snr_db = e.snr_linear > 0.0 ? to_db(e.snr_linear) : -std::numeric_limits<double>::infinity();
  }
  return e;
}

SnrEstimate empirical_snr(std::span<const TrialResult> trials) {
  if (trials.size() < 2) throw AggregationError("an SNR estimate needs at least two trials");
  const Architecture arch = trials.front().arch;
  const std::size_t n = trials.front().n;
  std::vector<double> residuals;
  residuals.reserve(trials.size());
  for (const TrialResult& t : trials) {
    if (t.arch != arch || t.n != n) throw AggregationError("trial ensemble mixes architectures or sizes");
    residuals.push_back(t.residual_power);
  }
  const double noise = pairwise_sum(residuals) / static_cast<double>(trials.size());
  return make_estimate(arch, n, trials.size(), trials.front().reference.brightness(), noise);
}

LciVarianceOracle::LciVarianceOracle(const SensingOperator& op, std::size_t dense_limit) {
  const Eigen::MatrixXd a = op.materialize(dense_limit);
  const Eigen::Index n = a.rows();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);

  // Columns of A^-1 solved in blocks to bound memory at large n.
  Eigen::VectorXd w(n);
  const Eigen::Index block = 256;
  for (Eigen::Index start = 0; start < n; start += block) {
    const Eigen::Index width = std::min(block, n - start);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, width);
    for (Eigen::Index k = 0; k < width; ++k) rhs(start + k, k) = 1.0;
    const Eigen::MatrixXd cols = lu.solve(rhs);
    w.segment(start, width) = cols.colwise().squaredNorm().transpose();
  }
  const Eigen::VectorXd u = a.transpose() * w;

  column_weights_.assign(w.data(), w.data() + n);
  pixel_weights_.assign(u.data(), u.data() + n);
  frobenius_weight_ = pairwise_sum(column_weights_);
}

double LciVarianceOracle::total_variance(const SceneVector& scene, double sigma, bool shot_enabled) const {
  if (scene.size() != size()) throw SizeError("oracle: scene length does not match operator");
  require_nonnegative(sigma, "sigma");
  const double additive = sigma * sigma * frobenius_weight_;
  if (!shot_enabled) return additive;
  std::vector<double> terms(size());
  const auto px = scene.pixels();
  for (std::size_t j = 0; j < terms.size(); ++j) terms[j] = pixel_weights_[j] * px[j];
  return pairwise_sum(terms) + additive;
}

double lci_variance_oracle(const SceneVector& scene, const SensingOperator& op, double sigma) {
  return LciVarianceOracle(op).total_variance(scene, sigma);
}

double snr_lci_theory(double x0, double sigma, double n) {
  require_positive(x0, "x0");
  require_nonnegative(sigma, "sigma");
  if (!(n >= 2.0)) throw DomainError("LCI closed form needs n >= 2");
  const double denom = (2.0 - 4.0 / n) * x0 + (4.0 - 4.0 / n) * sigma * sigma;
  if (!(denom > 0.0)) throw DomainError("LCI closed form has a zero denominator at these parameters");
  return x0 / std::sqrt(denom);
}

double snr_lci_bound(double x0, double sigma) {
  require_positive(x0, "x0");
  require_nonnegative(sigma, "sigma");
  return x0 / std::sqrt(2.0 * x0 + 4.0 * sigma * sigma);
}

double snr_pai_theory(double x0, double rho, double n) {
  require_nonnegative(x0, "x0");
  require_nonnegative(rho, "rho");
  require_positive(n, "n");
  const double denom = x0 + n * rho * rho;
  if (!(denom > 0.0)) throw DomainError("PAI closed form has a zero denominator (x0 = 0 and rho = 0)");
  return x0 / std::sqrt(denom);
}

double snr_lai_theory(double x0, double rho, double n, double g) {
  require_positive(g, "g");
  return snr_pai_theory(g * x0, rho, n);
}

double ratio_lci_pai(double x0, double sigma, double rho, double n) {
  require_positive(x0, "x0");
  require_nonnegative(sigma, "sigma");
  require_nonnegative(rho, "rho");
  require_positive(n, "n");
  return std::sqrt(x0 + n * rho * rho) / std::sqrt(2.0 * x0 + 4.0 * sigma * sigma);
}

double ratio_lci_lai(double x0, double sigma, double rho, double n, double g) {
  require_positive(g, "g");
  require_positive(x0, "x0");
  require_nonnegative(sigma, "sigma");
  require_nonnegative(rho, "rho");
  require_positive(n, "n");
  return std::sqrt(g * x0 + n * rho * rho) / (g * std::sqrt(2.0 * x0 + 4.0 * sigma * sigma));
}

double to_db(double linear) {
  if (!(linear > 0.0)) throw DomainError("dB conversion needs a positive value");
  return 10.0 * std::log10(linear);
}

std::optional<std::size_t> theory_crossover_n(double x0, double sigma, double rho, unsigned max_log2n) {
  const double bound = snr_lci_bound(x0, sigma);
  for (unsigned k = 1; k <= max_log2n && k < 63; ++k) {
    const std::size_t n = std::size_t{1} << k;
    if (snr_pai_theory(x0, rho, static_cast<double>(n)) < bound) return n;
  }
  return std::nullopt;
}

}  // namespace snrlab

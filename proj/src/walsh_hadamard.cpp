#include "snrlab/walsh_hadamard.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <string>

#include "snrlab/common.hpp"

namespace snrlab {

namespace {

void require_length(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw SizeError(std::string(what) + ": expected length " + std::to_string(expected) + ", got " +
                    std::to_string(actual));
  }
}

void require_dense(std::size_t n, std::size_t limit) {
  if (n > limit) {
    throw CapacityError("dense materialization of order " + std::to_string(n) + " exceeds limit " +
                        std::to_string(limit));
  }
}

Eigen::MatrixXd unpermuted_sensing_matrix(std::size_t n) {
  Eigen::MatrixXd a(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      a(i, j) = (std::popcount(i & j) % 2 == 0) ? 1.0 : 0.0;
    }
  }
  return a;
}

std::vector<double> dense_solve(std::size_t n, std::span<const double> z) {
  require_dense(n, kDefaultDenseLimit);
  const Eigen::MatrixXd a = unpermuted_sensing_matrix(n);
  const Eigen::Map<const Eigen::VectorXd> rhs(z.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd x = a.partialPivLu().solve(rhs);
  return {x.data(), x.data() + n};
}

std::vector<double> fast_inverse(std::span<const double> z) {
  const auto n = static_cast<double>(z.size());
  std::vector<double> x = fwht(z);
  for (double& v : x) v *= 2.0 / n;
  x[0] -= z[0];
  return x;
}

bool run_fast_inverse_validation() {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> dist(-100.0, 1000.0);
  for (std::size_t n = 2; n <= 256; n *= 2) {
    std::vector<double> z(n);
    for (double& v : z) v = dist(rng);
    const std::vector<double> fast = fast_inverse(z);
    const std::vector<double> dense = dense_solve(n, z);
    double scale = 0.0;
    for (double v : dense) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(fast[i] - dense[i]) > 1e-9 * std::max(scale, 1.0)) return false;
    }
  }
  return true;
}

}  // namespace

TransformSize::TransformSize(std::size_t n) : n_(n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw SizeError("transform size must be a power of two >= 2, got " + std::to_string(n));
  }
}

unsigned TransformSize::log2() const noexcept { return static_cast<unsigned>(std::countr_zero(n_)); }

void fwht_inplace(std::span<double> v) {
  const std::size_t n = v.size();
  if (!is_power_of_two(n)) {
    throw SizeError("fwht: length " + std::to_string(n) + " is not a power of two");
  }
  for (std::size_t h = 1; h < n; h *= 2) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

std::vector<double> fwht(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  fwht_inplace(out);
  return out;
}

Eigen::MatrixXd hadamard_matrix(TransformSize size, std::size_t dense_limit) {
  const std::size_t n = size.value();
  require_dense(n, dense_limit);
  Eigen::MatrixXd h(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      h(i, j) = (std::popcount(i & j) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return h;
}

SensingOperator::SensingOperator(TransformSize size) : size_(size) {}

SensingOperator::SensingOperator(TransformSize size, std::vector<std::size_t> permutation) : size_(size) {
  require_length(size.value(), permutation.size(), "permutation");
  std::vector<bool> seen(permutation.size(), false);
  for (std::size_t p : permutation) {
    if (p >= permutation.size() || seen[p]) {
      throw DomainError("column permutation is not a bijection on 0..n-1");
    }
    seen[p] = true;
  }
  permutation_ = std::move(permutation);
}

SensingOperator SensingOperator::with_random_permutation(TransformSize size, std::uint64_t seed) {
  std::vector<std::size_t> perm(size.value());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return SensingOperator(size, std::move(perm));
}

std::vector<double> SensingOperator::apply(std::span<const double> x) const {
  const std::size_t n = size_.value();
  require_length(n, x.size(), "apply_sensing");

  std::vector<double> v(n);
  if (permutation_) {
    const auto& perm = *permutation_;
    for (std::size_t j = 0; j < n; ++j) v[perm[j]] = x[j];
  } else {
    std::copy(x.begin(), x.end(), v.begin());
  }
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  fwht_inplace(v);
  for (double& y : v) y = 0.5 * (y + total);
  return v;
}

std::vector<double> SensingOperator::unpermuted_inverse(std::span<const double> z) const {
  if (fast_inverse_validated()) return fast_inverse(z);
  return dense_solve(size_.value(), z);
}

std::vector<double> SensingOperator::apply_inverse(std::span<const double> z) const {
  const std::size_t n = size_.value();
  require_length(n, z.size(), "apply_inverse");

  std::vector<double> u = unpermuted_inverse(z);
  if (!permutation_) return u;
  const auto& perm = *permutation_;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = u[perm[j]];
  return x;
}

Eigen::MatrixXd SensingOperator::materialize(std::size_t dense_limit) const {
  const std::size_t n = size_.value();
  require_dense(n, dense_limit);
  Eigen::MatrixXd a = unpermuted_sensing_matrix(n);
  if (!permutation_) return a;
  Eigen::MatrixXd out(n, n);
  const auto& perm = *permutation_;
  for (std::size_t j = 0; j < n; ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(perm[j]));
  return out;
}

std::vector<double> apply_sensing(const SensingOperator& op, std::span<const double> x) { return op.apply(x); }

std::vector<double> apply_inverse(const SensingOperator& op, std::span<const double> z) {
  return op.apply_inverse(z);
}

Eigen::MatrixXd materialize(const SensingOperator& op, std::size_t dense_limit) { return op.materialize(dense_limit); }

bool fast_inverse_validated() {
  static std::once_flag once;
  static bool ok = false;
  std::call_once(once, [] { ok = run_fast_inverse_validation(); });
  return ok;
}

}  // namespace snrlab

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace snrlab {

// Largest order that materialize() and the dense oracles will build.
inline constexpr std::size_t kDefaultDenseLimit = std::size_t{1} << 12;

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

// Number of pixels / measurements. Sylvester construction needs a power of
// two, and n = 1 has no modified-Hadamard inverse, so n >= 2.
class TransformSize {
 public:
  explicit TransformSize(std::size_t n);

  std::size_t value() const noexcept { return n_; }
  unsigned log2() const noexcept;

  friend bool operator==(TransformSize, TransformSize) = default;

 private:
  std::size_t n_;
};

/// Unnormalized in-place Walsh-Hadamard transform (Sylvester ordering).
void fwht_inplace(std::span<double> v);

/// Returns H v. Throws SizeError unless v.size() is a power of two.
std::vector<double> fwht(std::span<const double> v);

/// Dense Sylvester Hadamard matrix of order n, entries +-1.
Eigen::MatrixXd hadamard_matrix(TransformSize size, std::size_t dense_limit = kDefaultDenseLimit);

// The 0/1 sensing operator A = (H + J) / 2, optionally with its columns
// permuted: column j of the operator is column permutation[j] of A.
// Immutable once constructed.
class SensingOperator {
 public:
  explicit SensingOperator(TransformSize size);
  SensingOperator(TransformSize size, std::vector<std::size_t> permutation);

  // Uniformly random column permutation drawn from a 64-bit seed.
  static SensingOperator with_random_permutation(TransformSize size, std::uint64_t seed);

  TransformSize size() const noexcept { return size_; }
  bool permuted() const noexcept { return permutation_.has_value(); }
  const std::optional<std::vector<std::size_t>>& permutation() const noexcept { return permutation_; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_inverse(std::span<const double> z) const;
  Eigen::MatrixXd materialize(std::size_t dense_limit = kDefaultDenseLimit) const;

 private:
  std::vector<double> unpermuted_inverse(std::span<const double> z) const;

  TransformSize size_;
  std::optional<std::vector<std::size_t>> permutation_;
};

std::vector<double> apply_sensing(const SensingOperator& op, std::span<const double> x);
std::vector<double> apply_inverse(const SensingOperator& op, std::span<const double> z);
Eigen::MatrixXd materialize(const SensingOperator& op, std::size_t dense_limit = kDefaultDenseLimit);

// The fast inverse A^-1 z = (2/n) H z - z_1 e_1 is checked once per process
// against a dense LU solve for every n in {2, 4, ..., 256}. When the check
// fails apply_inverse falls back to the dense solve.
bool fast_inverse_validated();

}  // namespace snrlab

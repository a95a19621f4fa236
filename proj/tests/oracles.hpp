#pragma once

// Brute-force references for the tests. Nothing here calls into the library's
// transform, materialization or Eigen-based oracle paths.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Sylvester recursion H_{2m} = [[H_m, H_m], [H_m, -H_m]].
inline Matrix sylvester(std::size_t n) {
  Matrix h{{1.0}};
  while (h.size() < n) {
    const std::size_t m = h.size();
    Matrix next(2 * m, std::vector<double>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        next[i][j] = h[i][j];
        next[i][j + m] = h[i][j];
        next[i + m][j] = h[i][j];
        next[i + m][j + m] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

// Entries -1 of H replaced by 0.
inline Matrix modified_hadamard(std::size_t n) {
  Matrix a = sylvester(n);
  for (auto& row : a)
    for (double& v : row) v = v > 0 ? 1.0 : 0.0;
  return a;
}

inline std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Matrix c(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Gauss-Jordan elimination with partial pivoting.
inline Matrix inverse(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) throw std::runtime_error("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline std::vector<double> solve(const Matrix& a, const std::vector<double>& b) { return matvec(inverse(a), b); }

// sum_j var(x~_j) with x~ = A^-1 z and independent var(z_i) = y_i + sigma^2.
inline double lci_total_variance(const std::vector<double>& x, double sigma, bool shot = true) {
  const Matrix a = modified_hadamard(x.size());
  const Matrix inv = inverse(a);
  const std::vector<double> y = matvec(a, x);
  double total = 0.0;
  for (std::size_t j = 0; j < inv.size(); ++j)
    for (std::size_t i = 0; i < inv.size(); ++i) total += inv[j][i] * inv[j][i] * ((shot ? y[i] : 0.0) + sigma * sigma);
  return total;
}

// Closed form of the same quantity, derived from A^-1 = (2/n) H - e1 e1^T:
// column 1 of A^-1 has unit norm, every other column norm^2 is 4/n, and the
// column sums of A are n (first) and n/2 (rest). Hence
//   (3 - 4/n) X0 + 2 x_1 + (5 - 4/n) sigma^2.
inline double lci_total_variance_closed_form(const std::vector<double>& x, double sigma) {
  const double n = static_cast<double>(x.size());
  double x0 = 0.0;
  for (double v : x) x0 += v;
  return (3.0 - 4.0 / n) * x0 + 2.0 * x[0] + (5.0 - 4.0 / n) * sigma * sigma;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace oracle

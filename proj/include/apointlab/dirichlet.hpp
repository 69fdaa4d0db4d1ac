#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apointlab/types.hpp"

namespace apointlab {

/// Truncated ordinary Dirichlet series sum_{n=1}^{N} c_n n^{-s}, indexed 1..N.
class DirichletSeries {
 public:
  DirichletSeries() = default;
  explicit DirichletSeries(std::size_t n) : coeffs_(n + 1) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "Dirichlet series needs N >= 1");
  }

  std::size_t size() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  Complex& operator[](std::size_t n) { return coeffs_[n]; }
  const Complex& operator[](std::size_t n) const { return coeffs_[n]; }
  Complex at(std::size_t n) const;

  /// sum_{n<=N} c_n n^{-s}
  Complex evaluate(Complex s) const;
  /// sum_{n<=x} c_n (log n)^m
  Complex partial_sum(double x, int m = 0) const;

  static DirichletSeries identity(std::size_t n);
  /// zeta: all coefficients 1.
  static DirichletSeries zeta_coefficients(std::size_t n);
  /// zeta - a: (1 - a, 1, 1, ...).
  static DirichletSeries zeta_minus(std::size_t n, Complex a);
  /// zeta': c_n = -log n.
  static DirichletSeries zeta_deriv_coefficients(std::size_t n);

 private:
  std::vector<Complex> coeffs_;
};

/// Lambda(n): log p on prime powers p^k, zero elsewhere.
DirichletSeries lambda_sieve(std::size_t n);

/// Chebyshev psi(x) = sum_{n<=x} Lambda(n).
double psi(double x);

/// Prefix sums of Lambda for repeated psi queries up to a fixed bound.
class PsiTable {
 public:
  explicit PsiTable(std::size_t limit);
  double operator()(double x) const;
  std::size_t limit() const { return prefix_.size() - 1; }

 private:
  std::vector<double> prefix_;
};

/// Moebius function by linear sieve; entry 0 unused.
std::vector<int> moebius_sieve(std::size_t n);

DirichletSeries dirichlet_product(const DirichletSeries& f, const DirichletSeries& g);
DirichletSeries dirichlet_inverse(const DirichletSeries& f);

/// Coefficients of zeta'(s) / (zeta(s) - a). Rejects a = 1.
DirichletSeries lambda_a(std::size_t n, Complex a);

/// Ordered factorization counts d_k*(n) for 0 <= k <= K, 1 <= n <= N.
class DkStarTable {
 public:
  DkStarTable(std::size_t n, std::size_t k);
  std::int64_t operator()(std::size_t k, std::size_t n) const { return rows_[k][n]; }
  std::size_t max_n() const { return n_; }
  std::size_t max_k() const { return rows_.size() - 1; }

 private:
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> rows_;
};

DkStarTable dk_star(std::size_t n, std::size_t k);

/// Coefficients of 1/(zeta(s) - a) from
///   -sum_k sum_n d_k*(n) / ((a-1)^{k+1} n^s).
/// Requires K >= floor(log2 N) so that the k-truncation is exact.
DirichletSeries reciprocal_via_dkstar(std::size_t n, Complex a, std::size_t k);

/// zeta(sigma) - 1 for real sigma > 1, without cancellation at large sigma.
double zeta_minus_one_real(double sigma, const EvalParams& p = {});

/// The unique sigma* > 1 with zeta(sigma*) - 1 = |a - 1|.
double sigma_star(Complex a, const EvalParams& p = {});

struct AbscissaEstimate {
  /// Largest real part among the supplied a-points (empirical).
  std::optional<double> lower;
  double upper = 0.0;
  double absolute_upper = 0.0;
  /// Real a > 1: b_a, the absolute abscissa and sigma* coincide.
  bool equals_sigma_star = false;
  /// (1/log 2) log(1/(|a|-1)) when |a| > 1; a comparison value only.
  std::optional<double> log_diagnostic;
};

AbscissaEstimate b_a_estimate(Complex a, std::span<const APoint> apts, const EvalParams& p = {});

}  // namespace apointlab

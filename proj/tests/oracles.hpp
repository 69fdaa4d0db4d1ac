#pragma once
// Slow, independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "apointlab/types.hpp"

namespace oracle {

using apointlab::Complex;
using LComplex = std::complex<long double>;

// Borwein's alternating-series algorithm for eta, turned into zeta.
// Cancellation grows like exp(pi |t| / 2), so keep |t| <= 10.
inline Complex borwein_zeta(Complex s, int n = 80) {
  std::vector<long double> d(n + 1);
  long double term = 1.0L / n;  // i = 0 term of n * sum (n+i-1)! 4^i / ((n-i)! (2i)!)
  long double acc = 0.0L;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i) * (2.0L * i - 1));
    acc += term;
    d[i] = n * acc;
  }
  const LComplex ls(s.real(), s.imag());
  LComplex sum = 0.0L;
  for (int k = 0; k < n; ++k) {
    const LComplex p = std::exp(-ls * std::log(static_cast<long double>(k + 1)));
    sum += (k % 2 == 0 ? 1.0L : -1.0L) * (d[k] - d[n]) * p;
  }
  const LComplex factor = 1.0L - std::exp((1.0L - ls) * std::log(2.0L));
  const LComplex z = -sum / (d[n] * factor);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Partial sum to N plus the first Euler-Maclaurin tail terms; for Re s >= 3.
inline Complex direct_zeta(Complex s, int N = 200000) {
  LComplex sum = 0.0L;
  const LComplex ls(s.real(), s.imag());
  for (int n = N - 1; n >= 1; --n) sum += std::exp(-ls * std::log(static_cast<long double>(n)));
  const LComplex tail = std::exp((1.0L - ls) * std::log(static_cast<long double>(N))) / (ls - 1.0L) +
                        0.5L * std::exp(-ls * std::log(static_cast<long double>(N)));
  const LComplex z = sum + tail;
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  return std::log(static_cast<double>(n));
}

inline double trial_division_psi(double x) {
  long double sum = 0.0L;
  for (std::uint64_t n = 2; n <= static_cast<std::uint64_t>(std::floor(x)); ++n) {
    sum += von_mangoldt(n);
  }
  return static_cast<double>(sum);
}

inline int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  return n > 1 ? -sign : sign;
}

// Ordered factorizations of n into exactly k factors, each > 1.
inline std::int64_t ordered_factorizations(std::uint64_t n, int k) {
  if (k == 0) return n == 1 ? 1 : 0;
  std::int64_t count = 0;
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d == 0) count += ordered_factorizations(n / d, k - 1);
  }
  return count;
}

inline Complex central_difference(const std::function<Complex(Complex)>& f, Complex s,
                                  double h = 1e-5) {
  // Fourth-order stencil.
  return (-f(s + 2.0 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2.0 * h)) / (12.0 * h);
}

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace oracle

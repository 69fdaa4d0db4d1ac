#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "apointlab/error.hpp"

namespace apointlab {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Largest |Im s| accepted by the zeta evaluators.
inline constexpr double kWorkingRangeT = 1.0e4;

/// Precision and truncation controls shared by zeta, gamma and quadrature.
struct EvalParams {
  /// Lower bound for the Euler-Maclaurin split point N; the evaluator raises
  /// it to about |s|/pi when needed.
  int em_cutoff = 10;
  /// Maximum number of Bernoulli correction terms.
  int bernoulli_order = 30;
  double target_abs_err = 1e-10;
  /// Gauss panels per unit of oscillation phase in the vertical quadratures.
  int quadrature_panel = 4;

  void validate() const;
  /// Canonical text used in cache keys. Bump kEvalParamsVersion whenever
  /// the evaluators change in a way that alters computed points.
  std::string canonical() const;
};

inline constexpr int kEvalParamsVersion = 1;

/// A root rho = beta + i gamma of zeta(s) = a.
struct APoint {
  Complex a;
  double beta = 0.0;
  double gamma = 0.0;
  /// |zeta(rho) - a| after refinement.
  double residual = 0.0;

  Complex rho() const { return {beta, gamma}; }
};

}  // namespace apointlab

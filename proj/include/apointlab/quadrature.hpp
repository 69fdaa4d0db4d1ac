#pragma once

#include <functional>
#include <span>
#include <vector>

#include "apointlab/types.hpp"

namespace apointlab {

/// Complex-valued integrand of a real parameter.
using RealToComplex = std::function<Complex(double)>;

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  explicit GaussLegendre(int n);
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Sum of the rule applied on each [edges[i], edges[i+1]].
  Complex integrate_panels(const RealToComplex& f, std::span<const double> edges) const;
};

struct AdaptiveResult {
  Complex value;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
/// Throws QuadratureNotConverged when abs_tol is not reached within
/// max_intervals subintervals.
AdaptiveResult integrate_adaptive(const RealToComplex& f, double lo, double hi, double abs_tol,
                                  int max_intervals = 20000);

}  // namespace apointlab

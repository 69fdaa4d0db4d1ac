#include "apointlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace apointlab {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; every other node
// belongs to the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  Complex value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const RealToComplex& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const Complex fc = f(centre);
  Complex k15 = fc * kWgk[7];
  Complex g7 = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex pair = f(centre - dx) + f(centre + dx);
    k15 += kWgk[j] * pair;
    if (j % 2 == 1) g7 += kWg[j / 2] * pair;
  }
  return {lo, hi, k15 * half, std::abs((k15 - g7) * half)};
}

}  // namespace

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "Gauss-Legendre order must be positive");
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

Complex GaussLegendre::integrate_panels(const RealToComplex& f, std::span<const double> edges) const {
  Complex total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double centre = 0.5 * (edges[i] + edges[i + 1]);
    const double half = 0.5 * (edges[i + 1] - edges[i]);
    Complex panel = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) panel += weights[j] * f(centre + half * nodes[j]);
    total += panel * half;
  }
  return total;
}

AdaptiveResult integrate_adaptive(const RealToComplex& f, double lo, double hi, double abs_tol,
                                  int max_intervals) {
  if (lo == hi) return {};
  std::priority_queue<Segment> heap;
  Segment first = kronrod(f, lo, hi);
  Complex total = first.value;
  double error = first.error;
  heap.push(first);
  int intervals = 1;
  while (error > abs_tol) {
    if (intervals >= max_intervals) {
      fail(ErrorKind::QuadratureNotConverged,
           "adaptive quadrature stalled with error estimate " + std::to_string(error));
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = kronrod(f, worst.lo, mid);
    const Segment right = kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-add the pieces so the returned value is free of running-sum drift.
  Complex exact = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    exact += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {exact, err, intervals};
}

}  // namespace apointlab

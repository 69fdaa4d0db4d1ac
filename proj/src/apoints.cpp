#include "apointlab/apoints.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <utility>
#include <string>

#include "apointlab/complexfn.hpp"
#include "apointlab/dirichlet.hpp"
#include "parallel.hpp"

namespace apointlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string point_text(Complex s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g%+.9gi", s.real(), s.imag());
  return buf;
}

struct Sample {
  Complex f;
  Complex df;
};

Sample sample_at(Complex a, Complex z, const EvalParams& p, const ContourOptions& opt) {
  const ZetaPair zp = zeta_with_deriv(z, p);
  const Complex f = zp.value - a;
  if (!(std::abs(f) >= opt.boundary_clearance)) {
    fail(ErrorKind::BoundaryTooClose,
         "|zeta(s) - a| below clearance at s = " + point_text(z) + "; perturb the window");
  }
  return {f, zp.deriv};
}

long round_winding(double total_phase) {
  const double turns = total_phase / kTwoPi;
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 0.25) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "winding %.6f is not integral", turns);
    fail(ErrorKind::NonIntegralWinding, buf);
  }
  return static_cast<long>(nearest);
}

bool contains(const SearchWindow& w, Complex s) {
  return s.real() >= w.sigma_min && s.real() <= w.sigma_max && s.imag() >= w.t_min &&
         s.imag() <= w.t_max;
}

// Newton iteration s <- s - (zeta(s) - a) / zeta'(s) from the cell centre.
// Succeeds only when it converges to a point inside the cell.
std::optional<APoint> newton_in_cell(Complex a, const SearchWindow& cell, const EvalParams& p,
                                     double residual_tol) {
  Complex s(0.5 * (cell.sigma_min + cell.sigma_max), 0.5 * (cell.t_min + cell.t_max));
  const double reach = 2.0 * std::hypot(cell.sigma_max - cell.sigma_min, cell.t_max - cell.t_min) + 1.0;
  int settled = -1;
  for (int it = 0; it < 60; ++it) {
    const ZetaPair zp = zeta_with_deriv(s, p);
    if (zp.deriv == Complex{}) return std::nullopt;
    const Complex step = (zp.value - a) / zp.deriv;
    if (!is_finite(step) || std::abs(step) > reach) return std::nullopt;
    s -= step;
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-6) return std::nullopt;
    if (settled < 0 && std::abs(step) < 1e-12 * std::max(1.0, std::abs(s))) settled = it;
    if (settled >= 0 && it >= settled + 1) break;
  }
  if (settled < 0 || !contains(cell, s)) return std::nullopt;
  const double residual = std::abs(zeta(s, p) - a);
  if (!(residual <= residual_tol)) return std::nullopt;
  return APoint{a, s.real(), s.imag(), residual};
}

struct Resolver {
  Complex a;
  const EvalParams& p;
  const FindOptions& opt;

  long count(const SearchWindow& w) const { return count_in_rectangle(a, w, p, opt.contour); }

  // Splits `cell` at the given fraction of its height (horizontal = true) or
  // width, nudging the cut when it passes too close to an a-point.
  std::pair<SearchWindow, SearchWindow> split(const SearchWindow& cell, bool horizontal,
                                              long& lower_count, long& upper_count) const {
    static constexpr double kFractions[] = {0.5, 0.43, 0.57, 0.36, 0.64, 0.29, 0.71};
    for (double frac : kFractions) {
      SearchWindow lo = cell, hi = cell;
      if (horizontal) {
        const double cut = cell.t_min + frac * (cell.t_max - cell.t_min);
        lo.t_max = cut;
        hi.t_min = cut;
      } else {
        const double cut = cell.sigma_min + frac * (cell.sigma_max - cell.sigma_min);
        lo.sigma_max = cut;
        hi.sigma_min = cut;
      }
      try {
        lower_count = count(lo);
        upper_count = count(hi);
        return {lo, hi};
      } catch (const NumericError& e) {
        if (e.kind() != ErrorKind::BoundaryTooClose) throw;
      }
    }
    fail(ErrorKind::RefinementDiverged, "could not place a clear cut in cell at t = " +
                                            std::to_string(cell.t_min));
  }

  void resolve(const SearchWindow& cell, long n, int depth, std::vector<APoint>& out) const {
    if (n <= 0) return;
    if (n == 1) {
      if (auto pt = newton_in_cell(a, cell, p, opt.residual_tol)) {
        out.push_back(*pt);
        return;
      }
    }
    if (depth > 60) {
      fail(ErrorKind::RefinementDiverged,
           "refinement did not isolate a root near " +
               point_text({cell.sigma_min, cell.t_min}));
    }
    const double width = cell.sigma_max - cell.sigma_min;
    const double height = cell.t_max - cell.t_min;
    const bool horizontal = n >= 2 ? height > 1e-7 : height >= width;
    long c_lo = 0, c_hi = 0;
    const auto [lo, hi] = split(cell, horizontal, c_lo, c_hi);
    if (c_lo + c_hi != n) {
      fail(ErrorKind::WindowCountMismatch,
           "sub-cell counts " + std::to_string(c_lo) + " + " + std::to_string(c_hi) +
               " disagree with parent count " + std::to_string(n));
    }
    resolve(lo, c_lo, depth + 1, out);
    resolve(hi, c_hi, depth + 1, out);
  }
};

}  // namespace

void SearchWindow::validate() const {
  if (!(sigma_min <= sigma_max) || !(t_min <= t_max) || !(t_min > 0.0)) {
    fail(ErrorKind::InvalidArgument, "search window needs sigma_min <= sigma_max and 0 < t_min <= t_max");
  }
  if (t_max > kWorkingRangeT) fail(ErrorKind::RangeExceeded, "window exceeds working range");
}

double right_bound(Complex a, const EvalParams& p) {
  if (a == Complex{}) return 2.0;
  if (a == Complex(1.0, 0.0)) return 4.0;
  return sigma_star(a, p) + 0.5;
}

SearchWindow apoint_window(Complex a, double T, const FindOptions& opt, const EvalParams& p) {
  return {0.0, right_bound(a, p), opt.t_floor, T};
}

double phase_increment(Complex a, Complex from, Complex to, const EvalParams& p,
                       const ContourOptions& opt) {
  const double length = std::abs(to - from);
  if (length == 0.0) return 0.0;
  const Complex unit = (to - from) / length;
  auto position = [&](double pos) { return pos >= length ? to : from + unit * pos; };

  Sample cur = sample_at(a, from, p, opt);
  double pos = 0.0;
  double total = 0.0;
  while (pos < length) {
    const double rate = std::abs(cur.df) / std::abs(cur.f);
    double h = std::clamp(opt.max_phase_step / std::max(rate, 1e-300), opt.min_step, opt.max_step);
    h = std::min(h, length - pos);
    for (;;) {
      const double next_pos = length - (pos + h) < 1e-14 * length ? length : pos + h;
      const Sample next = sample_at(a, position(next_pos), p, opt);
      const double d = std::arg(next.f / cur.f);
      if (std::abs(d) > opt.max_phase_step && h > opt.min_step) {
        h = std::max(0.5 * h, opt.min_step);
        continue;
      }
      if (std::abs(d) > opt.max_phase_step) {
        fail(ErrorKind::BoundaryTooClose,
             "argument of zeta - a turns too fast near s = " + point_text(position(pos)));
      }
      total += d;
      pos = next_pos;
      cur = next;
      break;
    }
  }
  return total;
}

long count_in_rectangle(Complex a, const SearchWindow& w, const EvalParams& p,
                        const ContourOptions& opt) {
  if (w.degenerate()) return 0;
  w.validate();
  const Complex c00(w.sigma_min, w.t_min), c10(w.sigma_max, w.t_min);
  const Complex c11(w.sigma_max, w.t_max), c01(w.sigma_min, w.t_max);
  const double total = phase_increment(a, c00, c10, p, opt) + phase_increment(a, c10, c11, p, opt) +
                       phase_increment(a, c11, c01, p, opt) + phase_increment(a, c01, c00, p, opt);
  return round_winding(total);
}

std::vector<APoint> locate_in_window(Complex a, const SearchWindow& w, const EvalParams& p,
                                     const FindOptions& opt) {
  if (w.degenerate()) return {};
  w.validate();
  const double span = w.t_max - w.t_min;
  const double nominal = opt.cell_height > 0.0 ? opt.cell_height
                                                : 0.5 / std::log(std::max(w.t_max, std::exp(1.0)));
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil(span / nominal)));
  const double height = span / static_cast<double>(cells);

  // Horizontal cuts; interior ones move slightly if they graze an a-point.
  std::vector<double> cut_t(cells + 1);
  std::vector<double> cut_phase(cells + 1);
  detail::parallel_for(cells + 1, opt.workers, [&](std::size_t k) {
    static constexpr double kNudges[] = {0.0, 0.1, -0.1, 0.2, -0.2, 0.3, -0.3};
    const double base = k == cells ? w.t_max : w.t_min + height * static_cast<double>(k);
    for (double nudge : kNudges) {
      const double t = base + nudge * height;
      try {
        cut_phase[k] = phase_increment(a, {w.sigma_min, t}, {w.sigma_max, t}, p, opt.contour);
        cut_t[k] = t;
        return;
      } catch (const NumericError& e) {
        if (e.kind() != ErrorKind::BoundaryTooClose || k == 0 || k == cells) throw;
      }
    }
    fail(ErrorKind::BoundaryTooClose, "no clear cut near t = " + std::to_string(base));
  });

  std::vector<long> counts(cells);
  detail::parallel_for(cells, opt.workers, [&](std::size_t k) {
    const double left = phase_increment(a, {w.sigma_min, cut_t[k]}, {w.sigma_min, cut_t[k + 1]}, p,
                                        opt.contour);
    const double right = phase_increment(a, {w.sigma_max, cut_t[k]}, {w.sigma_max, cut_t[k + 1]},
                                         p, opt.contour);
    counts[k] = round_winding(cut_phase[k] + right - cut_phase[k + 1] - left);
  });

  long expected = 0;
  for (long c : counts) expected += c;

  std::vector<std::vector<APoint>> found(cells);
  const Resolver resolver{a, p, opt};
  detail::parallel_for(cells, opt.workers, [&](std::size_t k) {
    if (counts[k] == 0) return;
    const SearchWindow cell{w.sigma_min, w.sigma_max, cut_t[k], cut_t[k + 1]};
    resolver.resolve(cell, counts[k], 0, found[k]);
  });

  std::vector<APoint> points;
  for (auto& group : found) points.insert(points.end(), group.begin(), group.end());
  std::sort(points.begin(), points.end(), [](const APoint& x, const APoint& y) {
    return x.gamma != y.gamma ? x.gamma < y.gamma : x.beta < y.beta;
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const APoint& x, const APoint& y) {
                             return std::abs(x.rho() - y.rho()) < 1e-9;
                           }),
               points.end());
  if (static_cast<long>(points.size()) != expected) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "found %zu a-points but the winding count of [%g,%g]x[%g,%g] is %ld",
                  points.size(), w.sigma_min, w.sigma_max, w.t_min, w.t_max, expected);
    fail(ErrorKind::WindowCountMismatch, buf);
  }
  return points;
}

std::vector<APoint> find_apoints(Complex a, double T, const EvalParams& p, const FindOptions& opt) {
  if (T > kWorkingRangeT) fail(ErrorKind::RangeExceeded, "T beyond working range");
  if (T <= opt.t_floor) return {};
  return locate_in_window(a, apoint_window(a, T, opt, p), p, opt);
}

CountEstimate expected_count(Complex a, double T) {
  CountEstimate est;
  est.c_a = a == Complex(1.0, 0.0) ? 2.0 : 1.0;
  const double threshold = kTwoPi * std::exp(1.0) * est.c_a;
  if (!(T > threshold)) {
    fail(ErrorKind::TooSmallT, "T must exceed 2 pi e c_a = " + std::to_string(threshold));
  }
  est.main_term = T / kTwoPi * std::log(T / threshold);
  return est;
}

double aligned_height(std::span<const APoint> points, double T) {
  const auto above = std::lower_bound(points.begin(), points.end(), T,
                                      [](const APoint& pt, double t) { return pt.gamma < t; });
  if (above == points.begin() || above == points.end()) return T;
  return 0.5 * (std::prev(above)->gamma + above->gamma);
}

}  // namespace apointlab

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apointlab/apoints.hpp"
#include "apointlab/dirichlet.hpp"
#include "apointlab/types.hpp"

namespace apointlab {

/// a-points of one value a, complete for 0 < gamma <= t_covered.
struct APointSet {
  Complex a;
  double t_covered = 0.0;
  std::vector<APoint> points;
};

/// find_apoints up to at least T. If the top edge grazes an a-point the
/// height is raised slightly and the search repeated.
APointSet compute_apoint_set(Complex a, double T, const EvalParams& p = {},
                             const FindOptions& opt = {});

enum class MainTermMode { Psi, Rh };

struct ReportRow {
  /// Height actually used: the requested one moved to the midpoint between
  /// neighbouring ordinates.
  double T = 0.0;
  double T_requested = 0.0;
  Complex lhs;
  Complex main;
  double residual_abs = 0.0;
};

struct TheoremReport {
  std::string label;
  std::vector<ReportRow> rows;
  /// Least-squares slope of log residual_abs against log T (>= 3 rows).
  std::optional<double> fitted_exponent;
  std::string notes;
};

struct QuadratureParams {
  int panels_per_unit_phase = 4;
  double max_abs_err = 1e-6;
  void validate() const;
};

/// Slope of log(residual) on log(T); nullopt with fewer than 3 usable rows.
std::optional<double> fit_exponent(std::span<const ReportRow> rows);

/// Sum of Delta(rho_a) over 0 < gamma_a < T, ascending gamma, compensated.
Complex thm2_sum(const APointSet& set, double T);

/// a (T/2pi) log(T/(2 pi e)) - psi(T/2pi), or with T/2pi in place of psi.
Complex thm2_main(Complex a, double T, MainTermMode mode);

TheoremReport thm2_report(const APointSet& set, std::span<const double> grid, MainTermMode mode,
                          unsigned workers = 1);

/// max over 0 < gamma_a < T of |a Delta(1 - rho_a) - zeta(1 - rho_a)|.
double thm1_identity_check(const APointSet& set, double T, const EvalParams& p = {});

struct ReflectedSums {
  Complex delta_form;  // sum Delta(1 - rho_a)
  Complex zeta_form;   // (1/a) sum zeta(1 - rho_a)
};
ReflectedSums thm1_reflected_sums(const APointSet& set, double T, const EvalParams& p = {});

/// Rows with lhs = sum Delta(1 - rho_a) and main = sum_{n <= T/2pi} Lambda_a(n).
TheoremReport thm1_growth(const APointSet& set, const DirichletSeries& lambda_a_coeffs,
                          std::span<const double> grid, const EvalParams& p = {},
                          unsigned workers = 1);

/// Analytic continuation of a Dirichlet series, used in place of the
/// truncated coefficient sum inside the Gonek integral.
using SeriesFunction = std::function<Complex(Complex)>;

struct GonekResult {
  Complex integral;
  Complex sum;
  int panels = 0;
  /// |difference| between the last two refinements.
  double last_change = 0.0;
};

/// (1/2 pi i) int_{c+i}^{c+iT} Delta^(m)(1-s) B(s) ds against
/// sum_{n <= T/2pi} b_n (log n)^m, m in {0, 1}. B is `analytic` when given,
/// otherwise the finite series b itself.
GonekResult gonek_quadrature(const DirichletSeries& b, double c, int m, double T,
                             const QuadratureParams& q, const EvalParams& p = {},
                             const SeriesFunction& analytic = {});

/// -zeta'/zeta(s), the generating function of Lambda.
Complex neg_log_deriv_zeta(Complex s, const EvalParams& p = {});

struct ContourCheck {
  Complex quadrature;
  Complex residue_sum;
  std::size_t interior_points = 0;
};

/// (1/2 pi i) around the boundary of w of zeta'/(zeta - a) Delta(s), against
/// the sum of Delta over the a-points inside w.
ContourCheck contour_residue_check(Complex a, const SearchWindow& w, const QuadratureParams& q,
                                   const EvalParams& p = {}, const FindOptions& opt = {});

/// (1/2 pi i) around the boundary of w of zeta'/(zeta - a): the a-point count
/// by quadrature rather than argument tracking.
Complex winding_quadrature(Complex a, const SearchWindow& w, const QuadratureParams& q,
                           const EvalParams& p = {});

/// sup over the sample of |zeta'/(zeta - a)| / log(2 + |t|)^2. Every sample
/// point must keep distance 1/log(2 + |t|) from the supplied a-points.
double partfrac_bound_probe(Complex a, std::span<const Complex> sample,
                            std::span<const APoint> apts, const EvalParams& p = {});

}  // namespace apointlab

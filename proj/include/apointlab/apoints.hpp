#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

#include "apointlab/types.hpp"

namespace apointlab {

/// Closed rectangle [sigma_min, sigma_max] x [t_min, t_max] of the s-plane.
struct SearchWindow {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;

  bool degenerate() const { return sigma_min == sigma_max || t_min == t_max; }
  void validate() const;
};

struct CountEstimate {
  long exact_count = 0;
  double main_term = 0.0;
  double c_a = 1.0;
};

struct ContourOptions {
  /// Minimum |zeta(s) - a| tolerated on the boundary.
  double boundary_clearance = 1e-4;
  /// Largest accepted change of arg(zeta - a) between boundary samples.
  double max_phase_step = 0.5;
  double max_step = 0.25;
  double min_step = 1e-10;
};

struct FindOptions {
  ContourOptions contour;
  /// Height of the initial horizontal cells; 0 selects 0.5 / log T.
  double cell_height = 0.0;
  /// Lower edge of the search window. Real a-points sit on t = 0.
  double t_floor = 0.01;
  unsigned workers = 1;
  double residual_tol = 1e-8;
};

/// Right edge of the search window: sigma*(a) + 1/2, or 2 for a = 0 and 4
/// for a = 1.
double right_bound(Complex a, const EvalParams& p = {});

/// [0, right_bound(a)] x [t_floor, T].
SearchWindow apoint_window(Complex a, double T, const FindOptions& opt = {},
                           const EvalParams& p = {});

/// Change of arg(zeta(s) - a) along the straight segment from -> to.
double phase_increment(Complex a, Complex from, Complex to, const EvalParams& p = {},
                       const ContourOptions& opt = {});

/// Number of a-points strictly inside w, by tracking arg(zeta - a) around
/// the positively oriented boundary. A degenerate window yields 0.
long count_in_rectangle(Complex a, const SearchWindow& w, const EvalParams& p = {},
                        const ContourOptions& opt = {});

/// All a-points inside w, sorted by ascending gamma. Throws
/// WindowCountMismatch when the located points disagree with the winding
/// count of w.
std::vector<APoint> locate_in_window(Complex a, const SearchWindow& w, const EvalParams& p = {},
                                     const FindOptions& opt = {});

/// a-points with 0 <= beta <= right_bound(a) and t_floor < gamma <= T.
std::vector<APoint> find_apoints(Complex a, double T, const EvalParams& p = {},
                                 const FindOptions& opt = {});

/// (T / 2 pi) log(T / (2 pi e c_a)) with c_1 = 2 and c_a = 1 otherwise.
CountEstimate expected_count(Complex a, double T);

/// Midpoint between the ordinates just below and at-or-above T, or T itself
/// when either side is missing. `points` must be sorted by gamma.
double aligned_height(std::span<const APoint> points, double T);

/// One positive ordinate per line, strictly ascending, '#' lines and blank
/// lines ignored. Each ordinate becomes an a = 0 point on the critical line
/// with its residual |zeta(1/2 + i gamma)| required to be <= max_residual.
std::vector<APoint> parse_zero_table(std::istream& in, const EvalParams& p = {},
                                     double max_residual = 1e-5);
std::vector<APoint> ingest_zero_table(const std::filesystem::path& path,
                                      const EvalParams& p = {}, double max_residual = 1e-5);

}  // namespace apointlab

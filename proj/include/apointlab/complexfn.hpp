#pragma once

#include "apointlab/types.hpp"

namespace apointlab {

struct ZetaPair {
  Complex value;
  Complex deriv;
};

/// Riemann zeta. Euler-Maclaurin summation for Re s >= 0 (and near the real
/// axis), reflection through the functional equation for Re s < 0.
/// Throws PoleAtOne within 1e-12 of s = 1 and RangeExceeded for
/// |Im s| > kWorkingRangeT.
Complex zeta(Complex s, const EvalParams& p = {});
Complex zeta_deriv(Complex s, const EvalParams& p = {});

/// zeta and zeta' from a single Euler-Maclaurin pass.
ZetaPair zeta_with_deriv(Complex s, const EvalParams& p = {});

/// Euler-Maclaurin evaluation without reflection, valid for every s != 1.
/// Exposed so tests can compare the two routes in the left half-plane.
ZetaPair zeta_euler_maclaurin(Complex s, const EvalParams& p = {});

/// Estimated absolute truncation error of the Euler-Maclaurin tail at s.
double zeta_error_estimate(Complex s, const EvalParams& p = {});

/// log Gamma on the branch that is real on the positive axis and continuous
/// along vertical lines leaving the real axis.
Complex log_gamma(Complex s);
Complex digamma(Complex s);

/// The factor in zeta(s) = Delta(s) zeta(1-s):
///   Delta(s) = 2 (2 pi)^(s-1) sin(pi s / 2) Gamma(1 - s),
/// evaluated in the log domain. Simple poles at s = 1, 3, 5, ...
Complex delta(Complex s);
Complex log_delta(Complex s);

/// Delta'(s) / Delta(s). Throws NearSingularity within 1e-6 of a pole or
/// zero of Delta.
Complex delta_log_deriv(Complex s);

}  // namespace apointlab

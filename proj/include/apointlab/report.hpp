#pragma once

#include <string>
#include <string_view>

#include "apointlab/verify.hpp"

namespace apointlab {

/// Shortest round-trip decimal form of x; "nan"/"inf" spelled out.
std::string format_double(double x);

/// {label, rows[], fitted_exponent, notes}; fitted_exponent is null when
/// absent. Output is byte-stable for equal reports.
std::string report_to_json(const TheoremReport& r);

/// Header T,lhs_re,lhs_im,main_re,main_im,residual_abs then one line per row.
std::string report_to_csv(const TheoremReport& r);

/// Inverse of report_to_json. Throws ParseError.
TheoremReport report_from_json(std::string_view text);

}  // namespace apointlab

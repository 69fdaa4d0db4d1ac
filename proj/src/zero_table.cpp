#include <charconv>
#include <fstream>
#include <string>

#include "apointlab/apoints.hpp"
#include "apointlab/complexfn.hpp"

namespace apointlab {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<APoint> parse_zero_table(std::istream& in, const EvalParams& p, double max_residual) {
  std::vector<APoint> points;
  std::string raw;
  std::size_t line_no = 0;
  double previous = 0.0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    double gamma = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), gamma);
    if (ec != std::errc{} || end != line.data() + line.size() || !std::isfinite(gamma) ||
        gamma <= 0.0) {
      throw NumericError(ErrorKind::ParseError,
                         "line " + std::to_string(line_no) + ": expected a positive ordinate",
                         line_no);
    }
    if (gamma <= previous) {
      throw NumericError(ErrorKind::NotAscending,
                         "line " + std::to_string(line_no) + ": ordinates must be strictly ascending",
                         line_no);
    }
    const double residual = std::abs(zeta(Complex(0.5, gamma), p));
    if (!(residual <= max_residual)) {
      throw NumericError(ErrorKind::ResidualTooLarge,
                         "line " + std::to_string(line_no) + ": |zeta(1/2 + i gamma)| = " +
                             std::to_string(residual),
                         line_no);
    }
    points.push_back({Complex{}, 0.5, gamma, residual});
    previous = gamma;
  }
  return points;
}

std::vector<APoint> ingest_zero_table(const std::filesystem::path& path, const EvalParams& p,
                                      double max_residual) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open zero table " + path.string());
  return parse_zero_table(in, p, max_residual);
}

}  // namespace apointlab

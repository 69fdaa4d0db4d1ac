#include "apointlab/report.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace apointlab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string report_to_json(const TheoremReport& r) {
  nlohmann::ordered_json j;
  j["label"] = r.label;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["T"] = row.T;
    o["T_requested"] = row.T_requested;
    o["lhs_re"] = row.lhs.real();
    o["lhs_im"] = row.lhs.imag();
    o["main_re"] = row.main.real();
    o["main_im"] = row.main.imag();
    o["residual_abs"] = row.residual_abs;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  j["fitted_exponent"] = r.fitted_exponent ? nlohmann::ordered_json(*r.fitted_exponent) : nullptr;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const TheoremReport& r) {
  std::string out = "T,lhs_re,lhs_im,main_re,main_im,residual_abs\n";
  for (const auto& row : r.rows) {
    for (double v : {row.T, row.lhs.real(), row.lhs.imag(), row.main.real(), row.main.imag()}) {
      out += format_double(v);
      out += ',';
    }
    out += format_double(row.residual_abs);
    out += '\n';
  }
  return out;
}

TheoremReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    TheoremReport r;
    r.label = j.at("label").get<std::string>();
    r.notes = j.value("notes", std::string{});
    if (!j.at("fitted_exponent").is_null()) r.fitted_exponent = j["fitted_exponent"].get<double>();
    for (const auto& o : j.at("rows")) {
      ReportRow row;
      row.T = o.at("T").get<double>();
      row.T_requested = o.value("T_requested", row.T);
      row.lhs = {o.at("lhs_re").get<double>(), o.at("lhs_im").get<double>()};
      row.main = {o.at("main_re").get<double>(), o.at("main_im").get<double>()};
      row.residual_abs = o.at("residual_abs").get<double>();
      r.rows.push_back(row);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad report: ") + e.what());
  }
}

}  // namespace apointlab

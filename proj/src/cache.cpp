#include "apointlab/cache.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apointlab/report.hpp"

namespace apointlab {
namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double parse_field(const std::string& field, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  throw NumericError(ErrorKind::ParseError, "bad number '" + field + "'", line);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
}

}  // namespace

std::string cache_key(Complex a, double T, const EvalParams& p, const FindOptions& opt) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "a=%.17g,%.17g;T=%.17g;%s;clr=%.17g;ph=%.17g;hs=%.17g;ch=%.17g;tf=%.17g;rt=%.17g",
                a.real(), a.imag(), T, p.canonical().c_str(), opt.contour.boundary_clearance,
                opt.contour.max_phase_step, opt.contour.max_step, opt.cell_height, opt.t_floor,
                opt.residual_tol);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(buf)));
  return hex;
}

std::string apoints_to_csv(std::span<const APoint> points) {
  std::string out = "a_re,a_im,beta,gamma,residual\n";
  for (const auto& pt : points) {
    out += format_double(pt.a.real()) + ',' + format_double(pt.a.imag()) + ',' +
           format_double(pt.beta) + ',' + format_double(pt.gamma) + ',' +
           format_double(pt.residual) + '\n';
  }
  return out;
}

std::vector<APoint> apoints_from_csv(std::istream& in) {
  std::vector<APoint> points;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 || line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 5) throw NumericError(ErrorKind::ParseError, "expected 5 fields", number);
    APoint pt;
    pt.a = {parse_field(fields[0], number), parse_field(fields[1], number)};
    pt.beta = parse_field(fields[2], number);
    pt.gamma = parse_field(fields[3], number);
    pt.residual = parse_field(fields[4], number);
    points.push_back(pt);
  }
  return points;
}

std::filesystem::path APointCache::csv_path(const std::string& key) const {
  return dir_ / ("apoints_" + key + ".csv");
}

std::filesystem::path APointCache::meta_path(const std::string& key) const {
  return dir_ / ("apoints_" + key + ".meta.json");
}

std::optional<APointSet> APointCache::load(const std::string& key) const {
  const auto csv = csv_path(key);
  const auto meta = meta_path(key);
  if (!std::filesystem::exists(csv) || !std::filesystem::exists(meta)) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(read_file(meta));
    APointSet set;
    set.a = {j.at("a_re").get<double>(), j.at("a_im").get<double>()};
    set.t_covered = j.at("t_covered").get<double>();
    std::ifstream in(csv);
    set.points = apoints_from_csv(in);
    return set;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const NumericError&) {
    return std::nullopt;
  }
}

void APointCache::store(const std::string& key, const APointSet& set) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create " + dir_.string());
  write_file(csv_path(key), apoints_to_csv(set.points));
  nlohmann::ordered_json j;
  j["key"] = key;
  j["a_re"] = set.a.real();
  j["a_im"] = set.a.imag();
  j["t_covered"] = set.t_covered;
  j["count"] = set.points.size();
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char created[32];
  std::strftime(created, sizeof created, "%Y-%m-%dT%H:%M:%SZ", &utc);
  j["created"] = created;
  write_file(meta_path(key), j.dump(2) + "\n");
}

APointSet APointCache::get_or_compute(Complex a, double T, const EvalParams& p,
                                      const FindOptions& opt, bool* hit) const {
  const std::string key = cache_key(a, T, p, opt);
  if (auto cached = load(key)) {
    if (hit) *hit = true;
    return *cached;
  }
  if (hit) *hit = false;
  APointSet set = compute_apoint_set(a, T, p, opt);
  store(key, set);
  return set;
}

}  // namespace apointlab

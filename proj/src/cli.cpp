#include "apointlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "apointlab/apoints.hpp"
#include "apointlab/cache.hpp"
#include "apointlab/complexfn.hpp"
#include "apointlab/dirichlet.hpp"
#include "apointlab/report.hpp"
#include "apointlab/verify.hpp"

namespace apointlab::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed invariant of a verify harness.
struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string s = "0,0";
  std::string a = "0,0";
  double x = 0.0;
  std::size_t n = 20;
  double t_max = 0.0;
  std::string grid;
  double tol = 1e-6;
  unsigned workers = 1;
  std::string cache_dir = ".apointlab-cache";
  std::string format = "json";
  std::string zeros_file;
  std::string out_dir = ".";
  std::string in_file;
  double c = 1.25;
  int m = 0;
};

Complex parse_complex(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string re = text.substr(0, comma);
    const double x = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument(re);
    double y = 0.0;
    if (comma != std::string::npos) {
      const std::string im = text.substr(comma + 1);
      y = std::stod(im, &used);
      if (used != im.size()) throw std::invalid_argument(im);
    }
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError(std::string("--") + what + " expects re,im but got '" + text + "'");
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--grid entry '" + item + "' is not a number");
    }
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw UsageError("--grid must be ascending");
  }
  return grid;
}

std::string fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

void print_complex(std::ostream& out, const char* name, Complex z) {
  out << fixed12(z.real()) << (z.imag() < 0 ? " - " : " + ") << fixed12(std::abs(z.imag()))
      << "i\n";
  out << "|" << name << "| = " << sci(std::abs(z)) << "\n";
}

class Runner {
 public:
  Runner(const Config& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  int zeta_cmd() {
    const Complex s = parse_complex(cfg_.s, "s");
    print_complex(out_, "zeta", zeta(s));
    return kExitOk;
  }

  int delta_cmd() {
    const Complex s = parse_complex(cfg_.s, "s");
    print_complex(out_, "Delta", delta(s));
    return kExitOk;
  }

  int psi_cmd() {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", psi(cfg_.x));
    out_ << buf << "\n";
    return kExitOk;
  }

  int lambda_a_cmd() {
    const Complex a = parse_complex(cfg_.a, "a");
    const auto coeffs = lambda_a(cfg_.n, a);
    out_ << "n,re,im\n";
    for (std::size_t k = 1; k <= coeffs.size(); ++k) {
      out_ << k << ',' << format_double(coeffs[k].real()) << ','
           << format_double(coeffs[k].imag()) << "\n";
    }
    return kExitOk;
  }

  int apoints_cmd() {
    const Complex a = parse_complex(cfg_.a, "a");
    if (!(cfg_.t_max > 0.0)) throw UsageError("--t-max is required");
    bool hit = false;
    const std::string key = cache_key(a, cfg_.t_max, params_, find_options());
    const APointSet set = cache().get_or_compute(a, cfg_.t_max, params_, find_options(), &hit);
    out_ << "file: " << cache().csv_path(key).string() << "\n";
    out_ << "cache: " << (hit ? "hit" : "miss") << "\n";
    std::size_t below = 0;
    for (const auto& pt : set.points) below += pt.gamma <= cfg_.t_max ? 1 : 0;
    out_ << "points: " << below << "\n";
    const double threshold = kTwoPi * std::exp(1.0) * (a == Complex(1.0, 0.0) ? 2.0 : 1.0);
    if (cfg_.t_max > threshold) {
      const CountEstimate est = expected_count(a, cfg_.t_max);
      out_ << "main term (c_a = " << est.c_a << "): " << format_double(est.main_term) << "\n";
    }
    return kExitOk;
  }

  int ingest_cmd() {
    if (cfg_.zeros_file.empty()) throw UsageError("--zeros-file is required");
    const auto zeros = ingest_zero_table(cfg_.zeros_file, params_);
    double worst = 0.0;
    for (const auto& z : zeros) worst = std::max(worst, z.residual);
    out_ << "zeros: " << zeros.size() << "\n";
    out_ << "max residual: " << sci(worst) << "\n";
    if (cfg_.t_max > 0.0) {
      if (zeros.empty() || zeros.back().gamma < cfg_.t_max) {
        throw UsageError("zero table ends below --t-max");
      }
      const long table = std::count_if(zeros.begin(), zeros.end(),
                                       [&](const APoint& z) { return z.gamma <= cfg_.t_max; });
      const double top = aligned_height(zeros, cfg_.t_max);
      const long counted = count_in_rectangle(0.0, apoint_window(0.0, top), params_);
      out_ << "table N(T): " << table << "\n";
      out_ << "argument principle N(T): " << counted << "\n";
      if (table != counted) throw VerifyFailure("zero table count differs from the winding count");
    }
    return kExitOk;
  }

  int verify_thm2() {
    const Complex a = parse_complex(cfg_.a, "a");
    const auto grid = grid_or({250.0, 500.0, 1000.0, 2000.0});
    const APointSet set = points_for(a, grid.back());
    const TheoremReport rep = thm2_report(set, grid, MainTermMode::Psi, cfg_.workers);
    emit(rep);
    if (!rep.fitted_exponent || *rep.fitted_exponent > 0.8) {
      throw VerifyFailure("thm2: fitted exponent above 0.8");
    }
    if (doubling_growth(rep) >= 2.0) throw VerifyFailure("thm2: residual growth per doubling >= 2");
    return kExitOk;
  }

  int verify_thm1() {
    const Complex a = parse_complex(cfg_.a, "a");
    if (a == Complex{}) throw UsageError("a must be nonzero");
    if (a == Complex(1.0, 0.0)) throw UsageError("a must differ from 1");
    const double top = cfg_.t_max > 0.0 ? cfg_.t_max : 100.0;
    const auto grid = grid_or({top / 4.0, top / 2.0, top});
    const APointSet set = points_for(a, grid.back());
    const auto coeffs =
        lambda_a(static_cast<std::size_t>(std::floor(grid.back() / kTwoPi)) + 1, a);
    TheoremReport rep = thm1_growth(set, coeffs, grid, params_, cfg_.workers);
    const double identity = thm1_identity_check(set, grid.back(), params_);
    const ReflectedSums sums = thm1_reflected_sums(set, grid.back(), params_);
    const double agreement = std::abs(sums.delta_form - sums.zeta_form);
    rep.notes += "; identity max " + format_double(identity) + "; zeta-form agreement " +
                 format_double(agreement);
    emit(rep);
    if (!(identity <= 1e-6)) throw VerifyFailure("thm1: per-point identity above 1e-6");
    if (!(agreement <= 1e-6 * std::max(1.0, std::abs(sums.delta_form)))) {
      throw VerifyFailure("thm1: zeta form disagrees with Delta form");
    }
    return kExitOk;
  }

  int verify_gonek() {
    if (cfg_.m != 0 && cfg_.m != 1) throw UsageError("--m must be 0 or 1");
    const auto grid = grid_or({100.0, 200.0, 400.0});
    const QuadratureParams q{params_.quadrature_panel, cfg_.tol};
    const auto lambda =
        lambda_sieve(static_cast<std::size_t>(std::floor(grid.back() / kTwoPi)) + 1);
    const EvalParams p = params_;
    const SeriesFunction analytic = [p](Complex s) { return neg_log_deriv_zeta(s, p); };
    TheoremReport rep;
    rep.label = "gonek_lambda_m" + std::to_string(cfg_.m) + "_c" + format_double(cfg_.c);
    rep.rows.resize(grid.size());
    std::vector<double> changes(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const GonekResult g = gonek_quadrature(lambda, cfg_.c, cfg_.m, grid[i], q, params_, analytic);
      rep.rows[i] = {grid[i], grid[i], g.integral, g.sum, std::abs(g.integral - g.sum)};
      changes[i] = g.last_change;
    }
    rep.fitted_exponent = fit_exponent(rep.rows);
    rep.notes = "lhs = (1/2 pi i) int Delta^(m)(1-s) (-zeta'/zeta)(s) ds on Re s = c; main = sum "
                "Lambda(n) (log n)^m over n <= T/2pi; last refinement changes:";
    for (double ch : changes) rep.notes += " " + format_double(ch);
    emit(rep);
    int inversions = 0;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
      if (relative(rep.rows[i]) >= relative(rep.rows[i - 1])) ++inversions;
    }
    if (inversions > 1) throw VerifyFailure("gonek: relative discrepancy not decreasing");
    return kExitOk;
  }

  int verify_contour() {
    const Complex a = parse_complex(cfg_.a, "a");
    const double top = cfg_.t_max > 0.0 ? cfg_.t_max : 50.0;
    SearchWindow w = apoint_window(a, top, find_options(), params_);
    w.t_min = 1.0;
    const QuadratureParams q{params_.quadrature_panel, 1e-6};
    const ContourCheck check = contour_residue_check(a, w, q, params_, find_options());
    TheoremReport rep;
    char label[96];
    std::snprintf(label, sizeof label, "contour_a%.6g_%.6g", a.real(), a.imag());
    rep.label = label;
    rep.rows.push_back({top, top, check.quadrature, check.residue_sum,
                        std::abs(check.quadrature - check.residue_sum)});
    rep.notes = "lhs = boundary integral of zeta'/(zeta - a) Delta(s) / 2 pi i over [" +
                format_double(w.sigma_min) + "," + format_double(w.sigma_max) + "]x[" +
                format_double(w.t_min) + "," + format_double(w.t_max) + "]; main = sum of " +
                "Delta over " + std::to_string(check.interior_points) + " interior a-points";
    emit(rep);
    if (!(rep.rows[0].residual_abs < cfg_.tol)) {
      throw VerifyFailure("contour: quadrature and residue sum differ by more than --tol");
    }
    return kExitOk;
  }

  int verify_counts() {
    const Complex a = parse_complex(cfg_.a, "a");
    const auto grid = grid_or({100.0, 500.0});
    const APointSet set = points_for(a, grid.back());
    TheoremReport rep;
    char label[96];
    std::snprintf(label, sizeof label, "counts_a%.6g_%.6g", a.real(), a.imag());
    rep.label = label;
    std::string failure;
    for (double T : grid) {
      const double top = aligned_height(set.points, T);
      const long n = std::count_if(set.points.begin(), set.points.end(),
                                   [&](const APoint& pt) { return pt.gamma < top; });
      const CountEstimate est = expected_count(a, top);
      const double diff = std::abs(static_cast<double>(n) - est.main_term);
      rep.rows.push_back({top, T, static_cast<double>(n), est.main_term, diff});
      const bool ok = a == Complex{} ? diff <= 3.0 * std::log(top) : diff <= 0.1 * est.main_term;
      if (!ok && failure.empty()) failure = "counts: N_a(" + format_double(T) + ") off the main term";
    }
    rep.notes = a == Complex{} ? "bound |N - main| <= 3 log T" : "bound |N_a / main - 1| <= 0.1";
    emit(rep);
    if (!failure.empty()) throw VerifyFailure(failure);
    return kExitOk;
  }

  int report_cmd() {
    if (cfg_.in_file.empty()) throw UsageError("--in is required");
    std::ifstream in(cfg_.in_file);
    if (!in) throw UsageError("cannot read " + cfg_.in_file);
    std::stringstream ss;
    ss << in.rdbuf();
    const TheoremReport rep = report_from_json(ss.str());
    out_ << (cfg_.format == "csv" ? report_to_csv(rep) : report_to_json(rep));
    return kExitOk;
  }

 private:
  FindOptions find_options() const {
    FindOptions opt;
    opt.workers = cfg_.workers;
    return opt;
  }

  APointCache cache() const {
    const char* env = std::getenv("APOINTLAB_CACHE");
    return APointCache(env && *env ? fs::path(env) : fs::path(cfg_.cache_dir));
  }

  std::vector<double> grid_or(std::vector<double> fallback) const {
    auto grid = cfg_.grid.empty() ? std::move(fallback) : parse_grid(cfg_.grid);
    if (grid.empty()) throw UsageError("--grid is empty");
    if (cfg_.t_max > 0.0 && cfg_.t_max < grid.back()) throw UsageError("--t-max below max(--grid)");
    return grid;
  }

  APointSet points_for(Complex a, double T) const {
    // A little headroom so the aligned height of the last row stays covered.
    const double top = std::max(T, cfg_.t_max) + 2.0;
    return cache().get_or_compute(a, top, params_, find_options());
  }

  static double relative(const ReportRow& row) {
    return row.residual_abs / std::max(1.0, std::abs(row.main));
  }

  // Mean of residual(2T) / residual(T) over grid pairs one doubling apart.
  static double doubling_growth(const TheoremReport& rep) {
    double total = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rep.rows.size(); ++j) {
        const double ratio = rep.rows[j].T_requested / rep.rows[i].T_requested;
        if (std::abs(ratio - 2.0) > 0.02 || rep.rows[i].residual_abs <= 0.0) continue;
        total += rep.rows[j].residual_abs / rep.rows[i].residual_abs;
        ++count;
      }
    }
    return count ? total / count : 0.0;
  }

  void emit(const TheoremReport& rep) {
    const fs::path dir(cfg_.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    const std::string json = report_to_json(rep);
    const std::string csv = report_to_csv(rep);
    for (const auto& [ext, text] : {std::pair{".json", &json}, std::pair{".csv", &csv}}) {
      std::ofstream f(dir / (rep.label + ext), std::ios::binary | std::ios::trunc);
      f << *text;
      if (!f) fail(ErrorKind::IoError, "cannot write report to " + dir.string());
    }
    out_ << (cfg_.format == "csv" ? csv : json);
  }

  const Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  EvalParams params_;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WindowCountMismatch:
    case ErrorKind::NonIntegralWinding:
    case ErrorKind::RefinementDiverged:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"zeta a-point numerics"};
  app.require_subcommand(1);

  auto add_s = [&](CLI::App* sub) { sub->add_option("--s", cfg.s, "point s as re,im")->required(); };
  auto add_a = [&](CLI::App* sub) { sub->add_option("--a", cfg.a, "value a as re,im"); };
  auto add_common = [&](CLI::App* sub) {
    add_a(sub);
    sub->add_option("--t-max", cfg.t_max, "largest height");
    sub->add_option("--grid", cfg.grid, "ascending heights t1,t2,...");
    sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--cache-dir", cfg.cache_dir, "a-point cache directory");
    sub->add_option("--format", cfg.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_dir, "report directory");
  };

  auto* zeta_sub = app.add_subcommand("zeta", "evaluate zeta(s)");
  add_s(zeta_sub);
  auto* delta_sub = app.add_subcommand("delta", "evaluate Delta(s)");
  add_s(delta_sub);
  auto* psi_sub = app.add_subcommand("psi", "Chebyshev psi(x)");
  psi_sub->add_option("--x", cfg.x, "argument")->required();
  auto* lambda_sub = app.add_subcommand("lambda-a", "coefficients of zeta'/(zeta - a)");
  add_a(lambda_sub);
  lambda_sub->add_option("--n", cfg.n, "number of coefficients")->check(CLI::PositiveNumber);
  auto* apoints_sub = app.add_subcommand("apoints", "locate a-points");
  add_common(apoints_sub);
  auto* ingest_sub = app.add_subcommand("ingest-zeros", "read a table of zero ordinates");
  ingest_sub->add_option("--zeros-file", cfg.zeros_file, "one ordinate per line")->required();
  ingest_sub->add_option("--t-max", cfg.t_max, "compare N(T) against the winding count");
  auto* verify_sub = app.add_subcommand("verify", "run a verification harness");
  verify_sub->require_subcommand(1);
  std::vector<std::pair<CLI::App*, int (Runner::*)()>> harnesses;
  struct Harness {
    const char* name;
    const char* help;
    int (Runner::*fn)();
  };
  for (const Harness& h : std::initializer_list<Harness>{
           {"thm2", "sum of Delta over a-points against the prime-power main term", &Runner::verify_thm2},
           {"thm1", "reflected identity and Lambda_a growth", &Runner::verify_thm1},
           {"gonek", "vertical-line integral against sum of b_n (log n)^m", &Runner::verify_gonek},
           {"contour", "contour integral against the residue sum", &Runner::verify_contour},
           {"counts", "a-point counts against the main term", &Runner::verify_counts}}) {
    auto* sub = verify_sub->add_subcommand(h.name, h.help);
    add_common(sub);
    harnesses.emplace_back(sub, h.fn);
  }
  auto* gonek_sub = harnesses[2].first;
  gonek_sub->add_option("--c", cfg.c, "abscissa of the vertical line");
  gonek_sub->add_option("--m", cfg.m, "power of log n (0 or 1)");
  auto* report_sub = app.add_subcommand("report", "re-emit a saved JSON report");
  report_sub->add_option("--in", cfg.in_file, "report JSON")->required();
  report_sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Runner runner(cfg, out, err);
  try {
    if (zeta_sub->parsed()) return runner.zeta_cmd();
    if (delta_sub->parsed()) return runner.delta_cmd();
    if (psi_sub->parsed()) return runner.psi_cmd();
    if (lambda_sub->parsed()) return runner.lambda_a_cmd();
    if (apoints_sub->parsed()) return runner.apoints_cmd();
    if (ingest_sub->parsed()) return runner.ingest_cmd();
    if (report_sub->parsed()) return runner.report_cmd();
    for (auto [sub, fn] : harnesses) {
      if (sub->parsed()) {
        const int code = (runner.*fn)();
        err << "PASS\n";
        return code;
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerifyFailure& e) {
    err << "FAIL: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const NumericError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace apointlab::cli

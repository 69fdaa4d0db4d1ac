#include "apointlab/complexfn.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace apointlab {
namespace {

using LComplex = std::complex<long double>;

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kTwoPiL = 2.0L * kPiL;
constexpr long double kLogTwoPiL = 1.8378770664093454835606594728112353L;
constexpr long double kLogTwoL = std::numbers::ln2_v<long double>;
constexpr int kMaxBernoulli = 60;
constexpr int kStirlingTerms = 12;
constexpr std::size_t kLogTableSize = 8192;

// B_{2k} / (2k)!
const std::array<long double, kMaxBernoulli + 1>& em_coefficients() {
  static const auto table = [] {
    std::array<long double, kMaxBernoulli + 1> c{};
    for (int k = 1; k <= kMaxBernoulli; ++k) {
      c[k] = boost::math::bernoulli_b2n<long double>(k) /
             boost::math::factorial<long double>(2 * k);
    }
    return c;
  }();
  return table;
}

// B_{2k}, used by the Stirling and digamma expansions.
const std::array<long double, kStirlingTerms + 1>& bernoulli_even() {
  static const auto table = [] {
    std::array<long double, kStirlingTerms + 1> b{};
    for (int k = 1; k <= kStirlingTerms; ++k) b[k] = boost::math::bernoulli_b2n<long double>(k);
    return b;
  }();
  return table;
}

// log n split as hi + lo so that t log n can be reduced mod 2 pi without
// losing the low bits at large t.
struct SplitLog {
  double hi;
  double lo;
};

SplitLog split_log(std::size_t n) {
  const long double l = std::log(static_cast<long double>(n));
  const double hi = static_cast<double>(l);
  return {hi, static_cast<double>(l - hi)};
}

const std::vector<SplitLog>& log_table() {
  static const auto table = [] {
    std::vector<SplitLog> v(kLogTableSize);
    for (std::size_t n = 1; n < kLogTableSize; ++n) v[n] = split_log(n);
    return v;
  }();
  return table;
}

// Smallest prime factor for n < kLogTableSize.
const std::vector<std::uint32_t>& smallest_factor() {
  static const auto table = [] {
    std::vector<std::uint32_t> spf(kLogTableSize, 0);
    for (std::size_t i = 2; i < kLogTableSize; ++i) {
      if (spf[i] != 0) continue;
      for (std::size_t j = i; j < kLogTableSize; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
      }
    }
    return spf;
  }();
  return table;
}

SplitLog log_of(std::size_t n) { return n < kLogTableSize ? log_table()[n] : split_log(n); }

constexpr double kTwoPiHi = 6.283185307179586;
constexpr double kTwoPiLo = 2.4492935982947064e-16;

// t log n mod 2 pi, accurate to a few ulps of 2 pi for |t log n| < 2^30.
double reduced_phase(double t, SplitLog ln) {
  const double p = t * ln.hi;
  const double p_err = std::fma(t, ln.hi, -p);
  const double k = std::nearbyint(p / kTwoPiHi);
  const double r = std::fma(-k, kTwoPiHi, p);
  return r - k * kTwoPiLo + p_err + t * ln.lo;
}

// n^{-s}
Complex inverse_power(SplitLog ln, double sigma, double t) {
  const double mag = std::exp(-sigma * ln.hi);
  const double phase = reduced_phase(t, ln);
  return {mag * std::cos(phase), -mag * std::sin(phase)};
}

void check_argument(Complex s) {
  if (!is_finite(s)) fail(ErrorKind::InvalidArgument, "non-finite argument");
  if (std::abs(s - Complex(1.0, 0.0)) < 1e-12) fail(ErrorKind::PoleAtOne, "pole at s=1");
  if (std::abs(s.imag()) > kWorkingRangeT) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "|Im s| = %.6g exceeds working range %.0f", std::abs(s.imag()),
                  kWorkingRangeT);
    fail(ErrorKind::RangeExceeded, buf);
  }
}

struct EmSums {
  LComplex value;
  LComplex deriv;
  double tail = 0.0;
};

EmSums euler_maclaurin(Complex s_in, const EvalParams& p, bool with_deriv) {
  const LComplex s(s_in.real(), s_in.imag());
  const double sigma = s_in.real();
  const double t = s_in.imag();
  const auto n_split = std::max<std::size_t>(
      static_cast<std::size_t>(p.em_cutoff),
      static_cast<std::size_t>(std::ceil(std::abs(s_in) / std::numbers::pi)) + 1);

  EmSums out;
  long double re = 0.0L, im = 0.0L, dre = 0.0L, dim = 0.0L;
  // n^{-s} is completely multiplicative: only primes need exp and sincos.
  thread_local std::vector<Complex> powers;
  powers.assign(n_split, Complex{});
  const auto& spf = smallest_factor();
  for (std::size_t n = 1; n < n_split; ++n) {
    const SplitLog ln = log_of(n);
    Complex term;
    if (n == 1) {
      term = 1.0;
    } else if (n < kLogTableSize && spf[n] != n) {
      const Complex u = powers[spf[n]];
      const Complex v = powers[n / spf[n]];
      term = {u.real() * v.real() - u.imag() * v.imag(), u.real() * v.imag() + u.imag() * v.real()};
    } else {
      term = inverse_power(ln, sigma, t);
    }
    powers[n] = term;
    re += term.real();
    im += term.imag();
    if (with_deriv) {
      dre -= ln.hi * term.real();
      dim -= ln.hi * term.imag();
    }
  }
  out.value = {re, im};
  out.deriv = {dre, dim};

  const long double big_n = static_cast<long double>(n_split);
  const SplitLog split_n = log_of(n_split);
  const long double log_n = static_cast<long double>(split_n.hi) + split_n.lo;
  const Complex n_pow_d = inverse_power(split_n, sigma, t);
  const LComplex n_pow(n_pow_d.real(), n_pow_d.imag());  // N^{-s}
  const LComplex s_minus_one = s - 1.0L;
  const LComplex integral = n_pow * big_n / s_minus_one;  // N^{1-s}/(s-1)
  out.value += integral + 0.5L * n_pow;
  if (with_deriv) {
    out.deriv += integral * (-log_n - 1.0L / s_minus_one);
    out.deriv -= 0.5L * log_n * n_pow;
  }

  const auto& coeff = em_coefficients();
  const long double threshold = 1e-3L * p.target_abs_err;
  const int order = std::min(p.bernoulli_order, kMaxBernoulli);
  LComplex poch = s;  // s (s+1) ... (s+2k-2)
  LComplex dpoch = 1.0L;
  long double scale = 1.0L / big_n;  // N^{1-2k}
  long double previous = std::numeric_limits<long double>::infinity();
  out.tail = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= order; ++k) {
    const LComplex factor = n_pow * scale;
    const LComplex term = coeff[k] * poch * factor;
    const LComplex dterm = coeff[k] * factor * (dpoch - log_n * poch);
    const long double size = with_deriv ? std::max(std::abs(term), std::abs(dterm)) : std::abs(term);
    if (size > previous) break;  // asymptotic series started to diverge
    out.value += term;
    if (with_deriv) out.deriv += dterm;
    out.tail = static_cast<double>(size);
    previous = size;
    if (size < threshold) break;
    const LComplex q = (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
    const LComplex dq = 2.0L * s + static_cast<long double>(4 * k - 1);
    dpoch = dpoch * q + poch * dq;
    poch *= q;
    scale /= big_n * big_n;
  }
  return out;
}

// Near s = 0 the reflected route would evaluate zeta next to its pole, and
// direct summation is still accurate there.
bool use_reflection(Complex s) {
  return s.real() < 0.0 && (std::abs(s.imag()) >= 1.0 || s.real() < -0.5);
}

Complex to_double(LComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

LComplex log_gamma_impl(LComplex z) {
  LComplex shift = 0.0L;
  while (z.real() < 1.0L || std::abs(z) < 16.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  const auto& b = bernoulli_even();
  LComplex result = (z - 0.5L) * std::log(z) - z + 0.5L * kLogTwoPiL;
  const LComplex inv = 1.0L / z;
  const LComplex inv_sq = inv * inv;
  LComplex power = inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    result += b[k] / static_cast<long double>(2 * k * (2 * k - 1)) * power;
    power *= inv_sq;
  }
  return result - shift;
}

LComplex digamma_impl(LComplex z) {
  LComplex shift = 0.0L;
  while (z.real() < 1.0L || std::abs(z) < 16.0L) {
    shift += 1.0L / z;
    z += 1.0L;
  }
  const auto& b = bernoulli_even();
  const LComplex inv = 1.0L / z;
  const LComplex inv_sq = inv * inv;
  LComplex result = std::log(z) - 0.5L * inv;
  LComplex power = inv_sq;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    result -= b[k] / static_cast<long double>(2 * k) * power;
    power *= inv_sq;
  }
  return result - shift;
}

// log sin z without overflow for large |Im z|.
LComplex log_sin(LComplex z) {
  if (z.imag() < 0.0L) return std::conj(log_sin(std::conj(z)));
  if (z.imag() < 5.0L) return std::log(std::sin(z));
  // sin z = (i/2) e^{-iz} (1 - e^{2iz})
  const LComplex i(0.0L, 1.0L);
  const LComplex w = std::exp(2.0L * i * z);
  return LComplex(-kLogTwoL, kPiL / 2.0L) - i * z + std::log(1.0L - w);
}

LComplex log_cos(LComplex z) { return log_sin(z + kPiL / 2.0L); }

LComplex tan_stable(LComplex z) {
  if (z.imag() < 0.0L) return std::conj(tan_stable(std::conj(z)));
  const LComplex i(0.0L, 1.0L);
  const LComplex w = std::exp(2.0L * i * z);
  return -i * (w - 1.0L) / (w + 1.0L);
}

LComplex cot_stable(LComplex z) {
  if (z.imag() < 0.0L) return std::conj(cot_stable(std::conj(z)));
  const LComplex i(0.0L, 1.0L);
  const LComplex w = std::exp(2.0L * i * z);
  return i * (w + 1.0L) / (w - 1.0L);
}

LComplex log_delta_impl(Complex s_in) {
  const LComplex s(s_in.real(), s_in.imag());
  const LComplex half_pi_s = s * (kPiL / 2.0L);
  if (s_in.real() >= 0.5) {
    // Delta(s) = (2 pi)^s / (2 cos(pi s / 2) Gamma(s))
    return s * kLogTwoPiL - kLogTwoL - log_cos(half_pi_s) - log_gamma_impl(s);
  }
  return kLogTwoL + (s - 1.0L) * kLogTwoPiL + log_sin(half_pi_s) + log_gamma_impl(1.0L - s);
}

// Delta and Delta' from the product form. Used for |Im s| < 1 left of 1/2,
// where the log form would meet the zeros of sin(pi s / 2).
std::pair<LComplex, LComplex> delta_direct(Complex s_in) {
  const LComplex s(s_in.real(), s_in.imag());
  const LComplex pre = 2.0L * std::exp((s - 1.0L) * kLogTwoPiL + log_gamma_impl(1.0L - s));
  const LComplex sn = std::sin(s * (kPiL / 2.0L));
  const LComplex cs = std::cos(s * (kPiL / 2.0L));
  return {pre * sn, pre * (sn * (kLogTwoPiL - digamma_impl(1.0L - s)) + (kPiL / 2.0L) * cs)};
}

bool near_real_left(Complex s) { return s.real() < 0.5 && std::abs(s.imag()) < 1.0; }

// Reflected evaluation aims at the caller's accuracy after scaling by |Delta|.
EvalParams reflected_params(const EvalParams& p, double delta_abs) {
  EvalParams q = p;
  q.target_abs_err = p.target_abs_err / std::max(1.0, delta_abs);
  return q;
}

void check_delta_pole(Complex s) {
  if (!is_finite(s)) fail(ErrorKind::InvalidArgument, "non-finite argument");
  if (s.real() > 0.0) {
    const double n = std::round(s.real());
    if (std::fmod(n, 2.0) != 0.0 && std::abs(s - Complex(n, 0.0)) < 1e-12) {
      fail(ErrorKind::PoleAtOddInteger, "Delta has a pole at s=" + std::to_string(static_cast<int>(n)));
    }
  }
}

}  // namespace

void EvalParams::validate() const {
  if (!(target_abs_err > 0.0)) fail(ErrorKind::InvalidArgument, "target_abs_err must be positive");
  if (em_cutoff < 10) fail(ErrorKind::InvalidArgument, "em_cutoff must be at least 10");
  if (bernoulli_order < 2) fail(ErrorKind::InvalidArgument, "bernoulli_order must be at least 2");
  if (quadrature_panel < 1) fail(ErrorKind::InvalidArgument, "quadrature_panel must be positive");
}

std::string EvalParams::canonical() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "v%d;em=%d;bo=%d;tol=%.17g;qp=%d", kEvalParamsVersion, em_cutoff,
                bernoulli_order, target_abs_err, quadrature_panel);
  return buf;
}

ZetaPair zeta_euler_maclaurin(Complex s, const EvalParams& p) {
  check_argument(s);
  const EmSums sums = euler_maclaurin(s, p, true);
  return {to_double(sums.value), to_double(sums.deriv)};
}

Complex zeta(Complex s, const EvalParams& p) {
  check_argument(s);
  if (use_reflection(s)) {
    const Complex d = delta(s);
    return d * to_double(euler_maclaurin(1.0 - s, reflected_params(p, std::abs(d)), false).value);
  }
  return to_double(euler_maclaurin(s, p, false).value);
}

ZetaPair zeta_with_deriv(Complex s, const EvalParams& p) {
  check_argument(s);
  if (use_reflection(s)) {
    // zeta'(s) = Delta'(s) zeta(1-s) - Delta(s) zeta'(1-s)
    Complex d, d_prime;
    if (near_real_left(s)) {
      const auto [v, dv] = delta_direct(s);
      d = to_double(v);
      d_prime = to_double(dv);
    } else {
      d = delta(s);
      d_prime = d * delta_log_deriv(s);
    }
    const EmSums r = euler_maclaurin(1.0 - s, reflected_params(p, std::abs(d)), true);
    const Complex z1 = to_double(r.value);
    return {d * z1, d_prime * z1 - d * to_double(r.deriv)};
  }
  const EmSums sums = euler_maclaurin(s, p, true);
  return {to_double(sums.value), to_double(sums.deriv)};
}

Complex zeta_deriv(Complex s, const EvalParams& p) { return zeta_with_deriv(s, p).deriv; }

double zeta_error_estimate(Complex s, const EvalParams& p) {
  check_argument(s);
  if (use_reflection(s)) {
    const double d = std::abs(delta(s));
    return d * euler_maclaurin(1.0 - s, reflected_params(p, d), false).tail;
  }
  return euler_maclaurin(s, p, false).tail;
}

Complex log_gamma(Complex s) {
  if (!is_finite(s)) fail(ErrorKind::InvalidArgument, "non-finite argument");
  if (s.real() <= 0.0 && std::abs(s - Complex(std::round(s.real()), 0.0)) < 1e-14) {
    fail(ErrorKind::PoleAtNonpositiveInteger, "Gamma has a pole at a nonpositive integer");
  }
  return to_double(log_gamma_impl(LComplex(s.real(), s.imag())));
}

Complex digamma(Complex s) {
  if (!is_finite(s)) fail(ErrorKind::InvalidArgument, "non-finite argument");
  if (s.real() <= 0.0 && std::abs(s - Complex(std::round(s.real()), 0.0)) < 1e-14) {
    fail(ErrorKind::PoleAtNonpositiveInteger, "digamma has a pole at a nonpositive integer");
  }
  return to_double(digamma_impl(LComplex(s.real(), s.imag())));
}

Complex log_delta(Complex s) {
  check_delta_pole(s);
  return to_double(log_delta_impl(s));
}

Complex delta(Complex s) {
  check_delta_pole(s);
  if (near_real_left(s)) return to_double(delta_direct(s).first);
  return to_double(std::exp(log_delta_impl(s)));
}

Complex delta_log_deriv(Complex s) {
  if (!is_finite(s)) fail(ErrorKind::InvalidArgument, "non-finite argument");
  const double n = std::round(s.real());
  const bool odd = std::fmod(n, 2.0) != 0.0;
  const bool singular = (odd && n > 0.0) || (!odd && n <= 0.0);
  if (singular && std::abs(s - Complex(n, 0.0)) < 1e-6) {
    fail(ErrorKind::NearSingularity, "too close to a pole or zero of Delta");
  }
  const LComplex z(s.real(), s.imag());
  const LComplex half_pi_z = z * (kPiL / 2.0L);
  if (s.real() >= 0.5) {
    return to_double(kLogTwoPiL + (kPiL / 2.0L) * tan_stable(half_pi_z) - digamma_impl(z));
  }
  return to_double(kLogTwoPiL + (kPiL / 2.0L) * cot_stable(half_pi_z) - digamma_impl(1.0L - z));
}

}  // namespace apointlab

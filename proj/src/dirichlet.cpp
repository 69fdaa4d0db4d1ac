#include "apointlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "apointlab/complexfn.hpp"

namespace apointlab {
namespace {

void require_same_length(const DirichletSeries& f, const DirichletSeries& g) {
  if (f.size() != g.size()) {
    fail(ErrorKind::LengthMismatch, "series lengths differ: " + std::to_string(f.size()) + " vs " +
                                        std::to_string(g.size()));
  }
}

void reject_a_one(Complex a) {
  if (a == Complex(1.0, 0.0)) {
    fail(ErrorKind::ACaseOne, "a = 1: zeta(s) - 1 has no constant term");
  }
}

std::vector<double> lambda_values(std::size_t n) {
  std::vector<double> lam(n + 1, 0.0);
  std::vector<bool> composite(n + 1, false);
  for (std::size_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::size_t q = p * p; q <= n; q += p) composite[q] = true;
    const double lp = std::log(static_cast<double>(p));
    for (std::size_t pk = p; pk <= n; pk *= p) {
      lam[pk] = lp;
      if (pk > n / p) break;
    }
  }
  return lam;
}

}  // namespace

Complex DirichletSeries::at(std::size_t n) const {
  if (n == 0 || n > size()) {
    fail(ErrorKind::InvalidArgument, "coefficient index " + std::to_string(n) + " outside 1.." +
                                         std::to_string(size()));
  }
  return coeffs_[n];
}

Complex DirichletSeries::evaluate(Complex s) const {
  std::complex<long double> acc = 0.0L;
  for (std::size_t n = 1; n <= size(); ++n) {
    if (coeffs_[n] == Complex{}) continue;
    const Complex term = coeffs_[n] * std::exp(-s * std::log(static_cast<double>(n)));
    acc += std::complex<long double>(term.real(), term.imag());
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Complex DirichletSeries::partial_sum(double x, int m) const {
  if (x < 1.0) return {};
  const double upto = std::floor(x);
  if (upto > static_cast<double>(size())) {
    fail(ErrorKind::SeriesTooShort, "partial sum up to " + std::to_string(upto) +
                                        " needs more than " + std::to_string(size()) + " coefficients");
  }
  std::complex<long double> acc = 0.0L;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(upto); ++n) {
    const long double w = m == 0 ? 1.0L : std::pow(std::log(static_cast<long double>(n)), m);
    acc += std::complex<long double>(coeffs_[n].real(), coeffs_[n].imag()) * w;
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

DirichletSeries DirichletSeries::identity(std::size_t n) {
  DirichletSeries f(n);
  f[1] = 1.0;
  return f;
}

DirichletSeries DirichletSeries::zeta_coefficients(std::size_t n) {
  DirichletSeries f(n);
  for (std::size_t k = 1; k <= n; ++k) f[k] = 1.0;
  return f;
}

DirichletSeries DirichletSeries::zeta_minus(std::size_t n, Complex a) {
  DirichletSeries f = zeta_coefficients(n);
  f[1] = 1.0 - a;
  return f;
}

DirichletSeries DirichletSeries::zeta_deriv_coefficients(std::size_t n) {
  DirichletSeries f(n);
  for (std::size_t k = 1; k <= n; ++k) f[k] = -std::log(static_cast<double>(k));
  return f;
}

DirichletSeries lambda_sieve(std::size_t n) {
  DirichletSeries f(n);
  const auto lam = lambda_values(n);
  for (std::size_t k = 1; k <= n; ++k) f[k] = lam[k];
  return f;
}

double psi(double x) {
  if (x < 2.0) return 0.0;
  return PsiTable(static_cast<std::size_t>(std::floor(x)))(x);
}

PsiTable::PsiTable(std::size_t limit) : prefix_(limit + 1, 0.0) {
  const auto lam = lambda_values(limit);
  long double acc = 0.0L;
  for (std::size_t n = 1; n <= limit; ++n) {
    acc += lam[n];
    prefix_[n] = static_cast<double>(acc);
  }
}

double PsiTable::operator()(double x) const {
  if (x < 1.0) return 0.0;
  const double upto = std::floor(x);
  if (upto > static_cast<double>(limit())) {
    fail(ErrorKind::InvalidArgument, "psi table too short for x = " + std::to_string(x));
  }
  return prefix_[static_cast<std::size_t>(upto)];
}

std::vector<int> moebius_sieve(std::size_t n) {
  std::vector<int> mu(n + 1, 0);
  if (n == 0) return mu;
  mu[1] = 1;
  std::vector<std::size_t> primes;
  std::vector<bool> composite(n + 1, false);
  for (std::size_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::size_t p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

DirichletSeries dirichlet_product(const DirichletSeries& f, const DirichletSeries& g) {
  require_same_length(f, g);
  const std::size_t n = f.size();
  DirichletSeries h(n);
  for (std::size_t d = 1; d <= n; ++d) {
    const Complex fd = f[d];
    if (fd == Complex{}) continue;
    for (std::size_t m = 1; m <= n / d; ++m) h[d * m] += fd * g[m];
  }
  return h;
}

DirichletSeries dirichlet_inverse(const DirichletSeries& f) {
  const std::size_t n = f.size();
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty series");
  if (f[1] == Complex{}) {
    fail(ErrorKind::ZeroLeadingCoefficient, "leading coefficient is zero (a = 1 case)");
  }
  DirichletSeries g(n);
  std::vector<Complex> acc(n + 1);
  const Complex inv_lead = 1.0 / f[1];
  for (std::size_t m = 1; m <= n; ++m) {
    g[m] = m == 1 ? inv_lead : -acc[m] * inv_lead;
    const Complex gm = g[m];
    if (gm == Complex{}) continue;
    for (std::size_t d = 2; d <= n / m; ++d) acc[d * m] += f[d] * gm;
  }
  return g;
}

// zeta' (x) (zeta - a)^{-1}, with -log(n/d) split as -sum k log p over the
// factorization of n/d. The integer-weighted pieces are collected per prime
// and scaled by log p last, so a = 0 reproduces -Lambda bit for bit.
DirichletSeries lambda_a(std::size_t n, Complex a) {
  reject_a_one(a);
  const DirichletSeries inv = dirichlet_inverse(DirichletSeries::zeta_minus(n, a));
  std::vector<std::size_t> spf(n + 1, 0);
  for (std::size_t p = 2; p <= n; ++p) {
    if (spf[p] != 0) continue;
    for (std::size_t q = p; q <= n; q += p)
      if (spf[q] == 0) spf[q] = p;
  }
  // primes[m] and their exponents, ascending.
  std::vector<std::vector<std::pair<std::size_t, int>>> factors(n + 1);
  for (std::size_t m = 2; m <= n; ++m) {
    std::size_t r = m;
    while (r > 1) {
      const std::size_t p = spf[r];
      int k = 0;
      while (r % p == 0) r /= p, ++k;
      factors[m].push_back({p, k});
    }
  }
  std::vector<std::vector<Complex>> weight(n + 1);
  for (std::size_t m = 2; m <= n; ++m) weight[m].assign(factors[m].size(), Complex{});
  for (std::size_t m = 2; m <= n; ++m) {
    for (std::size_t d = 1; d <= n / m; ++d) {
      const std::size_t target = m * d;
      const auto& tf = factors[target];
      for (const auto& [p, k] : factors[m]) {
        std::size_t i = 0;
        while (tf[i].first != p) ++i;
        weight[target][i] -= static_cast<double>(k) * inv[d];
      }
    }
  }
  DirichletSeries out(n);
  for (std::size_t m = 2; m <= n; ++m) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < factors[m].size(); ++i)
      acc += std::log(static_cast<double>(factors[m][i].first)) * weight[m][i];
    out[m] = acc;
  }
  return out;
}

DkStarTable::DkStarTable(std::size_t n, std::size_t k)
    : n_(n), rows_(k + 1, std::vector<std::int64_t>(n + 1, 0)) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "d_k* table needs N >= 1");
  rows_[0][1] = 1;
  for (std::size_t level = 1; level <= k; ++level) {
    const auto& prev = rows_[level - 1];
    auto& cur = rows_[level];
    for (std::size_t m = 1; m <= n; ++m) {
      if (prev[m] == 0) continue;
      for (std::size_t d = 2; d <= n / m; ++d) cur[d * m] += prev[m];
    }
  }
}

DkStarTable dk_star(std::size_t n, std::size_t k) { return DkStarTable(n, k); }

DirichletSeries reciprocal_via_dkstar(std::size_t n, Complex a, std::size_t k) {
  reject_a_one(a);
  const auto needed = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
  if (k < needed) {
    fail(ErrorKind::InvalidArgument, "K = " + std::to_string(k) + " < floor(log2 N) = " +
                                         std::to_string(needed));
  }
  const DkStarTable table(n, k);
  // weights[k] = 1/(a-1)^{k+1}
  std::vector<Complex> weights(k + 1);
  const Complex ratio = 1.0 / (a - 1.0);
  weights[0] = ratio;
  for (std::size_t j = 1; j <= k; ++j) weights[j] = weights[j - 1] * ratio;
  DirichletSeries out(n);
  for (std::size_t m = 1; m <= n; ++m) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
      const auto count = table(j, m);
      if (count != 0) acc += static_cast<double>(count) * weights[j];
    }
    out[m] = -acc;
  }
  return out;
}

double zeta_minus_one_real(double sigma, const EvalParams& p) {
  if (!(sigma > 1.0)) fail(ErrorKind::InvalidArgument, "zeta_minus_one_real needs sigma > 1");
  if (sigma < 10.0) return zeta(Complex(sigma, 0.0), p).real() - 1.0;
  long double acc = 0.0L;
  constexpr int kTerms = 60;
  for (int n = kTerms; n >= 2; --n) acc += std::pow(static_cast<long double>(n), -sigma);
  acc += std::pow(static_cast<long double>(kTerms) + 0.5L, 1.0L - sigma) / (sigma - 1.0L);
  return static_cast<double>(acc);
}

double sigma_star(Complex a, const EvalParams& p) {
  reject_a_one(a);
  const double target = std::abs(a - 1.0);
  auto excess = [&](double sigma) { return zeta_minus_one_real(sigma, p) - target; };

  double lo = 1.5;
  while (excess(lo) < 0.0) {
    lo = 1.0 + (lo - 1.0) / 16.0;
    if (lo - 1.0 < 1e-14) fail(ErrorKind::InvalidArgument, "|a-1| too large for sigma*");
  }
  double hi = 2.0;
  while (excess(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 2048.0) fail(ErrorKind::InvalidArgument, "|a-1| too small for sigma*");
  }
  lo = std::min(lo, hi);
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const double residual = std::abs(excess(root));
  if (residual > 1e-9 * std::max(1.0, target)) {
    fail(ErrorKind::RefinementDiverged, "sigma* bisection residual " + std::to_string(residual));
  }
  return root;
}

AbscissaEstimate b_a_estimate(Complex a, std::span<const APoint> apts, const EvalParams& p) {
  if (a == Complex{}) fail(ErrorKind::ACaseZero, "b_a is not defined through sigma* for a = 0");
  reject_a_one(a);
  AbscissaEstimate est;
  for (const APoint& pt : apts) est.lower = std::max(est.lower.value_or(pt.beta), pt.beta);
  est.upper = sigma_star(a, p);
  est.absolute_upper = est.upper;
  est.equals_sigma_star = a.imag() == 0.0 && a.real() > 1.0;
  const double mod = std::abs(a);
  if (mod > 1.0) est.log_diagnostic = std::log(1.0 / (mod - 1.0)) / std::log(2.0);
  return est;
}

}  // namespace apointlab

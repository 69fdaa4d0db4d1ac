#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/zeta.hpp>

#include "apointlab/complexfn.hpp"
#include "apointlab/dirichlet.hpp"
#include "oracles.hpp"

using namespace apointlab;

namespace {

template <class Fn>
void check_kind(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    FAIL("expected " << to_string(kind));
  } catch (const NumericError& e) {
    CHECK(e.kind() == kind);
  }
}

DirichletSeries random_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> lead(0.5, 2.0), rest(-1.0, 1.0);
  DirichletSeries f(n);
  f[1] = {lead(rng) * (rng() % 2 ? 1.0 : -1.0), rest(rng)};
  for (std::size_t k = 2; k <= n; ++k) f[k] = {rest(rng), rest(rng)};
  return f;
}

}  // namespace

TEST_CASE("von Mangoldt sieve against trial division") {
  const auto lam = lambda_sieve(3000);
  for (std::size_t n = 1; n <= 3000; ++n) {
    CAPTURE(n);
    CHECK(lam[n].real() == doctest::Approx(oracle::von_mangoldt(n)).epsilon(1e-15));
    CHECK(lam[n].imag() == 0.0);
  }
  const auto small = lambda_sieve(10);
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  const double want[] = {0, 0, l2, l3, l2, std::log(5.0), 0, std::log(7.0), l2, l3, 0};
  for (std::size_t n = 1; n <= 10; ++n) CHECK(small[n].real() == doctest::Approx(want[n]));
}

TEST_CASE("psi") {
  CHECK(psi(1.0) == 0.0);
  CHECK(psi(10.0) == doctest::Approx(3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0)));
  CHECK(std::abs(psi(10.0) - 7.8319) < 2e-4);
  CHECK(psi(10.5) == psi(10.0));
  for (double x : {2.0, 17.5, 100.0 / (2 * std::numbers::pi), 318.31, 1000.0, 4321.7}) {
    CAPTURE(x);
    CHECK(std::abs(psi(x) - oracle::trial_division_psi(x)) < 1e-10);
  }
  const PsiTable table(5000);
  for (double x : {0.5, 1.0, 2.0, 99.9, 2500.0, 5000.0}) CHECK(std::abs(table(x) - psi(x)) < 1e-9);
}

TEST_CASE("Moebius sieve against factorisation") {
  const auto mu = moebius_sieve(5000);
  for (std::size_t n = 1; n <= 5000; ++n) {
    CAPTURE(n);
    CHECK(mu[n] == oracle::mobius(n));
  }
}

TEST_CASE("Dirichlet product") {
  const auto z = DirichletSeries::zeta_coefficients(300);
  const auto id = DirichletSeries::identity(300);
  const auto d = dirichlet_product(z, z);
  for (std::size_t n = 1; n <= 300; ++n) {
    int divisors = 0;
    for (std::size_t k = 1; k <= n; ++k) divisors += n % k == 0;
    CHECK(d[n] == Complex(divisors, 0.0));
  }
  std::mt19937_64 rng(5);
  const auto f = random_series(rng, 300), g = random_series(rng, 300), h = random_series(rng, 300);
  const auto fi = dirichlet_product(f, id);
  for (std::size_t n = 1; n <= 300; ++n) CHECK(fi[n] == f[n]);
  const auto fg = dirichlet_product(f, g), gf = dirichlet_product(g, f);
  const auto l = dirichlet_product(fg, h), r = dirichlet_product(f, dirichlet_product(g, h));
  for (std::size_t n = 1; n <= 300; ++n) {
    CHECK(std::abs(fg[n] - gf[n]) < 1e-12);
    CHECK(std::abs(l[n] - r[n]) < 1e-11);
  }
  check_kind(ErrorKind::LengthMismatch, [&] { dirichlet_product(f, DirichletSeries(10)); });
}

TEST_CASE("Dirichlet inverse") {
  const auto mu = moebius_sieve(500);
  const auto zi = dirichlet_inverse(DirichletSeries::zeta_coefficients(500));
  for (std::size_t n = 1; n <= 500; ++n) CHECK(zi[n] == Complex(mu[n], 0.0));
  const auto id = dirichlet_inverse(DirichletSeries::identity(50));
  for (std::size_t n = 1; n <= 50; ++n) CHECK(id[n] == Complex(n == 1 ? 1.0 : 0.0, 0.0));
  const auto i2 = dirichlet_inverse(DirichletSeries::zeta_minus(8, 2.0));
  CHECK(i2[1] == Complex(-1.0, 0.0));
  CHECK(i2[2] == Complex(-1.0, 0.0));
  CHECK(i2[4] == Complex(-2.0, 0.0));

  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_series(rng, 500);
    const auto prod = dirichlet_product(dirichlet_inverse(f), f);
    for (std::size_t n = 1; n <= 500; ++n) worst = std::max(worst, std::abs(prod[n] - (n == 1 ? 1.0 : 0.0)));
  }
  CHECK(worst <= 1e-12);
  DirichletSeries zero_lead(5);
  zero_lead[2] = 1.0;
  check_kind(ErrorKind::ZeroLeadingCoefficient, [&] { dirichlet_inverse(zero_lead); });
  check_kind(ErrorKind::ZeroLeadingCoefficient,
             [&] { dirichlet_inverse(DirichletSeries::zeta_minus(5, 1.0)); });
}

TEST_CASE("generalised von Mangoldt coefficients") {
  const auto lam = lambda_sieve(2000);
  const auto l0 = lambda_a(2000, 0.0);
  for (std::size_t n = 1; n <= 2000; ++n) CHECK(l0[n] == -lam[n]);
  const auto l2 = lambda_a(10, 2.0);
  CHECK(std::abs(l2[1]) == 0.0);
  CHECK(std::abs(l2[4] - 3.0 * std::log(2.0)) <= 1e-12);
  // zeta' = Lambda_a * (zeta - a) coefficientwise.
  for (Complex a : {Complex(2.0, 0.0), Complex(0.0, 1.0), Complex(-3.0, 0.5)}) {
    const auto la = lambda_a(400, a);
    const auto back = dirichlet_product(la, DirichletSeries::zeta_minus(400, a));
    const auto zd = DirichletSeries::zeta_deriv_coefficients(400);
    for (std::size_t n = 1; n <= 400; ++n) CHECK(std::abs(back[n] - zd[n]) < 1e-9);
    // Same coefficients as the plain product form.
    const auto direct = dirichlet_product(zd, dirichlet_inverse(DirichletSeries::zeta_minus(400, a)));
    for (std::size_t n = 1; n <= 400; ++n) CHECK(std::abs(la[n] - direct[n]) <= 1e-9 * std::max(1.0, std::abs(direct[n])));
  }
  check_kind(ErrorKind::ACaseOne, [] { lambda_a(10, 1.0); });
}

TEST_CASE("truncated Lambda_2 series against the analytic quotient") {
  const auto l2 = lambda_a(10000, 2.0);
  const Complex s(4.0, 0.0);
  const Complex analytic = zeta_deriv(s) / (zeta(s) - 2.0);
  CHECK(std::abs(l2.evaluate(s) - analytic) <= 1e-6);
  const Complex s2(3.0, 5.0);
  CHECK(std::abs(l2.evaluate(s2) - zeta_deriv(s2) / (zeta(s2) - 2.0)) <= 1e-4);
}

TEST_CASE("ordered factorisation counts") {
  const auto table = dk_star(200, 8);
  for (std::size_t k = 0; k <= 8; ++k) {
    for (std::size_t n = 1; n <= 200; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      CHECK(table(k, n) == oracle::ordered_factorizations(n, static_cast<int>(k)));
    }
  }
  CHECK(table(1, 4) == 1);
  CHECK(table(2, 4) == 1);
  CHECK(table(2, 12) == 4);
}

TEST_CASE("reciprocal of zeta - a via d_k*") {
  const auto r2 = reciprocal_via_dkstar(10, 2.0, 4);
  CHECK(r2[1] == Complex(-1.0, 0.0));
  CHECK(r2[4] == Complex(-2.0, 0.0));
  CHECK(reciprocal_via_dkstar(4, 3.0, 2)[1] == Complex(-0.5, 0.0));
  for (Complex a : {Complex(2.0, 0.0), Complex(3.0, 1.0)}) {
    const auto via = reciprocal_via_dkstar(500, a, 8);
    const auto inv = dirichlet_inverse(DirichletSeries::zeta_minus(500, a));
    for (std::size_t n = 1; n <= 500; ++n) CHECK(std::abs(via[n] - inv[n]) <= 1e-10);
  }
  check_kind(ErrorKind::InvalidArgument, [] { reciprocal_via_dkstar(500, 2.0, 7); });
  check_kind(ErrorKind::ACaseOne, [] { reciprocal_via_dkstar(10, 1.0, 4); });
}

TEST_CASE("sigma*") {
  const double zeta32 = boost::math::zeta(1.5);
  CHECK(zeta32 - 1.0 == doctest::Approx(1.6123).epsilon(1e-4));
  CHECK(std::abs(sigma_star(Complex(zeta32, 0.0)) - 1.5) <= 1e-9);
  CHECK(std::abs(sigma_star(Complex(1.0, zeta32 - 1.0)) - 1.5) <= 1e-9);
  const double s3 = sigma_star(3.0);
  CHECK(std::abs(boost::math::zeta(s3) - 3.0) < 1e-9);
  double previous = 100.0;
  for (double d : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
    const double s = sigma_star(1.0 + d);
    CHECK(s < previous);
    CHECK(s > 1.0);
    previous = s;
  }
  CHECK(sigma_star(1.0 + 1e4) < 1.001);
  const double tail40 = std::pow(2.0, -40.0) + std::pow(3.0, -40.0) + std::pow(4.0, -40.0);
  CHECK(std::abs(zeta_minus_one_real(40.0) / tail40 - 1.0) < 1e-13);
  CHECK(std::abs(zeta_minus_one_real(2.0) - (std::numbers::pi * std::numbers::pi / 6 - 1.0)) < 1e-14);
  check_kind(ErrorKind::ACaseOne, [] { sigma_star(1.0); });
}

TEST_CASE("abscissa estimate") {
  const AbscissaEstimate e3 = b_a_estimate(3.0, {});
  CHECK(e3.equals_sigma_star);
  CHECK(e3.upper == doctest::Approx(sigma_star(3.0)));
  CHECK(!e3.lower);
  std::vector<APoint> pts{{2.0, 0.7, 10.0, 0.0}, {2.0, 1.2, 20.0, 0.0}};
  CHECK(*b_a_estimate(2.0, pts).lower == 1.2);
  const AbscissaEstimate near = b_a_estimate(Complex(1.1, 0.0), {});
  REQUIRE(near.log_diagnostic);
  CHECK(*near.log_diagnostic == doctest::Approx(std::log(10.0) / std::log(2.0)));
  CHECK(*near.log_diagnostic == doctest::Approx(3.32).epsilon(1e-3));
  check_kind(ErrorKind::ACaseZero, [] { b_a_estimate(0.0, {}); });
  check_kind(ErrorKind::ACaseOne, [] { b_a_estimate(1.0, {}); });
}

TEST_CASE("series evaluation and partial sums") {
  const auto z = DirichletSeries::zeta_coefficients(100);
  CHECK(z.partial_sum(10.0) == Complex(10.0, 0.0));
  CHECK(z.partial_sum(10.9) == Complex(10.0, 0.0));
  CHECK(std::abs(z.partial_sum(3.0, 1) - std::log(6.0)) < 1e-15);
  const auto id = DirichletSeries::identity(5);
  CHECK(id.partial_sum(4.0) == Complex(1.0, 0.0));
  CHECK(id.partial_sum(4.0, 1) == Complex(0.0, 0.0));
  check_kind(ErrorKind::SeriesTooShort, [&] { z.partial_sum(101.0); });
  const auto zd = DirichletSeries::zeta_deriv_coefficients(200000);
  CHECK(std::abs(zd.evaluate(6.0) - zeta_deriv(6.0)) < 1e-12);
  check_kind(ErrorKind::InvalidArgument, [] { DirichletSeries(0); });
}

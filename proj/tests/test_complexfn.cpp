#include <doctest.h>

#include <numbers>
#include <random>

#include <boost/math/special_functions/zeta.hpp>

#include "apointlab/complexfn.hpp"
#include "oracles.hpp"

using namespace apointlab;

namespace {

struct ZetaRef {
  Complex s, zeta, deriv, delta;
};

// 40-digit values from an arbitrary-precision package, frozen.
const ZetaRef kZetaRefs[] = {
    {{2.0, 0.0}, {1.6449340668482264365, 0.0}, {-0.9375482543158437537, 0.0}, {-19.739208802178717238, 0.0}},
    {{0.5, 14.134725141734692855}, {1.1667488738932820515e-16, -7.3288818837284404118e-16}, {0.78329651186703071365, 0.12469982974817166428}, {-0.95056441998635144407, -0.3105274278642890883}},
    {{0.5, 100.0}, {2.6926198856813240905, -0.020386029602598161771}, {-3.7273127096446482387, -0.19422870257374323338}, {0.99988536418961387744, -0.015141283941701319162}},
    {{0.3, 50.0}, {-0.47797016836604675623, 0.30179894143408387803}, {2.4025954724229452515, 0.27909832692306480386}, {-1.339674666587628304, -0.70554544088575520013}},
    {{-1.0, 300.0}, {-147.91444994063956154, 347.66375326948793884}, {528.84088140949514199, -1333.9795557429578694}, {-79.37776590440155432, 320.23320943433638059}},
    {{2.0, 2000.0}, {0.77358031977258608197, 0.15874334830577268222}, {0.18242353338020004015, -0.038429664607296207669}, {0.0001759149321996197587, 7.7592240550052037325e-6}},
    {{0.5, 5000.0}, {0.40684271363543255898, -0.69376415919808510245}, {1.2444024594772838453, 3.8434762990890934774}, {-0.48820843239387113808, -0.87272706302687723767}},
    {{-0.5, 9000.0}, {1141.9163481842114838, 868.09020023255912415}, {-8305.0729092614889113, -6727.9187096838785727}, {755.95156746335441865, 1216.6721837617606035}},
    {{1.5, -30.0}, {0.69085573152281282784, 0.36714274737472117117}, {0.36988625350013128175, -0.21602363098016581181}, {-0.19360813339164274144, -0.079803620348932305562}},
    {{3.0, 1.0}, {1.1072144084314091956, -0.14829086717817534849}, {-0.068630601995164464643, 0.14962373200389943242}, {25.401295786262781255, -20.554692193513533117}},
    {{-2.5, 2.0}, {0.052294427645982307265, 0.04064584442453667244}, {0.064814472812443782948, -0.025808569385439246882}, {0.056469038048829212586, 0.03516036233849850739}},
    {{0.25, 0.5}, {-0.40208409826939904571, -0.57563515643810757254}, {-0.39354175147764404804, -1.1398756745764920425}, {-0.32129208246765225838, 0.30674062764976341548}},
    {{-9.5, 0.0}, {-0.0066721722964666407568, 0.0}, {-0.0073805044488119251305, 0.0}, {-0.0066674994285533591152, 0.0}},
    {{0.75, -777.7}, {0.97009951288188098562, -1.54097224571334411}, {1.8367545405813543493, 3.0906196739689228805}, {-0.29968246163104582718, -0.0086448623374214709384}},
    {{1.1, 0.01}, {10.485439058174285419, -0.98938064035447933765}, {-96.977471875790979617, 19.605822145234645131}, {-25.170057142704852174, 1.922409130686476749}},
};

struct GammaRef {
  Complex z, log_gamma, digamma;
};

const GammaRef kGammaRefs[] = {
    {{0.5, 0.0}, {0.57236494292470008707, 0.0}, {-1.9635100260214234794, 0.0}},
    {{3.7, -2.2}, {0.72644675162442647431, -2.7180642924411456664}, {1.3576969420395713574, -0.5997294051758555323}},
    {{0.1, 40.0}, {-63.388462569939019935, 106.9259012676440596}, {3.6889034149122372121, 1.5807965143246757985}},
    {{-3.3, 0.7}, {-2.4823581995421817567, -11.009352077495584244}, {1.4271998989160316363, 2.9357584769237431679}},
    {{20.0, -300.0}, {-359.08249635871111476, -1441.1321045871393655}, {5.7058900673932217771, -1.5058875774214086513}},
    {{1e-3, 1e-3}, {6.5606044738375526187, -0.78597373492965343485}, {-500.57557073299517705, 500.00164253211767391}},
};

template <class Fn>
void check_kind(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    FAIL("expected " << to_string(kind));
  } catch (const NumericError& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("zeta, zeta' and Delta against frozen high-precision values") {
  for (const auto& r : kZetaRefs) {
    CAPTURE(r.s);
    CHECK(oracle::rel_err(zeta(r.s), r.zeta) < 1e-11);
    CHECK(oracle::rel_err(zeta_deriv(r.s), r.deriv) < 1e-10);
    CHECK(std::abs(delta(r.s) - r.delta) / std::abs(r.delta) < 1e-11);
  }
}

TEST_CASE("basic values") {
  CHECK(zeta({2.0, 0.0}).real() == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
  CHECK(std::abs(zeta({0.0, 0.0}) - Complex(-0.5, 0.0)) < 1e-14);
  CHECK(std::abs(zeta({-1.0, 0.0}) - Complex(-1.0 / 12.0, 0.0)) < 1e-14);
  CHECK(std::abs(zeta({-2.0, 0.0})) < 1e-14);
  CHECK(std::abs(zeta({-8.0, 0.0})) < 1e-14);
  CHECK(std::abs(zeta({-0.25, 0.5}) - zeta_euler_maclaurin({-0.25, 0.5}).value) < 1e-13);
  CHECK(std::abs(zeta_deriv({0.0, 0.0}) + 0.5 * std::log(2 * std::numbers::pi)) < 1e-13);
}

TEST_CASE("real axis agrees with boost::math::zeta") {
  for (double x : {-15.5, -7.5, -3.25, -1.0, -0.5, 0.1, 0.5, 0.9, 1.001, 1.5, 2.5, 7.0, 20.0, 60.0}) {
    CAPTURE(x);
    const double want = boost::math::zeta(x);
    CHECK(std::abs(zeta({x, 0.0}) - want) / std::max(1.0, std::abs(want)) < 1e-13);
  }
}

TEST_CASE("Borwein oracle in the strip |t| <= 10") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sig(-1.0, 3.0), tt(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const Complex s(sig(rng), tt(rng));
    if (std::abs(s - 1.0) < 0.05) continue;
    CAPTURE(s);
    CHECK(oracle::rel_err(zeta(s), oracle::borwein_zeta(s)) < 1e-11);
  }
}

TEST_CASE("direct Dirichlet sum for Re s >= 3") {
  for (Complex s : {Complex(3.0, 0.0), Complex(4.0, 17.0), Complex(3.5, -250.0), Complex(6.0, 1234.5)}) {
    CAPTURE(s);
    CHECK(oracle::rel_err(zeta(s), oracle::direct_zeta(s)) < 1e-12);
  }
}

TEST_CASE("functional equation on seeded samples") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sig(-1.0, 2.0), tt(2.0, 500.0);
  std::bernoulli_distribution flip(0.5);
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const Complex s(sig(rng), flip(rng) ? tt(rng) : -tt(rng));
    const Complex lhs = zeta(s);
    worst = std::max(worst, std::abs(lhs - delta(s) * zeta(1.0 - s)) / std::max(1.0, std::abs(lhs)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("conjugate symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> sig(-3.0, 4.0), tt(0.1, 3000.0);
  for (int i = 0; i < 100; ++i) {
    const Complex s(sig(rng), tt(rng));
    CAPTURE(s);
    CHECK(std::abs(zeta(std::conj(s)) - std::conj(zeta(s))) <= 1e-12 * std::max(1.0, std::abs(zeta(s))));
    CHECK(std::abs(delta(std::conj(s)) - std::conj(delta(s))) <= 1e-12 * std::abs(delta(s)));
  }
}

TEST_CASE("zeta' matches a finite difference") {
  const auto f = [](Complex s) { return zeta(s); };
  for (Complex s : {Complex(0.5, 21.0), Complex(-0.7, 40.0), Complex(2.2, -3.0), Complex(0.1, 0.2),
                    Complex(-2.5, 150.0), Complex(-3.0, 0.3), Complex(-4.0, 0.0), Complex(-6.5, -0.2)}) {
    CAPTURE(s);
    CHECK(oracle::rel_err(zeta_deriv(s), oracle::central_difference(f, s, 1e-4)) < 1e-8);
    const ZetaPair zp = zeta_with_deriv(s);
    CHECK(oracle::rel_err(zp.value, zeta(s)) < 1e-13);
    CHECK(zp.deriv == zeta_deriv(s));
  }
}

TEST_CASE("reflection and direct Euler-Maclaurin agree left of the strip") {
  for (Complex s : {Complex(-1.0, 300.0), Complex(-0.5, 20.0), Complex(-2.0, 77.0), Complex(-0.25, 1500.0)}) {
    CAPTURE(s);
    const ZetaPair em = zeta_euler_maclaurin(s);
    CHECK(oracle::rel_err(zeta(s), em.value) < 1e-10);
    CHECK(oracle::rel_err(zeta_deriv(s), em.deriv) < 1e-9);
  }
}

TEST_CASE("error estimate is below the target") {
  for (Complex s : {Complex(0.5, 14.0), Complex(2.0, 2000.0), Complex(-1.0, 9000.0)}) {
    CHECK(zeta_error_estimate(s) <= EvalParams{}.target_abs_err);
  }
}

TEST_CASE("log Gamma and digamma against frozen values") {
  for (const auto& r : kGammaRefs) {
    CAPTURE(r.z);
    CHECK(oracle::rel_err(log_gamma(r.z), r.log_gamma) < 1e-13);
    CHECK(oracle::rel_err(digamma(r.z), r.digamma) < 1e-12);
  }
}

TEST_CASE("Delta identities") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> sig(-2.0, 3.0), tt(-2000.0, 2000.0);
  for (int i = 0; i < 200; ++i) {
    const Complex s(sig(rng), tt(rng));
    if (std::abs(s.imag()) < 0.5) continue;
    CAPTURE(s);
    CHECK(std::abs(delta(s) * delta(1.0 - s) - 1.0) < 1e-12);
    CHECK(std::abs(std::exp(log_delta(s)) - delta(s)) <= 1e-12 * std::abs(delta(s)));
    const double t = s.imag();
    CHECK(std::abs(std::abs(delta({0.5, t})) - 1.0) < 1e-13);
  }
}

TEST_CASE("Delta'/Delta against a finite difference and the Stirling asymptotic") {
  const auto f = [](Complex s) { return log_delta(s); };
  for (Complex s : {Complex(0.5, 30.0), Complex(-0.25, -400.0), Complex(1.25, 5.0), Complex(0.2, 0.3)}) {
    CAPTURE(s);
    CHECK(oracle::rel_err(delta_log_deriv(s), oracle::central_difference(f, s, 1e-4)) < 1e-8);
  }
  const double t = 200.0;
  CHECK(std::abs(delta_log_deriv({0.5, -t}) + std::log(t / (2 * std::numbers::pi))) < 1e-4);
}

TEST_CASE("error kinds") {
  check_kind(ErrorKind::PoleAtOne, [] { zeta({1.0, 0.0}); });
  check_kind(ErrorKind::PoleAtOne, [] { zeta_deriv({1.0, 1e-13}); });
  check_kind(ErrorKind::RangeExceeded, [] { zeta({0.5, 2e4}); });
  check_kind(ErrorKind::PoleAtOddInteger, [] { delta({3.0, 0.0}); });
  check_kind(ErrorKind::PoleAtOddInteger, [] { delta({1.0, 0.0}); });
  check_kind(ErrorKind::NearSingularity, [] { delta_log_deriv({-2.0 + 1e-8, 0.0}); });
  check_kind(ErrorKind::NearSingularity, [] { delta_log_deriv({5.0, 1e-9}); });
  EvalParams bad;
  bad.em_cutoff = 0;
  check_kind(ErrorKind::InvalidArgument, [&] { bad.validate(); });
  bad = {};
  bad.target_abs_err = -1.0;
  check_kind(ErrorKind::InvalidArgument, [&] { bad.validate(); });
}

TEST_CASE("canonical parameters change with the defaults") {
  EvalParams p;
  const std::string base = p.canonical();
  p.em_cutoff = 11;
  CHECK(p.canonical() != base);
  CHECK(EvalParams{}.canonical() == base);
}

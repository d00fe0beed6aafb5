#include <cmath>

#include "doctest.h"
#include "msmoments/errors.hpp"
#include "msmoments/explicit_formula.hpp"

using namespace msm;
using doctest::Approx;

namespace {

const ZeroTable& zeros() {
  static const ZeroTable table = load_zeros(MSM_TEST_DATA "/zeros_100k.txt");
  return table;
}

const MangoldtTable& primes() {
  static const MangoldtTable table = build_mangoldt(300000);
  return table;
}

}  // namespace

TEST_CASE("weighted prime sum") {
  const auto eta = fejer();
  CHECK(psi_eta_direct(100, 0.05, eta, primes()) == Approx(0.7360631898252921).epsilon(1e-14));
  CHECK(psi_eta_direct(24.5, 0.01, eta, primes()) == 0.0);
  CHECK_THROWS_AS(psi_eta_direct(299000, 0.1, eta, primes()), RangeError);
  CHECK_THROWS_AS(psi_eta_direct(1.5, 0.1, eta, primes()), DomainError);
  CHECK_THROWS_AS(psi_eta_direct(100, 0.6, gauss_conv(1.0), primes()), DomainError);
}

TEST_CASE("main term") {
  const auto eta = fejer();
  CHECK(main_term(1e4, 0.1, eta) == Approx(10.002083506952195).epsilon(1e-14));
  CHECK(main_term(1e4, 1e-6, eta) / (100 * 1e-6) == Approx(eta.fourier(0.0)).epsilon(1e-12));
  const double xs[] = {3.7, 150.0, 2.2e4, 9.1e5};
  const double ds[] = {0.31, 0.07, 0.18, 0.02};
  for (int i = 0; i < 4; ++i) {
    CHECK(main_term_by_quadrature(xs[i], ds[i], eta) == Approx(main_term(xs[i], ds[i], eta)).epsilon(1e-8));
    const auto g = gauss_conv(1.0);
    CHECK(main_term_by_quadrature(xs[i], ds[i], g) == Approx(main_term(xs[i], ds[i], g)).epsilon(1e-8));
  }
}

TEST_CASE("zero side") {
  const auto eta = fejer();
  const auto at0 = zero_side(0.0, 0.1, eta, zeros());
  const auto sum = zero_sum([&](double xi) { return eta.fourier(xi); }, 0.1, zeros());
  CHECK(at0.value == Approx(-0.1 * sum.value).epsilon(1e-15));
  const ZeroTable one({15.0}, "synthetic");
  CHECK(zero_side(1.0, 0.1, eta, one).value == Approx(-0.2 * std::cos(15.0) * sinc_squared(1.5 / kTwoPi)).epsilon(1e-15));
  CHECK(zero_side(std::log(1e5), 0.1, eta, zeros()).tail <= 2e-3);
}

TEST_CASE("error envelope") {
  CHECK(error_envelope(0.5, 0.05, 0.4) == Approx(0.15661441736545788).epsilon(1e-14));
  for (double d : {0.05, 0.1, 0.3}) {
    const double below = error_envelope(d, d, 0.4);
    const double above = error_envelope(d * (1 + 1e-12), d, 0.4);
    const double factor = 1.0 + 1.0 / std::log(1.0 / d + 2.0);
    CHECK(std::max(below, above) / std::min(below, above) <= factor);
  }
  CHECK(error_envelope(2.0, 0.1, kInfinity, 1.0) == Approx(0.1 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(error_envelope(0.05, 0.1, kInfinity, 1.0) == Approx(std::log(12.0)));
  CHECK_THROWS_AS(error_envelope(0.5, 1.0, 0.4), DomainError);
  CHECK_THROWS_AS(error_envelope(0.5, 0.1, 0.6), DomainError);
  CHECK_THROWS_AS(error_envelope(-0.5, 0.1, 0.4), DomainError);
  // Non-increasing in t on each branch; non-decreasing in delta for t >= 1.
  for (double t = 0.12; t < 0.99; t += 0.01) CHECK(error_envelope(t + 0.01, 0.1, 0.3) <= error_envelope(t, 0.1, 0.3));
  for (double t = 1.0; t < 10.0; t += 0.1) CHECK(error_envelope(t + 0.1, 0.1, 0.3) <= error_envelope(t, 0.1, 0.3));
  for (double d = 0.05; d < 0.5; d += 0.01) CHECK(error_envelope(3.0, d + 0.01, 0.3) >= error_envelope(3.0, d, 0.3));
}

TEST_CASE("archimedean correction") {
  const auto eta = fejer();
  const auto far = archimedean_parts(11.5, 0.1, eta);
  CHECK(far.digamma_term == 0.0);
  CHECK(far.reflected_primes == 0.0);
  CHECK(std::fabs(far.total()) <= error_envelope(11.5, 0.1, eta));
  const auto origin = archimedean_parts(0.0, 0.1, eta);
  CHECK(origin.digamma_term == Approx(-4.2274535333762654 - std::log(kPi)).epsilon(1e-14));
  CHECK(std::isfinite(origin.total()));
}

TEST_CASE("explicit formula closes at every height") {
  const auto eta = fejer();
  for (double d : {0.1, 0.2}) {
    for (double x : {2.0, 2.5, 3.0, 5.0, 7.5, 10.0, 50.0, 200.0, 1e4, 1e5}) {
      const auto r = verify(x, d, eta, zeros(), primes());
      CAPTURE(x);
      CAPTURE(d);
      CHECK(std::fabs(r.residual) <= r.tail_estimate + 1e-6);
      CHECK(r.passed);
      CHECK(r.residual == r.prime_side - r.main_term - r.zero_side - r.archimedean);
    }
  }
  const auto g = gauss_conv(1.0);
  for (double x : {3.0, 40.0, 1e4}) {
    const auto r = verify(x, 0.2, g, zeros(), primes());
    CAPTURE(x);
    CHECK(std::fabs(r.residual) <= r.tail_estimate + 1e-6);
  }
  CHECK_THROWS_AS(verify(1.5, 0.1, eta, zeros(), primes()), DomainError);
}

TEST_CASE("unnormalized pair") {
  const auto eta = fejer();
  const auto r = unnormalized_pair(std::log(1e5), 0.1, eta, zeros(), primes());
  CHECK(std::fabs(r.difference) <= r.zero_tail + 1e-6);
  CHECK(std::fabs(r.prime_side - r.normalized_difference) <= r.predicted_scale);
  CHECK(r.weight_difference_constant < 1.0);
  const auto origin = unnormalized_pair(0.0, 0.1, eta, zeros(), primes());
  CHECK(std::isfinite(origin.prime_side));
  CHECK(std::isfinite(origin.zero_side));
}

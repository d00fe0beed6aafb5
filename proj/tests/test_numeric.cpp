#include <cmath>
#include <vector>

#include "doctest.h"
#include "msmoments/errors.hpp"
#include "msmoments/numeric.hpp"
#include "msmoments/parallel.hpp"

using namespace msm;
using doctest::Approx;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int order : {2, 4, 8, 15}) {
    const auto& rule = gauss_legendre_rule(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    for (int k = 0; k < 2 * order; ++k) {
      double sum = 0.0;
      for (int i = 0; i < order; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = k % 2 == 0 ? 2.0 / (k + 1) : 0.0;
      CHECK(sum == Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive quadrature") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi).value == Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0).value == Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value == Approx(1.0).epsilon(1e-12));
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0).value == Approx(1.0).epsilon(1e-10));
  const std::vector<double> pts = {-1.0, 0.0, 1.0};
  CHECK(integrate_pieces([](double x) { return std::fabs(x); }, pts).value == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("euler transform sums alternating series") {
  std::vector<double> terms;
  for (int k = 1; k <= 30; ++k) terms.push_back((k % 2 ? 1.0 : -1.0) / k);
  const auto r = euler_accelerate(terms);
  CHECK(std::fabs(r.value - std::log(2.0)) <= r.error);
  CHECK(r.error < 1e-11);
  // Dirichlet integral: int_0^inf sin(x)/x = pi/2.
  const auto head = integrate([](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, 0.0, kPi);
  const auto tail = integrate_alternating_tail([](double x) { return std::sin(x) / x; }, kPi, kPi, 200);
  CHECK(head.value + tail.value == Approx(kPi / 2).epsilon(1e-11));
}

TEST_CASE("digamma") {
  CHECK(digamma(1.0) == Approx(-kEulerGamma).epsilon(1e-15));
  CHECK(digamma(0.5) == Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-15));
  // Gauss: psi(1/4) = -gamma - pi/2 - 3 log 2.
  CHECK(digamma(0.25) == Approx(-4.2274535333762654).epsilon(1e-15));
  CHECK(digamma(10.3) - digamma(9.3) == Approx(1.0 / 9.3).epsilon(1e-14));
}

TEST_CASE("fejer laplace factor and sinc squared") {
  CHECK(fejer_laplace(0.0) == 1.0);
  CHECK(fejer_laplace(1e-6) == Approx(1.0 + 1e-12 / 12.0).epsilon(1e-15));
  for (double s : {1e-2, 0.05, 0.5, 3.0}) {
    CHECK(fejer_laplace(s) == Approx(2.0 * (std::cosh(s) - 1.0) / (s * s)).epsilon(1e-9));
  }
  CHECK(sinc_squared(0.0) == 1.0);
  CHECK(sinc_squared(1.0) == Approx(0.0).epsilon(1e-30));
  CHECK(sinc_squared(0.5) == Approx(4.0 / (kPi * kPi)).epsilon(1e-15));
}

TEST_CASE("compensated summation recovers cancelled terms") {
  std::vector<double> v = {1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(v) == 2.0);
  CompensatedSum s;
  for (int i = 0; i < 10; ++i) s += 0.1;
  CHECK(s.value() == Approx(1.0).epsilon(1e-16));
}

TEST_CASE("chunked sums do not depend on the worker count") {
  auto term = [](std::size_t i) { return std::sin(static_cast<double>(i)) / (1.0 + i); };
  set_thread_count(1);
  const double one = chunked_sum(100000, term, 777);
  set_thread_count(4);
  const double four = chunked_sum(100000, term, 777);
  set_thread_count(1);
  CHECK(one == four);
}

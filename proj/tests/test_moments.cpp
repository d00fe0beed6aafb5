#include <cmath>

#include "doctest.h"
#include "msmoments/errors.hpp"
#include "msmoments/explicit_formula.hpp"
#include "msmoments/moments.hpp"

using namespace msm;
using doctest::Approx;

namespace {

const ZeroTable& zeros() {
  static const ZeroTable table = load_zeros(MSM_TEST_DATA "/zeros_100k.txt");
  return table;
}

double weight_sum(int power, double delta, const TestFunction& eta, const std::vector<double>& g) {
  double s = 0.0;
  for (double x : g) s += 2.0 * std::pow(eta.hat(delta * x / kTwoPi), power);
  return s;
}

}  // namespace

TEST_CASE("gaussian predictions") {
  CHECK(ms_prediction(2, std::exp(-1.0)) == Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(ms_prediction(4, 0.1) == Approx(3.0 * std::pow(0.1 * std::log(10.0), 2)).epsilon(1e-15));
  CHECK(ms_prediction(4, 0.1) == Approx(0.1590).epsilon(1e-3));
  CHECK(ms_prediction(3, 0.1) == 0.0);
  CHECK_THROWS_AS(ms_prediction(2, 1.0), DomainError);
}

TEST_CASE("theorem main term") {
  const auto eta = fejer();
  const auto m1 = theorem_main_term(1, 0.1, eta);
  CHECK(m1.value == Approx(0.1 * ((2.0 / 3.0) * std::log(10.0) + fejer_beta())).epsilon(1e-14));
  CHECK_FALSE(m1.base_negative);
  CHECK(theorem_main_term(2, 0.1, eta).value == Approx(3.0 * m1.value * m1.value).epsilon(1e-14));
  CHECK(theorem_main_term(1, 0.15, eta).base_negative);
  const auto g = gauss_conv(1.0);
  const auto [alpha, beta] = square_functionals(g);
  CHECK(alpha == Approx(alpha_functional([&](double xi) { return g.hat(xi) * g.hat(xi); })).epsilon(1e-10));
  CHECK(std::isfinite(beta));
}

TEST_CASE("pairing") {
  const auto eta = fejer();
  const std::vector<double> two{std::sqrt(2.0) * 10, std::sqrt(3.0) * 10};
  const double s2 = weight_sum(2, 0.5, eta, two);
  CHECK(brute_force_tuple_sum(1, 0.5, eta, two) == Approx(s2).epsilon(1e-14));
  CHECK(exact_pairing_sum(1, 0.5, eta, two) == Approx(s2).epsilon(1e-14));
  CHECK(pairing_lower_bound(1, s2, 0.0) == Approx(s2).epsilon(1e-15));

  const std::vector<double> three{std::sqrt(2.0) * 10, std::sqrt(3.0) * 10, std::sqrt(5.0) * 10};
  const double t2 = weight_sum(2, 0.5, eta, three);
  const double t4 = weight_sum(4, 0.5, eta, three);
  for (int m = 1; m <= 3; ++m) {
    const double brute = brute_force_tuple_sum(m, 0.5, eta, three);
    CHECK(brute == Approx(exact_pairing_sum(m, 0.5, eta, three)).epsilon(1e-10));
    CHECK(brute >= pairing_lower_bound(m, t2, t4));
  }

  const std::vector<double> bad{1.0, 2.0, 3.0};
  CHECK(brute_force_tuple_sum(1, 0.5, eta, bad) == Approx(exact_pairing_sum(1, 0.5, eta, bad)).epsilon(1e-12));
  for (int m = 2; m <= 3; ++m) {
    const double brute = brute_force_tuple_sum(m, 0.5, eta, bad);
    const double exact = exact_pairing_sum(m, 0.5, eta, bad);
    CHECK(brute > exact * (1 + 1e-6));
    CHECK(brute >= pairing_lower_bound(m, weight_sum(2, 0.5, eta, bad), weight_sum(4, 0.5, eta, bad)));
  }

  CHECK_THROWS_AS(brute_force_tuple_sum(1, 0.5, eta, bad, 0.0), DomainError);
  std::vector<double> many(20);
  for (int i = 0; i < 20; ++i) many[static_cast<std::size_t>(i)] = 14.0 + i;
  CHECK_THROWS_AS(brute_force_tuple_sum(4, 0.5, eta, many), ResourceError);

  const auto pb = pairing_bound(2, 0.1, eta, zeros());
  CHECK(pb.value == Approx(pairing_lower_bound(2, pb.s2, pb.s4) * 1e-4).epsilon(1e-14));
  CHECK(pb.ratio == Approx(0.11263574839038032).epsilon(1e-10));
}

TEST_CASE("centered prime sum") {
  const auto table = build_mangoldt(500000);
  for (const auto& eta : {fejer(), gauss_conv(1.0)}) {
    const CenteredPrimeSum f(eta, 0.2, table);
    for (double t : {0.75, 2.0, 5.5, 9.25, 11.0}) {
      const double x = std::exp(t);
      const double direct = psi_eta_direct(x, 0.2, eta, table) - main_term(x, 0.2, eta);
      CAPTURE(t);
      CHECK(f(t) == Approx(direct).epsilon(1e-10).scale(1e-3));
    }
  }
}

TEST_CASE("prime-side moments") {
  MomentRequest req;
  req.X = 1e4;
  req.delta = 0.2;
  const auto table = build_mangoldt(moment_required_limit(req));
  req.n = 0;
  CHECK(moment_prime_side(req, table).value == 1.0);
  req.n = 2;
  const auto m2 = moment_prime_side(req, table);
  CHECK(m2.value > 0.0);
  CHECK(m2.quadrature_error < 1e-6 * m2.value);
  CHECK(m2.prediction_ms == Approx(ms_prediction(2, 0.2)));
  req.n = 1;
  CHECK(std::fabs(moment_prime_side(req, table).value) < 0.1 * std::sqrt(0.2));
  req.n = 2;
  req.X = 1e6;
  CHECK_THROWS_AS(moment_prime_side(req, table), RangeError);
}

TEST_CASE("zero-side pair sum") {
  const auto eta = fejer();
  const auto phi = fejer_weight();
  const ZeroTable one({15.0}, "synthetic");
  const double T = std::log(1e4);
  const double h = eta.hat(0.1 * 15.0 / kTwoPi);
  const double expected = 0.01 / (2 * 0.5) * h * h * (2 * phi.hat(T * 30.0 / kTwoPi) + 2 * phi.hat(0.0));
  CHECK(moment_zero_side_pair(1e4, 0.1, eta, phi, one).value == Approx(expected).epsilon(1e-13));

  const auto first = zeros().prefix(50);
  const double s2 = s_moment(1, 0.1, eta, first).value;
  CHECK(moment_zero_side_pair(1e300, 0.1, eta, phi, first).value == Approx(0.01 * s2).epsilon(1e-3));
}

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "msmoments/errors.hpp"
#include "msmoments/testfn.hpp"

using namespace msm;
using doctest::Approx;

namespace {

bool has_check(const ValidationReport& r, const std::string& name, bool passed) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c.passed == passed;
  }
  return false;
}

}  // namespace

TEST_CASE("fejer kernel transform and laplace factor") {
  const auto eta = fejer();
  CHECK(eta(0.0) == 1.0);
  CHECK(eta(-0.25) == 0.75);
  CHECK(eta(1.5) == 0.0);
  for (double xi : {0.0, 0.3, 1.7, 12.25}) {
    CHECK(fourier_by_quadrature(eta, xi) == Approx(eta.hat(xi)).epsilon(1e-12));
  }
  const auto generic = from_function("tent", [](double t) { return std::max(0.0, 1.0 - std::fabs(t)); }, 1.0, 1.0);
  for (double s : {0.0, 0.05, 0.1, 0.6}) {
    CHECK(laplace_factor(generic, s) == Approx(fejer_laplace(s)).epsilon(1e-12));
  }
  CHECK(laplace_factor(eta, 0.05) == Approx(2.0 * (std::cosh(0.05) - 1.0) / 0.0025).epsilon(1e-13));
}

TEST_CASE("transform on the strip matches the continued sinc squared") {
  const auto eta = fejer();
  for (double xi : {0.2, 1.4, 7.9}) {
    const double c = 0.1 / (4.0 * kPi);
    const std::complex<double> z(xi, -c);
    const std::complex<double> s = std::sin(kPi * z) / (kPi * z);
    const auto v = fourier_in_strip(eta, xi, c);
    CHECK(v.re == Approx((s * s).real()).epsilon(1e-11));
    CHECK(v.im == Approx((s * s).imag()).epsilon(1e-9));
  }
}

TEST_CASE("gauss-conv closed forms agree with the generic self-convolution") {
  const double sigma = 0.8;
  const auto closed = gauss_conv(sigma);
  const auto generic = self_convolution([sigma](double t) { return std::exp(-(t / sigma) * (t / sigma)); }, 0.25);
  for (double t : {0.0, 0.4, 1.3, 3.0}) CHECK(generic(t) == Approx(closed(t)).epsilon(1e-10));
  for (double xi : {0.0, 0.2, 0.7}) CHECK(generic.hat(xi) == Approx(closed.hat(xi)).epsilon(1e-10));
  CHECK(fourier_by_quadrature(closed, 0.35) == Approx(closed.hat(0.35)).epsilon(1e-10));
  CHECK(laplace_factor(closed, 0.2) == Approx(laplace_factor(from_function("g", closed.eval, 0.25), 0.2)).epsilon(1e-10));
  CHECK_THROWS_AS(laplace_factor(closed, 0.3), DomainError);
}

TEST_CASE("self-convolution rejects slowly decaying input") {
  CHECK_THROWS_AS(self_convolution([](double t) { return 1.0 / (1.0 + t * t); }, 0.25), ValidationError);
}

TEST_CASE("functionals of the fejer square") {
  const RealFn h = [](double xi) {
    const double s = sinc_squared(xi);
    return s * s;
  };
  CHECK(alpha_functional(h) == Approx(2.0 / 3.0).epsilon(1e-10));
  // Pre-registered: unit panels (scipy) and the distributional log transform agree on this value.
  CHECK(beta_functional(h) == Approx(-1.31203583939829).epsilon(1e-9));
  // Gaussian e^{-pi t^2}: alpha = 1, beta = -(gamma + log(4 pi))/2.
  const RealFn g = [](double t) { return std::exp(-kPi * t * t); };
  CHECK(alpha_functional(g) == Approx(1.0).epsilon(1e-12));
  CHECK(beta_functional(g) == Approx(-0.5 * (kEulerGamma + std::log(4.0 * kPi))).epsilon(1e-10));
  CHECK_THROWS_AS(alpha_functional([](double t) { return 1.0 / (1.0 + std::fabs(t)); }), ConvergenceError);
}

TEST_CASE("gaussian moments") {
  const double expected[] = {1, 0, 1, 0, 3, 0, 15, 0, 105, 0, 945};
  for (int n = 0; n <= 10; ++n) CHECK(gaussian_moment(n) == expected[n]);
  CHECK(gaussian_moment(60) == Approx(std::exp(std::lgamma(61.0) - 30 * std::log(2.0) - std::lgamma(31.0))).epsilon(1e-12));
}

TEST_CASE("class validation") {
  const auto f = validate_class(fejer());
  CHECK(f.passed());
  CHECK(std::find(f.flags.begin(), f.flags.end(), "Lipschitz fallback") != f.flags.end());
  CHECK(f.kappa_used == 0.49);

  const auto g = validate_class(gauss_conv(1.0));
  CHECK(g.passed());

  const auto neg = validate_class(from_function("t2gauss", [](double t) { return t * t * std::exp(-t * t); }, 0.25));
  CHECK(has_check(neg, "fourier_nonnegative", false));
  CHECK(has_check(neg, "fourier_at_zero_positive", true));

  const auto kinked = validate_class(from_function("cos-exp", [](double t) { return std::cos(t) * std::exp(-std::fabs(t)); }, 0.25));
  CHECK(has_check(kinked, "fourier_nonnegative", true));
  CHECK(has_check(kinked, "differentiable", false));

  ValidationOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(validate_class(from_function("t2gauss", [](double t) { return t * t * std::exp(-t * t); }, 0.25), strict),
                  ValidationError);
}

TEST_CASE("tabulated weights") {
  const auto path = std::filesystem::temp_directory_path() / "msm_tab.csv";
  {
    std::ofstream out(path);
    out << "t,eta\n0,1\n0.5,0.5\n1,0\n";
  }
  const auto eta = test_function_by_name("csv:" + path.string());
  std::filesystem::remove(path);
  CHECK(eta(0.25) == Approx(0.75));
  CHECK(eta(-0.75) == Approx(0.25));
  CHECK(eta(2.0) == 0.0);
  for (double xi : {0.0, 0.6, 3.3}) CHECK(eta.hat(xi) == Approx(sinc_squared(xi)).epsilon(1e-11));
  CHECK_THROWS_AS(tabulated({{0.0, 1.0}, {0.0, 0.5}}), FormatError);
}

TEST_CASE("functions by name") {
  CHECK(test_function_by_name("fejer").kind == TestFunctionKind::fejer);
  CHECK(test_function_by_name("gauss-conv(0.5)").hat(0.0) == Approx(kPi * 0.25));
  CHECK_THROWS_AS(test_function_by_name("box"), DomainError);
  CHECK(weight_function_by_name("gauss(2)").half_integral == Approx(std::sqrt(kPi)));
  CHECK(weight_function_by_name("fejer").half_integral == 0.5);
}

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "msmoments/errors.hpp"
#include "msmoments/zeros.hpp"

using namespace msm;
using doctest::Approx;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

const ZeroTable& big_table() {
  static const ZeroTable table = load_zeros(MSM_TEST_DATA "/zeros_100k.txt");
  return table;
}

double fejer_square(double xi) {
  const double s = sinc_squared(xi);
  return s * s;
}

}  // namespace

TEST_CASE("parsing zero tables") {
  const auto p = write_temp("msm_z3.txt", "# three zeros\n14.134725141\n21.022039639\n\n25.010857580\n");
  const auto t = load_zeros(p);
  CHECK(t.size() == 3);
  CHECK(t.height() == Approx(25.01085758));
  std::filesystem::remove(p);

  const auto empty = write_temp("msm_z0.txt", "# nothing\n");
  CHECK_THROWS_WITH_AS(load_zeros(empty), doctest::Contains("no ordinates"), FormatError);
  std::filesystem::remove(empty);

  const auto bad = write_temp("msm_zbad.txt", "14.13\n21.02\n20.0\n");
  CHECK_THROWS_WITH_AS(load_zeros(bad), doctest::Contains("line 3"), FormatError);
  std::filesystem::remove(bad);

  const auto neg = write_temp("msm_zneg.txt", "-1.5\n");
  CHECK_THROWS_AS(load_zeros(neg), FormatError);
  std::filesystem::remove(neg);
}

TEST_CASE("riemann-von mangoldt count") {
  const auto& t = big_table();
  REQUIRE(t.size() == 100000);
  CHECK(t.height() == Approx(74920.8274989942));
  CHECK(count_zeros(100, t) == 29);
  CHECK(count_zeros(0, t) == 0);
  CHECK(rvm_prediction(100) == Approx(28.127343587325348).epsilon(1e-14));
  CHECK(count_zeros(t.height(), t) == 100000);
  CHECK(std::fabs(100000 - rvm_prediction(t.height())) <= 1.5 + 0.8 * std::log(t.height()));
  CHECK_THROWS_AS(count_zeros(t.height() + 1, t), RangeError);
  const auto report = check_zero_table(t);
  CHECK(report.passed());
  CHECK(report.census.size() == 200);
}

TEST_CASE("zero sums") {
  const auto& t = big_table();
  const auto zero = zero_sum([](double) { return 0.0; }, 0.1, t);
  CHECK(zero.value == 0.0);
  CHECK(zero.tail == 0.0);

  const ZeroTable one({14.134725}, "synthetic");
  const double expected = 2.0 * fejer_square(0.1 * 14.134725 / kTwoPi);
  CHECK(zero_sum(fejer_square, 0.1, one).value == Approx(expected).epsilon(1e-15));

  // Prefix split: the larger prefix adds exactly the new terms.
  const auto a = zero_sum(fejer_square, 0.1, t.prefix(500)).value;
  const auto b = zero_sum(fejer_square, 0.1, t.prefix(1000)).value;
  double extra = 0.0;
  for (std::size_t i = 500; i < 1000; ++i) extra += 2.0 * fejer_square(0.1 * t.ordinates()[i] / kTwoPi);
  CHECK(b - a == Approx(extra).epsilon(1e-12));

  // Compact h: nothing changes once the height passes 2 pi R / delta.
  const RealFn tent = [](double xi) { return std::max(0.0, 1.0 - std::fabs(xi)); };
  const auto short_sum = zero_sum(tent, 0.1, t.prefix(100)).value;
  CHECK(zero_sum(tent, 0.1, t.prefix(10000)).value == short_sum);
  CHECK(zero_sum(tent, 0.1, t).value == short_sum);

  const auto full = zero_sum(fejer_square, 0.1, t);
  CHECK(full.tail < 0.1 * full.value);
  CHECK_FALSE(full.tail_warning);
}

TEST_CASE("zero sum asymptotic") {
  const double beta = -1.31203583939829;
  CHECK(fejer_beta() == Approx(beta).epsilon(1e-9));
  CHECK(zero_sum_asymptotic(fejer_square, 1.0) == Approx(beta).epsilon(1e-9));
  CHECK(zero_sum_asymptotic(fejer_square, 0.1) == Approx((2.0 / 3.0) * 10 * std::log(10.0) + 10 * beta).epsilon(1e-9));
  for (double d : {0.2, 0.1, 0.05, 0.02}) {
    const double r = d * zero_sum(fejer_square, d, big_table()).value - ((2.0 / 3.0) * std::log(1.0 / d) + beta);
    CHECK(std::fabs(r) <= 0.5);
  }
}

TEST_CASE("constant C") {
  const auto c = constant_C();
  CHECK(c.pieces[0] == Approx(0.4598463265063122).epsilon(1e-12));
  CHECK(c.pieces[1] == Approx(2.4972443614084624).epsilon(1e-12));
  CHECK(c.pieces[2] == Approx(-5.3721834192256656).epsilon(1e-14));
  CHECK(c.pieces[3] == Approx(2.4376533930572244).epsilon(1e-12));
  CHECK(c.pieces[4] == Approx(-0.022560661746346068).epsilon(1e-9));
  CHECK(std::fabs(c.assembled) < 1e-6);
  CHECK(std::fabs(c.collapsed) < 1e-6);
  CHECK(std::fabs(c.difference()) < 1e-6);
  CHECK(c.digamma_quarter == Approx(-4.2274535333762654).epsilon(1e-14));
}

TEST_CASE("s-moments") {
  const auto eta = fejer();
  const auto& t = big_table();
  CHECK(s_moment(1, 0.1, eta, t).value == Approx(zero_sum(fejer_square, 0.1, t).value).epsilon(1e-14));
  const ZeroTable ten({10.0}, "synthetic");
  const double h = sinc_squared(0.2 * 10.0 / kTwoPi);
  CHECK(s_moment(1, 0.2, eta, ten).value == Approx(2.0 * h * h).epsilon(1e-15));
  const double s2 = s_moment(1, 0.1, eta, t).value;
  const double s4 = s_moment(2, 0.1, eta, t).value;
  CHECK(s2 == Approx(3.982118494119789).epsilon(1e-12));
  CHECK(s4 == Approx(1.7860952149524905).epsilon(1e-12));
  CHECK_THROWS_AS(s_moment(0, 0.1, eta, t), DomainError);
}

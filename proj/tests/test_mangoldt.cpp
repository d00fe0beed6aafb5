#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "msmoments/errors.hpp"
#include "msmoments/mangoldt.hpp"
#include "msmoments/numeric.hpp"
#include "msmoments/parallel.hpp"

using namespace msm;
using doctest::Approx;

namespace {

double naive_mangoldt(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  return n >= 2 ? std::log(static_cast<double>(n)) : 0.0;
}

}  // namespace

TEST_CASE("prime powers up to 10") {
  const auto t = build_mangoldt(10);
  const std::uint64_t ns[] = {2, 3, 4, 5, 7, 8, 9};
  const double bases[] = {2, 3, 2, 5, 7, 2, 3};
  REQUIRE(t.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(t.entries()[i].n == ns[i]);
    CHECK(t.entries()[i].lambda == std::log(bases[i]));
  }
  const auto two = build_mangoldt(2);
  REQUIRE(two.size() == 1);
  CHECK(two.entries()[0].lambda == std::log(2.0));
  CHECK_THROWS_AS(build_mangoldt(1), DomainError);
}

TEST_CASE("sieve matches trial division across segment boundaries") {
  const std::uint64_t limit = kSieveSegment + 50000;
  const auto t = build_mangoldt(limit);
  std::size_t k = 0;
  for (std::uint64_t n = 2; n <= limit; n += (n < 200000 ? 1 : 37)) {
    const double lam = naive_mangoldt(n);
    while (k < t.size() && t.entries()[k].n < n) ++k;
    const bool present = k < t.size() && t.entries()[k].n == n;
    CHECK(present == (lam > 0.0));
    if (present) CHECK(t.entries()[k].lambda == lam);
  }
}

TEST_CASE("psi values") {
  const auto t = build_mangoldt(1000000);
  CHECK(psi(10, t) == Approx(7.832014180505469).epsilon(1e-15));
  CHECK(psi(1.5, t) == 0.0);
  CHECK(psi(100, t) == Approx(94.04531122935739).epsilon(1e-15));
  CHECK(psi(1e5, t) == Approx(100051.56402565801).epsilon(1e-13));
  CHECK(psi(1e6, t) == Approx(999586.5974956311).epsilon(1e-13));
  CHECK(std::fabs(psi(1e6, t) - 1e6) <= std::sqrt(1e6) * std::pow(std::log(1e6), 2) / (8 * kPi));
  CHECK(t.size() == 78734);
  CHECK_THROWS_AS(psi(1000001, t), RangeError);
}

TEST_CASE("short interval deviation") {
  const auto t = build_mangoldt(200000);
  CHECK(short_interval_deviation(100, 0.1, t) == Approx(8.614026221761945).epsilon(1e-13));
  CHECK_THROWS_AS(short_interval_deviation(10, 0.0, t), DomainError);
  const double d = short_interval_deviation(1e5, 0.01, t);
  CHECK(d == Approx(psi(101000, t) - psi(1e5, t) - 1000.0).epsilon(1e-12));
  CHECK(d == Approx(-61.287466118184966).epsilon(1e-10));
  CHECK_THROWS_AS(short_interval_deviation(199000, 0.1, t), RangeError);
}

TEST_CASE("sieve is identical for any worker count") {
  set_thread_count(1);
  const auto a = build_mangoldt(3 * kSieveSegment);
  set_thread_count(4);
  const auto b = build_mangoldt(3 * kSieveSegment);
  set_thread_count(1);
  REQUIRE(a.size() == b.size());
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a.entries()[i].n == b.entries()[i].n && a.entries()[i].lambda == b.entries()[i].lambda;
  }
  CHECK(same);
  CHECK(psi(3.0 * kSieveSegment, a) == psi(3.0 * kSieveSegment, b));
}

TEST_CASE("cache round trip and restriction") {
  const auto path = std::filesystem::temp_directory_path() / "msm_test_cache.bin";
  const auto t = build_mangoldt(50000);
  write_mangoldt_cache(path, t);
  const auto back = read_mangoldt_cache(path);
  CHECK(back.limit() == t.limit());
  REQUIRE(back.size() == t.size());
  CHECK(psi(50000, back) == psi(50000, t));
  const auto reused = load_or_build_mangoldt(20000, path);
  CHECK(psi(20000, reused) == psi(20000, t));
  const auto small = restrict_table(t, 1000);
  CHECK(small.limit() == 1000);
  CHECK(psi(1000, small) == psi(1000, t));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_mangoldt_cache(path), FormatError);
}

TEST_CASE("omega scan is sorted by normalized deviation") {
  const auto t = build_mangoldt(120000);
  const auto pts = omega_scan(1000, 1e5, [](double) { return 0.05; }, t);
  REQUIRE(!pts.empty());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(std::fabs(pts[i - 1].normalized_deviation) >= std::fabs(pts[i].normalized_deviation));
  }
  const auto& p = pts.front();
  CHECK(p.deviation == Approx(short_interval_deviation(p.x, p.delta, t)).epsilon(1e-14));
  CHECK(p.normalized_deviation ==
        Approx(p.deviation / std::sqrt(p.delta * p.x * std::log(1.0 / p.delta + 2.0))).epsilon(1e-14));
}

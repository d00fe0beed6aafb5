#include "msmoments/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "msmoments/errors.hpp"
#include "msmoments/parallel.hpp"

namespace msm {

ZeroTable::ZeroTable(std::vector<double> ordinates, std::string source)
    : ordinates_(std::move(ordinates)), source_(std::move(source)) {
  for (std::size_t i = 0; i < ordinates_.size(); ++i) {
    if (!(ordinates_[i] > 0.0)) throw FormatError("zero table: ordinate " + std::to_string(i + 1) + " is not positive");
    if (i > 0 && !(ordinates_[i] > ordinates_[i - 1])) {
      throw FormatError("zero table: ordinate " + std::to_string(i + 1) + " is not strictly ascending");
    }
  }
}

ZeroTable ZeroTable::prefix(std::size_t count) const {
  count = std::min(count, ordinates_.size());
  return ZeroTable(std::vector<double>(ordinates_.begin(), ordinates_.begin() + static_cast<std::ptrdiff_t>(count)),
                   source_ + " (first " + std::to_string(count) + ")");
}

ZeroTable load_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("zero table: cannot open " + path.string());
  std::vector<double> ordinates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double gamma = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, gamma);
    if (ec != std::errc() || ptr != end) {
      throw FormatError("zero table: line " + std::to_string(line_no) + " is not a decimal ordinate");
    }
    if (!(gamma > 0.0)) throw FormatError("zero table: line " + std::to_string(line_no) + " has ordinate <= 0");
    if (!ordinates.empty() && !(gamma > ordinates.back())) {
      throw FormatError("zero table: line " + std::to_string(line_no) + " is not ascending");
    }
    ordinates.push_back(gamma);
  }
  if (ordinates.empty()) throw FormatError("zero table: no ordinates in " + path.string());
  return ZeroTable(std::move(ordinates), path.string());
}

ZeroTable load_default_zeros() {
  const char* env = std::getenv("ZERO_TABLE_PATH");
  if (env == nullptr || *env == '\0') throw DomainError("no zero table given and ZERO_TABLE_PATH is unset");
  return load_zeros(env);
}

double rvm_prediction(double T) {
  if (T <= 0.0) return 0.0;
  return T / kTwoPi * std::log(T / (kTwoPi * std::exp(1.0)));
}

std::size_t count_zeros(double T, const ZeroTable& table) {
  if (T < 0.0) throw DomainError("count_zeros: T must be >= 0");
  if (T > table.height()) {
    throw RangeError("count_zeros: T = " + std::to_string(T) + " exceeds the table height " +
                     std::to_string(table.height()));
  }
  const auto g = table.ordinates();
  return static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), T) - g.begin());
}

bool ZeroTableReport::passed() const {
  return ascending && above_thirteen &&
         std::all_of(census.begin(), census.end(), [](const CensusRow& r) { return r.passed; });
}

ZeroTableReport check_zero_table(const ZeroTable& table, int points) {
  ZeroTableReport report;
  report.size = table.size();
  report.height = table.height();
  const auto g = table.ordinates();
  report.ascending = std::adjacent_find(g.begin(), g.end(), std::greater_equal<>()) == g.end();
  report.above_thirteen = g.empty() || g.front() > 13.0;
  if (table.height() < 15.0 || points < 1) return report;
  const double lo = std::log(15.0);
  const double hi = std::log(table.height());
  for (int i = 0; i < points; ++i) {
    const double T = points == 1 ? table.height() : std::exp(lo + (hi - lo) * i / (points - 1));
    const double capped = std::min(T, table.height());
    CensusRow row{capped, count_zeros(capped, table), rvm_prediction(capped), 1.5 + 0.8 * std::log(capped + 2.0), false};
    row.passed = std::fabs(static_cast<double>(row.count) - row.prediction) <= row.bound;
    report.census.push_back(row);
  }
  return report;
}

double zero_tail(const RealFn& envelope, double delta, double T) {
  // In xi = delta t / 2pi the density (1/pi) log(t/2pi) dt becomes
  // (2/delta) log(xi/delta) dxi.
  const double xi0 = delta * T / kTwoPi;
  const RealFn g = [&](double xi) {
    const double weight = std::log(xi / delta);
    return std::fabs(envelope(xi)) * std::max(weight, 0.0) * 2.0 / delta;
  };
  std::vector<double> pts;
  for (int k = 0; k <= 400; ++k) pts.push_back(xi0 + 0.5 * k);
  QuadOptions opts;
  opts.abs_tol = 1e-14;
  const auto near = integrate_pieces(g, pts, opts);
  const auto far = integrate_to_infinity(g, pts.back(), opts);
  return near.value + far.value;
}

namespace {

ZeroSum finish(double value, double tail) {
  ZeroSum r;
  r.value = value;
  r.tail = tail;
  r.tail_warning = tail > 0.1 * std::fabs(value);
  return r;
}

}  // namespace

ZeroSum zero_sum(const RealFn& h, double delta, const ZeroTable& table) {
  if (!(delta > 0.0)) throw DomainError("zero_sum: delta must be positive");
  const auto g = table.ordinates();
  const double scale = delta / kTwoPi;
  const double half = chunked_sum(g.size(), [&](std::size_t i) { return h(scale * g[i]); });
  const double tail = table.empty() ? 0.0 : zero_tail(h, delta, table.height());
  return finish(2.0 * half, tail);
}

double zero_sum_asymptotic(const RealFn& h, double delta, const FunctionalOptions& opts) {
  if (!(delta > 0.0)) throw DomainError("zero_sum_asymptotic: delta must be positive");
  const double alpha = alpha_functional(h, opts);
  const double beta = beta_functional(h, opts);
  return (alpha * std::log(1.0 / delta) + beta) / delta;
}

double fejer_alpha() { return 2.0 / 3.0; }

double fejer_beta() {
  static const double value = [] {
    const RealFn h = [](double xi) {
      const double s = sinc_squared(xi);
      return s * s;
    };
    return beta_functional(h);
  }();
  return value;
}

ConstantC constant_C() {
  ConstantC c;
  QuadOptions opts;
  opts.abs_tol = 1e-13;
  // K(x) = e^{-x/2}/(1 - e^{-2x}); 2K(x) - 1/x -> 1/2 at the origin.
  const RealFn two_k_minus_pole = [](double x) {
    if (x == 0.0) return 0.5;
    return 2.0 * std::exp(-0.5 * x) / -std::expm1(-2.0 * x) - 1.0 / x;
  };
  const RealFn two_k = [](double x) { return 2.0 * std::exp(-0.5 * x) / -std::expm1(-2.0 * x); };
  c.pieces[0] = integrate(two_k_minus_pole, 0.0, 1.0, opts).value;
  c.pieces[1] = integrate_to_infinity(two_k, 1.0, opts).value;
  c.digamma_quarter = digamma(0.25);
  c.pieces[2] = c.digamma_quarter - std::log(kPi);
  c.pieces[3] = integrate(
                    [](double x) {
                      const double r = std::sin(kPi * x);
                      return x == 0.0 ? 0.0 : 2.0 * r * r / x;
                    },
                    0.0, 1.0, opts)
                    .value;
  // -integral_1^inf cos(2 pi x)/x: first sign change at 5/4, half period 1/2.
  const RealFn cos_term = [](double x) { return std::cos(kTwoPi * x) / x; };
  const double head = integrate(cos_term, 1.0, 1.25, opts).value;
  const auto tail = integrate_alternating_tail(cos_term, 1.25, 0.5, 200, opts);
  c.pieces[4] = -(head + tail.value);
  CompensatedSum assembled;
  for (double p : c.pieces) assembled.add(p);
  c.assembled = assembled.value();

  // integral_0^inf (e^{-2x} - cos 2x)/x: smooth on [0, pi/4], then sign
  // changes of cos 2x every pi/2 with a monotone exponential part split off.
  const RealFn collapsed = [](double x) {
    if (x == 0.0) return -2.0;
    const double r = std::sin(x);
    return (std::expm1(-2.0 * x) + 2.0 * r * r) / x;
  };
  const double a = kPi / 4.0;
  const double smooth_part = integrate(collapsed, 0.0, a, opts).value;
  const double exp_tail = integrate_to_infinity([](double x) { return std::exp(-2.0 * x) / x; }, a, opts).value;
  const auto cos_tail =
      integrate_alternating_tail([](double x) { return std::cos(2.0 * x) / x; }, a, kPi / 2.0, 200, opts);
  c.collapsed = smooth_part + exp_tail - cos_tail.value;
  return c;
}

ZeroSum s_moment(int j, double delta, const TestFunction& eta, const ZeroTable& table) {
  if (j < 1) throw DomainError("s_moment: j must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("s_moment: delta must lie in (0, 1)");
  const RealFn h = [&](double xi) { return std::pow(std::fabs(eta.hat(xi)), 2.0 * j); };
  const RealFn env = [&](double xi) { return std::pow(eta.fourier_envelope(xi), 2.0 * j); };
  const auto g = table.ordinates();
  const double scale = delta / kTwoPi;
  const double half = chunked_sum(g.size(), [&](std::size_t i) { return h(scale * g[i]); });
  const double tail = table.empty() ? 0.0 : zero_tail(env, delta, table.height());
  return finish(2.0 * half, tail);
}

}  // namespace msm

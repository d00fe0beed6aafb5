#include "msmoments/numeric.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "msmoments/errors.hpp"

namespace msm {

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

namespace {

GaussRule build_gauss_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

struct Panel {
  double a;
  double b;
  double whole;
};

}  // namespace

const GaussRule& gauss_legendre_rule(int order) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_gauss_rule(order)).first;
  return it->second;
}

double gauss_legendre_15(const RealFn& f, double a, double b) {
  static const GaussRule& rule = gauss_legendre_rule(15);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts) {
  QuadResult result;
  if (a == b) return result;
  CompensatedSum value;
  CompensatedSum error;
  // Explicit stack; panels are processed left to right so the summation
  // order is fixed for a given integrand.
  std::vector<std::pair<Panel, int>> stack;
  stack.push_back({{a, b, gauss_legendre_15(f, a, b)}, 0});
  result.evaluations += 15;
  while (!stack.empty()) {
    auto [panel, depth] = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (panel.a + panel.b);
    const double left = gauss_legendre_15(f, panel.a, mid);
    const double right = gauss_legendre_15(f, mid, panel.b);
    result.evaluations += 30;
    const double refined = left + right;
    const double diff = std::fabs(refined - panel.whole);
    if (diff <= opts.abs_tol || depth >= opts.max_depth || !std::isfinite(diff)) {
      if (depth >= opts.max_depth && diff > opts.abs_tol) result.converged = false;
      if (!std::isfinite(refined)) result.converged = false;
      value.add(refined);
      error.add(diff);
      continue;
    }
    stack.push_back({{mid, panel.b, right}, depth + 1});
    stack.push_back({{panel.a, mid, left}, depth + 1});
  }
  result.value = value.value();
  result.error = error.value();
  return result;
}

QuadResult integrate_pieces(const RealFn& f, std::span<const double> breakpoints,
                            const QuadOptions& opts) {
  QuadResult total;
  CompensatedSum value;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    const QuadResult piece = integrate(f, breakpoints[i], breakpoints[i + 1], opts);
    value.add(piece.value);
    total.error += piece.error;
    total.evaluations += piece.evaluations;
    total.converged = total.converged && piece.converged;
  }
  total.value = value.value();
  return total;
}

QuadResult integrate_to_infinity(const RealFn& f, double a, const QuadOptions& opts) {
  const RealFn mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    const double t = a + u / one_minus;
    const double fv = f(t);
    if (fv == 0.0) return 0.0;
    return fv / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

SeriesResult euler_accelerate(std::span<const double> terms) {
  SeriesResult result;
  result.terms = terms.size();
  if (terms.empty()) return result;
  std::vector<double> partial(terms.size());
  CompensatedSum acc;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    acc.add(terms[k]);
    partial[k] = acc.value();
  }
  const std::size_t levels = std::min<std::size_t>(terms.size(), 40);
  std::vector<double> row(partial.end() - static_cast<std::ptrdiff_t>(levels), partial.end());
  double previous = row.back();
  while (row.size() > 1) {
    previous = row.back();
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
  }
  result.value = row.front();
  result.error = std::fabs(result.value - previous);
  return result;
}

SeriesResult integrate_alternating_tail(const RealFn& f, double first_zero, double half_period,
                                        int periods, const QuadOptions& opts) {
  std::vector<double> terms;
  terms.reserve(2 * static_cast<std::size_t>(periods));
  for (int k = 0; k < 2 * periods; ++k) {
    const double a = first_zero + k * half_period;
    const QuadResult piece = integrate(f, a, a + half_period, opts);
    if (!piece.converged) {
      throw ConvergenceError("oscillatory tail: half-period panel [" + std::to_string(a) + ", " +
                             std::to_string(a + half_period) + "] did not converge");
    }
    terms.push_back(piece.value);
  }
  return euler_accelerate(terms);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli tail: -sum B_{2k} / (2k x^{2k})
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
  return shift + std::log(x) - 0.5 * inv - series;
}

double fejer_laplace(double s) {
  const double h = 0.5 * s;
  if (std::fabs(h) < 1e-4) {
    const double h2 = h * h;
    const double r = 1.0 + h2 / 6.0 + h2 * h2 / 120.0;
    return r * r;
  }
  const double r = std::sinh(h) / h;
  return r * r;
}

double sinc_squared(double x) {
  const double px = kPi * x;
  if (std::fabs(px) < 1e-4) {
    const double r = 1.0 - px * px / 6.0;
    return r * r;
  }
  const double r = std::sin(px) / px;
  return r * r;
}

}  // namespace msm

#include "msmoments/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "msmoments/errors.hpp"
#include "msmoments/parallel.hpp"

namespace msm {

namespace {

void check_delta(double delta, const TestFunction& eta, const char* who) {
  if (!(delta > 0.0)) throw DomainError(std::string(who) + ": delta must be positive");
  if (!(delta < 2.0 * eta.kappa)) {
    std::ostringstream msg;
    msg << who << ": delta = " << delta << " is not below 2 kappa = " << 2.0 * eta.kappa;
    throw DomainError(msg.str());
  }
}

// Lambda(n) for small n by trial division.
double small_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::log(static_cast<double>(n));
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

// Sum of Lambda(n) weight(log n) over the table entries with
// x e^{-W} <= n <= x e^{W}.
template <class Weight>
double window_sum(double x, double W, const MangoldtTable& table, Weight&& weight, const char* who) {
  const double hi = x * std::exp(W);
  if (hi > static_cast<double>(table.limit())) {
    std::ostringstream msg;
    msg << who << ": window end " << hi << " exceeds the table limit " << table.limit();
    throw RangeError(msg.str());
  }
  const std::size_t begin = table.upper_index(x * std::exp(-W) * (1.0 - 1e-15));
  const std::size_t end = table.upper_index(hi);
  const auto entries = table.entries();
  return chunked_sum(end - begin, [&](std::size_t i) {
    const auto& e = entries[begin + i];
    return e.lambda * weight(static_cast<double>(e.n));
  });
}

}  // namespace

double psi_eta_direct(double x, double delta, const TestFunction& eta, const MangoldtTable& table) {
  if (!(x >= 2.0)) throw DomainError("psi_eta_direct: x must be >= 2");
  check_delta(delta, eta, "psi_eta_direct");
  const double W = delta * effective_radius(eta);
  const double log_x = std::log(x);
  return window_sum(x, W, table, [&](double n) { return eta((std::log(n) - log_x) / delta) / std::sqrt(n); },
                    "psi_eta_direct");
}

double main_term(double x, double delta, const TestFunction& eta) {
  return std::sqrt(x) * delta * laplace_factor(eta, 0.5 * delta);
}

double main_term_by_quadrature(double x, double delta, const TestFunction& eta) {
  const double R = effective_radius(eta);
  std::vector<double> pts;
  const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * R)));
  for (int k = -panels; k <= panels; ++k) pts.push_back(x * std::exp(delta * R * k / panels));
  for (double k : eta.kinks) {
    pts.push_back(x * std::exp(delta * k));
    pts.push_back(x * std::exp(-delta * k));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  QuadOptions opts;
  opts.abs_tol = 1e-12 * std::sqrt(x) * delta;
  const double log_x = std::log(x);
  return integrate_pieces([&](double u) { return eta((std::log(u) - log_x) / delta) / std::sqrt(u); }, pts, opts)
      .value;
}

ZeroSum zero_side(double t, double delta, const TestFunction& eta, const ZeroTable& zeros) {
  if (!(t >= 0.0)) throw DomainError("zero_side: t must be >= 0");
  check_delta(delta, eta, "zero_side");
  const auto g = zeros.ordinates();
  const double scale = delta / kTwoPi;
  const double half = chunked_sum(g.size(), [&](std::size_t i) { return std::cos(g[i] * t) * eta.hat(scale * g[i]); });
  ZeroSum r;
  r.value = -2.0 * delta * half;
  r.tail = zeros.empty() ? 0.0 : delta * zero_tail(eta.fourier_envelope, delta, zeros.height());
  r.tail_warning = r.tail > 0.1 * std::fabs(r.value);
  return r;
}

Archimedean archimedean_parts(double t, double delta, const TestFunction& eta) {
  if (!(t >= 0.0)) throw DomainError("archimedean_correction: t must be >= 0");
  if (!(delta > 0.0)) throw DomainError("archimedean_correction: delta must be positive");
  Archimedean a;
  const double R = effective_radius(eta);
  const double centre = eta(t / delta);
  a.digamma_term = (digamma(0.25) - std::log(kPi)) * centre;

  // K(x) = e^{-x/2}/(1 - e^{-2x}) against 2 eta(t/d) - eta((t+x)/d) - eta((t-x)/d).
  const auto kernel = [](double x) { return std::exp(-0.5 * x) / -std::expm1(-2.0 * x); };
  const double x_end = t + delta * R;
  std::vector<double> pts = {0.0, x_end};
  for (double k : eta.kinks) {
    for (double p : {t - delta * k, delta * k - t, t + delta * k}) {
      if (p > 0.0 && p < x_end) pts.push_back(p);
    }
  }
  const int panels = static_cast<int>(std::ceil(x_end / delta));
  for (int i = 1; i < panels; ++i) pts.push_back(x_end * i / panels);
  std::sort(pts.begin(), pts.end());
  QuadOptions opts;
  opts.abs_tol = 1e-13;
  const RealFn integrand = [&](double x) {
    if (x == 0.0) return 0.0;
    return kernel(x) * (2.0 * centre - eta((t + x) / delta) - eta((t - x) / delta));
  };
  const auto body = integrate_pieces(integrand, pts, opts);
  if (!body.converged) throw ConvergenceError("archimedean_correction: kernel quadrature did not converge");
  double tail = 0.0;
  if (centre != 0.0) tail = 2.0 * centre * integrate_to_infinity(kernel, x_end, opts).value;
  a.kernel_integral = body.value + tail;

  a.pole_term = delta * std::exp(-0.5 * t) * laplace_factor(eta, 0.5 * delta);

  const double log_n_max = delta * R - t;
  if (log_n_max > std::log(2.0)) {
    if (log_n_max > std::log(1e7)) {
      throw RangeError("archimedean_correction: reflected prime sum needs n up to e^" + std::to_string(log_n_max));
    }
    const auto n_max = static_cast<std::uint64_t>(std::exp(log_n_max));
    CompensatedSum s;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
      const double lam = small_mangoldt(n);
      if (lam == 0.0) continue;
      const double ln = std::log(static_cast<double>(n));
      s.add(lam * eta((t + ln) / delta) / std::sqrt(static_cast<double>(n)));
    }
    a.reflected_primes = s.value();
  }
  return a;
}

double archimedean_correction(double t, double delta, const TestFunction& eta) {
  return archimedean_parts(t, delta, eta).total();
}

double error_envelope(double t, double delta, double kappa, double support_radius) {
  if (!(t >= 0.0)) throw DomainError("error_envelope: t must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("error_envelope: delta must lie in (0, 1)");
  if (!(kappa > 0.0 && (kappa <= 0.5 || std::isinf(kappa)))) {
    throw DomainError("error_envelope: kappa must lie in (0, 1/2] or be infinite");
  }
  const double log_term = std::log(1.0 / delta + 2.0);
  if (t <= delta) return log_term;
  double decay = 0.0;
  if (std::isfinite(kappa)) {
    decay = log_term * std::exp(-kappa * t / delta);
  } else if (t <= delta * support_radius) {
    decay = log_term;
  }
  if (t >= 1.0) return delta * std::exp(-0.5 * t) + decay;
  return delta / t + decay;
}

double error_envelope(double t, double delta, const TestFunction& eta) {
  return error_envelope(t, delta, eta.kappa, eta.support_radius.value_or(0.0));
}

ExplicitFormulaReport verify(double x, double delta, const TestFunction& eta, const ZeroTable& zeros,
                             const MangoldtTable& table, const VerifyOptions& opts) {
  if (!(x >= 2.0)) throw DomainError("verify: x must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("verify: delta must lie in (0, 1)");
  ExplicitFormulaReport r;
  r.t = std::log(x);
  r.delta = delta;
  r.prime_side = psi_eta_direct(x, delta, eta, table);
  r.main_term = main_term(x, delta, eta);
  const auto zs = zero_side(r.t, delta, eta, zeros);
  r.zero_side = zs.value;
  r.tail_estimate = zs.tail;
  r.archimedean = archimedean_correction(r.t, delta, eta);
  r.residual = r.prime_side - r.main_term - r.zero_side - r.archimedean;
  r.envelope = error_envelope(r.t, delta, eta);
  r.threshold = std::max(opts.c_env * r.envelope, r.tail_estimate + opts.quadrature_budget);
  r.passed = std::fabs(r.residual) <= r.threshold;
  r.uniform_constant = std::fabs(r.prime_side - r.main_term) / std::log(1.0 / delta + 2.0);
  r.uniform_passed = r.uniform_constant <= opts.c_uni;
  return r;
}

double gamma_cutoff(double delta, const TestFunction& eta, double level) {
  double lo = 0.0;
  double hi = 1.0;
  while (eta.fourier_envelope(hi) >= level) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError("gamma_cutoff: eta_hat envelope does not fall below the level");
  }
  for (int i = 0; i < 100 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (eta.fourier_envelope(mid) >= level ? lo : hi) = mid;
  }
  return kTwoPi * hi / delta;
}

UnnormalizedReport unnormalized_pair(double t, double delta, const TestFunction& eta, const ZeroTable& zeros,
                                     const MangoldtTable& table) {
  if (!(t >= 0.0)) throw DomainError("unnormalized_pair: t must be >= 0");
  check_delta(delta, eta, "unnormalized_pair");
  UnnormalizedReport r;
  r.t = t;
  r.delta = delta;
  const double x = std::exp(t);
  const double W = delta * effective_radius(eta);
  const double raw = window_sum(x, W, table, [&](double n) { return eta((std::log(n) - t) / delta); },
                                "unnormalized_pair");
  r.prime_side = std::exp(-0.5 * t) * (raw - x * delta * laplace_factor(eta, delta));

  const double shift = delta / (2.0 * kTwoPi);
  const double scale = delta / kTwoPi;
  const double cutoff = gamma_cutoff(delta, eta, 1e-5);
  const auto g = zeros.ordinates();
  const std::size_t used = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), cutoff) - g.begin());
  r.zeros_used = used;
  const double half = chunked_sum(
      used,
      [&](std::size_t i) {
        const auto z = fourier_in_strip(eta, scale * g[i], shift);
        return std::cos(g[i] * t) * z.re - std::sin(g[i] * t) * z.im;
      },
      64);
  r.zero_side = -2.0 * delta * half;
  const double T = used == 0 ? g.empty() ? 0.0 : g.front() : g[used - 1];
  const double growth = std::cosh(kTwoPi * shift * effective_radius(eta));
  r.zero_tail = delta * growth * zero_tail(eta.fourier_envelope, delta, T);
  r.difference = r.prime_side - r.zero_side;
  if (x >= 2.0) r.normalized_difference = psi_eta_direct(x, delta, eta, table) - main_term(x, delta, eta);
  r.predicted_scale = std::sqrt(delta) * std::log(1.0 / delta + 2.0);
  r.extra_term_bound = std::exp(-0.5 * t) * delta;

  double worst = 0.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(100, g.size()); ++i) {
    const double xi = scale * g[i];
    const auto z = fourier_in_strip(eta, xi, shift);
    worst = std::max(worst, std::hypot(z.re - eta.hat(xi), z.im) / delta);
  }
  r.weight_difference_constant = worst;
  return r;
}

}  // namespace msm

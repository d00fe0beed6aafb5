#include "msmoments/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "msmoments/errors.hpp"
#include "msmoments/explicit_formula.hpp"
#include "msmoments/parallel.hpp"

namespace msm {

CenteredPrimeSum::CenteredPrimeSum(const TestFunction& eta, double delta, const MangoldtTable& table)
    : eta_(&eta),
      table_(&table),
      delta_(delta),
      radius_(effective_radius(eta)),
      main_factor_(delta * laplace_factor(eta, 0.5 * delta)),
      fejer_(eta.kind == TestFunctionKind::fejer) {
  const auto entries = table.entries();
  log_n_.reserve(entries.size());
  for (const auto& e : entries) log_n_.push_back(std::log(static_cast<double>(e.n)));
  if (!fejer_) return;
  prefix_w_.assign(entries.size() + 1, 0.0L);
  prefix_wu_.assign(entries.size() + 1, 0.0L);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const long double w = entries[i].lambda / std::sqrt(static_cast<long double>(entries[i].n));
    prefix_w_[i + 1] = prefix_w_[i] + w;
    prefix_wu_[i + 1] = prefix_wu_[i] + w * static_cast<long double>(log_n_[i]);
  }
}

double CenteredPrimeSum::operator()(double t) const {
  const double main = std::exp(0.5 * t) * main_factor_;
  if (fejer_) {
    const auto first = log_n_.begin();
    const std::size_t a = static_cast<std::size_t>(std::upper_bound(first, log_n_.end(), t - delta_) - first);
    const std::size_t b = static_cast<std::size_t>(std::upper_bound(first, log_n_.end(), t) - first);
    const std::size_t c = static_cast<std::size_t>(std::lower_bound(first, log_n_.end(), t + delta_) - first);
    const long double s = static_cast<long double>(t) / delta_;
    const long double d = delta_;
    // sum w (1 - |u - t|/delta) split at u = t.
    const long double left = (prefix_w_[b] - prefix_w_[a]) * (1.0L - s) + (prefix_wu_[b] - prefix_wu_[a]) / d;
    const long double right = (prefix_w_[c] - prefix_w_[b]) * (1.0L + s) - (prefix_wu_[c] - prefix_wu_[b]) / d;
    return static_cast<double>(left + right - main);
  }
  const double W = delta_ * radius_;
  const auto first = log_n_.begin();
  const auto lo = std::lower_bound(first, log_n_.end(), t - W);
  const auto hi = std::upper_bound(first, log_n_.end(), t + W);
  const auto entries = table_->entries();
  CompensatedSum s;
  for (auto it = lo; it != hi; ++it) {
    const std::size_t i = static_cast<std::size_t>(it - first);
    s.add(entries[i].lambda * (*eta_)((*it - t) / delta_) * std::exp(-0.5 * *it));
  }
  return s.value() - main;
}

std::vector<double> CenteredPrimeSum::kinks(double lo, double hi) const {
  std::vector<double> out;
  std::vector<double> offsets;
  if (fejer_) {
    offsets = {-delta_, 0.0, delta_};
  } else if (eta_->lipschitz_only) {
    for (double k : eta_->kinks) {
      offsets.push_back(-delta_ * k);
      if (k != 0.0) offsets.push_back(delta_ * k);
    }
  }
  if (offsets.empty()) return out;
  const double reach = *std::max_element(offsets.begin(), offsets.end(),
                                          [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  const auto begin = std::lower_bound(log_n_.begin(), log_n_.end(), lo - std::fabs(reach));
  const auto end = std::upper_bound(log_n_.begin(), log_n_.end(), hi + std::fabs(reach));
  for (auto it = begin; it != end; ++it) {
    for (double o : offsets) {
      const double p = *it + o;
      if (p > lo && p < hi) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double phi_t_max(const MomentRequest& req) {
  const double T = std::log(req.X);
  return T * req.phi.support_radius.value_or(req.phi.effective_radius);
}

struct PanelSums {
  CompensatedSum high;
  CompensatedSum low;
  CompensatedSum norm;
  std::size_t samples = 0;
};

}  // namespace

std::uint64_t moment_required_limit(const MomentRequest& req) {
  const double W = req.delta * effective_radius(req.eta);
  return static_cast<std::uint64_t>(std::ceil(std::exp(phi_t_max(req) + W))) + 1;
}

MomentResult moment_prime_side(const MomentRequest& req, const MangoldtTable& table, const ZeroTable* zeros) {
  if (req.n < 0) throw DomainError("moment: n must be >= 0");
  if (!(req.X >= 2.0)) throw DomainError("moment: X must be >= 2");
  if (!(req.delta > 0.0 && req.delta < 1.0)) throw DomainError("moment: delta must lie in (0, 1)");
  if (!(req.delta < 2.0 * req.eta.kappa)) throw DomainError("moment: delta must be below 2 kappa");
  if (req.panel_order < 2 || req.panel_order % 2 != 0) throw DomainError("moment: panel_order must be even and >= 2");

  MomentResult r;
  r.n = req.n;
  r.X = req.X;
  r.delta = req.delta;
  r.required_limit = moment_required_limit(req);
  if (r.required_limit > table.limit()) {
    throw RangeError("moment: sieve covers n <= " + std::to_string(table.limit()) + " but the integral needs " +
                     std::to_string(r.required_limit));
  }
  const double range_limit = 2.0 / std::sqrt(req.delta) * std::sqrt(std::log(1.0 / req.delta + 2.0));
  if (req.n > range_limit) {
    std::ostringstream w;
    w << "n = " << req.n << " exceeds 2 delta^{-1/2} log(1/delta + 2)^{1/2} = " << range_limit;
    r.warnings.push_back(w.str());
  }

  const double T = std::log(req.X);
  r.t_min = 0.0;
  r.t_max = phi_t_max(req);
  const double cutoff = gamma_cutoff(req.delta, req.eta);
  r.step = std::min(req.delta / 20.0, kTwoPi / (10.0 * cutoff)) * req.step_scale;

  const CenteredPrimeSum F(req.eta, req.delta, table);
  std::vector<double> pts;
  const auto panels = static_cast<std::size_t>(std::ceil((r.t_max - r.t_min) / r.step));
  pts.reserve(panels + 1);
  for (std::size_t k = 0; k <= panels; ++k) pts.push_back(std::min(r.t_max, r.t_min + r.step * static_cast<double>(k)));
  const auto kinks = F.kinks(r.t_min, r.t_max);
  std::vector<double> merged;
  merged.reserve(pts.size() + kinks.size());
  std::merge(pts.begin(), pts.end(), kinks.begin(), kinks.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end(), [](double a, double b) { return b - a < 1e-13; }),
               merged.end());

  const GaussRule& high = gauss_legendre_rule(req.panel_order);
  const GaussRule& low = gauss_legendre_rule(req.panel_order / 2);
  const int n = req.n;
  const auto& phi = req.phi;
  auto power = [n](double f) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= f;
    return p;
  };

  const std::size_t panel_count = merged.size() - 1;
  auto partials = map_chunks<PanelSums>(panel_count, 2048, [&](std::size_t, std::size_t begin, std::size_t end) {
    PanelSums s;
    for (std::size_t p = begin; p < end; ++p) {
      const double a = merged[p];
      const double b = merged[p + 1];
      const double mid = 0.5 * (a + b);
      const double half = 0.5 * (b - a);
      CompensatedSum panel_high;
      CompensatedSum panel_norm;
      for (std::size_t i = 0; i < high.nodes.size(); ++i) {
        const double t = mid + half * high.nodes[i];
        const double w = half * high.weights[i] * phi(t / T);
        panel_high.add(w * power(F(t)));
        panel_norm.add(w);
      }
      CompensatedSum panel_low;
      for (std::size_t i = 0; i < low.nodes.size(); ++i) {
        const double t = mid + half * low.nodes[i];
        panel_low.add(half * low.weights[i] * phi(t / T) * power(F(t)));
      }
      s.high += panel_high;
      s.low += panel_low;
      s.norm += panel_norm;
      s.samples += high.nodes.size() + low.nodes.size();
    }
    return s;
  });
  PanelSums total;
  for (const auto& s : partials) {
    total.high += s.high;
    total.low += s.low;
    total.norm += s.norm;
    total.samples += s.samples;
  }
  r.value = total.high.value() / total.norm.value();
  r.quadrature_error = std::fabs(total.high.value() - total.low.value()) / total.norm.value();
  r.samples = total.samples;

  r.prediction_ms = ms_prediction(req.n, req.delta);
  if (req.n % 2 == 0 && req.n > 0) {
    const auto mt = theorem_main_term(req.n / 2, req.delta, req.eta);
    r.theorem_main_term = mt.value;
    r.main_term_base_negative = mt.base_negative;
    if (mt.base_negative) r.warnings.push_back("alpha log(1/delta) + beta is negative at this delta");
    if (zeros != nullptr) r.pairing_bound = pairing_bound(req.n / 2, req.delta, req.eta, *zeros).value;
  }
  return r;
}

PairSum moment_zero_side_pair(double X, double delta, const TestFunction& eta, const WeightFunction& phi,
                              const ZeroTable& zeros) {
  if (!(X >= 2.0)) throw DomainError("moment_zero_side_pair: X must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("moment_zero_side_pair: delta must lie in (0, 1)");
  const double T = std::log(X);
  const double cutoff = gamma_cutoff(delta, eta);
  const auto all = zeros.ordinates();
  const std::size_t count = static_cast<std::size_t>(std::upper_bound(all.begin(), all.end(), cutoff) - all.begin());
  std::vector<double> g(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
  std::vector<double> h(count);
  for (std::size_t i = 0; i < count; ++i) h[i] = eta.hat(delta * g[i] / kTwoPi);
  const double freq = T / kTwoPi;

  // Ordered pairs (a, b) of positive ordinates; the signed sum is twice
  // the sum of Phi_hat at gamma_a + gamma_b and gamma_a - gamma_b.
  auto rows = map_chunks<double>(count, 64, [&](std::size_t, std::size_t begin, std::size_t end) {
    CompensatedSum s;
    for (std::size_t a = begin; a < end; ++a) {
      CompensatedSum row;
      row.add(0.5 * (phi.hat(2.0 * freq * g[a]) + phi.hat(0.0)) * h[a]);
      for (std::size_t b = a + 1; b < count; ++b) {
        row.add((phi.hat(freq * (g[a] + g[b])) + phi.hat(freq * (g[a] - g[b]))) * h[b]);
      }
      s.add(row.value() * h[a]);
    }
    return s.value();
  });
  const double sum = pairwise_sum(std::move(rows));
  const double prefactor = delta * delta / (2.0 * phi.half_integral);

  PairSum r;
  r.zeros_used = count;
  r.value = prefactor * 4.0 * sum;
  CompensatedSum s1;
  for (double v : h) s1.add(std::fabs(v));
  const double truncation = count == 0 ? 0.0 : std::max(g.back(), std::min(cutoff, zeros.height()));
  const double outside = truncation > 0.0 ? 0.5 * zero_tail(eta.fourier_envelope, delta, truncation) : 0.0;
  r.tail = prefactor * 2.0 * 2.0 * phi.hat(0.0) * (2.0 * s1.value() * outside + outside * outside);
  return r;
}

double ms_prediction(int n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("ms_prediction: delta must lie in (0, 1)");
  if (n % 2 != 0) return 0.0;
  return gaussian_moment(n) * std::pow(delta * std::log(1.0 / delta), 0.5 * n);
}

std::pair<double, double> square_functionals(const TestFunction& eta) {
  if (eta.kind == TestFunctionKind::fejer) return {fejer_alpha(), fejer_beta()};
  const RealFn h = [&](double xi) {
    const double v = eta.hat(xi);
    return v * v;
  };
  return {alpha_functional(h), beta_functional(h)};
}

MainTerm theorem_main_term(int m, double delta, const TestFunction& eta) {
  if (m < 1) throw DomainError("theorem_main_term: m must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("theorem_main_term: delta must lie in (0, 1)");
  const auto [alpha, beta] = square_functionals(eta);
  MainTerm r;
  r.base = alpha * std::log(1.0 / delta) + beta;
  r.base_negative = r.base < 0.0;
  r.value = gaussian_moment(2 * m) * std::pow(delta * r.base, m);
  return r;
}

double pairing_lower_bound(int m, double s2, double s4) {
  if (m < 1) throw DomainError("pairing bound: m must be >= 1");
  double v = std::pow(s2, m);
  if (m >= 2) v -= m * (m - 1.0) * std::pow(s2, m - 2) * s4;
  return gaussian_moment(2 * m) * v;
}

PairingBound pairing_bound(int m, double delta, const TestFunction& eta, const ZeroTable& zeros) {
  PairingBound r;
  r.s2 = s_moment(1, delta, eta, zeros).value;
  r.s4 = s_moment(2, delta, eta, zeros).value;
  r.ratio = r.s4 / (r.s2 * r.s2);
  r.value = pairing_lower_bound(m, r.s2, r.s4) * std::pow(delta, 2 * m);
  return r;
}

namespace {

void check_tuple_args(int m, const std::vector<double>& ordinates) {
  if (m < 1) throw DomainError("tuple sum: m must be >= 1");
  if (ordinates.empty()) throw DomainError("tuple sum: no ordinates");
  for (double g : ordinates) {
    if (!(g > 0.0)) throw DomainError("tuple sum: ordinates must be positive");
  }
}

}  // namespace

double brute_force_tuple_sum(int m, double delta, const TestFunction& eta, const std::vector<double>& ordinates,
                             double match_tol) {
  check_tuple_args(m, ordinates);
  if (!(match_tol > 0.0)) throw DomainError("tuple sum: match_tol must be positive");
  const std::size_t k = 2 * ordinates.size();
  const int length = 2 * m;
  double tuples = std::pow(static_cast<double>(k), length);
  if (tuples > static_cast<double>(kMaxTuples)) {
    std::ostringstream msg;
    msg << "tuple sum: " << tuples << " tuples exceed the budget of " << kMaxTuples;
    throw ResourceError(msg.str());
  }
  std::vector<double> gamma;
  std::vector<double> weight;
  for (double g : ordinates) {
    gamma.push_back(g);
    weight.push_back(eta.hat(delta * g / kTwoPi));
  }
  for (double g : ordinates) {
    gamma.push_back(-g);
    weight.push_back(eta.hat(-delta * g / kTwoPi));
  }

  auto partials = map_chunks<double>(k, 1, [&](std::size_t first, std::size_t, std::size_t) {
    CompensatedSum acc;
    std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
    idx[0] = first;
    // Odometer over positions 1..length-1.
    while (true) {
      double sum = 0.0;
      double product = 1.0;
      for (std::size_t i : idx) {
        sum += gamma[i];
        product *= weight[i];
      }
      if (std::fabs(sum) <= match_tol) acc.add(product);
      int pos = length - 1;
      while (pos >= 1 && ++idx[static_cast<std::size_t>(pos)] == k) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 1) break;
    }
    return acc.value();
  });
  return pairwise_sum(std::move(partials));
}

double exact_pairing_sum(int m, double delta, const TestFunction& eta, const std::vector<double>& ordinates) {
  check_tuple_args(m, ordinates);
  std::vector<double> s;
  for (double g : ordinates) {
    const double v = eta.hat(delta * g / kTwoPi);
    s.push_back(v * v);
  }
  const double log_fact_2m = std::lgamma(2.0 * m + 1.0);
  CompensatedSum total;
  std::vector<int> c(s.size(), 0);
  // Enumerate compositions of m into s.size() nonnegative parts.
  auto recurse = [&](auto&& self, std::size_t a, int remaining) -> void {
    if (a + 1 == s.size()) {
      c[a] = remaining;
      double log_coeff = log_fact_2m;
      double product = 1.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        log_coeff -= 2.0 * std::lgamma(c[i] + 1.0);
        product *= std::pow(s[i], c[i]);
      }
      total.add(std::round(std::exp(log_coeff)) * product);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      c[a] = v;
      self(self, a + 1, remaining - v);
    }
  };
  recurse(recurse, 0, m);
  return total.value();
}

}  // namespace msm

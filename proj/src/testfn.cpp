#include "msmoments/testfn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "msmoments/errors.hpp"

namespace msm {

namespace {

// Breakpoints for an integral over [0, radius]: the kinks of eta plus a
// uniform subdivision fine enough that each panel holds at most half an
// oscillation of cos(2 pi xi t).
std::vector<double> oscillation_breakpoints(double radius, double xi, const std::vector<double>& kinks) {
  const auto panels = static_cast<std::size_t>(
      std::min(400000.0, std::max(1.0, std::ceil(2.0 * radius * (std::fabs(xi) + 1.0)))));
  std::vector<double> pts;
  pts.reserve(panels + kinks.size() + 1);
  for (std::size_t i = 0; i <= panels; ++i) pts.push_back(radius * static_cast<double>(i) / panels);
  for (double k : kinks) {
    if (k > 0.0 && k < radius) pts.push_back(k);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double cosine_transform(const RealFn& f, double radius, double xi, const std::vector<double>& kinks,
                        double abs_tol) {
  const auto pts = oscillation_breakpoints(radius, xi, kinks);
  const double w = kTwoPi * xi;
  QuadOptions opts;
  opts.abs_tol = abs_tol;
  const auto r = integrate_pieces([&](double t) { return f(t) * std::cos(w * t); }, pts, opts);
  return 2.0 * r.value;
}

// Nonincreasing majorant of |fourier| sampled on a log grid, extended
// beyond the grid by a 1/xi tail.
RealFn sampled_envelope(const RealFn& fourier, double xi_max = 400.0, int samples = 600) {
  auto grid = std::make_shared<std::vector<double>>();
  auto suffix = std::make_shared<std::vector<double>>();
  grid->push_back(0.0);
  for (int i = 0; i < samples; ++i) {
    grid->push_back(1e-3 * std::pow(xi_max / 1e-3, static_cast<double>(i) / (samples - 1)));
  }
  suffix->resize(grid->size());
  double running = 0.0;
  for (std::size_t i = grid->size(); i-- > 0;) {
    running = std::max(running, std::fabs(fourier((*grid)[i])));
    (*suffix)[i] = running;
  }
  return [grid, suffix, xi_max](double xi) {
    xi = std::fabs(xi);
    if (xi > xi_max) return suffix->back() * xi_max / xi;
    auto it = std::lower_bound(grid->begin(), grid->end(), xi);
    // The suffix maximum at the grid point at or below xi bounds everything beyond it.
    std::size_t idx = static_cast<std::size_t>(it - grid->begin());
    if (idx > 0 && (idx == grid->size() || (*grid)[idx] > xi)) --idx;
    return (*suffix)[idx];
  };
}

// Smallest R with |f(t)| < rel * peak for all sampled t >= R.
double decay_radius(const RealFn& f, double rel, double step = 0.25, double cap = 4000.0) {
  double peak = 0.0;
  double last_big = 0.0;
  int quiet = 0;
  for (double t = 0.0; t <= cap; t += step) {
    const double v = std::fabs(f(t));
    peak = std::max(peak, v);
    if (v > rel * peak) {
      last_big = t;
      quiet = 0;
    } else if (++quiet > 80) {
      break;
    }
  }
  return last_big + step;
}

}  // namespace

TestFunction fejer() {
  TestFunction eta;
  eta.name = "fejer";
  eta.kind = TestFunctionKind::fejer;
  eta.eval = [](double t) { return std::max(0.0, 1.0 - std::fabs(t)); };
  eta.fourier = [](double xi) { return sinc_squared(std::fabs(xi)); };
  eta.fourier_envelope = [](double xi) {
    const double p = kPi * std::fabs(xi);
    return p <= 1.0 ? 1.0 : 1.0 / (p * p);
  };
  eta.kappa = kInfinity;
  eta.support_radius = 1.0;
  eta.truncation_radius = 1.0;
  eta.closed_form_fourier = true;
  eta.lipschitz_only = true;
  eta.laplace = [](double s) { return fejer_laplace(s); };
  eta.kinks = {0.0, 1.0};
  return eta;
}

WeightFunction fejer_weight() {
  WeightFunction phi;
  phi.name = "fejer";
  phi.eval = [](double t) { return std::max(0.0, 1.0 - std::fabs(t)); };
  phi.fourier = [](double xi) { return sinc_squared(std::fabs(xi)); };
  phi.half_integral = 0.5;
  phi.support_radius = 1.0;
  phi.effective_radius = 1.0;
  return phi;
}

WeightFunction gauss_weight(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gauss weight: sigma must be positive");
  WeightFunction phi;
  phi.name = "gauss(" + std::to_string(sigma) + ")";
  phi.eval = [sigma](double t) {
    const double u = t / sigma;
    return std::exp(-u * u);
  };
  phi.fourier = [sigma](double xi) {
    const double u = kPi * sigma * xi;
    return sigma * std::sqrt(kPi) * std::exp(-u * u);
  };
  phi.half_integral = 0.5 * sigma * std::sqrt(kPi);
  phi.effective_radius = sigma * std::sqrt(std::log(1e8));
  return phi;
}

double effective_radius(const TestFunction& eta) {
  return eta.support_radius ? *eta.support_radius : eta.truncation_radius;
}

double fourier_by_quadrature(const TestFunction& eta, double xi, double abs_tol) {
  return cosine_transform(eta.eval, effective_radius(eta), xi, eta.kinks, abs_tol);
}

Complex fourier_in_strip(const TestFunction& eta, double xi, double shift, double abs_tol) {
  const double radius = effective_radius(eta);
  const auto pts = oscillation_breakpoints(radius, xi, eta.kinks);
  const double w = kTwoPi * xi;
  const double damp = kTwoPi * shift;
  QuadOptions opts;
  opts.abs_tol = abs_tol;
  const auto re = integrate_pieces(
      [&](double u) { return eta(u) * std::cosh(damp * u) * std::cos(w * u); }, pts, opts);
  const auto im = integrate_pieces(
      [&](double u) { return eta(u) * std::sinh(damp * u) * std::sin(w * u); }, pts, opts);
  if (!re.converged || !im.converged) {
    throw ConvergenceError("strip evaluation of eta_hat did not converge at xi = " + std::to_string(xi));
  }
  return {2.0 * re.value, 2.0 * im.value};
}

double laplace_factor(const TestFunction& eta, double s) {
  if (!(std::fabs(s) < eta.kappa)) {
    throw DomainError("laplace_factor: |s| = " + std::to_string(std::fabs(s)) +
                      " is not below kappa = " + std::to_string(eta.kappa) + " (integral may diverge)");
  }
  if (eta.laplace) return eta.laplace(s);
  const double radius = effective_radius(eta);
  std::vector<double> pts = oscillation_breakpoints(radius, 0.0, eta.kinks);
  QuadOptions opts;
  opts.abs_tol = 1e-13;
  const auto r = integrate_pieces([&](double w) { return std::cosh(s * w) * eta(w); }, pts, opts);
  return 2.0 * r.value;
}

TestFunction from_function(std::string name, RealFn eval, double kappa, std::optional<double> support) {
  if (!(kappa > 0.0)) throw DomainError("test function: kappa must be positive");
  TestFunction eta;
  eta.name = std::move(name);
  eta.kind = TestFunctionKind::custom;
  eta.eval = std::move(eval);
  eta.kappa = support ? kInfinity : kappa;
  eta.support_radius = support;
  if (support) {
    eta.truncation_radius = *support;
    eta.kinks = {0.0, *support};
  } else {
    const double measured = decay_radius(eta.eval, std::exp(-40.0));
    eta.truncation_radius = std::min(40.0 / kappa, measured);
    eta.kinks = {0.0};
  }
  auto shared = std::make_shared<TestFunction>(eta);
  eta.fourier = [shared](double xi) { return fourier_by_quadrature(*shared, std::fabs(xi)); };
  eta.fourier_envelope = sampled_envelope(eta.fourier);
  return eta;
}

TestFunction self_convolution(const RealFn& eta0, double kappa, std::string name) {
  if (!(kappa > 0.0)) throw DomainError("self_convolution: kappa must be positive");
  const double radius0 = decay_radius(eta0, 1e-17);

  // Sampled check of |eta0(t)| <= C exp(-2 kappa |t|): the ratio must not
  // still be growing at the end of the sampled range.
  {
    const int samples = 400;
    double worst = -kInfinity;
    double worst_t = 0.0;
    int worst_index = 0;
    for (int i = 0; i <= samples; ++i) {
      const double t = radius0 * i / samples;
      const double magnitude = std::fabs(eta0(t));
      if (magnitude == 0.0) continue;
      const double ratio = std::log(magnitude) + 2.0 * kappa * t;
      if (ratio > worst) {
        worst = ratio;
        worst_t = t;
        worst_index = i;
      }
    }
    const double at_origin = std::log(std::fabs(eta0(0.0)));
    if (worst_index > samples * 9 / 10 && worst > at_origin + std::log(10.0)) {
      std::ostringstream msg;
      msg << "self_convolution: eta0 does not decay like exp(-2 kappa |t|); worst sample t = " << worst_t
          << ", log(|eta0(t)| exp(2 kappa t)) = " << worst;
      throw ValidationError(msg.str());
    }
  }

  auto base = std::make_shared<RealFn>(eta0);
  const std::vector<double> base_kinks = {0.0};

  TestFunction eta;
  eta.name = std::move(name);
  eta.kind = TestFunctionKind::custom;
  eta.kappa = kappa;
  eta.eval = [base, radius0](double t) {
    t = std::fabs(t);
    if (t >= 2.0 * radius0) return 0.0;
    const double lo = std::max(-radius0, t - radius0);
    const double hi = std::min(radius0, t + radius0);
    std::vector<double> pts = {lo, hi};
    for (double p : {0.0, t, 0.5 * t}) {
      if (p > lo && p < hi) pts.push_back(p);
    }
    const int extra = static_cast<int>(std::ceil(hi - lo));
    for (int i = 1; i < extra; ++i) pts.push_back(lo + (hi - lo) * i / extra);
    std::sort(pts.begin(), pts.end());
    QuadOptions opts;
    opts.abs_tol = 1e-14;
    const auto& f = *base;
    return integrate_pieces([&](double s) { return f(s) * f(t - s); }, pts, opts).value;
  };
  eta.fourier = [base, radius0, base_kinks](double xi) {
    const double h = cosine_transform(*base, radius0, std::fabs(xi), base_kinks, 1e-14);
    return h * h;
  };
  eta.truncation_radius = std::min(40.0 / kappa, decay_radius(eta.eval, std::exp(-40.0), 0.5));
  eta.kinks = {0.0};
  eta.fourier_envelope = sampled_envelope(eta.fourier);
  return eta;
}

TestFunction gauss_conv(double sigma, double kappa) {
  if (!(sigma > 0.0)) throw DomainError("gauss-conv: sigma must be positive");
  if (!(kappa > 0.0)) throw DomainError("gauss-conv: kappa must be positive");
  TestFunction eta;
  eta.name = "gauss-conv(" + std::to_string(sigma) + ")";
  eta.kind = TestFunctionKind::gaussian_conv;
  const double amplitude = sigma * std::sqrt(kPi / 2.0);
  const double s2 = sigma * sigma;
  eta.eval = [amplitude, s2](double t) { return amplitude * std::exp(-t * t / (2.0 * s2)); };
  eta.fourier = [s2](double xi) { return kPi * s2 * std::exp(-2.0 * kPi * kPi * s2 * xi * xi); };
  eta.fourier_envelope = eta.fourier;
  eta.laplace = [s2](double s) { return kPi * s2 * std::exp(0.5 * s2 * s * s); };
  eta.kappa = kappa;
  eta.truncation_radius = std::min(40.0 / kappa, sigma * std::sqrt(80.0));
  eta.closed_form_fourier = true;
  eta.kinks = {0.0};
  return eta;
}

TestFunction tabulated(const std::vector<std::pair<double, double>>& samples, std::string name) {
  if (samples.size() < 2) throw FormatError("tabulated eta: need at least two samples");
  if (samples.front().first != 0.0) throw FormatError("tabulated eta: first sample must be at t = 0");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first)) {
      throw FormatError("tabulated eta: t values must be strictly ascending (row " + std::to_string(i + 1) + ")");
    }
  }
  auto ts = std::make_shared<std::vector<double>>();
  auto vs = std::make_shared<std::vector<double>>();
  for (const auto& [t, v] : samples) {
    ts->push_back(t);
    vs->push_back(v);
  }
  TestFunction eta;
  eta.name = std::move(name);
  eta.kind = TestFunctionKind::tabulated;
  eta.eval = [ts, vs](double t) {
    t = std::fabs(t);
    if (t > ts->back()) return 0.0;
    auto it = std::upper_bound(ts->begin(), ts->end(), t);
    if (it == ts->end()) return vs->back();
    const std::size_t j = static_cast<std::size_t>(it - ts->begin());
    const double t0 = (*ts)[j - 1];
    const double t1 = (*ts)[j];
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * (*vs)[j - 1] + w * (*vs)[j];
  };
  eta.kappa = kInfinity;
  eta.support_radius = ts->back();
  eta.truncation_radius = ts->back();
  eta.lipschitz_only = true;
  eta.kinks = *ts;
  auto shared = std::make_shared<TestFunction>(eta);
  eta.fourier = [shared](double xi) { return fourier_by_quadrature(*shared, std::fabs(xi)); };
  eta.fourier_envelope = sampled_envelope(eta.fourier);
  return eta;
}

TestFunction load_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("tabulated eta: cannot open " + path.string());
  std::vector<std::pair<double, double>> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("tabulated eta: line " + std::to_string(line_no) + " lacks a comma");
    double t = 0.0;
    double v = 0.0;
    const char* begin = line.data();
    auto r1 = std::from_chars(begin, begin + comma, t);
    std::size_t vstart = comma + 1;
    while (vstart < line.size() && line[vstart] == ' ') ++vstart;
    auto r2 = std::from_chars(begin + vstart, begin + line.size(), v);
    if (r1.ec != std::errc() || r2.ec != std::errc()) {
      if (samples.empty() && line_no == 1) continue;  // header row
      throw FormatError("tabulated eta: cannot parse line " + std::to_string(line_no));
    }
    samples.emplace_back(t, v);
  }
  return tabulated(samples, "csv:" + path.string());
}

namespace {

// Parses "name(arg)" into name and optional numeric argument.
std::pair<std::string, std::optional<double>> split_call(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos) return {spec, std::nullopt};
  const auto close = spec.find(')', open);
  if (close == std::string::npos) throw DomainError("malformed function spec '" + spec + "'");
  const std::string arg = spec.substr(open + 1, close - open - 1);
  double value = 0.0;
  auto r = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (r.ec != std::errc()) throw DomainError("malformed numeric argument in '" + spec + "'");
  return {spec.substr(0, open), value};
}

}  // namespace

TestFunction test_function_by_name(const std::string& spec) {
  if (spec.rfind("csv:", 0) == 0) return load_tabulated_csv(spec.substr(4));
  auto [name, arg] = split_call(spec);
  if (name == "fejer") return fejer();
  if (name == "gauss-conv") return gauss_conv(arg.value_or(1.0));
  throw DomainError("unknown test function '" + spec + "' (expected fejer, gauss-conv(sigma) or csv:<path>)");
}

WeightFunction weight_function_by_name(const std::string& spec) {
  auto [name, arg] = split_call(spec);
  if (name == "fejer") return fejer_weight();
  if (name == "gauss") return gauss_weight(arg.value_or(1.0));
  throw DomainError("unknown weight '" + spec + "' (expected fejer or gauss(sigma))");
}

namespace {

struct HalfLineIntegral {
  double value;
  bool converged;
};

// Integral of g over [start, inf): doubling panels up to 4096 then a mapped tail.
// The mapped tail is the convergence probe.
HalfLineIntegral half_line(const RealFn& g, double start, const FunctionalOptions& opts) {
  std::vector<double> pts = {start};
  for (double b = 1.0; b <= 4096.0; b *= 2.0) {
    if (b > start) pts.push_back(b);
  }
  QuadOptions q;
  q.abs_tol = opts.abs_tol;
  const auto head = integrate_pieces(g, pts, q);
  const auto tail = integrate_to_infinity(g, pts.back(), q);
  const bool ok = head.converged && tail.converged && tail.error <= opts.tail_budget;
  return {head.value + tail.value, ok};
}

}  // namespace

double alpha_functional(const RealFn& h, const FunctionalOptions& opts) {
  const RealFn g = [&](double t) { return h(t) + h(-t); };
  const auto r = half_line(g, 0.0, opts);
  if (!r.converged) throw ConvergenceError("alpha_functional: tail panel did not converge (integral may diverge)");
  return r.value;
}

double beta_functional(const RealFn& h, const FunctionalOptions& opts) {
  const RealFn g = [&](double t) { return (h(t) + h(-t)) * std::log(t); };
  // [0, eps] through t = exp(-v): integrand (h(e^-v) + h(-e^-v)) (-v) e^-v.
  const RealFn near_zero = [&](double v) {
    const double t = std::exp(-v);
    return (h(t) + h(-t)) * (-v) * t;
  };
  QuadOptions q;
  q.abs_tol = opts.abs_tol;
  const auto inner = integrate_to_infinity(near_zero, -std::log(opts.log_split), q);
  const auto outer = half_line(g, opts.log_split, opts);
  if (!inner.converged || !outer.converged) {
    throw ConvergenceError("beta_functional: tail panel did not converge (integral may diverge)");
  }
  return inner.value + outer.value;
}

double gaussian_moment(int n) {
  if (n < 0) throw DomainError("gaussian_moment: n must be >= 0");
  if (n % 2 != 0) return 0.0;
  const int m = n / 2;
  if (n <= 50) {
    double mu = 1.0;
    for (int k = 1; k <= m; ++k) mu *= (2.0 * k - 1.0);
    return mu;
  }
  return std::exp(std::lgamma(2.0 * m + 1.0) - m * std::log(2.0) - std::lgamma(m + 1.0));
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClassCheck& c) { return c.passed; });
}

ValidationReport validate_class(const TestFunction& eta, const ValidationOptions& opts) {
  ValidationReport report;
  report.function_name = eta.name;
  const double kappa = std::isfinite(eta.kappa) ? eta.kappa : 0.49;
  report.kappa_used = kappa;
  if (!std::isfinite(eta.kappa)) report.flags.push_back("compact support: decay holds for every kappa < 1/2");

  std::vector<double> ts = {0.0};
  std::vector<double> xis = {0.0};
  for (int i = 0; i < opts.samples; ++i) {
    const double f = static_cast<double>(i) / (opts.samples - 1);
    ts.push_back(1e-3 * std::pow(opts.t_max / 1e-3, f));
    xis.push_back(1e-3 * std::pow(opts.xi_max / 1e-3, f));
  }
  for (double k : eta.kinks) ts.push_back(k);
  for (int i = 1; i <= 500; ++i) xis.push_back(0.01 * i);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::sort(xis.begin(), xis.end());
  xis.erase(std::unique(xis.begin(), xis.end()), xis.end());

  // parity
  {
    double worst = 0.0;
    for (double t : ts) worst = std::max(worst, std::fabs(eta(t) - eta(-t)));
    for (double x : xis) worst = std::max(worst, std::fabs(eta.hat(x) - eta.hat(-x)));
    std::ostringstream d;
    d << "max asymmetry " << worst;
    report.checks.push_back({"parity", worst <= 1e-12, d.str()});
  }

  // nonnegativity of eta_hat and eta_hat(0) > 0
  {
    double most_negative = 0.0;
    double where = 0.0;
    for (double x : xis) {
      const double v = eta.hat(x);
      if (v < most_negative) {
        most_negative = v;
        where = x;
      }
    }
    std::ostringstream d;
    if (most_negative < -1e-14) {
      d << "eta_hat(" << where << ") = " << most_negative;
    } else {
      d << "eta_hat >= 0 on " << xis.size() << " samples";
    }
    report.checks.push_back({"fourier_nonnegative", most_negative >= -1e-14, d.str()});
    const double at0 = eta.hat(0.0);
    report.checks.push_back({"fourier_at_zero_positive", at0 > 0.0, "eta_hat(0) = " + std::to_string(at0)});
  }

  // exponential decay of eta and eta'
  {
    const double h = 1e-6;
    double worst = 0.0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t = ts[i];
      const double fwd = (eta(t + h) - eta(t)) / h;
      const double bwd = (eta(t) - eta(t - h)) / h;
      const double deriv = std::max(std::fabs(fwd), std::fabs(bwd));
      const double ratio = std::max(std::fabs(eta(t)), deriv) * std::exp(kappa * t);
      if (ratio > worst) {
        worst = ratio;
        worst_index = i;
      }
    }
    report.decay_constant = worst;
    const bool ok = std::isfinite(worst) && worst_index < ts.size() * 9 / 10;
    std::ostringstream d;
    d << "C = " << worst << " attained at t = " << ts[worst_index];
    report.checks.push_back({"decay", ok, d.str()});
  }

  // decay of eta_hat
  {
    double worst = 0.0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < xis.size(); ++i) {
      const double x = xis[i];
      const double bound = (x + 1.0) * std::pow(std::log(x + 2.0), 2.0 + kappa);
      const double ratio = std::fabs(eta.hat(x)) * bound;
      if (ratio > worst) {
        worst = ratio;
        worst_index = i;
      }
    }
    report.fourier_decay_constant = worst;
    const bool ok = std::isfinite(worst) && worst_index < xis.size() * 9 / 10;
    std::ostringstream d;
    d << "C' = " << worst << " attained at xi = " << xis[worst_index];
    report.checks.push_back({"fourier_decay", ok, d.str()});
  }

  // differentiability with the Lipschitz fallback
  {
    const double h = 1e-7;
    std::vector<double> kinks_found;
    for (double t : ts) {
      const double fwd = (eta(t + h) - eta(t)) / h;
      const double bwd = (eta(t) - eta(t - h)) / h;
      if (std::fabs(fwd - bwd) > 1e-3 * (1.0 + std::fabs(fwd) + std::fabs(bwd))) kinks_found.push_back(t);
    }
    if (kinks_found.empty()) {
      report.checks.push_back({"differentiable", true, "no kinks on the sampled grid"});
    } else {
      bool monotone = true;
      for (std::size_t i = 1; i < ts.size(); ++i) {
        if (eta(ts[i]) > eta(ts[i - 1]) + 1e-15) {
          monotone = false;
          break;
        }
      }
      std::ostringstream d;
      d << kinks_found.size() << " kink(s), first at t = " << kinks_found.front();
      if (eta.compact() && monotone) {
        report.flags.push_back("Lipschitz fallback");
        report.checks.push_back({"differentiable", true, d.str() + "; compact and monotone: Lipschitz fallback"});
      } else {
        report.checks.push_back({"differentiable", false, d.str() + "; no Lipschitz fallback (needs compact support and monotone on t >= 0)"});
      }
    }
  }

  if (opts.strict && !report.passed()) {
    std::string failed;
    for (const auto& c : report.checks) {
      if (!c.passed) failed += " " + c.name + " (" + c.detail + ")";
    }
    throw ValidationError("test function '" + eta.name + "' fails class validation:" + failed);
  }
  return report;
}

}  // namespace msm

#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "msmoments/numeric.hpp"

namespace msm {

enum class TestFunctionKind { fejer, gaussian_conv, tabulated, custom };

/// An even weight eta with nonnegative Fourier transform
/// eta_hat(xi) = integral eta(t) exp(-2 pi i xi t) dt.
///
/// `kappa` is the exponential decay rate; compactly supported weights use
/// +infinity, which makes every exp(-kappa t / delta) envelope term vanish
/// outside the support. `truncation_radius` is the half-width (in units of
/// delta on the log scale) beyond which prime sums may drop eta.
struct TestFunction {
  std::string name;
  TestFunctionKind kind = TestFunctionKind::custom;
  RealFn eval;
  RealFn fourier;
  RealFn fourier_envelope;  // nonincreasing majorant of |eta_hat| on [0, inf)
  double kappa = 0.25;
  std::optional<double> support_radius;
  double truncation_radius = 160.0;
  bool closed_form_fourier = false;
  bool lipschitz_only = false;  // differentiable except at finitely many kinks
  RealFn laplace;               // optional closed form of L_eta(s)
  std::vector<double> kinks;    // t >= 0 where eta is not smooth (quadrature breakpoints)

  [[nodiscard]] bool compact() const { return support_radius.has_value(); }
  [[nodiscard]] double operator()(double t) const { return eval(t); }
  [[nodiscard]] double hat(double xi) const { return fourier(xi); }
};

/// Averaging weight Phi in the class U (even, Phi >= 0, Phi_hat >= 0).
struct WeightFunction {
  std::string name;
  RealFn eval;
  RealFn fourier;
  double half_integral = 0.0;           // integral of Phi over [0, inf)
  std::optional<double> support_radius;
  double effective_radius = 0.0;        // Phi(t) < 1e-8 Phi(0) beyond it

  [[nodiscard]] double operator()(double t) const { return eval(t); }
  [[nodiscard]] double hat(double xi) const { return fourier(xi); }
};

/// eta(u) = max(0, 1 - |u|), eta_hat(xi) = (sin(pi xi)/(pi xi))^2.
TestFunction fejer();

/// Fejer kernel viewed as an averaging weight.
WeightFunction fejer_weight();

/// Phi(t) = exp(-(t/sigma)^2), Phi_hat(xi) = sigma sqrt(pi) exp(-(pi sigma xi)^2).
WeightFunction gauss_weight(double sigma = 1.0);

/// Wraps an arbitrary even eta; eta_hat and its envelope come from
/// quadrature. `support` marks compact support.
TestFunction from_function(std::string name, RealFn eval, double kappa,
                           std::optional<double> support = std::nullopt);

/// eta = eta0 * eta0 (convolution) with eta_hat = eta0_hat^2, both by
/// quadrature. Throws ValidationError if the sampled bound
/// |eta0(t)| <= C exp(-2 kappa |t|) fails.
TestFunction self_convolution(const RealFn& eta0, double kappa, std::string name = "self-conv");

/// Self-convolution of eta0(t) = exp(-(t/sigma)^2).
TestFunction gauss_conv(double sigma, double kappa = 0.25);

/// eta from CSV samples (t, eta(t)) with t >= 0 ascending, interpolated
/// linearly and extended by zero; eta_hat by quadrature.
TestFunction tabulated(const std::vector<std::pair<double, double>>& samples, std::string name = "tabulated");
TestFunction load_tabulated_csv(const std::filesystem::path& path);

/// Selects `fejer`, `gauss-conv(sigma)` or `csv:<path>`.
TestFunction test_function_by_name(const std::string& spec);
WeightFunction weight_function_by_name(const std::string& spec);

/// eta_hat(xi) from the defining integral, 2 int_0^R eta(t) cos(2 pi xi t) dt.
double fourier_by_quadrature(const TestFunction& eta, double xi, double abs_tol = 1e-13);

/// eta_hat at xi - i*shift: integral eta(u) exp(-2 pi shift u) exp(-2 pi i xi u) du.
struct Complex {
  double re;
  double im;
};
Complex fourier_in_strip(const TestFunction& eta, double xi, double shift, double abs_tol = 1e-13);

/// Support or truncation radius of eta on the t axis.
double effective_radius(const TestFunction& eta);

/// L_eta(s) = integral exp(s w) eta(w) dw, |s| < kappa.
double laplace_factor(const TestFunction& eta, double s);

struct FunctionalOptions {
  double abs_tol = 1e-10;
  double log_split = 1e-3;   // [-eps, eps] panel for the log singularity
  double tail_budget = 1e-8;
};

/// alpha(h) = int h, beta(h) = int h(t) log|t| dt over the real line.
double alpha_functional(const RealFn& h, const FunctionalOptions& opts = {});
double beta_functional(const RealFn& h, const FunctionalOptions& opts = {});

/// (2m)!/(2^m m!) for n = 2m, 0 for odd n.
double gaussian_moment(int n);

struct ClassCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::string function_name;
  double decay_constant = 0.0;          // C: |eta|, |eta'| <= C exp(-kappa |t|)
  double fourier_decay_constant = 0.0;  // C': eta_hat <= C' (|xi|+1)^-1 log(|xi|+2)^(-2-kappa)
  double kappa_used = 0.0;
  std::vector<ClassCheck> checks;
  std::vector<std::string> flags;

  [[nodiscard]] bool passed() const;
};

struct ValidationOptions {
  double t_max = 60.0;
  double xi_max = 200.0;
  int samples = 400;
  bool strict = false;
};

/// Sampled membership test for the admissible class (parity, positivity
/// of eta_hat, exponential decay of eta and eta', decay of eta_hat,
/// differentiability with a Lipschitz fallback for compact monotone eta).
ValidationReport validate_class(const TestFunction& eta, const ValidationOptions& opts = {});

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace msm

#pragma once

#include <optional>

#include "msmoments/mangoldt.hpp"
#include "msmoments/testfn.hpp"
#include "msmoments/zeros.hpp"

namespace msm {

/// psi_eta(x, delta) = sum_n Lambda(n) n^{-1/2} eta(log(n/x) / delta), summed
/// over the window |log(n/x)| <= delta * effective_radius(eta).
double psi_eta_direct(double x, double delta, const TestFunction& eta, const MangoldtTable& table);

/// x^{1/2} delta L_eta(delta/2).
double main_term(double x, double delta, const TestFunction& eta);

/// integral_0^inf eta(log(u/x)/delta) u^{-1/2} du by quadrature in u.
double main_term_by_quadrature(double x, double delta, const TestFunction& eta);

/// -2 delta sum_{gamma > 0} cos(gamma t) eta_hat(delta gamma / 2pi); the
/// tail bounds the omitted zeros with |cos| <= 1.
ZeroSum zero_side(double t, double delta, const TestFunction& eta, const ZeroTable& zeros);

/// Everything in the explicit formula besides the main term and the zeros:
/// the Gamma-factor terms, the pole at s = 0 and the reflected prime sum
/// sum_n Lambda(n) n^{-1/2} eta((t + log n)/delta).
struct Archimedean {
  double digamma_term = 0.0;  // (psi(1/4) - log pi) eta(t/delta)
  double kernel_integral = 0.0;
  double pole_term = 0.0;     // delta e^{-t/2} L_eta(delta/2)
  double reflected_primes = 0.0;

  [[nodiscard]] double total() const { return digamma_term + kernel_integral + pole_term - reflected_primes; }
};

Archimedean archimedean_parts(double t, double delta, const TestFunction& eta);
double archimedean_correction(double t, double delta, const TestFunction& eta);

/// E(t, delta): delta e^{-t/2} + log(1/delta + 2) e^{-kappa t/delta} for t >= 1,
/// delta/t + log(1/delta + 2) e^{-kappa t/delta} for delta <= t < 1 and
/// log(1/delta + 2) for t <= delta. An infinite kappa (compact eta) drops
/// the exponential term once t > delta * support_radius.
double error_envelope(double t, double delta, double kappa, double support_radius = 0.0);
double error_envelope(double t, double delta, const TestFunction& eta);

struct VerifyOptions {
  double c_env = 10.0;
  double c_uni = 10.0;
  double quadrature_budget = 1e-6;
};

struct ExplicitFormulaReport {
  double t = 0.0;
  double delta = 0.0;
  double prime_side = 0.0;
  double main_term = 0.0;
  double zero_side = 0.0;
  double archimedean = 0.0;
  double residual = 0.0;
  double envelope = 0.0;
  double tail_estimate = 0.0;
  double threshold = 0.0;          // max(c_env envelope, tail + quadrature budget)
  double uniform_constant = 0.0;   // |prime_side - main_term| / log(1/delta + 2)
  bool uniform_passed = false;
  bool passed = false;
};

ExplicitFormulaReport verify(double x, double delta, const TestFunction& eta, const ZeroTable& zeros,
                             const MangoldtTable& table, const VerifyOptions& opts = {});

struct UnnormalizedReport {
  double t = 0.0;
  double delta = 0.0;
  double prime_side = 0.0;             // e^{-t/2}(sum Lambda(n) eta((log n - t)/delta) - e^t delta L(delta))
  double zero_side = 0.0;              // -delta sum_rho e^{i gamma t} eta_hat((delta/2pi)(gamma - i/2))
  double zero_tail = 0.0;
  double difference = 0.0;
  double normalized_difference = 0.0;  // psi_eta - main term, for comparison
  double predicted_scale = 0.0;        // delta^{1/2} log(1/delta + 2)
  double extra_term_bound = 0.0;       // e^{-t/2} delta
  double weight_difference_constant = 0.0;  // max over the first 100 zeros of |shifted - unshifted| / delta
  std::size_t zeros_used = 0;
};

UnnormalizedReport unnormalized_pair(double t, double delta, const TestFunction& eta, const ZeroTable& zeros,
                                     const MangoldtTable& table);

/// Height beyond which the envelope of eta_hat(delta gamma / 2pi) stays below `level`.
double gamma_cutoff(double delta, const TestFunction& eta, double level = 1e-6);

}  // namespace msm

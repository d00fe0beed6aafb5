#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msmoments/mangoldt.hpp"
#include "msmoments/testfn.hpp"
#include "msmoments/zeros.hpp"

namespace msm {

struct MomentRequest {
  int n = 2;
  double X = 1e5;
  double delta = 0.1;
  TestFunction eta = fejer();
  WeightFunction phi = fejer_weight();
  double step_scale = 1.0;  // multiplies the automatic grid step
  int panel_order = 8;      // Gauss-Legendre points per grid panel
};

struct MomentResult {
  int n = 0;
  double X = 0.0;
  double delta = 0.0;
  double value = 0.0;
  double prediction_ms = 0.0;
  double theorem_main_term = 0.0;  // mu_n delta^{n/2} (alpha log(1/delta) + beta)^{n/2}; 0 for odd n
  bool main_term_base_negative = false;
  double pairing_bound = 0.0;      // 0 unless zeros were supplied and n is even
  double quadrature_error = 0.0;   // |order-p rule - order-p/2 rule|, normalized
  std::size_t samples = 0;
  double t_min = 0.0;
  double t_max = 0.0;
  double step = 0.0;
  std::uint64_t required_limit = 0;
  std::vector<std::string> warnings;
};

/// F(t) = psi_eta(e^t, delta) - e^{t/2} delta L_eta(delta/2) evaluated
/// against a fixed table. The Fejer weight uses prefix sums of
/// Lambda(n) n^{-1/2} and Lambda(n) n^{-1/2} log n, so each call is a few
/// binary searches; other weights sum the window directly.
class CenteredPrimeSum {
 public:
  CenteredPrimeSum(const TestFunction& eta, double delta, const MangoldtTable& table);

  [[nodiscard]] double operator()(double t) const;

  /// Points t where F is not smooth, restricted to [lo, hi].
  [[nodiscard]] std::vector<double> kinks(double lo, double hi) const;

 private:
  const TestFunction* eta_;
  const MangoldtTable* table_;
  double delta_;
  double radius_;
  double main_factor_;  // delta L_eta(delta/2)
  bool fejer_;
  std::vector<double> log_n_;
  std::vector<long double> prefix_w_;
  std::vector<long double> prefix_wu_;
};

/// M_n(X, delta; eta, Phi) = (1 / (log X int_0^inf Phi)) int_0^inf Phi(t / log X) F(t)^n dt,
/// by Gauss-Legendre panels on a grid that resolves both the eta window
/// and the fastest zero frequency that survives in eta_hat.
MomentResult moment_prime_side(const MomentRequest& req, const MangoldtTable& table,
                               const ZeroTable* zeros = nullptr);

/// Sieve limit needed by moment_prime_side.
std::uint64_t moment_required_limit(const MomentRequest& req);

struct PairSum {
  double value = 0.0;
  double tail = 0.0;
  std::size_t zeros_used = 0;
};

/// delta^2 / (2 int_0^inf Phi) sum over signed gamma_1, gamma_2 of
/// Phi_hat(T (gamma_1 + gamma_2) / 2pi) eta_hat(delta gamma_1 / 2pi) eta_hat(delta gamma_2 / 2pi).
PairSum moment_zero_side_pair(double X, double delta, const TestFunction& eta, const WeightFunction& phi,
                              const ZeroTable& zeros);

/// mu_n (delta log(1/delta))^{n/2}.
double ms_prediction(int n, double delta);

struct MainTerm {
  double value = 0.0;
  double base = 0.0;  // alpha(eta_hat^2) log(1/delta) + beta(eta_hat^2)
  bool base_negative = false;
};

/// mu_{2m} delta^m base^m.
MainTerm theorem_main_term(int m, double delta, const TestFunction& eta);

/// alpha and beta of h = eta_hat^2 (closed form alpha = 2/3 for the Fejer kernel).
std::pair<double, double> square_functionals(const TestFunction& eta);

struct PairingBound {
  double value = 0.0;  // mu_{2m} (s2^m - m(m-1) s2^{m-2} s4) delta^{2m}
  double s2 = 0.0;
  double s4 = 0.0;
  double ratio = 0.0;  // s4 / s2^2
};

PairingBound pairing_bound(int m, double delta, const TestFunction& eta, const ZeroTable& zeros);

/// The same bound from explicit s-values, without the delta^{2m} factor.
double pairing_lower_bound(int m, double s2, double s4);

/// Sum of prod eta_hat(delta gamma_i / 2pi) over all 2m-tuples of signed
/// ordinates with |gamma_1 + ... + gamma_2m| <= match_tol.
double brute_force_tuple_sum(int m, double delta, const TestFunction& eta, const std::vector<double>& ordinates,
                             double match_tol = 1e-9);

/// Tuple sum when only pairings gamma, -gamma survive:
/// sum over c with sum c_a = m of (2m)! / prod (c_a!)^2 prod s_a^{c_a},
/// s_a = eta_hat(delta gamma_a / 2pi)^2.
double exact_pairing_sum(int m, double delta, const TestFunction& eta, const std::vector<double>& ordinates);

inline constexpr std::uint64_t kMaxTuples = 100'000'000ULL;

}  // namespace msm

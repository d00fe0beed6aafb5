#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace msm {

using RealFn = std::function<double(double)>;

/// Neumaier's variant of Kahan summation; robust when a term exceeds the
/// running sum in magnitude.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + compensation_; }
  [[nodiscard]] double high() const { return sum_; }
  [[nodiscard]] double low() const { return compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Compensated sum of a span.
double compensated_sum(std::span<const double> values);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;        // sum of accepted panel error estimates
  std::size_t evaluations = 0;
  bool converged = true;
};

struct QuadOptions {
  double abs_tol = 1e-10;    // per panel
  int max_depth = 48;
};

/// 15-point Gauss-Legendre rule on [a, b].
double gauss_legendre_15(const RealFn& f, double a, double b);

/// Gauss-Legendre nodes and weights on [-1, 1] for any order (Newton on P_n).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre_rule(int order);

/// Adaptive bisection with 15-point panels: a panel is accepted once the
/// two-halves estimate differs from the whole-panel estimate by <= abs_tol.
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts = {});

/// Adaptive integration over consecutive intervals [p0,p1], [p1,p2], ...
/// Breakpoints must be ascending; duplicates are skipped.
QuadResult integrate_pieces(const RealFn& f, std::span<const double> breakpoints,
                            const QuadOptions& opts = {});

/// Integral over [a, inf) through t = a + u/(1-u).
QuadResult integrate_to_infinity(const RealFn& f, double a, const QuadOptions& opts = {});

struct SeriesResult {
  double value = 0.0;
  double error = 0.0;  // difference between the last two transform levels
  std::size_t terms = 0;
};

/// Euler transform of an alternating series sum_k terms[k], where the
/// terms already carry their signs. Implemented as repeated averaging of
/// the trailing partial sums.
SeriesResult euler_accelerate(std::span<const double> terms);

/// Integral of f over [first_zero, inf) where f changes sign every
/// half_period: integrates each half period and applies the Euler
/// transform to the resulting alternating series.
SeriesResult integrate_alternating_tail(const RealFn& f, double first_zero, double half_period,
                                        int periods, const QuadOptions& opts = {});

/// Digamma function psi(x) = Gamma'(x)/Gamma(x) for x > 0 by upward
/// recurrence and the asymptotic Bernoulli series.
double digamma(double x);

/// 2(cosh s - 1)/s^2 with a series branch near zero.
double fejer_laplace(double s);

/// (sin(pi x)/(pi x))^2 with the removable singularity filled in.
double sinc_squared(double x);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;
inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace msm

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "msmoments/numeric.hpp"
#include "msmoments/testfn.hpp"

namespace msm {

/// Ascending positive ordinates gamma of nontrivial zeta zeros, each taken
/// as rho = 1/2 + i gamma.
class ZeroTable {
 public:
  ZeroTable() = default;
  ZeroTable(std::vector<double> ordinates, std::string source);

  [[nodiscard]] std::span<const double> ordinates() const { return ordinates_; }
  [[nodiscard]] std::size_t size() const { return ordinates_.size(); }
  [[nodiscard]] bool empty() const { return ordinates_.empty(); }
  [[nodiscard]] double height() const { return ordinates_.empty() ? 0.0 : ordinates_.back(); }
  [[nodiscard]] const std::string& source() const { return source_; }

  /// The first `count` ordinates.
  [[nodiscard]] ZeroTable prefix(std::size_t count) const;

 private:
  std::vector<double> ordinates_;
  std::string source_;
};

/// One ordinate per line, '#' comments and blank lines skipped.
ZeroTable load_zeros(const std::filesystem::path& path);

/// Reads $ZERO_TABLE_PATH; throws if unset.
ZeroTable load_default_zeros();

/// (T/2pi) log(T/(2 pi e)); may be negative for small T.
double rvm_prediction(double T);

/// #{gamma_j <= T}; T above the table height is a range error.
std::size_t count_zeros(double T, const ZeroTable& table);

struct CensusRow {
  double T;
  std::size_t count;
  double prediction;
  double bound;  // 1.5 + 0.8 log(T + 2)
  bool passed;
};

struct ZeroTableReport {
  std::size_t size = 0;
  double height = 0.0;
  bool ascending = true;
  bool above_thirteen = true;
  std::vector<CensusRow> census;

  [[nodiscard]] bool passed() const;
};

/// Invariant checks plus the count-vs-prediction census at `points`
/// log-spaced heights in [15, height].
ZeroTableReport check_zero_table(const ZeroTable& table, int points = 200);

struct ZeroSum {
  double value = 0.0;
  double tail = 0.0;
  bool tail_warning = false;  // tail > 10% of |value|
};

/// sum over rho of h(delta gamma / 2pi) = 2 sum_{gamma > 0} h(delta gamma / 2pi),
/// truncated at the table height. The tail is integral_{T}^{inf}
/// |h(delta t / 2pi)| (1/pi) log(t / 2pi) dt.
ZeroSum zero_sum(const RealFn& h, double delta, const ZeroTable& table);

/// Tail integral of a nonincreasing majorant `envelope` of |h| beyond T.
double zero_tail(const RealFn& envelope, double delta, double T);

/// alpha(h) delta^-1 log(delta^-1) + beta(h) delta^-1.
double zero_sum_asymptotic(const RealFn& h, double delta, const FunctionalOptions& opts = {});

/// The Fejer functionals of h = eta_hat^2: alpha = 2/3 exactly, beta by quadrature.
double fejer_alpha();
double fejer_beta();

struct ConstantC {
  double pieces[5] = {};  // hyperbolic pair, digamma constant, cosine pair
  double assembled = 0.0;
  double collapsed = 0.0;
  double digamma_quarter = 0.0;

  [[nodiscard]] double difference() const { return assembled - collapsed; }
};

/// Both assembly routes of C = integral_0^inf (e^{-2x} - cos 2x)/x dx.
ConstantC constant_C();

/// Sum over both signs of gamma of |eta_hat(delta gamma / 2pi)|^{2j}.
ZeroSum s_moment(int j, double delta, const TestFunction& eta, const ZeroTable& table);

}  // namespace msm

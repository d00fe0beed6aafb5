// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "msmoments/cli.hpp"
#include "msmoments/explicit_formula.hpp"
#include "msmoments/moments.hpp"
#include "msmoments/parallel.hpp"

namespace {

using namespace msm;

constexpr double kResidualTol = 0.01;
constexpr double kTailTol = 0.005;
constexpr double kAsymptoticTol = 0.5;
constexpr double kConstantTol = 1e-6;
constexpr double kCrossTol = 0.05;
constexpr double kPairingTol = 1e-10;
constexpr double kOddTol = 1e-2;
constexpr double kBandLo = 0.5;
constexpr double kBandHi = 2.0;

int failures = 0;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void report(int id, const std::string& title, bool ok, const std::string& detail, double seconds) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  (" << fmt("%.1f", seconds)
            << " s)\n";
  std::istringstream lines(detail);
  for (std::string line; std::getline(lines, line);) std::cout << "      " << line << "\n";
  std::cout.flush();
}

class Timer {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void gaussian_moments() {
  Timer clock;
  const double expected[] = {1, 0, 1, 0, 3, 0, 15, 0, 105, 0, 945};
  bool ok = true;
  std::string got;
  for (int n = 0; n <= 10; ++n) {
    ok = ok && gaussian_moment(n) == expected[n];
    got += fmt("%g ", gaussian_moment(n));
  }
  report(1, "Gaussian moments exact for n = 0..10", ok, "got " + got, clock.seconds());
}

void explicit_formula(const ZeroTable& zeros, const MangoldtTable& primes) {
  Timer clock;
  const auto eta = fejer();
  bool ok = true;
  std::string detail;
  for (double x : {1e4, 1e5, 1e6}) {
    for (double d : {0.1, 0.2}) {
      const auto r = verify(x, d, eta, zeros, primes);
      const bool cell = std::fabs(r.residual) <= kResidualTol && r.tail_estimate <= kTailTol;
      ok = ok && cell;
      detail += "x = " + fmt("%.0e", x) + ", delta = " + fmt("%.2f", d) + ": |residual| = " +
                fmt("%.3e", std::fabs(r.residual)) + ", tail = " + fmt("%.3e", r.tail_estimate) +
                (cell ? "" : "  <-- out of tolerance") + "\n";
    }
  }
  report(2, "explicit formula closes: |residual| <= 0.01, tail <= 0.005", ok, detail, clock.seconds());
}

void zero_sum_asymptotics(const ZeroTable& zeros) {
  Timer clock;
  const RealFn h = [](double xi) {
    const double s = sinc_squared(xi);
    return s * s;
  };
  const double alpha = fejer_alpha();
  const double beta = fejer_beta();
  std::vector<double> r;
  std::string detail;
  bool ok = true;
  for (double d : {0.2, 0.1, 0.05, 0.02}) {
    r.push_back(d * zero_sum(h, d, zeros).value - (alpha * std::log(1.0 / d) + beta));
    ok = ok && std::fabs(r.back()) <= kAsymptoticTol;
    detail += "r(" + fmt("%.2f", d) + ") = " + fmt("%+.6f", r.back()) + "\n";
  }
  ok = ok && std::fabs(r.back()) < std::fabs(r.front());
  report(3, "zero-sum asymptotic: |r| <= 0.5 and |r(0.02)| < |r(0.2)|", ok, detail, clock.seconds());
}

void constant_c() {
  Timer clock;
  const auto c = constant_C();
  const bool ok = std::fabs(c.assembled) <= kConstantTol && std::fabs(c.collapsed) <= kConstantTol &&
                  std::fabs(c.difference()) <= kConstantTol;
  report(4, "constant C: both routes agree and vanish within 1e-6", ok,
         "assembled = " + fmt("%.3e", c.assembled) + ", collapsed = " + fmt("%.3e", c.collapsed), clock.seconds());
}

void zero_census(const ZeroTable& zeros) {
  Timer clock;
  const auto rep = check_zero_table(zeros, 200);
  double worst = 0.0;
  for (const auto& row : rep.census) worst = std::max(worst, std::fabs(row.count - row.prediction) / row.bound);
  report(5, "Riemann-von Mangoldt census at 200 heights", rep.passed(),
         std::to_string(rep.size) + " ordinates up to " + fmt("%.4f", rep.height) +
             "; worst |N - prediction| / bound = " + fmt("%.3f", worst),
         clock.seconds());
}

void cross_oracle(const ZeroTable& zeros, const MangoldtTable& primes) {
  Timer clock;
  bool ok = true;
  std::string detail;
  const auto eta = fejer();
  const auto phi = fejer_weight();
  for (double d : {0.1, 0.15, 0.2}) {
    for (double X : {1e4, 1e5}) {
      MomentRequest req;
      req.n = 2;
      req.X = X;
      req.delta = d;
      const double prime = moment_prime_side(req, primes).value;
      const double zero = moment_zero_side_pair(X, d, eta, phi, zeros).value;
      const double rel = std::fabs(prime - zero) / std::fabs(prime);
      ok = ok && rel <= kCrossTol;
      detail += "X = " + fmt("%.0e", X) + ", delta = " + fmt("%.2f", d) + ": prime = " + fmt("%.6f", prime) +
                ", zero = " + fmt("%.6f", zero) + ", relative gap = " + fmt("%.4f", rel) + "\n";
    }
  }
  report(6, "second moment, prime side vs zero side within 5%", ok, detail, clock.seconds());
}

void brute_force() {
  Timer clock;
  const auto eta = fejer();
  const double delta = 0.1;
  const double scale = 10.0;
  auto dominates = [](double value, double bound) { return value >= bound - kPairingTol * std::fabs(bound); };
  auto sums = [&](const std::vector<double>& g, int power) {
    double s = 0.0;
    for (double x : g) s += 2.0 * std::pow(eta.hat(delta * x / kTwoPi), power);
    return s;
  };
  bool ok = true;
  std::string detail;
  std::vector<double> generic;
  for (double p : {2.0, 3.0, 5.0, 7.0}) generic.push_back(std::sqrt(p) * scale);
  const std::vector<double> adversarial{1.0, 2.0, 3.0};
  for (int m = 1; m <= 3; ++m) {
    const double brute = brute_force_tuple_sum(m, delta, eta, generic);
    const double exact = exact_pairing_sum(m, delta, eta, generic);
    const double bound = pairing_lower_bound(m, sums(generic, 2), sums(generic, 4));
    const double rel = std::fabs(brute - exact) / std::fabs(exact);
    const bool cell = rel <= kPairingTol && dominates(brute, bound);
    ok = ok && cell;
    detail += "generic m = " + std::to_string(m) + ": brute = " + fmt("%.12g", brute) + ", relative gap = " +
              fmt("%.2e", rel) + ", bound = " + fmt("%.6g", bound) + "\n";

    const double abrute = brute_force_tuple_sum(m, delta, eta, adversarial);
    const double aexact = exact_pairing_sum(m, delta, eta, adversarial);
    const double abound = pairing_lower_bound(m, sums(adversarial, 2), sums(adversarial, 4));
    const double arel = std::fabs(abrute - aexact) / std::fabs(aexact);
    // A 2-tuple summing to zero is always a pairing, so the excess can only appear from m = 2 on.
    const bool acell = dominates(abrute, abound) && (m == 1 ? arel <= kPairingTol : arel > kPairingTol);
    ok = ok && acell;
    detail += "{1,2,3} m = " + std::to_string(m) + ": brute = " + fmt("%.12g", abrute) + ", pairings = " +
              fmt("%.12g", aexact) + ", bound = " + fmt("%.6g", abound) + "\n";
  }
  report(7, "tuple sums match pairings and dominate the lower bound", ok, detail, clock.seconds());
}

void odd_moment(const MangoldtTable& primes) {
  Timer clock;
  MomentRequest req;
  req.X = 1e5;
  req.delta = 0.1;
  req.n = 1;
  const double m1 = moment_prime_side(req, primes).value;
  req.n = 2;
  const double m2 = moment_prime_side(req, primes).value;
  const double ratio = std::fabs(m1) / std::sqrt(m2);
  report(8, "odd moment: |M1| <= 1e-2 sqrt(M2)", ratio <= kOddTol,
         "M1 = " + fmt("%.6e", m1) + ", M2 = " + fmt("%.6e", m2) + ", |M1|/sqrt(M2) = " + fmt("%.4f", ratio),
         clock.seconds());
}

void trend_band(const MangoldtTable& primes) {
  Timer clock;
  bool ok = true;
  std::string detail;
  for (double d : {0.1, 0.15, 0.2}) {
    MomentRequest req;
    req.n = 2;
    req.X = 1e6;
    req.delta = d;
    const double m2 = moment_prime_side(req, primes).value;
    const auto main = theorem_main_term(1, d, req.eta);
    const double ratio = m2 / main.value;
    const bool cell = ratio >= kBandLo && ratio <= kBandHi;
    ok = ok && cell;
    detail += "delta = " + fmt("%.2f", d) + ": M2 = " + fmt("%.6f", m2) + ", main term = " + fmt("%.6f", main.value) +
              (main.base_negative ? " (negative base)" : "") + ", ratio = " + fmt("%.4f", ratio) + "\n";
  }
  report(9, "M2(1e6) / main term within [0.5, 2]", ok, detail, clock.seconds());
}

void determinism(const std::string& zeros_path) {
  Timer clock;
  const std::vector<std::vector<std::string>> commands = {
      {"constants"},
      {"zeros", "check"},
      {"ef", "verify", "--x", "1e5", "--delta", "0.1"},
      {"zerosum", "--delta", "0.02"},
      {"moment", "compute", "--n", "0,1,2", "--X", "1e4", "--delta", "0.2", "--zero-side"},
  };
  bool ok = true;
  std::string detail;
  for (const auto& cmd : commands) {
    std::string outputs[2];
    int codes[2];
    const char* threads[2] = {"1", "4"};
    for (int i = 0; i < 2; ++i) {
      std::vector<std::string> args{"--threads", threads[i], "--format", "json", "--zeros", zeros_path};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out;
      std::ostringstream err;
      codes[i] = cli::run(args, out, err);
      outputs[i] = out.str();
    }
    const bool same = outputs[0] == outputs[1] && codes[0] == codes[1] && !outputs[0].empty();
    ok = ok && same;
    std::string name;
    for (const auto& a : cmd) name += (name.empty() ? "" : " ") + a;
    detail += name + ": " + std::to_string(outputs[0].size()) + " bytes, " + (same ? "identical" : "DIFFERENT") + "\n";
  }
  set_thread_count(1);
  report(10, "reports byte-identical with --threads 1 and 4", ok, detail, clock.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-10", "msm_acceptance"};
  std::string zeros_path = MSM_DEFAULT_ZEROS;
  app.add_option("--zeros", zeros_path, "Zero table with at least 1e5 ordinates");
  CLI11_PARSE(app, argc, argv);

  const auto zeros = load_zeros(zeros_path);
  MomentRequest widest;
  widest.X = 1e6;
  widest.delta = 0.2;
  const auto limit = std::max<std::uint64_t>(moment_required_limit(widest), 1'300'000);
  const auto primes = build_mangoldt(limit);

  gaussian_moments();
  explicit_formula(zeros, primes);
  zero_sum_asymptotics(zeros);
  constant_c();
  zero_census(zeros);
  cross_oracle(zeros, primes);
  brute_force();
  odd_moment(primes);
  trend_band(primes);
  determinism(zeros_path);

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " of 10 criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace msm {

struct MangoldtEntry {
  std::uint64_t n;
  double lambda;  // log of the base prime
};

/// Prime powers n <= limit with Lambda(n) = log p, sorted by n.
///
/// Chebyshev sums are answered from compensated checkpoints stored every
/// kBlock entries plus a compensated partial-block sum, so psi(x) costs a
/// binary search and at most kBlock additions.
class MangoldtTable {
 public:
  static constexpr std::size_t kBlock = 256;

  MangoldtTable() = default;
  MangoldtTable(std::uint64_t limit, std::vector<MangoldtEntry> entries);

  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] std::span<const MangoldtEntry> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  /// Index of the first entry with n > x.
  [[nodiscard]] std::size_t upper_index(double x) const;

  /// Compensated sum of lambda over entries [0, index).
  [[nodiscard]] double prefix_lambda(std::size_t index) const;

  /// Compensated sum of lambda over entries [begin, end).
  [[nodiscard]] double range_lambda(std::size_t begin, std::size_t end) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<MangoldtEntry> entries_;
  std::vector<double> checkpoint_hi_;  // sum over entries [0, k*kBlock)
  std::vector<double> checkpoint_lo_;
};

inline constexpr std::uint64_t kMaxSieveLimit = 10'000'000'000ULL;
inline constexpr std::uint64_t kSieveSegment = 1ULL << 22;

/// Segmented sieve of Eratosthenes producing every prime power <= limit.
/// Segments are sieved in parallel and concatenated in ascending order.
MangoldtTable build_mangoldt(std::uint64_t limit);

/// psi(x) = sum_{n <= x} Lambda(n).
double psi(double x, const MangoldtTable& table);

/// psi(x + delta x) - psi(x) - delta x.
double short_interval_deviation(double x, double delta, const MangoldtTable& table);

struct ScanPoint {
  double x;
  double delta;
  double deviation;             // psi(x + delta x) - psi(x) - delta x
  double normalized_deviation;  // deviation / sqrt(delta x log(1/delta + 2))
};

struct ScanOptions {
  double ratio = 1.01;
};

/// Normalized short-interval deviations on the geometric grid
/// x_min * ratio^k <= x_max, sorted by |normalized_deviation| descending
/// (ties keep grid order).
std::vector<ScanPoint> omega_scan(double x_min, double x_max,
                                  const std::function<double(double)>& delta_rule,
                                  const MangoldtTable& table, const ScanOptions& opts = {});

/// Binary cache: "MGT1", u64 limit, u64 count, then (u64 n, f64 lambda)
/// pairs, all little-endian.
void write_mangoldt_cache(const std::filesystem::path& path, const MangoldtTable& table);
MangoldtTable read_mangoldt_cache(const std::filesystem::path& path);

/// Uses the cache at `path` if it covers `limit`, otherwise sieves and
/// (re)writes it. An empty path disables caching.
MangoldtTable load_or_build_mangoldt(std::uint64_t limit, const std::filesystem::path& cache_path);

/// Restriction of a table to n <= new_limit.
MangoldtTable restrict_table(const MangoldtTable& table, std::uint64_t new_limit);

}  // namespace msm

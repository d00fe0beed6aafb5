#include "msmoments/mangoldt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <new>

#include "msmoments/errors.hpp"
#include "msmoments/numeric.hpp"
#include "msmoments/parallel.hpp"

namespace msm {

MangoldtTable::MangoldtTable(std::uint64_t limit, std::vector<MangoldtEntry> entries)
    : limit_(limit), entries_(std::move(entries)) {
  const std::size_t blocks = entries_.size() / kBlock + 1;
  checkpoint_hi_.assign(blocks, 0.0);
  checkpoint_lo_.assign(blocks, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i % kBlock == 0) {
      checkpoint_hi_[i / kBlock] = acc.high();
      checkpoint_lo_[i / kBlock] = acc.low();
    }
    acc.add(entries_[i].lambda);
  }
  if (entries_.size() % kBlock == 0) {
    checkpoint_hi_[entries_.size() / kBlock] = acc.high();
    checkpoint_lo_[entries_.size() / kBlock] = acc.low();
  }
}

std::size_t MangoldtTable::upper_index(double x) const {
  auto it = std::upper_bound(entries_.begin(), entries_.end(), x,
                             [](double v, const MangoldtEntry& e) { return v < static_cast<double>(e.n); });
  return static_cast<std::size_t>(it - entries_.begin());
}

double MangoldtTable::prefix_lambda(std::size_t index) const {
  index = std::min(index, entries_.size());
  const std::size_t block = index / kBlock;
  CompensatedSum acc(checkpoint_hi_[block]);
  acc.add(checkpoint_lo_[block]);
  for (std::size_t i = block * kBlock; i < index; ++i) acc.add(entries_[i].lambda);
  return acc.value();
}

double MangoldtTable::range_lambda(std::size_t begin, std::size_t end) const {
  if (end <= begin) return 0.0;
  if (end - begin <= 2 * kBlock) {
    CompensatedSum acc;
    for (std::size_t i = begin; i < end; ++i) acc.add(entries_[i].lambda);
    return acc.value();
  }
  return prefix_lambda(end) - prefix_lambda(begin);
}

namespace {

std::uint64_t integer_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> small_primes(std::uint64_t bound) {
  std::vector<std::uint8_t> composite(bound + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
  }
  return primes;
}

std::vector<MangoldtEntry> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                         std::span<const std::uint32_t> base,
                                         std::span<const MangoldtEntry> higher_powers) {
  std::vector<std::uint8_t> composite;
  try {
    composite.assign(hi - lo, 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("sieve: cannot allocate segment of " + std::to_string(hi - lo) + " entries");
  }
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j < hi; j += p) composite[j - lo] = 1;
  }
  auto pw_begin = std::lower_bound(higher_powers.begin(), higher_powers.end(), lo,
                                   [](const MangoldtEntry& e, std::uint64_t v) { return e.n < v; });
  auto pw_end = std::lower_bound(pw_begin, higher_powers.end(), hi,
                                 [](const MangoldtEntry& e, std::uint64_t v) { return e.n < v; });
  std::vector<MangoldtEntry> out;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n) {
    if (composite[n - lo]) continue;
    while (pw_begin != pw_end && pw_begin->n < n) out.push_back(*pw_begin++);
    out.push_back({n, std::log(static_cast<double>(n))});
  }
  while (pw_begin != pw_end) out.push_back(*pw_begin++);
  return out;
}

}  // namespace

MangoldtTable build_mangoldt(std::uint64_t limit) {
  if (limit < 2) throw DomainError("build_mangoldt: limit must be >= 2");
  if (limit > kMaxSieveLimit) throw DomainError("build_mangoldt: limit must be <= 1e10");
  const std::uint64_t root = integer_sqrt(limit);
  const auto base = small_primes(root);

  std::vector<MangoldtEntry> higher;
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p * p; q <= limit; q *= p) {
      higher.push_back({q, lp});
      if (q > limit / p) break;
    }
  }
  std::sort(higher.begin(), higher.end(),
            [](const MangoldtEntry& a, const MangoldtEntry& b) { return a.n < b.n; });

  const std::uint64_t span_end = limit + 1;
  const std::size_t segments = static_cast<std::size_t>((span_end + kSieveSegment - 1) / kSieveSegment);
  auto parts = map_chunks<std::vector<MangoldtEntry>>(
      segments, 1, [&](std::size_t c, std::size_t, std::size_t) {
        const std::uint64_t lo = c * kSieveSegment;
        const std::uint64_t hi = std::min<std::uint64_t>(span_end, lo + kSieveSegment);
        return sieve_segment(lo, hi, base, higher);
      });

  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<MangoldtEntry> entries;
  try {
    entries.reserve(total);
  } catch (const std::bad_alloc&) {
    throw ResourceError("sieve: cannot allocate " + std::to_string(total) + " table entries");
  }
  for (auto& part : parts) {
    entries.insert(entries.end(), part.begin(), part.end());
    std::vector<MangoldtEntry>().swap(part);
  }
  return MangoldtTable(limit, std::move(entries));
}

double psi(double x, const MangoldtTable& table) {
  if (!(x >= 1.0)) throw DomainError("psi: x must be >= 1");
  if (x > static_cast<double>(table.limit())) {
    throw RangeError("psi: x = " + std::to_string(x) + " exceeds the table limit " +
                     std::to_string(table.limit()));
  }
  return table.prefix_lambda(table.upper_index(x));
}

double short_interval_deviation(double x, double delta, const MangoldtTable& table) {
  if (!(x >= 2.0)) throw DomainError("short_interval_deviation: x must be >= 2");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("short_interval_deviation: delta must lie in (0, 1]");
  const double right = x * (1.0 + delta);
  if (right > static_cast<double>(table.limit())) {
    throw RangeError("short_interval_deviation: window end " + std::to_string(right) +
                     " exceeds the table limit " + std::to_string(table.limit()));
  }
  const double window = table.range_lambda(table.upper_index(x), table.upper_index(right));
  return window - delta * x;
}

std::vector<ScanPoint> omega_scan(double x_min, double x_max,
                                  const std::function<double(double)>& delta_rule,
                                  const MangoldtTable& table, const ScanOptions& opts) {
  if (!(x_min >= 2.0) || !(x_max >= x_min)) throw DomainError("omega_scan: need 2 <= x_min <= x_max");
  if (!(opts.ratio > 1.0)) throw DomainError("omega_scan: grid ratio must exceed 1");
  std::vector<double> grid;
  for (double x = x_min; x <= x_max * (1.0 + 1e-12); x *= opts.ratio) grid.push_back(x);
  if (grid.empty()) throw DomainError("omega_scan: empty grid");

  std::vector<ScanPoint> points;
  points.reserve(grid.size());
  for (double x : grid) {
    const double delta = delta_rule(x);
    if (!(delta > 0.0 && delta <= 1.0)) {
      throw DomainError("omega_scan: delta rule produced " + std::to_string(delta) + " at x = " +
                        std::to_string(x));
    }
    const double dev = short_interval_deviation(x, delta, table);
    const double scale = std::sqrt(delta * x * std::log(1.0 / delta + 2.0));
    points.push_back({x, delta, dev, dev / scale});
  }
  std::stable_sort(points.begin(), points.end(), [](const ScanPoint& a, const ScanPoint& b) {
    return std::fabs(a.normalized_deviation) > std::fabs(b.normalized_deviation);
  });
  return points;
}

namespace {

constexpr char kMagic[4] = {'M', 'G', 'T', '1'};

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw FormatError("mangoldt cache: truncated file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_mangoldt_cache(const std::filesystem::path& path, const MangoldtTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("mangoldt cache: cannot open " + path.string() + " for writing");
  out.write(kMagic, 4);
  put_le<std::uint64_t>(out, table.limit());
  put_le<std::uint64_t>(out, table.size());
  for (const auto& e : table.entries()) {
    put_le<std::uint64_t>(out, e.n);
    put_le<double>(out, e.lambda);
  }
  if (!out) throw FormatError("mangoldt cache: write failed for " + path.string());
}

MangoldtTable read_mangoldt_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("mangoldt cache: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw FormatError("mangoldt cache: bad magic in " + path.string());
  const auto limit = get_le<std::uint64_t>(in);
  const auto count = get_le<std::uint64_t>(in);
  std::vector<MangoldtEntry> entries;
  entries.reserve(count);
  std::uint64_t previous = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto n = get_le<std::uint64_t>(in);
    const auto lambda = get_le<double>(in);
    if (n <= previous || n > limit) throw FormatError("mangoldt cache: entries not ascending within limit");
    previous = n;
    entries.push_back({n, lambda});
  }
  return MangoldtTable(limit, std::move(entries));
}

MangoldtTable restrict_table(const MangoldtTable& table, std::uint64_t new_limit) {
  if (new_limit > table.limit()) throw RangeError("restrict_table: new limit exceeds table limit");
  const std::size_t end = table.upper_index(static_cast<double>(new_limit));
  std::vector<MangoldtEntry> entries(table.entries().begin(), table.entries().begin() + static_cast<std::ptrdiff_t>(end));
  return MangoldtTable(new_limit, std::move(entries));
}

MangoldtTable load_or_build_mangoldt(std::uint64_t limit, const std::filesystem::path& cache_path) {
  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    MangoldtTable cached = read_mangoldt_cache(cache_path);
    if (cached.limit() == limit) return cached;
    if (cached.limit() > limit) return restrict_table(cached, limit);
  }
  MangoldtTable table = build_mangoldt(limit);
  if (!cache_path.empty()) write_mangoldt_cache(cache_path, table);
  return table;
}

}  // namespace msm

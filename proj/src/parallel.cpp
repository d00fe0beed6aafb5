#include "msmoments/parallel.hpp"

namespace msm {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned count) { g_threads.store(std::max(1u, count)); }

unsigned thread_count() { return g_threads.load(); }

double pairwise_sum(std::vector<double> values) {
  if (values.empty()) return 0.0;
  while (values.size() > 1) {
    std::vector<double> next((values.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t j = 2 * i;
      if (j + 1 < values.size()) {
        CompensatedSum acc(values[j]);
        acc.add(values[j + 1]);
        next[i] = acc.value();
      } else {
        next[i] = values[j];
      }
    }
    values = std::move(next);
  }
  return values.front();
}

}  // namespace msm

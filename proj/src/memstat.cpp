#include "longalign/memstat.hpp"

#include <atomic>

namespace longalign::memstat {
namespace {

struct Counter {
  std::atomic<std::int64_t> live{0};
  std::atomic<std::int64_t> peak{0};
};

Counter& counter(Pool pool) {
  static Counter counters[2];
  return counters[static_cast<int>(pool)];
}

}  // namespace

void add(Pool pool, std::int64_t cells) {
  auto& c = counter(pool);
  const auto now = c.live.fetch_add(cells, std::memory_order_relaxed) + cells;
  auto prev = c.peak.load(std::memory_order_relaxed);
  while (now > prev && !c.peak.compare_exchange_weak(prev, now, std::memory_order_relaxed)) {
  }
}

void sub(Pool pool, std::int64_t cells) {
  counter(pool).live.fetch_sub(cells, std::memory_order_relaxed);
}

std::int64_t live(Pool pool) { return counter(pool).live.load(std::memory_order_relaxed); }
std::int64_t peak(Pool pool) { return counter(pool).peak.load(std::memory_order_relaxed); }

void reset_peak(Pool pool) {
  auto& c = counter(pool);
  c.peak.store(c.live.load(std::memory_order_relaxed), std::memory_order_relaxed);
}

}  // namespace longalign::memstat

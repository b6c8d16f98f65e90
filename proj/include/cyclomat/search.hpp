#pragma once

// Parallel prime-range search for the two mod-p^2 Pell congruences.  The
// range is cut into contiguous blocks of 4096 candidates, blocks are sieved
// and tested independently by share-nothing workers, and per-block results
// are merged in block order, so the hit list is deterministic for a fixed
// range regardless of the worker count.

#include "cyclomat/arith.hpp"
#include "cyclomat/pell.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cyclomat::search {

using arith::u64;

enum class Predicate { qp2, pp2 };

inline const char* predicate_name(Predicate pr) { return pr == Predicate::qp2 ? "qp2" : "pp2"; }

inline Predicate parse_predicate(const std::string& s) {
  if (s == "qp2") return Predicate::qp2;
  if (s == "pp2") return Predicate::pp2;
  throw std::invalid_argument("unknown search predicate: " + s);
}

struct SearchResult {
  Predicate predicate;
  u64 min = 0;
  u64 max = 0;
  std::vector<u64> hits;  // ascending
  u64 scanned = 0;        // primes tested
  double elapsed_seconds = 0.0;
};

// p^2 must stay within the modular-ring cap of 10^13.
inline constexpr u64 kMaxSearchBound = 3162277;
inline constexpr u64 kBlockSize = 4096;

inline bool test_prime(Predicate pr, u64 p) {
  return pr == Predicate::qp2 ? pell::predicate_qp(p) : pell::predicate_pp(p);
}

inline SearchResult run_search(Predicate pr, u64 min, u64 max, unsigned jobs) {
  if (min < 7) throw std::invalid_argument("run_search: range must start at 7 or above");
  if (max < min) throw std::invalid_argument("run_search: empty range");
  if (max > kMaxSearchBound)
    throw std::invalid_argument("run_search: bound exceeds the p^2 modulus cap");
  const auto t0 = std::chrono::steady_clock::now();

  u64 sieve_limit = 2;
  while (sieve_limit * sieve_limit < max) ++sieve_limit;
  std::vector<u64> base_primes = arith::primes_up_to(sieve_limit);

  const u64 n_blocks = (max - min) / kBlockSize + 1;
  struct BlockOut {
    std::vector<u64> hits;
    u64 scanned = 0;
  };
  std::vector<BlockOut> out(n_blocks);
  std::atomic<u64> next{0};

  auto worker = [&]() {
    std::vector<bool> composite;
    for (;;) {
      u64 blk = next.fetch_add(1, std::memory_order_relaxed);
      if (blk >= n_blocks) return;
      const u64 lo = min + blk * kBlockSize;
      const u64 hi = std::min(lo + kBlockSize - 1, max);
      composite.assign(hi - lo + 1, false);
      for (u64 b : base_primes) {
        u64 start = std::max(b * b, (lo + b - 1) / b * b);
        for (u64 v = start; v <= hi; v += b) composite[v - lo] = true;
      }
      BlockOut& slot = out[blk];
      for (u64 v = lo; v <= hi; ++v) {
        if (composite[v - lo]) continue;
        ++slot.scanned;
        if (test_prime(pr, v)) slot.hits.push_back(v);
      }
    }
  };

  unsigned n_threads = std::max(1u, jobs);
  n_threads = static_cast<unsigned>(std::min<u64>(n_threads, n_blocks));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  SearchResult res;
  res.predicate = pr;
  res.min = min;
  res.max = max;
  for (const BlockOut& b : out) {
    res.scanned += b.scanned;
    res.hits.insert(res.hits.end(), b.hits.begin(), b.hits.end());
  }
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace cyclomat::search

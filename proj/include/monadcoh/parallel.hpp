#pragma once

// Degree-parallel helper.  Tasks write to disjoint, pre-sized slots indexed
// by the loop variable, so results are identical under any schedule.

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace monadcoh::par {

inline std::atomic<unsigned>& max_threads_slot() {
  static std::atomic<unsigned> n{0};  // 0 = hardware concurrency
  return n;
}

inline void set_max_threads(unsigned n) { max_threads_slot().store(n); }

inline unsigned max_threads() {
  unsigned n = max_threads_slot().load();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

// fn(i) for i in [lo, hi), striped across threads.
template <class Fn>
void parallel_for(long lo, long hi, Fn&& fn) {
  long count = hi - lo;
  if (count <= 0) return;
  unsigned nthreads = std::min<unsigned>(max_threads(), (unsigned)count);
  if (nthreads <= 1) {
    for (long i = lo; i < hi; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (long i = lo + (long)t; i < hi; i += (long)nthreads) fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace monadcoh::par

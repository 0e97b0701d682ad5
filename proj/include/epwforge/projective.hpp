#pragma once

// Points of projective spaces over small prime fields, enumerated in a fixed
// order: by position of the leading 1, then the trailing coordinates as a
// little-endian base-p odometer.  Points can also be addressed by index, which
// is what the parallel drivers use to split work.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "epwforge/errors.hpp"
#include "epwforge/scalar.hpp"

namespace epwforge {

inline std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// |P^{n-1}(F_p)| for points of F_p^n.
inline std::uint64_t projective_count(int n, std::uint32_t p) { return (ipow(p, n) - 1) / (p - 1); }

/// Integer coordinates in [0, p) of the index-th point of P^{n-1}(F_p).
inline std::vector<std::uint32_t> projective_point(std::uint64_t index, int n, std::uint32_t p) {
  if (index >= projective_count(n, p)) throw ContractViolation("projective point index out of range");
  std::vector<std::uint32_t> x(n, 0);
  for (int lead = 0; lead < n; ++lead) {
    const std::uint64_t block = ipow(p, n - 1 - lead);
    if (index < block) {
      x[lead] = 1;
      for (int i = lead + 1; i < n; ++i) {
        x[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
      }
      return x;
    }
    index -= block;
  }
  throw InternalInconsistency("projective index decoding fell through");
}

/// Worker count: EPWFORGE_THREADS if set (>= 1), else 1.
inline unsigned worker_count() {
  if (const char* env = std::getenv("EPWFORGE_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return 1;
}

/// Runs body(begin, end, out) over contiguous slices of [0, count) and concatenates
/// the per-slice outputs in slice order, so the result never depends on the worker count.
template <typename T>
std::vector<T> parallel_collect(std::uint64_t count,
                                const std::function<void(std::uint64_t, std::uint64_t, std::vector<T>&)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(count, 1)));
  std::vector<std::vector<T>> parts(workers);
  if (workers == 1) {
    body(0, count, parts[0]);
    return std::move(parts[0]);
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        body(count * w / workers, count * (w + 1) / workers, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace epwforge

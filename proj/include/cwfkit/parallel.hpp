#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "cwfkit/laws.hpp"

// Index-parallel case runners. The parallel kernels use OpenMP when it is
// available and must produce byte-identical results to the serial reference,
// which is kept alongside them for testing.
namespace cwfkit::par {

bool openmp_enabled();
int worker_count();

// reference implementation: fn(0..n-1) in order
template <class F>
auto map_indexed_serial(int n, F&& fn)
    -> std::vector<std::invoke_result_t<F&, int>> {
  using T = std::invoke_result_t<F&, int>;
  std::vector<T> out;
  out.reserve(n > 0 ? n : 0);
  for (int i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

// same results in the same order, computed across workers; the first
// exception by index is rethrown after all workers join
template <class F>
auto map_indexed(int n, F&& fn, bool parallel = true)
    -> std::vector<std::invoke_result_t<F&, int>> {
  using T = std::invoke_result_t<F&, int>;
  if (!parallel || n <= 1) return map_indexed_serial(n, fn);
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errs(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      slots[i] = fn(i);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
#else
  for (int i = 0; i < n; ++i) {
    try {
      slots[i] = fn(i);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
#endif
  for (int i = 0; i < n; ++i) {
    if (errs[i]) std::rethrow_exception(errs[i]);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

using SamplerFactory =
    std::function<std::unique_ptr<cwf::Sampler>(std::uint64_t seed)>;

// runs the law suite once per shard on sampler_at(seed + shard index) and
// merges the reports law by law; each shard is deterministic in its seed, so
// the merged report does not depend on scheduling
cwf::LawReport sharded_law_suite(const cwf::Instance& inst,
                                 const SamplerFactory& sampler_at,
                                 std::uint64_t seed, int shards,
                                 const cwf::LawOptions& per_shard,
                                 bool parallel = true);

}  // namespace cwfkit::par

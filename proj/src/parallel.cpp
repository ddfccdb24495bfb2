#include "cwfkit/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cwfkit/errors.hpp"

namespace cwfkit::par {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

cwf::LawReport sharded_law_suite(const cwf::Instance& inst,
                                 const SamplerFactory& sampler_at,
                                 std::uint64_t seed, int shards,
                                 const cwf::LawOptions& per_shard,
                                 bool parallel) {
  if (shards <= 0) throw EmptySampler("sharded run needs at least one shard");
  std::vector<cwf::LawReport> parts = map_indexed(
      shards,
      [&](int i) {
        std::unique_ptr<cwf::Sampler> sampler =
            sampler_at(seed + static_cast<std::uint64_t>(i));
        cwf::LawOptions opts = per_shard;
        opts.seed = seed + static_cast<std::uint64_t>(i);
        return cwf::law_suite(inst, *sampler, opts);
      },
      parallel);

  cwf::LawReport merged;
  merged.instance = parts.front().instance;
  merged.seed = seed;
  merged.samples = per_shard.samples * shards;
  merged.laws = parts.front().laws;
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const cwf::LawReport& part = parts[p];
    if (part.laws.size() != merged.laws.size()) {
      throw InstanceMismatch("shards disagree on the law list");
    }
    for (std::size_t i = 0; i < merged.laws.size(); ++i) {
      cwf::LawResult& into = merged.laws[i];
      const cwf::LawResult& from = part.laws[i];
      if (from.law != into.law) {
        throw InstanceMismatch("shards disagree on the law list");
      }
      into.cases += from.cases;
      into.failures += from.failures;
      into.skipped = into.skipped && from.skipped;
      if (into.note.empty()) into.note = from.note;
    }
  }
  return merged;
}

}  // namespace cwfkit::par

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include "cwfkit/hofmann.hpp"
#include "cwfkit/laws.hpp"
#include "cwfkit/parallel.hpp"

namespace {

using namespace cwfkit;

double run_ms(bool parallel, int atoms, int depth, std::uint64_t seed,
              int shards, int samples, std::string* dump) {
  hof::HInstance inst;
  par::SamplerFactory factory =
      [atoms, depth](std::uint64_t s) -> std::unique_ptr<cwf::Sampler> {
    return std::make_unique<hof::HSampler>(atoms, depth, s);
  };
  cwf::LawOptions per_shard;
  per_shard.samples = samples;

  auto t0 = std::chrono::steady_clock::now();
  cwf::LawReport rep =
      par::sharded_law_suite(inst, factory, seed, shards, per_shard, parallel);
  auto t1 = std::chrono::steady_clock::now();
  *dump = rep.to_json().dump();
  if (!rep.ok()) {
    std::cerr << "law failures in benchmark run\n";
    std::exit(1);
  }
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int arg_or(char** argv, int argc, int i, int fallback) {
  return i < argc ? std::atoi(argv[i]) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  int atoms = arg_or(argv, argc, 1, 3);
  int depth = arg_or(argv, argc, 2, 2);
  int shards = arg_or(argv, argc, 3, 8);
  int samples = arg_or(argv, argc, 4, 40);
  std::uint64_t seed = static_cast<std::uint64_t>(arg_or(argv, argc, 5, 0));

  std::cout << "law suite benchmark: atoms=" << atoms << " depth=" << depth
            << " shards=" << shards << " samples/shard=" << samples
            << " seed=" << seed << "\n";
  std::cout << "openmp: " << (par::openmp_enabled() ? "yes" : "no")
            << ", workers: " << par::worker_count() << "\n";

  std::string serial_dump, parallel_dump;
  double serial_ms =
      run_ms(false, atoms, depth, seed, shards, samples, &serial_dump);
  double parallel_ms =
      run_ms(true, atoms, depth, seed, shards, samples, &parallel_dump);

  if (serial_dump != parallel_dump) {
    std::cerr << "parallel report differs from the serial reference\n";
    return 1;
  }

  std::cout << "serial:   " << serial_ms << " ms\n";
  std::cout << "parallel: " << parallel_ms << " ms\n";
  std::cout << "speedup:  " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0)
            << "x\n";
  std::cout << "reports byte-identical\n";
  return 0;
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwfkit/cwf.hpp"
#include "json.hpp"

// Sampled checking of the equations an instance must satisfy, with a
// machine-readable report.
namespace cwfkit::cwf {

class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::vector<Obj> objects(int n) = 0;
  virtual std::vector<Sub> subs_into(const Obj& cod, int n) = 0;
  virtual std::vector<Ty> types_over(const Obj& ctx, int n) = 0;
  virtual std::vector<Tm> terms_of(const Ty& ty, int n) = 0;
};

struct LawResult {
  std::string law;
  int cases = 0;
  int failures = 0;
  bool skipped = false;
  std::string note;  // skip reason or first counterexample
  nlohmann::json to_json() const;
};

struct LawReport {
  std::string instance;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<LawResult> laws;
  bool ok() const;
  int total_cases() const;
  nlohmann::json to_json() const;
};

struct LawOptions {
  int samples = 16;       // cases attempted per law
  std::uint64_t seed = 0; // recorded in the report
};

LawReport law_suite(const Instance& I, Sampler& sampler, const LawOptions& = {});

// checks that display maps and arbitrary maps present the same slices:
// every sampled map is isomorphic over its codomain to a display map, and
// the display map of every sampled type is recovered up to iso
struct SliceReport {
  std::string instance;
  int map_cases = 0;
  int type_cases = 0;
  int failures = 0;
  std::vector<std::string> notes;
  bool ok() const { return failures == 0; }
  nlohmann::json to_json() const;
};

SliceReport slice_equivalence_check(const Instance& I, Sampler& sampler, int n = 8);

}  // namespace cwfkit::cwf

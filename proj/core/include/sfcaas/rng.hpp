#pragma once

#include <cstdint>
#include <string_view>

namespace sfcaas {

// Deterministic random source. All draws are implemented on top of a
// splitmix64 stream so that results are reproducible across compilers and
// standard libraries; std::* distributions are implementation defined and
// would break byte-identical reruns.
//
// Substreams are derived from the root seed by name, so e.g. the workload
// stream can be re-drawn without perturbing the topology stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream derived from this stream's seed and a label.
  Rng substream(std::string_view name) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform01();
  // Uniform real in [lo, hi).
  double uniform_real(double lo, double hi);
  // Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Exponential with the given mean (inverse CDF).
  double exponential(double mean);
  // Poisson via Knuth's product method; fine for the small means used here.
  int poisson(double mean);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace sfcaas

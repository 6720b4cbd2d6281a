#pragma once

#include <cstdint>
#include <random>

#include "cytodiff/nn/tensor.hpp"

namespace cytodiff::nn {

// Seeded randomness handle. mt19937_64 output is fully specified by the
// standard and the uniform/normal conversions below avoid the
// implementation-defined std distributions, so identical seeds give
// identical streams everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed), seed_used_(seed) {}

  // Derives an independent stream, e.g. one per image or per worker.
  Rng spawn(uint64_t stream) const;

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Integer in [0, n).
  int64_t uniform_int(int64_t n);
  // Standard normal via Box-Muller, one cached spare.
  double normal();

  void fill_normal(Tensor& t);
  Tensor normal_like(const std::vector<int>& shape);

  uint64_t seed_used() const { return seed_used_; }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_used_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64, used to hash (seed, stream) pairs into fresh seeds.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

}  // namespace cytodiff::nn

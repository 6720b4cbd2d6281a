#include "cytodiff/nn/rng.hpp"

#include <cmath>

namespace cytodiff::nn {

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng Rng::spawn(uint64_t stream) const { return Rng(mix_seed(seed_used_, stream)); }

double Rng::uniform() {
  return double(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int64_t Rng::uniform_int(int64_t n) {
  // Modulo bias is negligible for desk-scale n against 2^64.
  return static_cast<int64_t>(engine_() % static_cast<uint64_t>(n));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void Rng::fill_normal(Tensor& t) {
  for (int64_t i = 0; i < t.size(); ++i) t[i] = static_cast<float>(normal());
}

Tensor Rng::normal_like(const std::vector<int>& shape) {
  Tensor t(shape);
  fill_normal(t);
  return t;
}

}  // namespace cytodiff::nn

#include "cytodiff/diffusion/schedule.hpp"

#include <cmath>

#include "cytodiff/common.hpp"

namespace cytodiff::diffusion {

NoiseSchedule::NoiseSchedule(std::vector<double> betas) : betas_(std::move(betas)) {
  if (betas_.empty()) throw ConfigError("noise schedule: T must be >= 1");
  alpha_bars_.resize(betas_.size());
  double prod = 1.0;
  for (size_t i = 0; i < betas_.size(); ++i) {
    double b = betas_[i];
    if (!(b > 0.0 && b < 1.0))
      throw ConfigError("noise schedule: beta[" + std::to_string(i + 1) +
                        "] out of (0,1): " + std::to_string(b));
    prod *= 1.0 - b;
    alpha_bars_[i] = prod;
  }
  if (!(alpha_bars_.back() > 0.0))
    throw ConfigError("noise schedule: alpha_bar(T) underflowed to 0");
}

double NoiseSchedule::beta(int t) const {
  if (t < 1 || t > steps())
    throw ConfigError("beta(t): t=" + std::to_string(t) + " outside [1," +
                      std::to_string(steps()) + "]");
  return betas_[static_cast<size_t>(t - 1)];
}

double NoiseSchedule::alpha_bar(int t) const {
  if (t == 0) return 1.0;
  if (t < 0 || t > steps())
    throw ConfigError("alpha_bar(t): t=" + std::to_string(t) + " outside [0," +
                      std::to_string(steps()) + "]");
  return alpha_bars_[static_cast<size_t>(t - 1)];
}

NoiseSchedule build_schedule(int T, ScheduleKind kind, double beta_min, double beta_max) {
  if (T < 1) throw ConfigError("build_schedule: T must be >= 1, got " + std::to_string(T));
  if (!(beta_min > 0.0))
    throw ConfigError("build_schedule: beta_min must be > 0, got " + std::to_string(beta_min));
  if (!(beta_min <= beta_max))
    throw ConfigError("build_schedule: beta_min must be <= beta_max");
  if (!(beta_max < 1.0))
    throw ConfigError("build_schedule: beta_max must be < 1, got " + std::to_string(beta_max));

  std::vector<double> betas(static_cast<size_t>(T));
  if (kind == ScheduleKind::linear) {
    for (int t = 0; t < T; ++t) {
      double frac = T == 1 ? 0.0 : double(t) / double(T - 1);
      betas[static_cast<size_t>(t)] = beta_min + (beta_max - beta_min) * frac;
    }
  } else {
    // Squared-cosine alpha_bar profile; betas derived from successive ratios
    // and clipped into [beta_min, beta_max].
    auto f = [T](double t) {
      double s = 0.008;
      double v = std::cos((t / double(T) + s) / (1.0 + s) * M_PI / 2.0);
      return v * v;
    };
    double f0 = f(0.0);
    double prev = 1.0;
    for (int t = 1; t <= T; ++t) {
      double ab = f(double(t)) / f0;
      double b = 1.0 - ab / prev;
      b = std::min(std::max(b, beta_min), beta_max);
      betas[static_cast<size_t>(t - 1)] = b;
      prev *= 1.0 - b;
    }
  }
  return NoiseSchedule(std::move(betas));
}

NoiseSchedule build_schedule(int T, const std::string& kind, double beta_min, double beta_max) {
  if (kind == "linear") return build_schedule(T, ScheduleKind::linear, beta_min, beta_max);
  if (kind == "cosine") return build_schedule(T, ScheduleKind::cosine, beta_min, beta_max);
  throw ConfigError("build_schedule: unknown kind '" + kind + "' (want linear|cosine)");
}

NoiseSchedule default_schedule() {
  return build_schedule(kDefaultSteps, ScheduleKind::linear, kDefaultBetaMin, kDefaultBetaMax);
}

}  // namespace cytodiff::diffusion

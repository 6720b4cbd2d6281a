#pragma once

#include <string>
#include <vector>

namespace cytodiff::diffusion {

enum class ScheduleKind { linear, cosine };

// Discrete diffusion coefficients over T steps. Stored in double precision so
// the cumulative products survive T=1000 without drift. Step indices are
// 1-based; alpha_bar(0) == 1 by convention.
class NoiseSchedule {
 public:
  NoiseSchedule(std::vector<double> betas);

  int steps() const { return static_cast<int>(betas_.size()); }
  double beta(int t) const;       // t in [1, T]
  double alpha_bar(int t) const;  // t in [0, T], alpha_bar(0) = 1
  const std::vector<double>& betas() const { return betas_; }
  const std::vector<double>& alpha_bars() const { return alpha_bars_; }

 private:
  std::vector<double> betas_;
  std::vector<double> alpha_bars_;
};

NoiseSchedule build_schedule(int T, ScheduleKind kind, double beta_min, double beta_max);
NoiseSchedule build_schedule(int T, const std::string& kind, double beta_min, double beta_max);

// Default schedule: T=1000, linear beta in [1e-4, 0.02].
inline constexpr int kDefaultSteps = 1000;
inline constexpr double kDefaultBetaMin = 1e-4;
inline constexpr double kDefaultBetaMax = 0.02;
NoiseSchedule default_schedule();

}  // namespace cytodiff::diffusion

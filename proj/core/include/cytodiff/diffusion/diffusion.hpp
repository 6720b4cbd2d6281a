#pragma once

#include <functional>
#include <vector>

#include "cytodiff/diffusion/schedule.hpp"
#include "cytodiff/nn/rng.hpp"
#include "cytodiff/nn/tensor.hpp"

namespace cytodiff::diffusion {

using nn::Rng;
using nn::Tensor;

// Condition identifier. null_flag marks the unconditional token used for
// classifier-free guidance; when set, label is ignored.
struct ClassCondition {
  int label = 0;
  bool null_flag = false;

  static ClassCondition null() { return {0, true}; }
  static ClassCondition of(int label) { return {label, false}; }
};

// Anything that predicts the noise content of a latent at step t.
class NoisePredictor {
 public:
  virtual ~NoisePredictor() = default;
  virtual Tensor predict(const Tensor& z_t, int t, const ClassCondition& cond) const = 0;
};

// Adapter for lambda-backed predictors, used heavily by tests.
class FnPredictor final : public NoisePredictor {
 public:
  using Fn = std::function<Tensor(const Tensor&, int, const ClassCondition&)>;
  explicit FnPredictor(Fn fn) : fn_(std::move(fn)) {}
  Tensor predict(const Tensor& z_t, int t, const ClassCondition& cond) const override {
    return fn_(z_t, t, cond);
  }

 private:
  Fn fn_;
};

// Timestep subsequence driving a sampler run. Sampling plans are strictly
// decreasing and end at 1; inversion plans are strictly increasing.
struct StepPlan {
  std::vector<int> timesteps;
  double eta = 0.0;

  int count() const { return static_cast<int>(timesteps.size()); }
  StepPlan reversed() const;
  void validate_for_sampling(int T) const;
  void validate_for_inversion(int T) const;
};

// Evenly spaced plan with n steps over [1, T], always containing T,
// decreasing order. kDefaultSampleSteps/kDefaultInvertSteps give the
// defaults (50 for sampling, 200 for inversion).
StepPlan make_sample_plan(int n, int T);
StepPlan make_invert_plan(int n, int T);

inline constexpr int kDefaultSampleSteps = 50;
inline constexpr int kDefaultInvertSteps = 200;

// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) noise.
Tensor forward_marginal(const Tensor& x0, int t, const Tensor& noise,
                        const NoiseSchedule& schedule);

// Mean over elements of (noise - predictor(x_t, t, cond))^2.
double training_loss(const NoisePredictor& denoiser, const Tensor& z0,
                     const ClassCondition& cond, int t, const Tensor& noise,
                     const NoiseSchedule& schedule);

// One stochastic ancestral step; deterministic (no added noise) at t = 1.
Tensor ddpm_reverse_step(const Tensor& z_t, const Tensor& eps_hat, int t,
                         const NoiseSchedule& schedule, Rng& rng);

// Deterministic update between two alpha_bar levels. Works for both
// directions: sampling passes t_to < t_from, inversion t_to > t_from.
Tensor ddim_step(const Tensor& z_t, const Tensor& eps_hat, int t_from, int t_to,
                 const NoiseSchedule& schedule);

struct SampleOptions {
  double guidance_scale = 1.0;
  bool clamp_x0 = false;  // clamping breaks exact inversion, off by default
};

// Chains ddim_step over the plan, starting from z_T. Guidance combines
// eps_uncond + w (eps_cond - eps_uncond); at w = 1 the unconditional branch
// is skipped entirely.
Tensor ddim_sample(const NoisePredictor& denoiser, const Tensor& z_T,
                   const ClassCondition& cond, const StepPlan& plan,
                   const SampleOptions& opts = {});

// Ascending-plan recurrence mapping a clean latent to its noise-level-T code.
// Runs at guidance 1 with the given (source) condition.
Tensor ddim_invert(const NoisePredictor& denoiser, const Tensor& z0,
                   const ClassCondition& cond, const StepPlan& plan);

}  // namespace cytodiff::diffusion

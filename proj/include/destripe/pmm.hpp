#pragma once

#include <cstddef>
#include <vector>

#include "destripe/dadmm.hpp"
#include "destripe/image.hpp"
#include "destripe/scad.hpp"

namespace destripe {

/*
 * Proximal majorization-minimization outer loop for the nonconvex model:
 * at each outer iterate s_k the concave parts are linearized (their gradients
 * frozen), a proximal quadratic (1/2 sigma_tilde_k)||s - s_k||^2 is added,
 * and the resulting convex subproblem is solved inexactly by the dual ADMM
 * under the inexactness inequality carried in ResidualReport.
 */
struct PmmConfig {
  /// sigma_tilde schedule: value at outer iteration k is
  /// max(floor, base * decay^k); the default is the constant 10.0.
  /// Larger values weaken the proximal damping so each subproblem is
  /// solved closer to the plain linearized model; if an outer step then
  /// breaks the descent inequality, the solver retries with a halved
  /// sigma_tilde, so the default errs on the weak-damping side.
  double sigma_tilde = 10.0;
  double sigma_tilde_decay = 1.0;
  double sigma_tilde_floor = 1e-3;

  double outer_tol = 2e-4;
  std::size_t outer_max_iter = 5;
  std::size_t inner_max_iter = 100;

  double sigma = 0.1;   ///< inner ADMM penalty
  double tau = 1.618;   ///< inner ADMM multiplier step factor
  bool warm_start = true;
  bool adaptive_sigma = false;  ///< let the inner solver rebalance its penalty

  double sigma_tilde_at(std::size_t k) const;
  void validate() const;
};

/// One row per accepted outer step.
struct PmmOuterRecord {
  std::size_t outer_index = 0;
  double objective = 0.0;          ///< g(s_{k+1})
  double step_norm = 0.0;          ///< ||s_{k+1} - s_k||
  std::size_t inner_iterations = 0;
  double primal = 0.0;             ///< R_p of the final inner report
  double dual = 0.0;               ///< R_d of the final inner report
  double comp = 0.0;               ///< R_c of the final inner report (informational)
  double stop_lhs = 0.0;
  double stop_rhs = 0.0;
  double sigma_tilde = 0.0;
  double seconds = 0.0;
  bool inner_hit_cap = false;
};

struct PmmHistory {
  double objective_initial = 0.0;  ///< g(s_0)
  std::vector<PmmOuterRecord> outer;
  bool converged = false;          ///< outer tolerance met

  std::size_t total_inner() const;
  double final_kkt() const;        ///< max{R_p, R_d} of the last outer step
};

struct PmmResult {
  ImageMatrix s;
  PmmHistory history;
};

/*
 * Run the outer loop from s_0 = 0: freeze gradients at s_k, solve the
 * subproblem (warm-started), accept s_{k+1}, and stop once
 * max{R_p, R_d} < outer_tol or outer_max_iter iterations are used. Every
 * accepted step is checked against the descent inequality
 *   g(s_{k+1}) + (1/(4 sigma_tilde_k))||s_{k+1} - s_k||^2
 *     <= g(s_k) + 1e-8 (1 + |g(s_k)|);
 * a violation throws, since the inexactness rule guarantees it.
 */
PmmResult pmm_solve(const ImageMatrix& f, const ModelParams& params, const PmmConfig& config,
                    const TraceSink& trace = nullptr);

}  // namespace destripe

#pragma once

#include <cstddef>

#include "destripe/dadmm.hpp"
#include "destripe/image.hpp"
#include "destripe/scad.hpp"

namespace destripe {

struct BaselineResult {
  ImageMatrix s;
  ResidualReport report;   ///< residuals of the returned iterate
  std::size_t sweeps = 0;
  bool converged = false;  ///< max{R_p, R_d, R_c} < tol before the cap
};

/// Convex-model solve by the dual ADMM: the same code path with zero
/// linearization gradients and no proximal quadratic (sigma_tilde = +inf),
/// stopping at max{R_p, R_d, R_c} < config.tol or config.max_sweeps sweeps.
BaselineResult convex_dadmm_solve(const ImageMatrix& f, const ModelParams& params,
                                  const AdmmConfig& config, const TraceSink& trace = nullptr);

/*
 * Primal ADMM on the same convex model under the splitting
 *
 *   min p1(s) + p2(u) + p3(v)   s.t.  f - s - u = 0,  s - v = 0,
 *
 * alternating the s block against the separable (u, v) block, with multiplier
 * steps tau*sigma. Each prox subproblem reuses the same TV / group-norm
 * kernels as the dual solver. KKT residuals are reported through the shared
 * ResidualReport by taking the exact subgradient certificates produced by the
 * prox updates as the dual iterates (so R_c vanishes by construction and
 * convergence is measured by R_p and R_d). Stopping matches
 * convex_dadmm_solve: max{R_p, R_d, R_c} < tol or max_sweeps.
 */
BaselineResult padmm_solve(const ImageMatrix& f, const ModelParams& params,
                           const AdmmConfig& config, const TraceSink& trace = nullptr);

}  // namespace destripe

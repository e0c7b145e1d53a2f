#pragma once

// Slow, independently derived reference implementations used only by tests.
// Each oracle solves its problem by a different algorithm family than the
// library (dual coordinate descent instead of the direct forward scan;
// subgradient descent instead of ADMM), so agreement is meaningful.

#include <cstddef>
#include <vector>

#include "destripe/image.hpp"
#include "destripe/scad.hpp"

namespace destripe::oracle {

/// 1-D TV prox by exact coordinate descent on the dual box QP
///   min_z (1/2)||y - D^T z||^2  s.t. ||z||_inf <= w,
/// recovering x = y - D^T z. Verifies the KKT certificate (box feasibility
/// and complementarity with the jumps of x) before returning; throws
/// std::runtime_error if the certificate fails.
std::vector<double> tv1d_prox_dual_cd(const std::vector<double>& y, double w);

/// Minimizer of the two-quadratic TV problem
///   min_x  lambda1 * sum_i |x_{i+1} - x_i|
///          + 1/(2*sigma_tilde) ||x - a||^2 + 1/(2*sigma) ||x - b||^2
/// by the same dual coordinate descent, keeping the two quadratics separate
/// (sigma_tilde may be +infinity). Applied column by column to matrices.
std::vector<double> two_quadratic_tv_prox(const std::vector<double>& b, double sigma,
                                          double sigma_tilde, const std::vector<double>& a,
                                          double lambda1);
ImageMatrix two_quadratic_tv_prox(const ImageMatrix& s, double sigma, double sigma_tilde,
                                  const ImageMatrix& s_k, double lambda1);

/// Best objective value of the convex model
///   min_s lambda1*TV_y(s) + lambda2*TV_x(f-s) + lambda3*||s||_{2,1}
/// found by normalized subgradient descent with geometrically decaying step
/// lengths (linear convergence on such sharp piecewise-linear objectives).
struct SubgradientResult {
  ImageMatrix s;
  double objective = 0.0;
};
SubgradientResult convex_min_subgradient(const ImageMatrix& f, const ModelParams& params,
                                         std::size_t stages = 140,
                                         std::size_t iters_per_stage = 1500, double step0 = 1.0,
                                         double decay = 0.85);

/// Central finite difference of a scalar function.
template <typename Fn>
double central_difference(Fn&& fn, double t, double h) {
  return (fn(t + h) - fn(t - h)) / (2.0 * h);
}

}  // namespace destripe::oracle

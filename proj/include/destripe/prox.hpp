#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "destripe/errors.hpp"
#include "destripe/image.hpp"

namespace destripe {

/// A proximal step size paired with a regularizer scale; the effective weight
/// entering a prox call is their product.
struct ProxWeight {
  double sigma = 1.0;
  double weight = 0.0;

  double scaled() const { return sigma * weight; }
  void validate() const {
    if (!(sigma > 0.0)) throw ConfigError("prox step sigma must be positive");
    if (weight < 0.0) throw ConfigError("prox weight must be nonnegative");
  }
};

/*
 * Direct 1-D total-variation prox (Condat-style forward scan):
 *
 *   argmin_x  w * sum_i |x_{i+1} - x_i|  +  1/2 ||x - y||^2.
 *
 * Single left-to-right pass building maximal constant segments, with
 * backtracking bounded by the committed output, so typical cost is O(n).
 * The output mean equals the input mean and the map is firmly nonexpansive.
 */
void tv1d_prox(const double* y, double* x, std::size_t n, double w);
std::vector<double> tv1d_prox(const std::vector<double>& y, double w);

/// Column-by-column TV prox: each column of s is denoised with the given
/// weight (sigma * lambda1 in the solver).
ImageMatrix prox_p1(const ImageMatrix& s, double weight);

/// Row-by-row TV prox with the given weight (sigma * lambda2 in the solver).
ImageMatrix prox_p2(const ImageMatrix& u, double weight);

/*
 * Prox of the vertical-TV term plus the outer proximal quadratic,
 *
 *   argmin_x  lambda1 * TV_y(x) + 1/(2*sigma_tilde) ||x - s_k||^2
 *                               + 1/(2*sigma)       ||x - s||^2,
 *
 * computed by merging the two quadratics into one centered at
 *   s_hat = sigma_hat * (s/sigma + s_k/sigma_tilde),
 *   sigma_hat = sigma*sigma_tilde / (sigma + sigma_tilde),
 * then delegating to prox_p1. sigma_tilde = +infinity drops the extra
 * quadratic (sigma_hat = sigma, s_hat = s).
 */
ImageMatrix prox_p1_hat(const ImageMatrix& s, double sigma, double sigma_tilde,
                        const ImageMatrix& s_k, double lambda1);

/// Column-wise block soft threshold with per-column weight
/// w_i = sigma * (lambda3 - grad_col[i]):
/// columns with norm <= w_i collapse to zero, others shrink radially.
/// Requires grad_col[i] <= lambda3 (otherwise the problem is nonconvex).
ImageMatrix prox_p3_hat(const ImageMatrix& s, double sigma, double lambda3,
                        const std::vector<double>& grad_col);

/// Moreau identity: Prox_{sigma f}(x) + sigma * Prox_{f*/sigma}(x/sigma) = x.
/// Given an evaluator for Prox_{sigma f}, returns Prox_{(1/sigma) f*}(x/sigma)
/// without any explicit conjugate formula.
template <typename ProxFn>
ImageMatrix conjugate_prox_via_moreau(ProxFn&& prox_sigma_f, const ImageMatrix& x, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("conjugate_prox_via_moreau: sigma must be positive");
  ImageMatrix out = x - std::forward<ProxFn>(prox_sigma_f)(x);
  out *= 1.0 / sigma;
  return out;
}

}  // namespace destripe

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace destripe::oracle {

namespace {

double clip(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

/*
 * Shared dual coordinate-descent core for
 *   min_x  w * sum |x_{i+1} - x_i| + (kappa/2) ||x - y_eff||^2,
 * parameterized so callers can keep their quadratics separate. The dual
 * variable z (one entry per difference) lives in the box [-w, w]; the primal
 * iterate x = y_eff - D^T z / kappa is maintained incrementally. Coordinate
 * updates are exact:  z_i <- clip(z_i + kappa*(x_{i+1} - x_i)/2).
 */
std::vector<double> dual_cd(const std::vector<double>& y_eff, double w, double kappa) {
  const std::size_t n = y_eff.size();
  std::vector<double> x = y_eff;
  if (n <= 1 || w <= 0.0) return x;
  std::vector<double> z(n - 1, 0.0);

  const double tol = 1e-14 * std::max(1.0, w) * kappa;
  const std::size_t max_sweeps = 400000;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double target = clip(z[i] + kappa * (x[i + 1] - x[i]) / 2.0, -w, w);
      const double delta = target - z[i];
      if (delta == 0.0) continue;
      z[i] = target;
      x[i] += delta / kappa;
      x[i + 1] -= delta / kappa;
      max_change = std::max(max_change, std::abs(delta));
    }
    if (max_change <= tol) break;
  }

  // KKT certificate: box feasibility plus complementarity with the jumps.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(z[i]) > w * (1.0 + 1e-12))
      throw std::runtime_error("tv oracle: dual iterate escaped the box");
    const double jump = x[i + 1] - x[i];
    if (std::abs(jump) > 1e-8 && std::abs(z[i] - (jump > 0 ? w : -w)) > 1e-8 * std::max(1.0, w))
      throw std::runtime_error("tv oracle: complementarity certificate failed");
  }
  return x;
}

}  // namespace

std::vector<double> tv1d_prox_dual_cd(const std::vector<double>& y, double w) {
  return dual_cd(y, w, 1.0);
}

std::vector<double> two_quadratic_tv_prox(const std::vector<double>& b, double sigma,
                                          double sigma_tilde, const std::vector<double>& a,
                                          double lambda1) {
  if (a.size() != b.size()) throw std::invalid_argument("two_quadratic_tv_prox: size mismatch");
  const double inv_tilde = std::isinf(sigma_tilde) ? 0.0 : 1.0 / sigma_tilde;
  const double kappa = 1.0 / sigma + inv_tilde;
  std::vector<double> y_eff(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    y_eff[i] = (b[i] / sigma + a[i] * inv_tilde) / kappa;
  return dual_cd(y_eff, lambda1, kappa);
}

ImageMatrix two_quadratic_tv_prox(const ImageMatrix& s, double sigma, double sigma_tilde,
                                  const ImageMatrix& s_k, double lambda1) {
  require_same_shape(s, s_k, "two_quadratic_tv_prox");
  ImageMatrix out(s.rows(), s.cols(), 0.0, s.intensity_range());
  std::vector<double> col_b(s.rows()), col_a(s.rows());
  for (std::size_t j = 0; j < s.cols(); ++j) {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      col_b[i] = s(i, j);
      col_a[i] = s_k(i, j);
    }
    const std::vector<double> x = two_quadratic_tv_prox(col_b, sigma, sigma_tilde, col_a, lambda1);
    for (std::size_t i = 0; i < s.rows(); ++i) out(i, j) = x[i];
  }
  return out;
}

namespace {

double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// A subgradient of the convex model objective at s.
ImageMatrix convex_subgradient(const ImageMatrix& s, const ImageMatrix& f,
                               const ModelParams& params) {
  ImageMatrix dy = diff_y(s);
  for (std::size_t i = 0; i < dy.rows(); ++i)
    for (std::size_t j = 0; j < dy.cols(); ++j) dy(i, j) = sign0(dy(i, j));
  ImageMatrix dx = diff_x(f - s);
  for (std::size_t i = 0; i < dx.rows(); ++i)
    for (std::size_t j = 0; j < dx.cols(); ++j) dx(i, j) = sign0(dx(i, j));

  ImageMatrix g = params.lambda1 * diff_y_adjoint(dy) - params.lambda2 * diff_x_adjoint(dx);
  const std::vector<double> norms = column_norms(s);
  for (std::size_t j = 0; j < s.cols(); ++j) {
    if (norms[j] <= 0.0) continue;
    for (std::size_t i = 0; i < s.rows(); ++i)
      g(i, j) += params.lambda3 * s(i, j) / norms[j];
  }
  return g;
}

}  // namespace

SubgradientResult convex_min_subgradient(const ImageMatrix& f, const ModelParams& params,
                                         std::size_t stages, std::size_t iters_per_stage,
                                         double step0, double decay) {
  ImageMatrix best(f.rows(), f.cols(), 0.0, f.intensity_range());
  double best_obj = convex_objective(best, f, params);

  double step = step0 * std::max(1.0, max_abs(f));
  for (std::size_t stage = 0; stage < stages; ++stage, step *= decay) {
    ImageMatrix s = best;  // restart each stage from the incumbent
    for (std::size_t it = 0; it < iters_per_stage; ++it) {
      ImageMatrix g = convex_subgradient(s, f, params);
      const double g_norm = norm(g);
      if (g_norm == 0.0) break;
      g *= -step / g_norm;
      s += g;
      const double obj = convex_objective(s, f, params);
      if (obj < best_obj) {
        best_obj = obj;
        best = s;
      }
    }
  }
  return {best, best_obj};
}

}  // namespace destripe::oracle

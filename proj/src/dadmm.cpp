#include "destripe/dadmm.hpp"

#include <cmath>
#include <cstddef>

#include "destripe/errors.hpp"
#include "destripe/prox.hpp"

namespace destripe {

namespace {

constexpr double kTauUpper = 1.618033988749894848;  // (1 + sqrt(5)) / 2

}  // namespace

DadmmState DadmmState::zeros(std::size_t m, std::size_t n) {
  DadmmState st;
  const ImageMatrix zero(m, n);
  st.x = st.y = st.z = st.x_hat = st.y_hat = zero;
  st.s = st.u = st.v = zero;
  st.g1 = st.g2 = zero;
  st.g_h.assign(n, 0.0);
  st.s_anchor = zero;
  return st;
}

void DadmmState::validate() const {
  const ImageMatrix* mats[] = {&y, &z, &x_hat, &y_hat, &s, &u, &v, &g1, &g2, &s_anchor};
  for (const ImageMatrix* m : mats) require_same_shape(x, *m, "DadmmState");
  if (g_h.size() != x.cols())
    throw DimensionError("DadmmState: g_h length must equal column count");
  for (double g : g_h)
    if (!(g >= 0.0)) throw ContractViolation("DadmmState: g_h entries must be nonnegative");
  if (!(sigma_tilde > 0.0)) throw ConfigError("DadmmState: sigma_tilde must be positive");
}

void AdmmConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ConfigError("AdmmConfig: sigma must be positive and finite");
  if (!(tau > 0.0) || !(tau < kTauUpper))
    throw ConfigError("AdmmConfig: tau must lie in (0, (1+sqrt(5))/2)");
  if (!(tol > 0.0)) throw ConfigError("AdmmConfig: tol must be positive");
  if (max_sweeps == 0) throw ConfigError("AdmmConfig: max_sweeps must be at least 1");
}

std::pair<ImageMatrix, ImageMatrix> solve_xy_block(const ImageMatrix& rhs_a,
                                                   const ImageMatrix& rhs_b) {
  require_same_shape(rhs_a, rhs_b, "solve_xy_block");
  const std::size_t sz = rhs_a.size();
  ImageMatrix x = rhs_a, y = rhs_b;
  double* px = x.data();
  double* py = y.data();
  const double* pa = rhs_a.data();
  const double* pb = rhs_b.data();
  for (std::size_t k = 0; k < sz; ++k) {
    px[k] = (2.0 * pa[k] + pb[k]) / 3.0;
    py[k] = (pa[k] + 2.0 * pb[k]) / 3.0;
  }
  return {std::move(x), std::move(y)};
}

void dadmm_step(DadmmState& st, const ImageMatrix& f, const ModelParams& params,
                double sigma, double tau) {
  if (!(sigma > 0.0)) throw ConfigError("dadmm_step: sigma must be positive");
  if (!(tau > 0.0) || !(tau < kTauUpper))
    throw ConfigError("dadmm_step: tau must lie in (0, (1+sqrt(5))/2)");
  require_same_shape(st.s, f, "dadmm_step");

  // (1) linear block: [2I, -I; -I, 2I][x; y] = [a; b] with
  //     a = (1/sigma)(s + u - f) - (z + x_hat - g1 - g2),
  //     b = (1/sigma)(v - s) + (z - y_hat - g1).
  ImageMatrix rhs_a = (1.0 / sigma) * (st.s + st.u - f) - (st.z + st.x_hat - st.g1 - st.g2);
  ImageMatrix rhs_b = (1.0 / sigma) * (st.v - st.s) + (st.z - st.y_hat - st.g1);
  auto xy = solve_xy_block(rhs_a, rhs_b);
  st.x = std::move(xy.first);
  st.y = std::move(xy.second);

  // (2) dual prox updates through the Moreau identity,
  //     Prox_{p*/sigma}(w/sigma) = (w - Prox_{sigma p}(w)) / sigma.
  ImageMatrix w2 = st.u - sigma * st.x + sigma * st.g2;
  st.x_hat = conjugate_prox_via_moreau(
      [&](const ImageMatrix& w) { return prox_p2(w, sigma * params.lambda2); }, w2, sigma);

  ImageMatrix w3 = st.v - sigma * st.y;
  st.y_hat = conjugate_prox_via_moreau(
      [&](const ImageMatrix& w) { return prox_p3_hat(w, sigma, params.lambda3, st.g_h); }, w3,
      sigma);

  ImageMatrix w1 = st.s - sigma * st.x + sigma * st.y + sigma * st.g1;
  st.z = conjugate_prox_via_moreau(
      [&](const ImageMatrix& w) {
        return prox_p1_hat(w, sigma, st.sigma_tilde, st.s_anchor, params.lambda1);
      },
      w1, sigma);

  // (3) multiplier ascent with step tau*sigma.
  const double step = tau * sigma;
  st.s += step * (st.g1 - st.x + st.y - st.z);
  st.u += step * (st.g2 - st.x - st.x_hat);
  st.v += step * ((-1.0) * (st.y + st.y_hat));
}

ResidualReport compute_residuals(const DadmmState& st, const ImageMatrix& f,
                                 const ModelParams& params, [[maybe_unused]] double sigma) {
  require_same_shape(st.s, f, "compute_residuals");
  ResidualReport rep;

  // Dual feasibility of the three dual equality constraints.
  rep.r1 = st.g1 - st.x + st.y - st.z;
  rep.r2 = st.g2 - st.x - st.x_hat;
  rep.r3 = (-1.0) * (st.y + st.y_hat);

  // Primal feasibility of the splitting f = s + u, v = s.
  rep.r_x = st.s + st.u - f;
  rep.r_y = st.v - st.s;

  // Prox-gap residuals: each vanishes exactly when the matching subgradient
  // inclusion of the KKT system holds (z in dp1_hat(s), x_hat in dp2(u),
  // y_hat in dp3_hat(v)), by the prox characterization of subgradients.
  rep.r_z = st.s - prox_p1_hat(st.s + st.z, 1.0, st.sigma_tilde, st.s_anchor, params.lambda1);
  rep.r_xhat = st.u - prox_p2(st.u + st.x_hat, params.lambda2);
  rep.r_yhat = st.v - prox_p3_hat(st.v + st.y_hat, 1.0, params.lambda3, st.g_h);

  rep.pert = std::abs(dot(st.s, rep.r1) + dot(st.u, rep.r2) + dot(st.v, rep.r3) +
                      dot(rep.r_z, st.s - rep.r_z) + dot(rep.r_xhat, st.u - rep.r_xhat) +
                      dot(rep.r_yhat, st.v - rep.r_yhat));

  const double scale = 1.0 + norm(f);
  rep.primal = (norm(rep.r_x) + norm(rep.r_y)) / scale;
  rep.dual = (norm(st.x + st.x_hat) + norm(st.x - st.y + st.z) + norm(st.y + st.y_hat)) / scale;
  rep.comp = (norm(rep.r_z) + norm(rep.r_xhat) + norm(rep.r_yhat)) / scale;

  // Inexactness inequality for a nonconvex subproblem solve: the left side
  // bounds the objective error of the inexact minimizer, the right side is
  // the slack the outer descent argument can absorb.
  rep.stop_applicable = std::isfinite(st.sigma_tilde);
  const double p1_rz = params.lambda1 * vertical_tv(rep.r_z);
  const double p2_gap = params.lambda2 * horizontal_tv(rep.r_x - rep.r_xhat);
  const double p3_gap = params.lambda3 * group_l21(rep.r_y - rep.r_yhat);
  double quad = 0.0, anchor_quad = 0.0;
  if (rep.stop_applicable) {
    const double rz_norm = norm(rep.r_z);
    quad = rz_norm * rz_norm / (2.0 * st.sigma_tilde);
    const double step_norm = norm(st.s - st.s_anchor);
    anchor_quad = step_norm * step_norm / (4.0 * st.sigma_tilde);
  }
  rep.stop_lhs = 2.0 * p1_rz + 2.0 * p2_gap + 2.0 * p3_gap + quad + rep.pert;
  rep.stop_rhs = anchor_quad;
  return rep;
}

DadmmResult dadmm_solve(const ImageMatrix& f, const ModelParams& params,
                        const AdmmConfig& config, const ImageMatrix& g1,
                        const ImageMatrix& g2, const std::vector<double>& g_h,
                        const ImageMatrix& s_anchor, double sigma_tilde,
                        const DadmmState* warm_start, const TraceSink& trace) {
  params.validate();
  config.validate();
  const std::size_t m = f.rows(), n = f.cols();

  DadmmResult result;
  DadmmState& st = result.state;
  st = (warm_start != nullptr) ? *warm_start : DadmmState::zeros(m, n);
  st.g1 = g1;
  st.g2 = g2;
  st.g_h = g_h;
  st.s_anchor = s_anchor;
  st.sigma_tilde = sigma_tilde;
  st.validate();
  require_same_shape(st.s, f, "dadmm_solve");

  const bool subproblem_mode = std::isfinite(sigma_tilde);
  double sigma = config.sigma;

  for (;;) {
    result.report = compute_residuals(st, f, params, sigma);
    if (trace) {
      TraceRow row;
      row.sweep = result.sweeps;
      row.primal = result.report.primal;
      row.dual = result.report.dual;
      row.comp = result.report.comp;
      row.stop_lhs = result.report.stop_lhs;
      row.stop_rhs = result.report.stop_rhs;
      row.objective = subproblem_mode ? objective_g(st.s, f, params)
                                      : convex_objective(st.s, f, params);
      trace(row);
    }
    const bool stop = subproblem_mode
                          ? (result.report.stop_lhs <= result.report.stop_rhs)
                          : (result.report.kkt_max() < config.tol);
    if (stop) {
      result.converged = true;
      break;
    }
    if (result.sweeps >= config.max_sweeps) {
      result.hit_cap = true;
      break;
    }
    if (config.adaptive_sigma && result.sweeps > 0 && result.sweeps % 50 == 0) {
      if (result.report.primal > 4.0 * result.report.dual)
        sigma *= 2.0;
      else if (result.report.dual > 4.0 * result.report.primal)
        sigma *= 0.5;
    }
    dadmm_step(st, f, params, sigma, config.tau);
    ++result.sweeps;
  }
  return result;
}

}  // namespace destripe

#include "destripe/baselines.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "destripe/errors.hpp"
#include "destripe/prox.hpp"

namespace destripe {

BaselineResult convex_dadmm_solve(const ImageMatrix& f, const ModelParams& params,
                                  const AdmmConfig& config, const TraceSink& trace) {
  const std::size_t m = f.rows(), n = f.cols();
  const ImageMatrix zero(m, n);
  DadmmResult run = dadmm_solve(f, params, config, zero, zero, std::vector<double>(n, 0.0),
                                zero, std::numeric_limits<double>::infinity(), nullptr, trace);
  BaselineResult result;
  result.s = std::move(run.state.s);
  result.report = std::move(run.report);
  result.sweeps = run.sweeps;
  result.converged = run.converged;
  return result;
}

BaselineResult padmm_solve(const ImageMatrix& f, const ModelParams& params,
                           const AdmmConfig& config, const TraceSink& trace) {
  params.validate();
  config.validate();
  const std::size_t m = f.rows(), n = f.cols();
  const double sigma = config.sigma;
  const double tau = config.tau;

  // The state doubles as the residual evaluation point: (s, u, v) are the
  // primal blocks, (x, y) the multipliers, and (z, x_hat, y_hat) hold the
  // exact subgradient certificates produced by the latest prox updates.
  DadmmState st = DadmmState::zeros(m, n);

  BaselineResult result;
  for (;;) {
    result.report = compute_residuals(st, f, params, sigma);
    if (trace) {
      TraceRow row;
      row.sweep = result.sweeps;
      row.primal = result.report.primal;
      row.dual = result.report.dual;
      row.comp = result.report.comp;
      row.objective = convex_objective(st.s, f, params);
      trace(row);
    }
    if (result.report.kkt_max() < config.tol) {
      result.converged = true;
      break;
    }
    if (result.sweeps >= config.max_sweeps) break;

    // s block: p1 against both quadratics, merged into one centered at c.
    ImageMatrix c = 0.5 * (f - st.u + st.v) - (0.5 / sigma) * (st.x - st.y);
    ImageMatrix s_next = prox_p1(c, 0.5 * params.lambda1 / sigma);
    st.z = (2.0 * sigma) * (c - s_next);  // in dp1(s_next)

    // u block against the first constraint.
    ImageMatrix c_u = f - s_next - (1.0 / sigma) * st.x;
    ImageMatrix u_next = prox_p2(c_u, params.lambda2 / sigma);
    st.x_hat = sigma * (c_u - u_next);  // in dp2(u_next)

    // v block against the second constraint.
    ImageMatrix c_v = s_next - (1.0 / sigma) * st.y;
    ImageMatrix v_next = prox_p3_hat(c_v, 1.0 / sigma, params.lambda3, st.g_h);
    st.y_hat = sigma * (c_v - v_next);  // in dp3(v_next)

    st.x += (tau * sigma) * (s_next + u_next - f);
    st.y += (tau * sigma) * (v_next - s_next);
    st.s = std::move(s_next);
    st.u = std::move(u_next);
    st.v = std::move(v_next);
    ++result.sweeps;
  }
  result.s = st.s;
  return result;
}

}  // namespace destripe

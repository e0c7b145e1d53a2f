#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "destripe/image.hpp"
#include "destripe/scad.hpp"

namespace destripe {

/*
 * Dual ADMM for one convex subproblem
 *
 *   min_s  p1_hat(s) + p2(f - s) + p3_hat(s),
 *
 * where p1_hat folds the frozen concave-part gradient g1 and the outer
 * proximal quadratic (1/2 sigma_tilde)||s - s_anchor||^2 into the vertical-TV
 * term, p2 is the horizontal-TV term, and p3_hat is the column-norm term with
 * per-column weights lambda3 - g_h[i]. The algorithm runs on the dual; the
 * primal image variables (s, u, v) reappear as multipliers of the dual
 * equality constraints, so the solve returns the primal answer directly.
 */

/// Full iterate of the dual ADMM: dual blocks (x, y, z, x_hat, y_hat),
/// primal/multiplier blocks (s, u, v), and the frozen subproblem data.
struct DadmmState {
  ImageMatrix x, y, z, x_hat, y_hat;
  ImageMatrix s, u, v;

  ImageMatrix g1, g2;           ///< frozen linearization gradients (matrices)
  std::vector<double> g_h;      ///< frozen column-norm gradient, length n
  ImageMatrix s_anchor;         ///< outer iterate the proximal term is centered at
  double sigma_tilde = std::numeric_limits<double>::infinity();

  static DadmmState zeros(std::size_t m, std::size_t n);
  void validate() const;
};

/// KKT residuals of one iterate: the eight error matrices, the scalar
/// summaries R_p / R_d / R_c, the perturbation term, and the two sides of the
/// inexactness inequality used to stop nonconvex subproblem solves.
struct ResidualReport {
  ImageMatrix r1, r2, r3;            ///< dual feasibility
  ImageMatrix r_x, r_y;              ///< primal feasibility
  ImageMatrix r_z, r_xhat, r_yhat;   ///< prox-gap optimality
  double primal = 0.0;               ///< R_p
  double dual = 0.0;                 ///< R_d
  double comp = 0.0;                 ///< R_c
  double pert = 0.0;
  double stop_lhs = 0.0;
  double stop_rhs = 0.0;
  bool stop_applicable = false;      ///< false when sigma_tilde = +inf

  double kkt_max() const { return std::max(primal, std::max(dual, comp)); }
};

struct AdmmConfig {
  /// Penalty parameter; 0.1 balances primal/dual residual decay on
  /// unit-range images at the default weight scale.
  double sigma = 0.1;
  double tau = 1.618;            ///< must lie in (0, (1+sqrt(5))/2)
  double tol = 2e-4;
  std::size_t max_sweeps = 500;
  /// Rebalance sigma by a factor of 2 every 50 sweeps when R_p and R_d
  /// diverge by more than 4x. Off by default so runs are reproducible
  /// independent of history.
  bool adaptive_sigma = false;

  void validate() const;
};

struct TraceRow {
  std::size_t sweep = 0;
  double primal = 0.0, dual = 0.0, comp = 0.0;
  double stop_lhs = 0.0, stop_rhs = 0.0;
  double objective = 0.0;
};
using TraceSink = std::function<void(const TraceRow&)>;

struct DadmmResult {
  DadmmState state;
  ResidualReport report;
  std::size_t sweeps = 0;
  bool converged = false;   ///< stopping rule met before the sweep cap
  bool hit_cap = false;
};

/// Closed-form solve of the 2x2 block system [2I, -I; -I, 2I][x; y] = [a; b];
/// the coefficient matrix has constant inverse (1/3)[2I, I; I, 2I].
std::pair<ImageMatrix, ImageMatrix> solve_xy_block(const ImageMatrix& rhs_a,
                                                   const ImageMatrix& rhs_b);

/// One full sweep: the (x, y) linear block, the three conjugate-prox dual
/// updates (via the Moreau identity), then the multiplier ascent on (s, u, v).
void dadmm_step(DadmmState& state, const ImageMatrix& f, const ModelParams& params,
                double sigma, double tau);

/// Evaluate all residuals of the current iterate. The report's stop_lhs /
/// stop_rhs realize the subproblem inexactness inequality; they are flagged
/// not applicable when sigma_tilde = +inf (convex mode).
ResidualReport compute_residuals(const DadmmState& state, const ImageMatrix& f,
                                 const ModelParams& params,
                                 [[maybe_unused]] double sigma = 1.0);

/*
 * Run the dual ADMM to the mode-appropriate stopping rule:
 *   - sigma_tilde finite (nonconvex subproblem): stop when
 *       stop_lhs <= stop_rhs, or after config.max_sweeps;
 *   - sigma_tilde = +inf (convex mode): stop when
 *       max{R_p, R_d, R_c} < config.tol, or after config.max_sweeps.
 * Residuals are evaluated before each sweep so the returned report always
 * describes the returned state. Warm starting reuses a previous state's
 * variables (shapes must match) and affects only the sweep count.
 */
DadmmResult dadmm_solve(const ImageMatrix& f, const ModelParams& params,
                        const AdmmConfig& config, const ImageMatrix& g1,
                        const ImageMatrix& g2, const std::vector<double>& g_h,
                        const ImageMatrix& s_anchor, double sigma_tilde,
                        const DadmmState* warm_start = nullptr,
                        const TraceSink& trace = nullptr);

}  // namespace destripe

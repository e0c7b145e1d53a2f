#include "destripe/destripe.hpp"

#include <algorithm>
#include <utility>

#include "destripe/errors.hpp"

namespace destripe {

DestripeResult destripe(const ImageMatrix& f, const ModelParams& params,
                        const DestripeConfig& config, const TraceSink& trace) {
  DestripeResult out;
  switch (config.method) {
    case Method::nonconvex_pmm: {
      PmmResult run = pmm_solve(f, params, config.pmm, trace);
      out.s = std::move(run.s);
      out.outer_iterations = run.history.outer.size();
      out.inner_iterations = run.history.total_inner();
      out.kkt = run.history.final_kkt();
      if (!run.history.outer.empty()) {
        out.primal = run.history.outer.back().primal;
        out.dual = run.history.outer.back().dual;
        out.comp = run.history.outer.back().comp;
      }
      out.converged = run.history.converged;
      out.history = std::move(run.history);
      break;
    }
    case Method::convex_dadmm:
    case Method::convex_padmm: {
      BaselineResult run = (config.method == Method::convex_dadmm)
                               ? convex_dadmm_solve(f, params, config.admm, trace)
                               : padmm_solve(f, params, config.admm, trace);
      out.s = std::move(run.s);
      out.outer_iterations = 1;
      out.inner_iterations = run.sweeps;
      out.kkt = run.report.kkt_max();
      out.primal = run.report.primal;
      out.dual = run.report.dual;
      out.comp = run.report.comp;
      out.converged = run.converged;
      break;
    }
  }
  out.u = f - out.s;
  out.u.set_intensity_range(f.intensity_range());
  return out;
}

}  // namespace destripe

#pragma once

#include <cstddef>

#include "destripe/baselines.hpp"
#include "destripe/image.hpp"
#include "destripe/pmm.hpp"
#include "destripe/scad.hpp"

namespace destripe {

enum class Method {
  nonconvex_pmm,  ///< SCAD model solved by PMM with inner dual ADMM
  convex_dadmm,   ///< convex model solved by the dual ADMM
  convex_padmm,   ///< convex model solved by the primal ADMM
};

struct DestripeConfig {
  Method method = Method::nonconvex_pmm;
  PmmConfig pmm;        ///< used by nonconvex_pmm (also supplies sigma/tau defaults)
  AdmmConfig admm;      ///< used by the convex baselines
};

struct DestripeResult {
  ImageMatrix u;        ///< estimated clean image, u = f - s exactly
  ImageMatrix s;        ///< estimated stripe field
  std::size_t outer_iterations = 0;   ///< 1 for the convex baselines
  std::size_t inner_iterations = 0;   ///< total ADMM sweeps
  double kkt = 0.0;     ///< final stopping metric (mode-appropriate residual max)
  double primal = 0.0;  ///< final R_p
  double dual = 0.0;    ///< final R_d
  double comp = 0.0;    ///< final R_c
  bool converged = false;
  PmmHistory history;   ///< populated for nonconvex_pmm only
};

/// Solve with the configured method and return the decomposition f = u + s.
DestripeResult destripe(const ImageMatrix& f, const ModelParams& params,
                        const DestripeConfig& config, const TraceSink& trace = nullptr);

}  // namespace destripe

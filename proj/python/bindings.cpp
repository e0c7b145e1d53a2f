// pybind11 bindings: numpy-facing wrappers over the destriping library.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <stdexcept>
#include <string>

#include "destripe/bench.hpp"
#include "destripe/destripe.hpp"
#include "destripe/errors.hpp"
#include "destripe/metrics.hpp"
#include "destripe/prox.hpp"
#include "destripe/scad.hpp"
#include "destripe/synth.hpp"

namespace py = pybind11;

namespace {

using Array2d = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Array1d = py::array_t<double, py::array::c_style | py::array::forcecast>;

destripe::ImageMatrix to_matrix(const Array2d& array, double peak) {
  if (array.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(array.shape(0));
  const auto cols = static_cast<std::size_t>(array.shape(1));
  destripe::ImageMatrix out(rows, cols, 0.0, peak);
  std::memcpy(out.data(), array.data(), rows * cols * sizeof(double));
  return out;
}

py::array_t<double> to_numpy(const destripe::ImageMatrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::memcpy(out.mutable_data(), m.data(), m.size() * sizeof(double));
  return out;
}

destripe::Method method_from_name(const std::string& name) {
  if (name == "nonconvex" || name == "pmm") return destripe::Method::nonconvex_pmm;
  if (name == "dadmm") return destripe::Method::convex_dadmm;
  if (name == "padmm") return destripe::Method::convex_padmm;
  throw std::invalid_argument("unknown method: " + name + " (use nonconvex, dadmm or padmm)");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Column-stripe removal: SCAD-regularized DC model with PMM + dual ADMM, "
              "convex baselines, proximal operators, metrics and synthetic degradation.";

  py::register_exception<destripe::ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<destripe::DimensionError>(mod, "DimensionError", PyExc_ValueError);

  mod.def(
      "destripe",
      [](const Array2d& f, const std::string& method, double lambda1, double lambda2,
         double lambda3, double alpha, double peak, double sigma, double tau, double sigma_tilde,
         double outer_tol, std::size_t outer_max_iter, std::size_t inner_max_iter, double tol,
         std::size_t max_sweeps, bool adaptive_sigma) {
        destripe::ModelParams params;
        params.lambda1 = lambda1;
        params.lambda2 = lambda2;
        params.lambda3 = lambda3;
        params.alpha = alpha;
        destripe::DestripeConfig config;
        config.method = method_from_name(method);
        config.pmm.sigma = sigma;
        config.pmm.tau = tau;
        config.pmm.sigma_tilde = sigma_tilde;
        config.pmm.outer_tol = outer_tol;
        config.pmm.outer_max_iter = outer_max_iter;
        config.pmm.inner_max_iter = inner_max_iter;
        config.pmm.adaptive_sigma = adaptive_sigma;
        config.admm.sigma = sigma;
        config.admm.tau = tau;
        config.admm.tol = tol;
        config.admm.max_sweeps = max_sweeps;
        config.admm.adaptive_sigma = adaptive_sigma;

        const destripe::DestripeResult result = destripe::destripe(to_matrix(f, peak), params, config);

        py::dict info;
        info["kkt"] = result.kkt;
        info["primal"] = result.primal;
        info["dual"] = result.dual;
        info["comp"] = result.comp;
        info["outer_iterations"] = result.outer_iterations;
        info["inner_iterations"] = result.inner_iterations;
        info["converged"] = result.converged;
        py::list objectives;
        for (const destripe::PmmOuterRecord& rec : result.history.outer)
          objectives.append(rec.objective);
        info["objectives"] = objectives;
        return py::make_tuple(to_numpy(result.u), to_numpy(result.s), info);
      },
      py::arg("f"), py::arg("method") = "nonconvex", py::arg("lambda1") = 20.0,
      py::arg("lambda2") = 1.0, py::arg("lambda3") = 1.0, py::arg("alpha") = 3.7,
      py::arg("peak") = 1.0, py::arg("sigma") = 0.1, py::arg("tau") = 1.618,
      py::arg("sigma_tilde") = 10.0, py::arg("outer_tol") = 2e-4, py::arg("outer_max_iter") = 5,
      py::arg("inner_max_iter") = 100, py::arg("tol") = 2e-4, py::arg("max_sweeps") = 500,
      py::arg("adaptive_sigma") = false,
      "Split f into (u, s) with f = u + s; returns (u, s, info). method is one of "
      "'nonconvex' (PMM), 'dadmm' or 'padmm' (convex model).");

  mod.def(
      "tv1d_prox",
      [](const Array1d& y, double w) {
        if (y.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
        const auto n = static_cast<std::size_t>(y.shape(0));
        py::array_t<double> out(n);
        destripe::tv1d_prox(y.data(), out.mutable_data(), n, w);
        return out;
      },
      py::arg("y"), py::arg("w"),
      "Exact prox of w * TV_1d at y (direct non-iterative scan).");

  mod.def(
      "mse", [](const Array2d& u, const Array2d& v) { return destripe::mse(to_matrix(u, 1.0), to_matrix(v, 1.0)); },
      py::arg("u"), py::arg("v"));
  mod.def(
      "psnr",
      [](const Array2d& u, const Array2d& v, double peak) {
        return destripe::psnr(to_matrix(u, peak), to_matrix(v, peak), peak);
      },
      py::arg("u"), py::arg("v"), py::arg("peak") = 1.0);
  mod.def(
      "ssim",
      [](const Array2d& u, const Array2d& v, double peak, double k1, double k2) {
        return destripe::ssim(to_matrix(u, peak), to_matrix(v, peak), peak, k1, k2);
      },
      py::arg("u"), py::arg("v"), py::arg("peak") = 1.0, py::arg("k1") = 0.01,
      py::arg("k2") = 0.03, "Global (whole-image) SSIM; differs from windowed toolkits.");

  mod.def(
      "synthetic_scene",
      [](std::size_t rows, std::size_t cols) { return to_numpy(destripe::synthetic_scene(rows, cols)); },
      py::arg("rows") = 128, py::arg("cols") = 128);

  mod.def(
      "generate_stripes",
      [](std::size_t rows, std::size_t cols, const std::string& mode, std::size_t period,
         std::size_t band, double density, double amplitude, const std::string& profile,
         std::uint64_t seed) {
        destripe::StripeSpec spec;
        if (mode == "periodic")
          spec.mode = destripe::StripeMode::periodic;
        else if (mode == "nonperiodic")
          spec.mode = destripe::StripeMode::nonperiodic;
        else
          throw std::invalid_argument("mode must be 'periodic' or 'nonperiodic'");
        spec.period = period;
        spec.band = band;
        spec.density = density;
        spec.amplitude = amplitude;
        if (profile == "constant")
          spec.profile = destripe::StripeProfile::constant_column;
        else if (profile == "smooth")
          spec.profile = destripe::StripeProfile::smooth_column;
        else
          throw std::invalid_argument("profile must be 'constant' or 'smooth'");
        spec.seed = seed;
        return to_numpy(destripe::generate_stripes(spec, rows, cols));
      },
      py::arg("rows"), py::arg("cols"), py::arg("mode") = "periodic", py::arg("period") = 4,
      py::arg("band") = 1, py::arg("density") = 0.3, py::arg("amplitude") = 0.2,
      py::arg("profile") = "constant", py::arg("seed") = 0,
      "Seeded columnar stripe field (deterministic per seed).");

  mod.def(
      "degrade",
      [](const Array2d& u, const Array2d& s) {
        return to_numpy(destripe::degrade(to_matrix(u, 1.0), to_matrix(s, 1.0)));
      },
      py::arg("u"), py::arg("s"), "Additive degradation f = u + s.");

  mod.def(
      "objective",
      [](const Array2d& s, const Array2d& f, double lambda1, double lambda2, double lambda3,
         double alpha, bool nonconvex) {
        destripe::ModelParams params;
        params.lambda1 = lambda1;
        params.lambda2 = lambda2;
        params.lambda3 = lambda3;
        params.alpha = alpha;
        const destripe::ImageMatrix sm = to_matrix(s, 1.0);
        const destripe::ImageMatrix fm = to_matrix(f, 1.0);
        return nonconvex ? destripe::objective_g(sm, fm, params)
                         : destripe::convex_objective(sm, fm, params);
      },
      py::arg("s"), py::arg("f"), py::arg("lambda1") = 0.02, py::arg("lambda2") = 1.0,
      py::arg("lambda3") = 0.05, py::arg("alpha") = 3.7, py::arg("nonconvex") = true,
      "Model objective at stripe estimate s for data f.");
}

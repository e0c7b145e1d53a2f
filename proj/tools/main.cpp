// destripe: stripe-noise removal for grayscale images.
//
// Subcommands: destripe, degrade, evaluate, benchmark, grid-search, trace.
// Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 convergence cap
// reached while --strict is set.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "destripe/bench.hpp"
#include "destripe/destripe.hpp"
#include "destripe/errors.hpp"
#include "destripe/io.hpp"
#include "destripe/metrics.hpp"
#include "destripe/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNotConverged = 3;

std::size_t env_threads() {
  const char* raw = std::getenv("DESTRIPE_THREADS");
  if (!raw) return 1;
  const long parsed = std::strtol(raw, nullptr, 10);
  return parsed > 0 ? static_cast<std::size_t>(parsed) : 1;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> values;
  std::istringstream in(csv);
  std::string cell;
  while (std::getline(in, cell, ',')) values.push_back(std::stod(cell));
  return values;
}

struct SolverOptions {
  std::string model = "nonconvex";  // nonconvex | convex
  std::string solver;               // pmm | dadmm | padmm (default from model)
  destripe::ModelParams params;
  destripe::PmmConfig pmm;
  destripe::AdmmConfig admm;
  bool strict = false;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--model", model, "Model: nonconvex (SCAD) or convex")
        ->check(CLI::IsMember({"nonconvex", "convex"}));
    cmd->add_option("--solver", solver,
                    "Solver: pmm (nonconvex), dadmm or padmm (convex); default follows --model")
        ->check(CLI::IsMember({"pmm", "dadmm", "padmm"}));
    cmd->add_option("--lambda1", params.lambda1, "Vertical-TV weight on the stripe field");
    cmd->add_option("--lambda2", params.lambda2, "Horizontal-TV weight on the clean image");
    cmd->add_option("--lambda3", params.lambda3, "Column-group-norm weight");
    cmd->add_option("--alpha", params.alpha, "SCAD shape parameter (must be > 2)");
    cmd->add_option("--sigma", pmm.sigma, "ADMM penalty parameter");
    cmd->add_option("--tau", pmm.tau, "ADMM multiplier step factor in (0, 1.618...)");
    cmd->add_option("--sigma-tilde", pmm.sigma_tilde, "Outer proximal step (base value)");
    cmd->add_option("--sigma-tilde-decay", pmm.sigma_tilde_decay,
                    "Geometric decay of sigma-tilde per outer iteration");
    cmd->add_option("--outer-tol", pmm.outer_tol, "Outer stopping tolerance on max{R_p, R_d}");
    cmd->add_option("--outer-max", pmm.outer_max_iter, "Outer iteration cap");
    cmd->add_option("--inner-max", pmm.inner_max_iter, "Inner sweep cap per subproblem");
    cmd->add_option("--tol", admm.tol, "Convex stopping tolerance on max{R_p, R_d, R_c}");
    cmd->add_option("--max-sweeps", admm.max_sweeps, "Convex sweep cap");
    cmd->add_flag("--strict", strict, "Exit 3 when the solver stops at an iteration cap");
  }

  destripe::DestripeConfig build() const {
    destripe::DestripeConfig config;
    std::string chosen = solver;
    if (chosen.empty()) chosen = (model == "convex") ? "dadmm" : "pmm";
    if (model == "convex" && chosen == "pmm")
      throw destripe::ConfigError("solver pmm requires --model nonconvex");
    if (model == "nonconvex" && chosen != "pmm")
      throw destripe::ConfigError("solver " + chosen + " requires --model convex");
    if (chosen == "pmm")
      config.method = destripe::Method::nonconvex_pmm;
    else if (chosen == "dadmm")
      config.method = destripe::Method::convex_dadmm;
    else
      config.method = destripe::Method::convex_padmm;
    config.pmm = pmm;
    config.admm = admm;
    config.admm.sigma = pmm.sigma;
    config.admm.tau = pmm.tau;
    return config;
  }
};

void write_history_csv(const std::string& path, const std::string& method,
                       const destripe::DestripeResult& result, double seconds,
                       bool with_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw destripe::IoError("cannot open for writing: " + path);
  out << "method,outer_index,objective,step_norm,inner_iterations,primal,dual,comp,"
         "stop_lhs,stop_rhs,sigma_tilde,seconds,inner_hit_cap\n";
  char line[512];
  if (!result.history.outer.empty()) {
    for (const destripe::PmmOuterRecord& rec : result.history.outer) {
      std::snprintf(line, sizeof(line), "%s,%zu,%.12e,%.12e,%zu,%.6e,%.6e,%.6e,%.6e,%.6e,%g,%.3f,%d\n",
                    method.c_str(), rec.outer_index, rec.objective, rec.step_norm,
                    rec.inner_iterations, rec.primal, rec.dual, rec.comp, rec.stop_lhs,
                    rec.stop_rhs, rec.sigma_tilde, with_timing ? rec.seconds : 0.0,
                    rec.inner_hit_cap ? 1 : 0);
      out << line;
    }
  } else {
    std::snprintf(line, sizeof(line), "%s,0,,,%zu,%.6e,%.6e,%.6e,,,inf,%.3f,%d\n", method.c_str(),
                  result.inner_iterations, result.primal, result.dual, result.comp,
                  with_timing ? seconds : 0.0, result.converged ? 0 : 1);
    out << line;
  }
}

int run_destripe(const SolverOptions& opts, const std::string& input_path,
                 const std::string& out_u, const std::string& out_s,
                 const std::string& history_path, const std::string& orientation,
                 const std::string& trace_path, bool with_timing) {
  destripe::ImageMatrix f = destripe::read_image(input_path);
  const bool rotated = (orientation == "horizontal");
  if (rotated) f = destripe::rotate_cw(f);

  destripe::TraceSink trace;
  std::ofstream trace_out;
  if (!trace_path.empty()) {
    trace_out.open(trace_path, std::ios::binary);
    if (!trace_out) throw destripe::IoError("cannot open for writing: " + trace_path);
    trace_out << "iteration,R_p,R_d,R_c,stop_lhs,stop_rhs,objective\n";
    trace = [&trace_out](const destripe::TraceRow& row) {
      char line[256];
      std::snprintf(line, sizeof(line), "%zu,%.6e,%.6e,%.6e,%.6e,%.6e,%.12e\n", row.sweep,
                    row.primal, row.dual, row.comp, row.stop_lhs, row.stop_rhs, row.objective);
      trace_out << line;
    };
  }

  const auto t0 = std::chrono::steady_clock::now();
  const destripe::DestripeConfig config = opts.build();
  destripe::DestripeResult result = destripe::destripe(f, opts.params, config, trace);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  destripe::ImageMatrix u = result.u;
  destripe::ImageMatrix s = result.s;
  if (rotated) {
    u = destripe::rotate_ccw(u);
    s = destripe::rotate_ccw(s);
  }
  if (!out_u.empty()) destripe::write_image(out_u, u);
  if (!out_s.empty()) destripe::write_image(out_s, s);

  std::string method = "pmm";
  if (config.method == destripe::Method::convex_dadmm) method = "dadmm";
  if (config.method == destripe::Method::convex_padmm) method = "padmm";
  if (!history_path.empty())
    write_history_csv(history_path, method, result, seconds, with_timing);

  std::printf("method=%s R_p=%.6e R_d=%.6e R_c=%.6e kkt=%.6e outer=%zu inner=%zu time_s=%.3f converged=%d\n",
              method.c_str(), result.primal, result.dual, result.comp, result.kkt,
              result.outer_iterations, result.inner_iterations, with_timing ? seconds : 0.0,
              result.converged ? 1 : 0);
  if (opts.strict && !result.converged) return kExitNotConverged;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stripe-noise removal via DC-regularized optimization"};
  app.require_subcommand(1);

  // ---- destripe ----
  auto* cmd_destripe = app.add_subcommand("destripe", "Remove stripes from an image");
  cmd_destripe->set_config("--config", "", "Read options from a key=value config file");
  SolverOptions destripe_opts;
  std::string in_path, out_u_path, out_s_path, history_path, orientation = "vertical", trace_path;
  bool destripe_no_timing = false;
  cmd_destripe->add_flag("--no-timing", destripe_no_timing,
                         "Report times as 0 so repeated runs emit identical bytes");
  cmd_destripe->add_option("--input,-i", in_path, "Degraded input image")->required();
  cmd_destripe->add_option("--output-u,-o", out_u_path, "Output path for the clean estimate u");
  cmd_destripe->add_option("--output-s", out_s_path, "Output path for the stripe field s");
  cmd_destripe->add_option("--history", history_path, "Write the per-outer-iteration history CSV");
  cmd_destripe->add_option("--trace", trace_path, "Write a per-sweep residual trace CSV");
  cmd_destripe->add_option("--orientation", orientation,
                           "Stripe orientation; horizontal inputs are rotated for the solve")
      ->check(CLI::IsMember({"vertical", "horizontal"}));
  destripe_opts.add_flags(cmd_destripe);

  // ---- degrade ----
  auto* cmd_degrade = app.add_subcommand("degrade", "Add synthetic stripes to a clean image");
  cmd_degrade->set_config("--config", "", "Read options from a key=value config file");
  std::string deg_input, deg_output, deg_stripes_out, deg_mode = "periodic", deg_profile = "constant";
  std::size_t deg_rows = 128, deg_cols = 128, deg_period = 4, deg_band = 1;
  double deg_density = 0.3, deg_amplitude = 0.2;
  std::uint64_t deg_seed = 1;
  bool deg_use_scene = false;
  cmd_degrade->add_option("--input,-i", deg_input, "Clean input image (omit with --scene)");
  cmd_degrade->add_flag("--scene", deg_use_scene, "Use the built-in synthetic scene as input");
  cmd_degrade->add_option("--rows", deg_rows, "Scene height (with --scene)");
  cmd_degrade->add_option("--cols", deg_cols, "Scene width (with --scene)");
  cmd_degrade->add_option("--output,-o", deg_output, "Degraded output image")->required();
  cmd_degrade->add_option("--output-stripes", deg_stripes_out, "Also write the stripe field");
  cmd_degrade->add_option("--mode", deg_mode, "periodic | nonperiodic")
      ->check(CLI::IsMember({"periodic", "nonperiodic"}));
  cmd_degrade->add_option("--period", deg_period, "Stripe period (periodic mode)");
  cmd_degrade->add_option("--band", deg_band, "Adjacent striped columns per period block");
  cmd_degrade->add_option("--density", deg_density, "Striped-column fraction (nonperiodic mode)");
  cmd_degrade->add_option("--amplitude", deg_amplitude,
                          "Stripe amplitude A; levels have random sign, magnitude in [A/2, A]");
  cmd_degrade->add_option("--profile", deg_profile, "constant | smooth column profile")
      ->check(CLI::IsMember({"constant", "smooth"}));
  cmd_degrade->add_option("--seed", deg_seed, "Stripe RNG seed");

  // ---- evaluate ----
  auto* cmd_evaluate = app.add_subcommand("evaluate", "Compute MSE / PSNR / SSIM vs a reference");
  std::string eval_input, eval_reference;
  double eval_peak = 0.0;
  cmd_evaluate->add_option("--input,-i", eval_input, "Image under test")->required();
  cmd_evaluate->add_option("--reference,-r", eval_reference, "Ground-truth reference")->required();
  cmd_evaluate->add_option("--peak", eval_peak, "Peak intensity override (default: reference's)");

  // ---- benchmark ----
  auto* cmd_benchmark = app.add_subcommand("benchmark", "Run the synthetic destriping suite");
  cmd_benchmark->set_config("--config", "", "Read options from a key=value config file");
  destripe::BenchConfig bench_config;
  bench_config.threads = env_threads();
  std::string bench_csv, bench_table;
  bool bench_no_timing = false, bench_no_tune = false, bench_strict = false;
  cmd_benchmark->add_option("--rows", bench_config.rows, "Case height");
  cmd_benchmark->add_option("--cols", bench_config.cols, "Case width");
  cmd_benchmark->add_option("--seed", bench_config.seed, "Base seed for the suite");
  cmd_benchmark->add_option("--threads", bench_config.threads,
                            "Worker pool size (default: DESTRIPE_THREADS or 1)");
  cmd_benchmark->add_option("--csv", bench_csv, "Write the report CSV here");
  cmd_benchmark->add_option("--table", bench_table, "Write the text table here (default stdout)");
  cmd_benchmark->add_flag("--no-timing", bench_no_timing,
                          "Report time_s as 0 so repeated runs are byte-identical");
  cmd_benchmark->add_flag("--no-tune", bench_no_tune, "Skip grid search; use the given lambdas");
  cmd_benchmark->add_flag("--strict", bench_strict, "Exit 3 if any solver stopped at its cap");
  cmd_benchmark->add_option("--lambda1", bench_config.params.lambda1, "Base lambda1");
  cmd_benchmark->add_option("--lambda2", bench_config.params.lambda2, "Base lambda2");
  cmd_benchmark->add_option("--lambda3", bench_config.params.lambda3, "Base lambda3");
  cmd_benchmark->add_option("--alpha", bench_config.params.alpha, "SCAD shape parameter");
  std::string bench_l1_grid, bench_l3_grid;
  cmd_benchmark->add_option("--lambda1-grid", bench_l1_grid,
                            "Comma-separated lambda1 candidates for tuning");
  cmd_benchmark->add_option("--lambda3-grid", bench_l3_grid,
                            "Comma-separated lambda3 candidates for tuning");
  cmd_benchmark->add_option("--screen-sweeps", bench_config.screen_max_sweeps,
                            "Convex sweep cap while screening grid points");
  cmd_benchmark->add_option("--sigma", bench_config.solver.pmm.sigma, "ADMM penalty parameter");
  cmd_benchmark->add_option("--tau", bench_config.solver.pmm.tau, "ADMM multiplier step factor");

  // ---- grid-search ----
  auto* cmd_grid = app.add_subcommand("grid-search", "Tune (lambda1, lambda3) against ground truth");
  cmd_grid->set_config("--config", "", "Read options from a key=value config file");
  SolverOptions grid_opts;
  std::string grid_input, grid_reference, grid_csv, grid_l1 = "10,20,40", grid_l3 = "1,2,3";
  std::size_t grid_threads = env_threads();
  cmd_grid->add_option("--input,-i", grid_input, "Degraded input image")->required();
  cmd_grid->add_option("--reference,-r", grid_reference, "Ground-truth clean image")->required();
  cmd_grid->add_option("--lambda1-grid", grid_l1, "Comma-separated lambda1 values");
  cmd_grid->add_option("--lambda3-grid", grid_l3, "Comma-separated lambda3 values");
  cmd_grid->add_option("--csv", grid_csv, "Write per-point scores CSV here");
  cmd_grid->add_option("--threads", grid_threads, "Worker pool size");
  grid_opts.add_flags(cmd_grid);

  // ---- trace ----
  auto* cmd_trace = app.add_subcommand("trace", "Emit the per-sweep residual trace of a solve");
  cmd_trace->set_config("--config", "", "Read options from a key=value config file");
  SolverOptions trace_opts;
  std::string trace_input, trace_output;
  cmd_trace->add_option("--input,-i", trace_input, "Degraded input image")->required();
  cmd_trace->add_option("--output,-o", trace_output, "Trace CSV path (default stdout)");
  trace_opts.add_flags(cmd_trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_destripe->parsed())
      return run_destripe(destripe_opts, in_path, out_u_path, out_s_path, history_path,
                          orientation, trace_path, !destripe_no_timing);

    if (cmd_degrade->parsed()) {
      if (!deg_use_scene && deg_input.empty())
        throw destripe::ConfigError("degrade: provide --input or --scene");
      if (deg_use_scene && !deg_input.empty())
        throw destripe::ConfigError("degrade: --input and --scene are mutually exclusive");
      destripe::ImageMatrix clean = deg_use_scene ? destripe::synthetic_scene(deg_rows, deg_cols)
                                                  : destripe::read_image(deg_input);
      destripe::StripeSpec spec;
      spec.mode = (deg_mode == "periodic") ? destripe::StripeMode::periodic
                                           : destripe::StripeMode::nonperiodic;
      spec.period = deg_period;
      spec.band = deg_band;
      spec.density = deg_density;
      spec.amplitude = deg_amplitude;
      spec.profile = (deg_profile == "constant") ? destripe::StripeProfile::constant_column
                                                 : destripe::StripeProfile::smooth_column;
      spec.seed = deg_seed;
      const destripe::ImageMatrix stripes =
          destripe::generate_stripes(spec, clean.rows(), clean.cols());
      destripe::write_image(deg_output, destripe::degrade(clean, stripes));
      if (!deg_stripes_out.empty()) destripe::write_image(deg_stripes_out, stripes);
      return kExitOk;
    }

    if (cmd_evaluate->parsed()) {
      const destripe::ImageMatrix img = destripe::read_image(eval_input);
      destripe::ImageMatrix ref = destripe::read_image(eval_reference);
      if (eval_peak > 0.0) ref.set_intensity_range(eval_peak);
      const destripe::MetricReport rep = destripe::evaluate_metrics(img, ref);
      std::printf("mse,psnr,ssim\n%.12e,%.4f,%.6f\n", rep.mse, rep.psnr, rep.ssim);
      return kExitOk;
    }

    if (cmd_benchmark->parsed()) {
      bench_config.with_timing = !bench_no_timing;
      bench_config.tune = !bench_no_tune;
      bench_config.solver.admm.sigma = bench_config.solver.pmm.sigma;
      bench_config.solver.admm.tau = bench_config.solver.pmm.tau;
      if (!bench_l1_grid.empty()) bench_config.lambda1_grid = parse_grid(bench_l1_grid);
      if (!bench_l3_grid.empty()) bench_config.lambda3_grid = parse_grid(bench_l3_grid);
      const destripe::BenchReport report = destripe::run_benchmark(bench_config);
      const std::string table = destripe::format_table(report);
      if (bench_table.empty()) {
        std::fputs(table.c_str(), stdout);
      } else {
        std::ofstream out(bench_table, std::ios::binary);
        if (!out) throw destripe::IoError("cannot open for writing: " + bench_table);
        out << table;
      }
      if (!bench_csv.empty()) destripe::write_report_csv(bench_csv, report);
      if (report.any_failed) return kExitRuntime;
      if (bench_strict) {
        // Convex runs must have met the KKT tolerance; nonconvex runs may
        // legitimately end at the outer-iteration cap.
        for (const destripe::BenchRow& row : report.rows)
          if (row.has_solver_fields && !row.failed && row.method != "nonconvex" &&
              row.kkt >= bench_config.solver.admm.tol)
            return kExitNotConverged;
      }
      return kExitOk;
    }

    if (cmd_grid->parsed()) {
      const destripe::ImageMatrix f = destripe::read_image(grid_input);
      const destripe::ImageMatrix ref = destripe::read_image(grid_reference);
      const destripe::GridSearchResult result =
          destripe::grid_search(f, ref, parse_grid(grid_l1), parse_grid(grid_l3),
                                grid_opts.params, grid_opts.build(), grid_threads);
      if (!grid_csv.empty()) {
        std::ofstream out(grid_csv, std::ios::binary);
        if (!out) throw destripe::IoError("cannot open for writing: " + grid_csv);
        out << "lambda1,lambda3,psnr,ssim\n";
        char line[160];
        for (const destripe::GridPoint& p : result.scores) {
          std::snprintf(line, sizeof(line), "%.6g,%.6g,%.4f,%.6f\n", p.lambda1, p.lambda3, p.psnr,
                        p.ssim);
          out << line;
        }
      }
      std::printf("best lambda1=%.6g lambda2=%.6g lambda3=%.6g\n", result.best.lambda1,
                  result.best.lambda2, result.best.lambda3);
      return kExitOk;
    }

    if (cmd_trace->parsed()) {
      const destripe::ImageMatrix f = destripe::read_image(trace_input);
      std::ofstream file_out;
      std::ostream* out = &std::cout;
      if (!trace_output.empty()) {
        file_out.open(trace_output, std::ios::binary);
        if (!file_out) throw destripe::IoError("cannot open for writing: " + trace_output);
        out = &file_out;
      }
      *out << "iteration,R_p,R_d,R_c,stop_lhs,stop_rhs,objective\n";
      const destripe::TraceSink sink = [out](const destripe::TraceRow& row) {
        char line[256];
        std::snprintf(line, sizeof(line), "%zu,%.6e,%.6e,%.6e,%.6e,%.6e,%.12e\n", row.sweep,
                      row.primal, row.dual, row.comp, row.stop_lhs, row.stop_rhs, row.objective);
        *out << line;
      };
      const destripe::DestripeResult result = destripe::destripe(f, trace_opts.params,
                                                                 trace_opts.build(), sink);
      if (trace_opts.strict && !result.converged) return kExitNotConverged;
      return kExitOk;
    }
  } catch (const destripe::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}

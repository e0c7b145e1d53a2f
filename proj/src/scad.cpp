#include "destripe/scad.hpp"

#include <cmath>

#include "destripe/errors.hpp"

namespace destripe {

void ModelParams::validate() const {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !(lambda3 > 0.0))
    throw ConfigError("regularization weights must be positive");
  if (!(alpha > 2.0)) throw ConfigError("SCAD alpha must be > 2");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || !std::isfinite(lambda3) || !std::isfinite(alpha))
    throw ConfigError("model parameters must be finite");
}

double scad_value(double t, double alpha, double lambda) {
  if (!std::isfinite(t)) throw ConfigError("scad_value: non-finite argument");
  const double a = std::abs(t);
  if (a <= lambda) return 0.0;
  if (a <= alpha * lambda) {
    const double d = a - lambda;
    return d * d / (2.0 * (alpha - 1.0));
  }
  return lambda * a - 0.5 * (alpha + 1.0) * lambda * lambda;
}

double scad_gradient(double x, double alpha, double lambda) {
  const double a = std::abs(x);
  if (a <= lambda) return 0.0;
  const double sign = x > 0.0 ? 1.0 : -1.0;
  if (a <= alpha * lambda) return sign * (a - lambda) / (alpha - 1.0);
  return sign * lambda;
}

double scad_sum(const ImageMatrix& x, double alpha, double lambda) {
  double acc = 0.0;
  const double* p = x.data();
  for (std::size_t i = 0; i < x.size(); ++i) acc += scad_value(p[i], alpha, lambda);
  return acc;
}

double scad_sum(const std::vector<double>& x, double alpha, double lambda) {
  double acc = 0.0;
  for (double v : x) acc += scad_value(v, alpha, lambda);
  return acc;
}

ImageMatrix scad_gradient(const ImageMatrix& x, double alpha, double lambda) {
  ImageMatrix out(x.rows(), x.cols(), 0.0, x.intensity_range());
  const double* in = x.data();
  double* p = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = scad_gradient(in[i], alpha, lambda);
  return out;
}

std::vector<double> scad_gradient(const std::vector<double>& x, double alpha, double lambda) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scad_gradient(x[i], alpha, lambda);
  return out;
}

double vertical_tv(const ImageMatrix& a) {
  if (a.rows() < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += std::abs(a(i + 1, j) - a(i, j));
  return acc;
}

double horizontal_tv(const ImageMatrix& a) {
  if (a.cols() < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j + 1 < a.cols(); ++j) acc += std::abs(a(i, j + 1) - a(i, j));
  return acc;
}

double group_l21(const ImageMatrix& a) {
  double acc = 0.0;
  for (double cn : column_norms(a)) acc += cn;
  return acc;
}

LinearizationGradients linearization_gradients(const ImageMatrix& s_k, const ImageMatrix& f,
                                               const ModelParams& params) {
  require_same_shape(s_k, f, "linearization_gradients");
  params.validate();
  LinearizationGradients g;
  if (s_k.rows() >= 2) {
    g.grad_v = diff_y_adjoint(scad_gradient(diff_y(s_k), params.alpha, params.lambda1));
  } else {
    g.grad_v = ImageMatrix(s_k.rows(), s_k.cols());
  }
  if (s_k.cols() >= 2) {
    g.grad_h = diff_x_adjoint(scad_gradient(diff_x(f - s_k), params.alpha, params.lambda2));
  } else {
    g.grad_h = ImageMatrix(s_k.rows(), s_k.cols());
  }
  g.grad_col = scad_gradient(column_norms(s_k), params.alpha, params.lambda3);
  return g;
}

double objective_g(const ImageMatrix& s, const ImageMatrix& f, const ModelParams& params) {
  require_same_shape(s, f, "objective_g");
  const ImageMatrix u = f - s;
  double value = params.lambda1 * vertical_tv(s) + params.lambda2 * horizontal_tv(u) +
                 params.lambda3 * group_l21(s);
  if (s.rows() >= 2) value -= scad_sum(diff_y(s), params.alpha, params.lambda1);
  if (s.cols() >= 2) value -= scad_sum(diff_x(u), params.alpha, params.lambda2);
  value -= scad_sum(column_norms(s), params.alpha, params.lambda3);
  return value;
}

double convex_objective(const ImageMatrix& s, const ImageMatrix& f, const ModelParams& params) {
  require_same_shape(s, f, "convex_objective");
  return params.lambda1 * vertical_tv(s) + params.lambda2 * horizontal_tv(f - s) +
         params.lambda3 * group_l21(s);
}

}  // namespace destripe

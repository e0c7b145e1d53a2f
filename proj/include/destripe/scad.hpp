#pragma once

#include <vector>

#include "destripe/image.hpp"

namespace destripe {

/// Regularization weights of the three-term stripe model plus the SCAD shape
/// parameter. lambda1 weighs vertical differences of the stripe, lambda2
/// horizontal differences of the clean image, lambda3 the column-group norm.
/// The defaults suit unit-range images: lambda2 = 1 sets the scale, a large
/// lambda1 keeps scene structure out of the columnar stripe estimate (true
/// stripes pay nothing for it), and lambda3 ~ 1 prunes spurious columns.
struct ModelParams {
  double lambda1 = 20.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double alpha = 3.7;

  void validate() const;  // throws ConfigError
};

/*
 * SCAD is split as lambda|t| - q(t) with the concave part
 *
 *          { 0,                            |t| <= lambda,
 *   q(t) = { (|t|-lambda)^2 / (2(alpha-1)),  lambda <= |t| <= alpha*lambda,
 *          { lambda|t| - (alpha+1)lambda^2/2, |t| > alpha*lambda,
 *
 * so q is continuously differentiable with |q'(t)| <= lambda and vanishes
 * near zero. Requires alpha > 2 so that lambda|t| - q(t) stays convex.
 */
double scad_value(double t, double alpha, double lambda);
double scad_gradient(double x, double alpha, double lambda);

/// Elementwise q over a matrix, summed.
double scad_sum(const ImageMatrix& x, double alpha, double lambda);
double scad_sum(const std::vector<double>& x, double alpha, double lambda);

/// Elementwise q'.
ImageMatrix scad_gradient(const ImageMatrix& x, double alpha, double lambda);
std::vector<double> scad_gradient(const std::vector<double>& x, double alpha, double lambda);

/// Convex building blocks of the model (the lambda-weighted norms).
/// Matrices too small to form a difference contribute zero.
double vertical_tv(const ImageMatrix& a);    // sum |a(i+1,j) - a(i,j)|
double horizontal_tv(const ImageMatrix& a);  // sum |a(i,j+1) - a(i,j)|
double group_l21(const ImageMatrix& a);      // sum_j ||a(:,j)||

/// Gradients of the concave parts, frozen at an outer iterate:
///   grad_v   = diff_y_adjoint(q'(diff_y s_k))         w.r.t. the stripe,
///   grad_h   = diff_x_adjoint(q'(diff_x (f - s_k)))   w.r.t. the clean image,
///   grad_col = q'(column_norms(s_k))                  w.r.t. column norms.
struct LinearizationGradients {
  ImageMatrix grad_v;
  ImageMatrix grad_h;
  std::vector<double> grad_col;
};

LinearizationGradients linearization_gradients(const ImageMatrix& s_k, const ImageMatrix& f,
                                               const ModelParams& params);

/// Nonconvex objective: sum over the three terms of (lambda-weighted norm
/// minus its SCAD concave part), evaluated at stripe s for data f. Always >= 0.
double objective_g(const ImageMatrix& s, const ImageMatrix& f, const ModelParams& params);

/// Convex objective: lambda1*TV_y(s) + lambda2*TV_x(f-s) + lambda3*||s||_{2,1}.
double convex_objective(const ImageMatrix& s, const ImageMatrix& f, const ModelParams& params);

}  // namespace destripe

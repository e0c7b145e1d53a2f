#pragma once

#include <cstddef>
#include <vector>

#include "destripe/errors.hpp"

namespace destripe {

/// Dense m-by-n matrix of doubles in row-major order, carrying the declared
/// peak intensity of the image it represents (1.0 for unit-range data, 255.0
/// for 8-bit data). Used for images, stripe fields and solver variables alike.
class ImageMatrix {
 public:
  ImageMatrix() = default;
  ImageMatrix(std::size_t rows, std::size_t cols, double fill = 0.0, double intensity_range = 1.0);
  ImageMatrix(std::size_t rows, std::size_t cols, std::vector<double> data, double intensity_range = 1.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  double intensity_range() const { return intensity_range_; }
  void set_intensity_range(double peak);

  ImageMatrix& operator+=(const ImageMatrix& rhs);
  ImageMatrix& operator-=(const ImageMatrix& rhs);
  ImageMatrix& operator*=(double scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double intensity_range_ = 1.0;
  std::vector<double> data_;
};

ImageMatrix operator+(ImageMatrix lhs, const ImageMatrix& rhs);
ImageMatrix operator-(ImageMatrix lhs, const ImageMatrix& rhs);
ImageMatrix operator*(double scale, ImageMatrix rhs);

bool same_shape(const ImageMatrix& a, const ImageMatrix& b);
void require_same_shape(const ImageMatrix& a, const ImageMatrix& b, const char* context);

/// Frobenius inner product sum_ij a_ij b_ij.
double dot(const ImageMatrix& a, const ImageMatrix& b);
/// Frobenius norm.
double norm(const ImageMatrix& a);
double max_abs(const ImageMatrix& a);
bool all_finite(const ImageMatrix& a);

/// Vertical first-order differences: out(i,j) = s(i+1,j) - s(i,j), (m-1)-by-n.
/// Requires m >= 2.
ImageMatrix diff_y(const ImageMatrix& s);

/// Adjoint of diff_y: maps (m-1)-by-n back to m-by-n so that
/// <diff_y(x), g> == <x, diff_y_adjoint(g)> holds exactly.
ImageMatrix diff_y_adjoint(const ImageMatrix& g);

/// Horizontal first-order differences: out(i,j) = s(i,j+1) - s(i,j), m-by-(n-1).
/// Requires n >= 2.
ImageMatrix diff_x(const ImageMatrix& s);
ImageMatrix diff_x_adjoint(const ImageMatrix& g);

/// Euclidean norm of each column; entry i is ||v(:,i)||.
std::vector<double> column_norms(const ImageMatrix& v);

/// Quarter-turn rotations; rotate_ccw(rotate_cw(a)) == a. Used to map
/// horizontal stripes onto the vertical-stripe solver and back.
ImageMatrix rotate_cw(const ImageMatrix& a);
ImageMatrix rotate_ccw(const ImageMatrix& a);

}  // namespace destripe

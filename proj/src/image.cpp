#include "destripe/image.hpp"

#include <cmath>
#include <string>

namespace destripe {

ImageMatrix::ImageMatrix(std::size_t rows, std::size_t cols, double fill, double intensity_range)
    : rows_(rows), cols_(cols), intensity_range_(intensity_range), data_(rows * cols, fill) {
  if (intensity_range <= 0.0) throw ConfigError("intensity range must be positive");
}

ImageMatrix::ImageMatrix(std::size_t rows, std::size_t cols, std::vector<double> data, double intensity_range)
    : rows_(rows), cols_(cols), intensity_range_(intensity_range), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw DimensionError("ImageMatrix: data size " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  if (intensity_range <= 0.0) throw ConfigError("intensity range must be positive");
}

void ImageMatrix::set_intensity_range(double peak) {
  if (peak <= 0.0) throw ConfigError("intensity range must be positive");
  intensity_range_ = peak;
}

ImageMatrix& ImageMatrix::operator+=(const ImageMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ImageMatrix& ImageMatrix::operator-=(const ImageMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ImageMatrix& ImageMatrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

ImageMatrix operator+(ImageMatrix lhs, const ImageMatrix& rhs) { return lhs += rhs; }
ImageMatrix operator-(ImageMatrix lhs, const ImageMatrix& rhs) { return lhs -= rhs; }
ImageMatrix operator*(double scale, ImageMatrix rhs) { return rhs *= scale; }

bool same_shape(const ImageMatrix& a, const ImageMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

void require_same_shape(const ImageMatrix& a, const ImageMatrix& b, const char* context) {
  if (!same_shape(a, b))
    throw DimensionError(std::string(context) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

double dot(const ImageMatrix& a, const ImageMatrix& b) {
  require_same_shape(a, b, "dot");
  double acc = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0; i < a.size(); ++i) acc += pa[i] * pb[i];
  return acc;
}

double norm(const ImageMatrix& a) {
  double acc = 0.0;
  const double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) acc += p[i] * p[i];
  return std::sqrt(acc);
}

double max_abs(const ImageMatrix& a) {
  double m = 0.0;
  const double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

bool all_finite(const ImageMatrix& a) {
  const double* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(p[i])) return false;
  return true;
}

ImageMatrix diff_y(const ImageMatrix& s) {
  if (s.rows() < 2) throw DimensionError("diff_y requires at least 2 rows");
  ImageMatrix out(s.rows() - 1, s.cols(), 0.0, s.intensity_range());
  for (std::size_t i = 0; i + 1 < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) out(i, j) = s(i + 1, j) - s(i, j);
  return out;
}

ImageMatrix diff_y_adjoint(const ImageMatrix& g) {
  if (g.rows() < 1) throw DimensionError("diff_y_adjoint requires at least 1 row");
  const std::size_t m = g.rows() + 1;
  ImageMatrix out(m, g.cols(), 0.0, g.intensity_range());
  for (std::size_t j = 0; j < g.cols(); ++j) {
    out(0, j) = -g(0, j);
    for (std::size_t i = 1; i + 1 < m; ++i) out(i, j) = g(i - 1, j) - g(i, j);
    out(m - 1, j) = g(m - 2, j);
  }
  return out;
}

ImageMatrix diff_x(const ImageMatrix& s) {
  if (s.cols() < 2) throw DimensionError("diff_x requires at least 2 columns");
  ImageMatrix out(s.rows(), s.cols() - 1, 0.0, s.intensity_range());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j + 1 < s.cols(); ++j) out(i, j) = s(i, j + 1) - s(i, j);
  return out;
}

ImageMatrix diff_x_adjoint(const ImageMatrix& g) {
  if (g.cols() < 1) throw DimensionError("diff_x_adjoint requires at least 1 column");
  const std::size_t n = g.cols() + 1;
  ImageMatrix out(g.rows(), n, 0.0, g.intensity_range());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    out(i, 0) = -g(i, 0);
    for (std::size_t j = 1; j + 1 < n; ++j) out(i, j) = g(i, j - 1) - g(i, j);
    out(i, n - 1) = g(i, n - 2);
  }
  return out;
}

std::vector<double> column_norms(const ImageMatrix& v) {
  std::vector<double> out(v.cols(), 0.0);
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) out[j] += v(i, j) * v(i, j);
  for (double& x : out) x = std::sqrt(x);
  return out;
}

ImageMatrix rotate_cw(const ImageMatrix& a) {
  ImageMatrix out(a.cols(), a.rows(), 0.0, a.intensity_range());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, a.rows() - 1 - i) = a(i, j);
  return out;
}

ImageMatrix rotate_ccw(const ImageMatrix& a) {
  ImageMatrix out(a.cols(), a.rows(), 0.0, a.intensity_range());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(a.cols() - 1 - j, i) = a(i, j);
  return out;
}

}  // namespace destripe

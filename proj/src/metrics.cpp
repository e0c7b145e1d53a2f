#include "destripe/metrics.hpp"

#include <cmath>
#include <limits>

#include "destripe/errors.hpp"

namespace destripe {

double mse(const ImageMatrix& u, const ImageMatrix& v) {
  require_same_shape(u, v, "mse");
  const std::size_t sz = u.size();
  const double* pu = u.data();
  const double* pv = v.data();
  double acc = 0.0;
  for (std::size_t k = 0; k < sz; ++k) {
    const double d = pu[k] - pv[k];
    acc += d * d;
  }
  return acc / static_cast<double>(sz);
}

double psnr(const ImageMatrix& u, const ImageMatrix& v, double peak) {
  if (!(peak > 0.0)) throw ConfigError("psnr: peak must be positive");
  const double err = mse(u, v);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

double ssim(const ImageMatrix& u, const ImageMatrix& v, double peak, double k1, double k2) {
  require_same_shape(u, v, "ssim");
  if (!(peak > 0.0)) throw ConfigError("ssim: peak must be positive");
  const std::size_t sz = u.size();
  if (sz < 2) throw DimensionError("ssim: needs at least 2 samples for the 1/(mn-1) normalizer");

  const double* pu = u.data();
  const double* pv = v.data();
  double mean_u = 0.0, mean_v = 0.0;
  for (std::size_t k = 0; k < sz; ++k) {
    mean_u += pu[k];
    mean_v += pv[k];
  }
  mean_u /= static_cast<double>(sz);
  mean_v /= static_cast<double>(sz);

  double var_u = 0.0, var_v = 0.0, cov = 0.0;
  for (std::size_t k = 0; k < sz; ++k) {
    const double du = pu[k] - mean_u;
    const double dv = pv[k] - mean_v;
    var_u += du * du;
    var_v += dv * dv;
    cov += du * dv;
  }
  const double denom = static_cast<double>(sz - 1);
  var_u /= denom;
  var_v /= denom;
  cov /= denom;

  const double c1 = (k1 * peak) * (k1 * peak);
  const double c2 = (k2 * peak) * (k2 * peak);
  return ((2.0 * mean_u * mean_v + c1) * (2.0 * cov + c2)) /
         ((mean_u * mean_u + mean_v * mean_v + c1) * (var_u + var_v + c2));
}

MetricReport evaluate_metrics(const ImageMatrix& candidate, const ImageMatrix& reference) {
  MetricReport rep;
  rep.mse = mse(candidate, reference);
  rep.psnr = psnr(candidate, reference, reference.intensity_range());
  rep.ssim = ssim(candidate, reference, reference.intensity_range());
  return rep;
}

}  // namespace destripe

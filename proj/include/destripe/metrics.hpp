#pragma once

#include "destripe/image.hpp"

namespace destripe {

struct MetricReport {
  double mse = 0.0;
  double psnr = 0.0;   ///< dB; +infinity when mse == 0
  double ssim = 0.0;
};

/// Mean squared error (1/mn) sum (u_ij - v_ij)^2.
double mse(const ImageMatrix& u, const ImageMatrix& v);

/// 10 log10(peak^2 / mse); +infinity when the images coincide.
double psnr(const ImageMatrix& u, const ImageMatrix& v, double peak);

/*
 * GLOBAL structural similarity: one set of whole-image moments, not the
 * sliding-window average of common toolkits, so values differ from those.
 * Means and (co)variances use the sample 1/(mn-1) normalizer; stabilizers are
 * c1 = (k1 L)^2, c2 = (k2 L)^2 with L the declared peak. The variance and
 * covariance are accumulated directly (no square roots), which makes
 * ssim(u, u) exactly 1 for nonconstant u.
 */
double ssim(const ImageMatrix& u, const ImageMatrix& v, double peak, double k1 = 0.01,
            double k2 = 0.03);

/// Convenience: all three metrics against a reference, using the reference's
/// declared intensity range as the peak.
MetricReport evaluate_metrics(const ImageMatrix& candidate, const ImageMatrix& reference);

}  // namespace destripe

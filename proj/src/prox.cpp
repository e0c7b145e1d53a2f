#include "destripe/prox.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "destripe/errors.hpp"

namespace destripe {

/*
 * Forward scan with running bounds. We grow a candidate segment [seg, probe]
 * and track two affine minorants/majorants of the optimal value on it:
 *   lo_value / hi_value : candidate segment heights if the segment ends with a
 *                         downward / upward jump,
 *   lo_slack / hi_slack : accumulated slack in the corresponding dual
 *                         constraint (must stay within [-w, w]).
 * When a slack leaves its band the segment is committed up to the anchor of
 * the violated bound and the scan restarts just after it; at the right edge
 * the remaining segment is flushed at the averaged height.
 */
void tv1d_prox(const double* y, double* x, std::size_t n, double w) {
  if (w < 0.0) throw ConfigError("tv1d_prox: weight must be nonnegative");
  if (n == 0) return;
  if (n == 1 || w == 0.0) {
    if (x != y) std::memcpy(x, y, n * sizeof(double));
    return;
  }

  std::size_t probe = 0;      // rightmost index examined so far
  std::size_t seg = 0;        // first index not yet committed to the output
  std::size_t lo_anchor = 0;  // last index where lo_slack touched +w
  std::size_t hi_anchor = 0;  // last index where hi_slack touched -w
  double lo_value = y[0] - w;
  double hi_value = y[0] + w;
  double lo_slack = w;
  double hi_slack = -w;

  for (;;) {
    while (probe == n - 1) {
      if (lo_slack < 0.0) {
        // Lower bound violated: commit the segment at lo_value and restart.
        do x[seg++] = lo_value; while (seg <= lo_anchor);
        probe = lo_anchor = seg;
        lo_value = y[probe];
        lo_slack = w;
        hi_slack = lo_value + w - hi_value;
      } else if (hi_slack > 0.0) {
        do x[seg++] = hi_value; while (seg <= hi_anchor);
        probe = hi_anchor = seg;
        hi_value = y[probe];
        hi_slack = -w;
        lo_slack = hi_value - w - lo_value;
      } else {
        // Both slacks in band: flush the final segment at its mean height.
        lo_value += lo_slack / static_cast<double>(probe - seg + 1);
        do x[seg++] = lo_value; while (seg <= probe);
        return;
      }
    }
    lo_slack += y[probe + 1] - lo_value;
    if (lo_slack < -w) {
      // Downward jump confirmed at lo_anchor: commit and restart after it.
      do x[seg++] = lo_value; while (seg <= lo_anchor);
      probe = lo_anchor = hi_anchor = seg;
      lo_value = y[probe];
      hi_value = lo_value + 2.0 * w;
      lo_slack = w;
      hi_slack = -w;
    } else {
      hi_slack += y[probe + 1] - hi_value;
      if (hi_slack > w) {
        do x[seg++] = hi_value; while (seg <= hi_anchor);
        probe = lo_anchor = hi_anchor = seg;
        hi_value = y[probe];
        lo_value = hi_value - 2.0 * w;
        lo_slack = w;
        hi_slack = -w;
      } else {
        // Segment extends; re-center whichever bound saturated.
        ++probe;
        if (lo_slack >= w) {
          lo_anchor = probe;
          lo_value += (lo_slack - w) / static_cast<double>(probe - seg + 1);
          lo_slack = w;
        }
        if (hi_slack <= -w) {
          hi_anchor = probe;
          hi_value += (hi_slack + w) / static_cast<double>(probe - seg + 1);
          hi_slack = -w;
        }
      }
    }
  }
}

std::vector<double> tv1d_prox(const std::vector<double>& y, double w) {
  std::vector<double> x(y.size());
  tv1d_prox(y.data(), x.data(), y.size(), w);
  return x;
}

ImageMatrix prox_p1(const ImageMatrix& s, double weight) {
  if (weight < 0.0) throw ConfigError("prox_p1: weight must be nonnegative");
  const std::size_t m = s.rows(), n = s.cols();
  ImageMatrix out(m, n, 0.0, s.intensity_range());
  std::vector<double> col(m), res(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) col[i] = s(i, j);
    tv1d_prox(col.data(), res.data(), m, weight);
    for (std::size_t i = 0; i < m; ++i) out(i, j) = res[i];
  }
  return out;
}

ImageMatrix prox_p2(const ImageMatrix& u, double weight) {
  if (weight < 0.0) throw ConfigError("prox_p2: weight must be nonnegative");
  const std::size_t m = u.rows(), n = u.cols();
  ImageMatrix out(m, n, 0.0, u.intensity_range());
  std::vector<double> res(n);
  for (std::size_t i = 0; i < m; ++i) {
    tv1d_prox(u.data() + i * n, res.data(), n, weight);
    for (std::size_t j = 0; j < n; ++j) out(i, j) = res[j];
  }
  return out;
}

ImageMatrix prox_p1_hat(const ImageMatrix& s, double sigma, double sigma_tilde,
                        const ImageMatrix& s_k, double lambda1) {
  if (!(sigma > 0.0)) throw ConfigError("prox_p1_hat: sigma must be positive");
  if (!(sigma_tilde > 0.0)) throw ConfigError("prox_p1_hat: sigma_tilde must be positive");
  if (lambda1 < 0.0) throw ConfigError("prox_p1_hat: lambda1 must be nonnegative");
  if (std::isinf(sigma_tilde)) {
    return prox_p1(s, sigma * lambda1);
  }
  require_same_shape(s, s_k, "prox_p1_hat");
  const double sigma_hat = sigma * sigma_tilde / (sigma + sigma_tilde);
  ImageMatrix s_hat = (1.0 / sigma) * s;
  s_hat += (1.0 / sigma_tilde) * s_k;
  s_hat *= sigma_hat;
  s_hat.set_intensity_range(s.intensity_range());
  return prox_p1(s_hat, sigma_hat * lambda1);
}

ImageMatrix prox_p3_hat(const ImageMatrix& s, double sigma, double lambda3,
                        const std::vector<double>& grad_col) {
  if (!(sigma > 0.0)) throw ConfigError("prox_p3_hat: sigma must be positive");
  if (lambda3 < 0.0) throw ConfigError("prox_p3_hat: lambda3 must be nonnegative");
  if (grad_col.size() != s.cols())
    throw DimensionError("prox_p3_hat: grad_col length must equal column count");
  const std::size_t m = s.rows(), n = s.cols();
  ImageMatrix out(m, n, 0.0, s.intensity_range());
  for (std::size_t j = 0; j < n; ++j) {
    if (grad_col[j] > lambda3)
      throw ContractViolation("prox_p3_hat: linearization gradient exceeds lambda3");
    const double w = sigma * (lambda3 - grad_col[j]);
    double nrm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) nrm2 += s(i, j) * s(i, j);
    const double nrm = std::sqrt(nrm2);
    const double scale = (nrm > w) ? (1.0 - w / nrm) : 0.0;
    if (scale > 0.0)
      for (std::size_t i = 0; i < m; ++i) out(i, j) = scale * s(i, j);
  }
  return out;
}

}  // namespace destripe

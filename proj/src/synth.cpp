#include "destripe/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "destripe/errors.hpp"

namespace destripe {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
/// mt19937_64's output sequence is pinned by the standard, and this mapping
/// avoids std::uniform_real_distribution, whose results vary across library
/// implementations — so streams are reproducible everywhere.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random stripe level: sign uniform, magnitude uniform in [A/2, A].
/// Detector-gain stripes have a minimum visible offset, so magnitudes are
/// bounded away from zero rather than drawn from a zero-mean blob.
double next_stripe_level(std::mt19937_64& rng, double amplitude) {
  const double magnitude = amplitude * (0.5 + 0.5 * next_unit(rng));
  const double sign = (rng() & 1u) ? 1.0 : -1.0;
  return sign * magnitude;
}

}  // namespace

void StripeSpec::validate() const {
  if (mode == StripeMode::periodic && period < 2)
    throw ConfigError("StripeSpec: period must be at least 2");
  if (mode == StripeMode::periodic && (band < 1 || band >= period))
    throw ConfigError("StripeSpec: band must lie in [1, period)");
  if (mode == StripeMode::nonperiodic && !(density > 0.0 && density <= 1.0))
    throw ConfigError("StripeSpec: density must lie in (0, 1]");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw ConfigError("StripeSpec: amplitude must be finite and nonnegative");
}

std::vector<std::size_t> striped_columns(const StripeSpec& spec, std::size_t n) {
  spec.validate();
  std::vector<std::size_t> cols;
  if (spec.mode == StripeMode::periodic) {
    for (std::size_t j = 0; j < n; ++j)
      if (j % spec.period < spec.band) cols.push_back(j);
    return cols;
  }
  const std::size_t count =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(spec.density * static_cast<double>(n))));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  // Partial Fisher-Yates driven by raw engine outputs (see next_unit note).
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(pool[i], pool[j]);
  }
  cols.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(cols.begin(), cols.end());
  return cols;
}

ImageMatrix generate_stripes(const StripeSpec& spec, std::size_t m, std::size_t n) {
  const std::vector<std::size_t> cols = striped_columns(spec, n);
  // Column selection consumed engine outputs in nonperiodic mode; intensities
  // use a decorrelated stream so the two stages stay independently seeded.
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
  ImageMatrix s(m, n);
  for (std::size_t j : cols) {
    const double c = next_stripe_level(rng, spec.amplitude);
    if (spec.profile == StripeProfile::constant_column) {
      for (std::size_t i = 0; i < m; ++i) s(i, j) = c;
    } else {
      const double phase = kTwoPi * next_unit(rng);
      for (std::size_t i = 0; i < m; ++i) {
        const double t = (m > 1) ? static_cast<double>(i) / static_cast<double>(m - 1) : 0.0;
        s(i, j) = c * (0.7 + 0.3 * std::sin(kTwoPi * t + phase));
      }
    }
  }
  return s;
}

ImageMatrix degrade(const ImageMatrix& u, const ImageMatrix& s) {
  require_same_shape(u, s, "degrade");
  ImageMatrix f = u + s;
  f.set_intensity_range(u.intensity_range());
  return f;
}

ImageMatrix synthetic_scene(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DimensionError("synthetic_scene: empty shape");
  ImageMatrix u(m, n, 0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double ti = (m > 1) ? static_cast<double>(i) / static_cast<double>(m - 1) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double tj = (n > 1) ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
      double value = 0.5 + 0.22 * std::sin(kTwoPi * 1.3 * ti + 0.7) * std::cos(kTwoPi * 0.9 * tj) +
                     0.18 * std::cos(kTwoPi * 0.6 * ti - 1.1) * std::sin(kTwoPi * 1.7 * tj + 0.4) +
                     0.05 * (ti - tj);
      u(i, j) = std::clamp(value, 0.0, 1.0);
    }
  }
  return u;
}

}  // namespace destripe

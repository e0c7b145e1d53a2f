#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "destripe/image.hpp"

namespace destripe {

enum class StripeMode { periodic, nonperiodic };
enum class StripeProfile { constant_column, smooth_column };

/*
 * Parameters of the synthetic columnar stripe field. Periodic mode stripes a
 * band of `band` adjacent columns at the start of every `period`-column block
 * (band = 1 reproduces the classic every-period-th-column pattern; wider
 * bands model detector blocks that share readout electronics). Nonperiodic
 * mode stripes a seeded random subset of ceil(density * n) columns.
 *
 * Each striped column carries its own level c_j with a random sign and a
 * magnitude uniform in [amplitude/2, amplitude] — gain stripes have a minimum
 * visible offset, so magnitudes are bounded away from zero. Non-striped
 * columns are exactly zero, making the field column-group sparse. The
 * constant-column profile keeps c_j constant down the column (invisible to
 * vertical differences); the smooth-column profile modulates it with one
 * low-frequency sine cycle.
 */
struct StripeSpec {
  StripeMode mode = StripeMode::periodic;
  std::size_t period = 4;    ///< periodic mode; must be >= 2
  std::size_t band = 1;      ///< periodic mode; adjacent striped columns per block, in [1, period)
  double density = 0.3;      ///< nonperiodic mode; fraction in (0, 1]
  double amplitude = 0.2;
  StripeProfile profile = StripeProfile::constant_column;
  std::uint64_t seed = 0;

  void validate() const;
};

/// The deterministic set of striped column indices (sorted ascending).
std::vector<std::size_t> striped_columns(const StripeSpec& spec, std::size_t n);

/// Draw the stripe field. Same spec and shape always give the same matrix,
/// independent of platform (the generator never uses library distributions).
ImageMatrix generate_stripes(const StripeSpec& spec, std::size_t m, std::size_t n);

/// Additive degradation f = u + s.
ImageMatrix degrade(const ImageMatrix& u, const ImageMatrix& s);

/// Deterministic smooth unit-range test scene: a fixed mixture of
/// low-frequency sinusoids plus a gentle diagonal ramp, values in (0, 1).
ImageMatrix synthetic_scene(std::size_t m, std::size_t n);

}  // namespace destripe

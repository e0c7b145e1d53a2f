#include <doctest.h>

#include <cmath>
#include <random>

#include "destripe/errors.hpp"
#include "destripe/image.hpp"

using namespace destripe;

TEST_SUITE("image") {
  TEST_CASE("construction and indexing are row-major") {
    ImageMatrix a(2, 3, 0.0);
    CHECK_EQ(a.rows(), 2);
    CHECK_EQ(a.cols(), 3);
    CHECK_EQ(a.size(), 6);
    a(1, 2) = 5.0;
    CHECK_EQ(a.data()[1 * 3 + 2], 5.0);
    CHECK_EQ(a.values()[5], 5.0);

    ImageMatrix b(2, 2, {1.0, 2.0, 3.0, 4.0});
    CHECK_EQ(b(0, 1), 2.0);
    CHECK_EQ(b(1, 0), 3.0);
  }

  TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(ImageMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionError);
    CHECK_THROWS_AS(ImageMatrix(2, 2, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(ImageMatrix(2, 2, 0.0, -1.0), ConfigError);
    ImageMatrix a(1, 1);
    CHECK_THROWS_AS(a.set_intensity_range(0.0), ConfigError);
    a.set_intensity_range(255.0);
    CHECK_EQ(a.intensity_range(), 255.0);
  }

  TEST_CASE("arithmetic operators") {
    ImageMatrix a(2, 2, {1.0, 2.0, 3.0, 4.0});
    ImageMatrix b(2, 2, {4.0, 3.0, 2.0, 1.0});
    ImageMatrix sum = a + b;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK_EQ(sum(i, j), 5.0);
    ImageMatrix diff = a - b;
    CHECK_EQ(diff(0, 0), -3.0);
    CHECK_EQ(diff(1, 1), 3.0);
    ImageMatrix scaled = 2.0 * a;
    CHECK_EQ(scaled(1, 0), 6.0);
    ImageMatrix c(1, 2);
    CHECK_THROWS_AS(a += c, DimensionError);
    CHECK_THROWS_AS(a -= c, DimensionError);
  }

  TEST_CASE("reductions") {
    ImageMatrix a(2, 2, {3.0, -4.0, 0.0, 0.0});
    ImageMatrix b(2, 2, {1.0, 1.0, 2.0, 0.0});
    CHECK_EQ(dot(a, b), -1.0);
    CHECK_EQ(norm(a), 5.0);
    CHECK_EQ(max_abs(a), 4.0);
    CHECK(all_finite(a));
    a(0, 0) = std::nan("");
    CHECK_FALSE(all_finite(a));
    ImageMatrix c(1, 2);
    CHECK_THROWS_AS(dot(a, c), DimensionError);
  }

  TEST_CASE("vertical difference and known values") {
    ImageMatrix s(3, 2, {1.0, 10.0, 4.0, 20.0, 9.0, 40.0});
    ImageMatrix d = diff_y(s);
    REQUIRE_EQ(d.rows(), 2);
    REQUIRE_EQ(d.cols(), 2);
    CHECK_EQ(d(0, 0), 3.0);
    CHECK_EQ(d(1, 0), 5.0);
    CHECK_EQ(d(0, 1), 10.0);
    CHECK_EQ(d(1, 1), 20.0);
    CHECK_THROWS_AS(diff_y(ImageMatrix(1, 4)), DimensionError);
  }

  TEST_CASE("horizontal difference and known values") {
    ImageMatrix s(2, 3, {1.0, 4.0, 9.0, 10.0, 20.0, 40.0});
    ImageMatrix d = diff_x(s);
    REQUIRE_EQ(d.rows(), 2);
    REQUIRE_EQ(d.cols(), 2);
    CHECK_EQ(d(0, 0), 3.0);
    CHECK_EQ(d(0, 1), 5.0);
    CHECK_EQ(d(1, 0), 10.0);
    CHECK_EQ(d(1, 1), 20.0);
    CHECK_THROWS_AS(diff_x(ImageMatrix(4, 1)), DimensionError);
  }

  TEST_CASE("adjoint identities on assorted shapes") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::pair<std::size_t, std::size_t> shapes[] = {{2, 2}, {2, 7}, {7, 2}, {5, 5}, {13, 3}};
    for (const auto& [m, n] : shapes) {
      ImageMatrix x(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = unit(rng);

      ImageMatrix gy(m - 1, n);
      for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = 0; j < n; ++j) gy(i, j) = unit(rng);
      const double lhs_y = dot(diff_y(x), gy);
      const double rhs_y = dot(x, diff_y_adjoint(gy));
      CHECK(std::abs(lhs_y - rhs_y) <= 1e-12 * (1.0 + std::abs(lhs_y)));

      ImageMatrix gx(m, n - 1);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) gx(i, j) = unit(rng);
      const double lhs_x = dot(diff_x(x), gx);
      const double rhs_x = dot(x, diff_x_adjoint(gx));
      CHECK(std::abs(lhs_x - rhs_x) <= 1e-12 * (1.0 + std::abs(lhs_x)));
    }
  }

  TEST_CASE("column norms") {
    ImageMatrix a(2, 3, {3.0, 0.0, 1.0, 4.0, 0.0, 1.0});
    const std::vector<double> norms = column_norms(a);
    REQUIRE_EQ(norms.size(), 3);
    CHECK_EQ(norms[0], 5.0);
    CHECK_EQ(norms[1], 0.0);
    CHECK_EQ(norms[2], doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }

  TEST_CASE("quarter-turn rotations invert each other") {
    ImageMatrix a(2, 3, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    ImageMatrix cw = rotate_cw(a);
    REQUIRE_EQ(cw.rows(), 3);
    REQUIRE_EQ(cw.cols(), 2);
    // (0,0) of the rotated image is the bottom-left of the original.
    CHECK_EQ(cw(0, 0), 4.0);
    CHECK_EQ(cw(0, 1), 1.0);
    CHECK_EQ(cw(2, 1), 3.0);
    ImageMatrix back = rotate_ccw(cw);
    REQUIRE(same_shape(back, a));
    CHECK_EQ(max_abs(back - a), 0.0);
  }

  TEST_CASE("shape guards carry context") {
    ImageMatrix a(2, 2), b(3, 2);
    CHECK_FALSE(same_shape(a, b));
    try {
      require_same_shape(a, b, "unit-test");
      FAIL("expected DimensionError");
    } catch (const DimensionError& e) {
      CHECK(std::string(e.what()).find("unit-test") != std::string::npos);
    }
  }
}

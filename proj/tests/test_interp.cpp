#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "maskresize/interp.hpp"
#include "maskresize/rng.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace maskresize;
using interp::ResizeSpec;

namespace {

double max_abs_diff(const Image& a, const Image& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) {
    worst = std::max(worst, std::abs(a.pixels()[i] - b.pixels()[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("map_coord fixed points") {
  // Upsample 2 -> 4 lands a quarter pixel outside on both ends.
  CHECK(interp::map_coord(0, 2, 4) == -0.25);
  CHECK(interp::map_coord(1, 2, 4) == 0.25);
  CHECK(interp::map_coord(3, 2, 4) == 1.25);
  // Downsample 4 -> 2 samples at the shared cell borders.
  CHECK(interp::map_coord(0, 4, 2) == 0.5);
  CHECK(interp::map_coord(1, 4, 2) == 2.5);
  // Same-extent mapping is the identity, exactly.
  for (int n : {1, 2, 5, 128}) {
    for (int i = 0; i < n; ++i) CHECK(interp::map_coord(i, n, n) == double(i));
  }
}

TEST_CASE("cubic kernel values") {
  CHECK(interp::cubic_weight(0.0) == 1.0);
  CHECK(interp::cubic_weight(1.0) == 0.0);
  CHECK(interp::cubic_weight(-1.0) == 0.0);
  CHECK(interp::cubic_weight(2.0) == 0.0);
  CHECK(interp::cubic_weight(2.5) == 0.0);
  CHECK(interp::cubic_weight(0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(interp::cubic_weight(1.5) == doctest::Approx(-0.0625).epsilon(1e-15));

  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform_real(-2.5, 2.5);
    CHECK(interp::cubic_weight(t) == interp::cubic_weight(-t));
  }
}

TEST_CASE("cubic kernel partition of unity") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double f = rng.next_unit();
    double sum = 0.0;
    for (int k = -1; k <= 2; ++k) sum += interp::cubic_weight(f - k);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("nearest neighbor equals pixel replication at integer factors") {
  Rng rng(23);
  for (int round = 0; round < 100; ++round) {
    const Image src = generators::random_image(rng, {8, 8});
    for (int factor : {2, 3, 4}) {
      const ResizeSpec spec{{8 * factor, 8 * factor}};
      CHECK(interp::resize_nn(src, spec) == oracles::replicate(src, factor));
    }
  }
}

TEST_CASE("nearest neighbor ties round half up") {
  // Downsample 4 -> 2 maps output x to source 0.5 and 2.5: exactly between
  // two samples, so the tie rule decides which survives.
  const Image src({4, 1}, {10.0, 20.0, 30.0, 40.0});
  const Image out = interp::resize_nn(src, ResizeSpec{{2, 1}});
  CHECK(out.at(0, 0) == 20.0);
  CHECK(out.at(1, 0) == 40.0);
}

TEST_CASE("identity resizes reproduce the input") {
  Rng rng(31);
  for (Size size : {Size{7, 5}, Size{16, 16}, Size{1, 9}}) {
    const Image src = generators::random_image(rng, size);
    const ResizeSpec spec{size};
    CHECK(interp::resize_nn(src, spec) == src);
    CHECK(max_abs_diff(interp::resize_bilinear(src, spec), src) <= 1e-9);
    CHECK(max_abs_diff(interp::resize_bicubic(src, spec), src) <= 1e-9);
  }
}

TEST_CASE("bilinear doubles a two-sample row into the known blend") {
  const Image src({2, 1}, {0.0, 100.0});
  const Image out = interp::resize_bilinear(src, ResizeSpec{{4, 1}});
  REQUIRE(out.size() == Size{4, 1});
  CHECK(out.at(0, 0) == 0.0);
  CHECK(out.at(1, 0) == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(out.at(2, 0) == doctest::Approx(75.0).epsilon(1e-12));
  CHECK(out.at(3, 0) == 100.0);
}

TEST_CASE("bicubic overshoot exists and the clamp contains it") {
  const Image step({4, 1}, {0.0, 0.0, 255.0, 255.0});

  ResizeSpec raw{{8, 1}};
  raw.clamp_output = false;
  const Image unclamped = interp::resize_bicubic(step, raw);
  const auto [lo_it, hi_it] =
      std::minmax_element(unclamped.pixels().begin(), unclamped.pixels().end());
  CHECK(*lo_it < 0.0);
  CHECK(*hi_it > 255.0);

  const Image clamped = interp::resize_bicubic(step, ResizeSpec{{8, 1}});
  for (double v : clamped.pixels()) {
    CHECK(v >= 0.0);
    CHECK(v <= 255.0);
  }
}

TEST_CASE("clamp respects the input's own range") {
  // Values only span [10, 200]; overshoot must not escape that interval
  // either, even though value_range allows [0, 255].
  const Image step({4, 1}, {10.0, 10.0, 200.0, 200.0});
  const Image out = interp::resize_bicubic(step, ResizeSpec{{12, 1}});
  for (double v : out.pixels()) {
    CHECK(v >= 10.0);
    CHECK(v <= 200.0);
  }
}

TEST_CASE("resize target must be valid") {
  const Image src({4, 4}, 0.0);
  CHECK_THROWS_AS(interp::resize_nn(src, ResizeSpec{{0, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(interp::resize_bilinear(src, ResizeSpec{{4, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(interp::resize_bicubic(src, ResizeSpec{{0, 0}}), std::invalid_argument);
}

TEST_CASE("separable kernels reduce to constant fields") {
  // A constant image is a fixed point of any interpolating kernel, at any
  // scale, because the weights sum to one.
  const Image flat({5, 4}, 42.0);
  for (Size target : {Size{13, 9}, Size{3, 2}, Size{20, 1}}) {
    const ResizeSpec spec{target};
    CHECK(max_abs_diff(interp::resize_bilinear(flat, spec), Image(target, 42.0)) <= 1e-12);
    CHECK(max_abs_diff(interp::resize_bicubic(flat, spec), Image(target, 42.0)) <= 1e-12);
  }
}

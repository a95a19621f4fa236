#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "oracles.hpp"
#include "snrlab/common.hpp"
#include "snrlab/scene.hpp"

using namespace snrlab;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("snrlab_test_" + name);
}

}  // namespace

TEST_CASE("random_uniform_scene conservation") {
  RandomStream s(1);
  const SceneVector zero = random_uniform_scene(TransformSize(4), 0, s);
  CHECK(std::vector<double>(zero.pixels().begin(), zero.pixels().end()) == std::vector<double>{0, 0, 0, 0});

  const SceneVector two = random_uniform_scene(TransformSize(2), 7, s);
  CHECK(two.pixels()[0] + two.pixels()[1] == 7.0);
  CHECK(two.brightness() == 7.0);

  CHECK_THROWS_AS(random_uniform_scene(TransformSize(4), -1, s), DomainError);
}

TEST_CASE("random_uniform_scene multinomial spread") {
  RandomStream s(2);
  const std::size_t n = 1024;
  const std::int64_t x0 = 10000000;
  const SceneVector scene = random_uniform_scene(TransformSize(n), x0, s);
  CHECK(scene.brightness() == static_cast<double>(x0));
  const std::vector<double> px(scene.pixels().begin(), scene.pixels().end());
  CHECK(oracle::mean(px) == static_cast<double>(x0) / n);
  const double p = 1.0 / n;
  const double binomial_var = static_cast<double>(x0) * p * (1.0 - p);
  CHECK(std::abs(oracle::variance(px) - binomial_var) <= 0.1 * binomial_var);
  for (double v : px) {
    CHECK(v >= 0.0);
    CHECK(v == std::floor(v));
  }
}

TEST_CASE("random_uniform_scene is deterministic per stream") {
  RandomStream a(SeedSpec{5, StreamLabel::scene, 64, 9});
  RandomStream b(SeedSpec{5, StreamLabel::scene, 64, 9});
  const SceneVector sa = random_uniform_scene(TransformSize(64), 100000, a);
  const SceneVector sb = random_uniform_scene(TransformSize(64), 100000, b);
  CHECK(std::equal(sa.pixels().begin(), sa.pixels().end(), sb.pixels().begin()));
}

TEST_CASE("flat_scene") {
  const SceneVector a = flat_scene(TransformSize(4), 8);
  CHECK(std::vector<double>(a.pixels().begin(), a.pixels().end()) == std::vector<double>{2, 2, 2, 2});
  const SceneVector b = flat_scene(TransformSize(2), 1);
  CHECK(std::vector<double>(b.pixels().begin(), b.pixels().end()) == std::vector<double>{0.5, 0.5});
  CHECK(flat_scene(TransformSize(1024), 1e7).brightness() == 1e7);
  CHECK_THROWS_AS(flat_scene(TransformSize(4), -2), DomainError);
}

TEST_CASE("SceneVector rejects negative pixels") {
  CHECK_THROWS_AS(SceneVector({1.0, -0.5}), DomainError);
  CHECK(SceneVector({1.0, 2.0}).scaled(3.0).brightness() == 9.0);
}

TEST_CASE("grid shape") {
  CHECK(grid_shape(TransformSize(2)).width == 2);
  CHECK(grid_shape(TransformSize(2)).height == 1);
  CHECK(grid_shape(TransformSize(16)).width == 4);
  CHECK(grid_shape(TransformSize(16)).height == 4);
  CHECK(grid_shape(TransformSize(32)).width == 8);
  CHECK(grid_shape(TransformSize(32)).height == 4);
}

TEST_CASE("scene_from_image examples") {
  const auto gray = temp_file("gray.pgm");
  write_pgm(gray, GrayImage{16, 16, std::vector<double>(256, 128.0)});
  const SceneVector flat = scene_from_image(gray, TransformSize(16), 16);
  for (double v : flat.pixels()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const auto small = temp_file("small.pgm");
  write_pgm(small, GrayImage{2, 2, {1, 1, 2, 4}});
  const SceneVector s = scene_from_image(small, TransformSize(4), 8);
  CHECK(std::vector<double>(s.pixels().begin(), s.pixels().end()) == std::vector<double>{1, 1, 2, 4});

  // 16-bit raster, non-integer downsampling ratio
  const auto wide = temp_file("wide16.pgm");
  GrayImage img{7, 5, {}};
  for (std::size_t i = 0; i < 35; ++i) img.pixels.push_back(static_cast<double>(i * 1000 % 60000));
  write_pgm(wide, img, 65535);
  const GrayImage back = read_pgm(wide);
  CHECK(back.pixels == img.pixels);
  const SceneVector w = scene_from_image(wide, TransformSize(8), 12345.0);
  CHECK(w.brightness() == doctest::Approx(12345.0).epsilon(1e-6));

  std::filesystem::remove(gray);
  std::filesystem::remove(small);
  std::filesystem::remove(wide);
}

TEST_CASE("area downsampling preserves mean intensity") {
  GrayImage img{6, 3, {}};
  for (int i = 0; i < 18; ++i) img.pixels.push_back(i);
  const auto out = downsample_area(img, GridShape{4, 2});
  const double in_mean = std::accumulate(img.pixels.begin(), img.pixels.end(), 0.0) / 18.0;
  CHECK(std::accumulate(out.begin(), out.end(), 0.0) / 8.0 == doctest::Approx(in_mean).epsilon(1e-12));
  // exact 2x2 block averaging when the ratio is integral
  GrayImage img4{4, 2, {1, 3, 5, 7, 1, 3, 5, 7}};
  CHECK(downsample_area(img4, GridShape{2, 1}) == std::vector<double>{2, 6});
}

TEST_CASE("scene_from_image errors") {
  CHECK_THROWS_AS(scene_from_image(temp_file("does_not_exist.pgm"), TransformSize(4), 1), IoError);

  const auto black = temp_file("black.pgm");
  write_pgm(black, GrayImage{4, 4, std::vector<double>(16, 0.0)});
  CHECK_THROWS_AS(scene_from_image(black, TransformSize(16), 10), DegenerateSceneError);
  CHECK(scene_from_image(black, TransformSize(16), 0).brightness() == 0.0);
  CHECK_THROWS_AS(scene_from_image(black, TransformSize(64), 10), SizeError);

  const auto text = temp_file("ascii.pgm");
  std::ofstream(text) << "P2\n2 2\n255\n1 2 3 4\n";
  CHECK_THROWS_AS(read_pgm(text), IoError);

  const auto truncated = temp_file("trunc.pgm");
  std::ofstream(truncated, std::ios::binary) << "P5\n4 4\n255\nabc";
  CHECK_THROWS_AS(read_pgm(truncated), IoError);

  std::filesystem::remove(black);
  std::filesystem::remove(text);
  std::filesystem::remove(truncated);
}

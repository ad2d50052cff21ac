#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "synthetic.hpp"
#include "tiredge/denoise.hpp"
#include "tiredge/errors.hpp"

using namespace tiredge;

namespace {

double mean_of(const FloatFrame& f) {
  double s = 0;
  for (auto v : f.data) s += v;
  return s / static_cast<double>(f.data.size());
}

double variance_of(const FloatFrame& f) {
  double m = mean_of(f), s = 0;
  for (auto v : f.data) s += (v - m) * (v - m);
  return s / static_cast<double>(f.data.size());
}

}  // namespace

TEST_CASE("the fixed 5x5 kernel matches its published weights exactly") {
  const double w[5][5] = {{2, 4, 5, 4, 2},
                          {4, 9, 12, 9, 4},
                          {5, 12, 15, 12, 5},
                          {4, 9, 12, 9, 4},
                          {2, 4, 5, 4, 2}};
  Kernel k = gaussian_kernel_paper5();
  REQUIRE(k.size == 5);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) CHECK(k.at(i, j) == w[j][i] / 159.0);
}

TEST_CASE("size-one kernel is the identity weight") {
  Kernel k = gaussian_kernel(1, 1.0);
  REQUIRE(k.size == 1);
  CHECK(k.weights[0] == 1.0);
}

TEST_CASE("sampled kernels are normalized and centrally peaked") {
  for (int size : {3, 5, 7, 9}) {
    Kernel k = gaussian_kernel(size, 1.4);
    double sum = 0;
    for (auto v : k.weights) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(k.at(size / 2, size / 2) > k.at(0, 0));
  }
}

TEST_CASE("even kernel sizes and bad sigmas are rejected") {
  CHECK_THROWS_AS(gaussian_kernel(4, 1.0), ConfigError);
  CHECK_THROWS_AS(gaussian_kernel(0, 1.0), ConfigError);
  CHECK_THROWS_AS(gaussian_kernel(3, 0.0), ConfigError);
}

TEST_CASE("normalized kernels leave constant frames untouched") {
  auto f = synth::constant_frame(8, 6, 42.5);
  auto out = convolve(f, gaussian_kernel_paper5());
  for (auto v : out.data) CHECK(v == doctest::Approx(42.5).epsilon(1e-12));
}

TEST_CASE("the 1x1 identity kernel is a no-op") {
  synth::Rng rng(11);
  FloatFrame f(7, 5);
  for (auto& v : f.data) v = rng.uniform(0, 255);
  Kernel k;
  k.size = 1;
  k.weights = {1.0};
  CHECK(convolve(f, k).data == f.data);
}

TEST_CASE("a unit impulse spreads into the box kernel footprint") {
  FloatFrame f(7, 7, 0.0);
  f.at(3, 3) = 1.0;
  Kernel box;
  box.size = 3;
  box.weights.assign(9, 1.0 / 9.0);
  auto out = convolve(f, box);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 7; ++x) {
      double want = (std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1) ? 1.0 / 9.0 : 0.0;
      CHECK(out.at(x, y) == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("oversized kernels are rejected") {
  FloatFrame f(3, 3, 1.0);
  Kernel k = gaussian_kernel(9, 2.0);
  CHECK_THROWS_AS(convolve(f, k), ConfigError);
}

TEST_CASE("blur output stays inside the input range") {
  synth::Rng rng(23);
  FloatFrame f(16, 12);
  for (auto& v : f.data) v = rng.uniform(10, 200);
  double lo = *std::min_element(f.data.begin(), f.data.end());
  double hi = *std::max_element(f.data.begin(), f.data.end());
  auto out = convolve(f, gaussian_kernel(5, 1.1));
  for (auto v : out.data) {
    CHECK(v >= lo - 1e-9);
    CHECK(v <= hi + 1e-9);
  }
}

TEST_CASE("nl-means leaves constant frames unchanged") {
  auto f = synth::constant_frame(12, 10, 128.0);
  auto out = nl_means(f, 3, 7, 10.0);
  for (auto v : out.data) CHECK(v == doctest::Approx(128.0).epsilon(1e-12));
}

TEST_CASE("vanishing h collapses nl-means to the identity") {
  synth::Rng rng(5);
  FloatFrame f(10, 8);
  for (auto& v : f.data) v = rng.uniform(0, 255);
  auto out = nl_means(f, 3, 7, 1e-6);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    CHECK(out.data[i] == doctest::Approx(f.data[i]).epsilon(1e-9));
}

TEST_CASE("nl-means shrinks the variance of seeded noise around a constant") {
  synth::Rng rng(99);
  auto noisy = synth::add_noise(synth::constant_frame(48, 36, 128.0), 10.0, rng);
  auto out = nl_means(noisy, 5, 15, 12.0);
  CHECK(variance_of(out) < variance_of(noisy));
}

TEST_CASE("denoisers approximately preserve the global mean") {
  synth::Rng rng(42);
  auto noisy = synth::add_noise(synth::constant_frame(32, 24, 100.0), 8.0, rng);
  for (auto spec : {DenoiserSpec::gaussian_preset(), DenoiserSpec::nlmeans(5, 11, 10.0)}) {
    auto out = denoise(noisy, spec);
    CHECK(std::abs(mean_of(out) - mean_of(noisy)) < 0.01 * std::abs(mean_of(noisy)));
  }
}

TEST_CASE("patch wider than the search window is rejected") {
  auto f = synth::constant_frame(10, 10, 1.0);
  CHECK_THROWS_AS(nl_means(f, 9, 7, 10.0), ConfigError);
}

TEST_CASE("dispatch matches the underlying operations") {
  synth::Rng rng(3);
  FloatFrame f(14, 11);
  for (auto& v : f.data) v = rng.uniform(0, 255);

  CHECK(denoise(f, DenoiserSpec::none()).data == f.data);
  CHECK(denoise(f, DenoiserSpec::gaussian_preset()).data ==
        convolve(f, gaussian_kernel_paper5()).data);
  CHECK(denoise(f, DenoiserSpec::gaussian(3, 0.8)).data ==
        convolve(f, gaussian_kernel(3, 0.8)).data);
  CHECK(denoise(f, DenoiserSpec::nlmeans(3, 7, 9.0)).data == nl_means(f, 3, 7, 9.0).data);
}

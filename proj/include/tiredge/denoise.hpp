#pragma once

#include <optional>
#include <vector>

#include "tiredge/image.hpp"

namespace tiredge {

/// Square convolution kernel, size odd, row-major weights.
struct Kernel {
  int size = 1;
  std::vector<double> weights;

  double at(int i, int j) const { return weights[static_cast<std::size_t>(j) * size + i]; }
  double& at(int i, int j) { return weights[static_cast<std::size_t>(j) * size + i]; }
};

/// Sampled Gaussian exp(-(i^2+j^2)/(2 sigma^2)) on the centered grid,
/// normalized to sum 1.
Kernel gaussian_kernel(int size, double sigma);

/// The fixed 5x5 integer Gaussian divided by 159.
Kernel gaussian_kernel_paper5();

/// Correlation with replicate border padding. All kernels in this library are
/// symmetric except the signed gradient pairs, whose orientation is defined by
/// the correlation convention used here.
FloatFrame convolve(const FloatFrame& frame, const Kernel& k);

/// Classic non-local means: every pixel becomes the normalized
/// exp(-d^2/h^2)-weighted average of its search window, d^2 the mean squared
/// difference between the two patches (replicate border).
FloatFrame nl_means(const FloatFrame& frame, int patch, int search, double h);

struct DenoiserSpec {
  enum class Kind { none, gaussian, nlmeans };
  Kind kind = Kind::none;
  // gaussian; sigma empty selects the fixed 5x5/159 kernel
  int size = 5;
  std::optional<double> sigma;
  // nlmeans
  int patch = 7;
  int search = 21;
  double h = 10.0;

  static DenoiserSpec none() { return {}; }
  static DenoiserSpec gaussian_preset() { return {Kind::gaussian, 5, std::nullopt, 7, 21, 10.0}; }
  static DenoiserSpec gaussian(int size, double sigma) {
    return {Kind::gaussian, size, sigma, 7, 21, 10.0};
  }
  static DenoiserSpec nlmeans(int patch, int search, double h) {
    return {Kind::nlmeans, 5, std::nullopt, patch, search, h};
  }
};

/// Dispatch on the spec: none is the identity, gaussian convolves with the
/// requested kernel, nlmeans runs nl_means.
FloatFrame denoise(const FloatFrame& frame, const DenoiserSpec& spec);

}  // namespace tiredge

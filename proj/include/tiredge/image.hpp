#pragma once

#include <cstdint>
#include <vector>

namespace tiredge {

// Row-major 2-D grids. Pixel (x,y) lives at index y*width + x.

/// Raw thermal frame: 16-bit graylevels (14-bit sensor range) with a fixed
/// degrees-per-graylevel factor.
struct RawFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;
  double dpg = 0.01;  // degrees Celsius per graylevel

  std::uint16_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint16_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  bool empty() const { return width <= 0 || height <= 0; }
};

/// 8-bit image after graylevel scaling.
struct GrayFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  bool empty() const { return width <= 0 || height <= 0; }
};

/// Real-valued working image.
struct FloatFrame {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  FloatFrame() = default;
  FloatFrame(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  bool empty() const { return width <= 0 || height <= 0; }
};

/// Binary edge map; nonzero means edge.
struct BinaryMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  BinaryMap() = default;
  BinaryMap(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  bool empty() const { return width <= 0 || height <= 0; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto v : data) n += v ? 1 : 0;
    return n;
  }

  bool operator==(const BinaryMap&) const = default;
};

inline FloatFrame to_float(const GrayFrame& g) {
  FloatFrame f(g.width, g.height);
  for (std::size_t i = 0; i < g.data.size(); ++i) f.data[i] = g.data[i];
  return f;
}

inline FloatFrame to_float(const RawFrame& r) {
  FloatFrame f(r.width, r.height);
  for (std::size_t i = 0; i < r.data.size(); ++i) f.data[i] = r.data[i];
  return f;
}

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

}  // namespace tiredge

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "synthetic.hpp"
#include "tiredge/corners.hpp"
#include "tiredge/errors.hpp"

using namespace tiredge;

namespace {

int curvature_corner_count(const std::vector<Corner>& corners) {
  int n = 0;
  for (auto& c : corners)
    if (c.kind == CornerKind::curvature) ++n;
  return n;
}

double mean_abs(const CurvatureProfile& p) {
  double s = 0;
  for (auto v : p.values) s += std::abs(v);
  return s / static_cast<double>(p.values.size());
}

}  // namespace

TEST_CASE("a straight diagonal segment has vanishing curvature") {
  auto c = synth::make_contour(synth::polyline({{0, 0}, {30, 30}}));
  auto profile = curvature(c, 3.0);
  REQUIRE(profile.values.size() == c.points.size());
  for (auto v : profile.values) CHECK(std::abs(v) < 0.01);
}

TEST_CASE("ring curvature tracks the inverse radius") {
  auto c = synth::make_contour(synth::bresenham_circle(40, 40, 20), ContourMode::loop);
  CHECK(std::abs(mean_abs(curvature(c, 3.0)) - 0.05) < 0.005);
}

TEST_CASE("an s-curve changes curvature sign near the join") {
  auto c = synth::make_contour(synth::s_curve(20));
  auto profile = curvature(c, 3.0);
  double lo = *std::min_element(profile.values.begin(), profile.values.end());
  double hi = *std::max_element(profile.values.begin(), profile.values.end());
  CHECK(lo < -0.02);
  CHECK(hi > 0.02);
}

TEST_CASE("contours below five points cannot carry curvature") {
  auto c = synth::make_contour(synth::polyline({{0, 0}, {3, 0}}));
  CHECK_THROWS_AS(curvature(c, 3.0), Error);
}

TEST_CASE("the adaptive threshold is the scaled window mean") {
  CurvatureProfile flat;
  flat.values.assign(31, 0.2);
  CHECK(adaptive_threshold(flat, 15, 4, 4, 1.5, false) == doctest::Approx(0.3));
  CHECK(adaptive_threshold(flat, 15, 4, 4, 1.0, false) == doctest::Approx(0.2));

  CurvatureProfile three;
  three.values = {0.1, 0.2, 0.3};
  CHECK(adaptive_threshold(three, 1, 1, 1, 1.5, false) == doctest::Approx(0.3));
}

TEST_CASE("tangent fits recover the right angles") {
  auto l_shape = synth::make_contour(synth::polyline({{0, 0}, {20, 0}, {20, 20}}));
  int vertex = 20;
  REQUIRE(l_shape.points[vertex] == Point{20, 0});
  CHECK(corner_angle(l_shape, vertex, 10, 10) == doctest::Approx(90.0).epsilon(0.06));

  auto straight = synth::make_contour(synth::polyline({{0, 0}, {40, 0}}));
  CHECK(corner_angle(straight, 20, 10, 10) == doctest::Approx(180.0).epsilon(0.02));
}

TEST_CASE("the angle fold takes the reflex complement") {
  CHECK(interior_angle_deg(350.0, 10.0) == doctest::Approx(20.0));
  CHECK(interior_angle_deg(10.0, 350.0) == doctest::Approx(20.0));
  CHECK(interior_angle_deg(90.0, 45.0) == doctest::Approx(45.0));
  CHECK(interior_angle_deg(0.0, 179.0) == doctest::Approx(179.0));
}

TEST_CASE("a square loop yields exactly its four corners") {
  auto square = synth::make_contour(synth::square_loop(10, 10, 30), ContourMode::loop);
  auto corners = detect_corners(synth::make_set({square}, 60, 60));
  REQUIRE(corners.size() == 4);
  for (auto& c : corners) {
    CHECK(c.kind == CornerKind::curvature);
    CHECK(c.angle > 85.0);
    CHECK(c.angle < 95.0);
  }
}

TEST_CASE("a circle yields no corners at all") {
  auto ring = synth::make_contour(synth::bresenham_circle(40, 40, 20), ContourMode::loop);
  CHECK(detect_corners(synth::make_set({ring}, 80, 80)).empty());
}

TEST_CASE("an open straight line yields only its endpoints") {
  auto line = synth::make_contour(synth::polyline({{3, 3}, {33, 3}}));
  auto corners = detect_corners(synth::make_set({line}, 40, 10));
  REQUIRE(corners.size() == 2);
  CHECK(corners[0].kind == CornerKind::endpoint);
  CHECK(corners[0].point_index == 0);
  CHECK(corners[1].kind == CornerKind::endpoint);
  CHECK(corners[1].point_index == 30);
}

TEST_CASE("a pentagon keeps one corner per vertex") {
  std::vector<Point> vertices;
  for (int i = 0; i < 5; ++i) {
    double a = -M_PI / 2.0 + 2.0 * M_PI * i / 5.0;
    vertices.push_back({40 + static_cast<int>(std::lround(26 * std::cos(a))),
                        40 + static_cast<int>(std::lround(26 * std::sin(a)))});
  }
  vertices.push_back(vertices.front());
  auto pts = synth::polyline(vertices);
  pts.pop_back();  // drop the duplicated closing point
  auto penta = synth::make_contour(std::move(pts), ContourMode::loop);
  auto corners = detect_corners(synth::make_set({penta}, 80, 80));
  CHECK(curvature_corner_count(corners) == 5);
}

TEST_CASE("a gentle 170-degree bend is rejected as obtuse") {
  auto bend = synth::make_contour(
      synth::polyline({{0, 40}, {40, 40}, {79, 33}}));  // 170 degrees at the middle
  auto corners = detect_corners(synth::make_set({bend}, 90, 50));
  CHECK(curvature_corner_count(corners) == 0);  // endpoints only
  REQUIRE(corners.size() == 2);

  GlcpParams sharp;
  sharp.theta_obtuse = 175.0;  // now 170 degrees counts as a corner
  auto kept = detect_corners(synth::make_set({bend}, 90, 50), sharp);
  // The loosened gate also admits pixel-staircase bumps on the sloped arm,
  // so assert the vertex itself rather than an exact count.
  bool vertex_kept = false;
  for (const Corner& c : kept)
    if (c.kind == CornerKind::curvature && std::abs(c.point_index - 40) <= 2)
      vertex_kept = true;
  CHECK(vertex_kept);
}

TEST_CASE("corner count is invariant under traversal reversal") {
  auto pts = synth::polyline({{5, 5}, {25, 5}, {25, 25}, {45, 25}});
  auto fwd = synth::make_contour(pts);
  std::reverse(pts.begin(), pts.end());
  auto bwd = synth::make_contour(pts);
  auto a = detect_corners(synth::make_set({fwd}, 60, 40));
  auto b = detect_corners(synth::make_set({bwd}, 60, 40));
  CHECK(a.size() == b.size());
  CHECK(curvature_corner_count(a) == curvature_corner_count(b));
}

TEST_CASE("stricter parameters never add corners") {
  auto square = synth::make_contour(synth::square_loop(10, 10, 30), ContourMode::loop);
  auto zigzag = synth::make_contour(
      synth::polyline({{5, 45}, {20, 45}, {30, 52}, {45, 52}}));
  auto set = synth::make_set({square, zigzag}, 60, 60);

  GlcpParams base;
  auto reference = curvature_corner_count(detect_corners(set, base));
  for (double ratio : {2.0, 3.0, 5.0}) {
    GlcpParams p = base;
    p.axis_ratio = ratio;
    CHECK(curvature_corner_count(detect_corners(set, p)) <= reference);
  }
  for (double theta : {150.0, 120.0, 95.0}) {
    GlcpParams p = base;
    p.theta_obtuse = theta;
    CHECK(curvature_corner_count(detect_corners(set, p)) <= reference);
  }
}

TEST_CASE("corners come back sorted by contour then position") {
  auto a = synth::make_contour(synth::polyline({{2, 2}, {22, 2}, {22, 22}}));
  auto b = synth::make_contour(synth::polyline({{30, 2}, {50, 2}}));
  auto corners = detect_corners(synth::make_set({a, b}, 60, 30));
  for (std::size_t i = 1; i < corners.size(); ++i) {
    bool ordered = corners[i - 1].contour_index < corners[i].contour_index ||
                   (corners[i - 1].contour_index == corners[i].contour_index &&
                    corners[i - 1].point_index <= corners[i].point_index);
    CHECK(ordered);
  }
}

TEST_CASE("invalid glcp parameters are rejected") {
  auto line = synth::make_contour(synth::polyline({{0, 0}, {10, 0}}));
  auto set = synth::make_set({line}, 20, 5);
  GlcpParams bad;
  bad.axis_ratio = 0.5;
  CHECK_THROWS_AS(detect_corners(set, bad), ConfigError);
  bad = {};
  bad.theta_obtuse = 200.0;
  CHECK_THROWS_AS(detect_corners(set, bad), ConfigError);
}

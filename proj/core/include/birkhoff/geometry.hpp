#pragma once

// Points on the unit 3-sphere, closed polygonal curves in R^3 and on S^3,
// weighted links, and the stereographic chart used to compute linking.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "birkhoff/tolerances.hpp"

namespace birkhoff {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

// A point of S^3 in C^2 = R^4 with coordinates (x1, y1, x2, y2),
// z1 = x1 + i y1, z2 = x2 + i y2. Always renormalized on construction.
class SpherePoint {
 public:
  explicit SpherePoint(const Vec4& v);
  SpherePoint(double x1, double y1, double x2, double y2) : SpherePoint(Vec4(x1, y1, x2, y2)) {}

  // Rejects inputs whose norm is off by more than `tol` before renormalizing.
  static SpherePoint checked(const Vec4& v, double tol);

  const Vec4& coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  // Great-circle distance in radians.
  double angle_to(const SpherePoint& other) const;
  double angle_to(const Vec4& unit) const;

 private:
  Vec4 coords_;
};

// Closed polygon with an implicit edge from the last vertex back to the first.
// D = 3 for curves in R^3, D = 4 for curves on S^3 (vertices kept unit length).
template <int D>
class PolyCurve {
 public:
  static_assert(D == 3 || D == 4);
  using Point = Eigen::Matrix<double, D, 1>;

  PolyCurve(std::vector<Point> vertices, std::string name = {}, const Tolerances& tol = {});

  std::size_t size() const noexcept { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  std::span<const Point> vertices() const noexcept { return vertices_; }
  const std::string& name() const noexcept { return name_; }

  // Pole of the stereographic chart this curve was produced by, if any.
  const std::optional<SpherePoint>& pole() const noexcept { return pole_; }
  PolyCurve with_pole(const SpherePoint& pole) const;
  PolyCurve renamed(std::string name) const;

  double length() const;
  double min_edge_length() const;
  double max_edge_length() const;

  // Same point set traversed backwards, starting from the same vertex.
  PolyCurve reversed() const;

  // Central-difference tangent at vertex i (projected to T_p S^3 when D = 4).
  Point tangent(std::size_t i) const;

 private:
  std::vector<Point> vertices_;
  std::string name_;
  std::optional<SpherePoint> pole_;
};

using Curve3 = PolyCurve<3>;
using SphereCurve = PolyCurve<4>;

extern template class PolyCurve<3>;
extern template class PolyCurve<4>;

// Components with integer multiplicities n_i; components pairwise disjoint.
template <int D>
class WeightedLink {
 public:
  WeightedLink(std::vector<PolyCurve<D>> components, std::vector<long long> multiplicities,
               const Tolerances& tol = {});

  std::size_t size() const noexcept { return components_.size(); }
  const PolyCurve<D>& component(std::size_t i) const { return components_.at(i); }
  std::span<const PolyCurve<D>> components() const noexcept { return components_; }
  std::span<const long long> multiplicities() const noexcept { return multiplicities_; }
  double separation() const noexcept { return separation_; }

 private:
  std::vector<PolyCurve<D>> components_;
  std::vector<long long> multiplicities_;
  double separation_;
};

extern template class WeightedLink<3>;
extern template class WeightedLink<4>;

// Distance between segments [a0,a1] and [b0,b1] in R^D.
template <int D>
double segment_distance(const Eigen::Matrix<double, D, 1>& a0, const Eigen::Matrix<double, D, 1>& a1,
                        const Eigen::Matrix<double, D, 1>& b0, const Eigen::Matrix<double, D, 1>& b1);

// Minimum distance between the two polygons (edges included). Stops early
// and returns a value <= `stop_below` once one is found below it.
template <int D>
double curve_separation(const PolyCurve<D>& c1, const PolyCurve<D>& c2, double stop_below = 0.0);

// w with w . x = det[a, b, c, x]; det[a, b, c, w] > 0 for independent a, b, c.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

// Orthonormal basis of pole^perp such that projecting by it is orientation
// preserving for the boundary orientation of S^3 (det[p, u, v, w] > 0).
std::array<Vec4, 3> chart_frame(const SpherePoint& pole);

Vec3 stereographic_project(const Vec4& p, const SpherePoint& pole);
Curve3 stereographic_project(const SphereCurve& curve, const SpherePoint& pole, const Tolerances& tol = {});

// The deterministic candidate set searched by choose_pole.
std::vector<SpherePoint> pole_candidates();

SpherePoint choose_pole(std::span<const SphereCurve> curves, const Tolerances& tol = {});

// Arclength-uniform resampling with n vertices; vertex 0 is kept.
template <int D>
PolyCurve<D> curve_resample(const PolyCurve<D>& curve, std::size_t n);

// Inserts the (renormalized) midpoint of every edge.
template <int D>
PolyCurve<D> curve_subdivide(const PolyCurve<D>& curve);

}  // namespace birkhoff

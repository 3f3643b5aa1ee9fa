#include "birkhoff/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

bool all_finite(const auto& v) { return v.allFinite(); }

double radical_inverse(unsigned k, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (k > 0) {
    r += f * (k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

SpherePoint::SpherePoint(const Vec4& v) {
  const double n = v.norm();
  if (!all_finite(v) || n == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "sphere point must be finite and non-zero");
  }
  coords_ = v / n;
}

SpherePoint SpherePoint::checked(const Vec4& v, double tol) {
  if (!all_finite(v) || std::abs(v.norm() - 1.0) > tol) {
    throw Error(ErrorCode::InvalidCurve, "point is not on the unit 3-sphere");
  }
  return SpherePoint(v);
}

double SpherePoint::angle_to(const Vec4& unit) const {
  // atan2 form stays accurate for nearly equal and nearly antipodal points.
  const double c = coords_.dot(unit);
  const double s = (unit - c * coords_).norm();
  return std::atan2(s, c);
}

double SpherePoint::angle_to(const SpherePoint& other) const { return angle_to(other.coords_); }

// ---------------------------------------------------------------------------
// PolyCurve

template <int D>
PolyCurve<D>::PolyCurve(std::vector<Point> vertices, std::string name, const Tolerances& tol)
    : vertices_(std::move(vertices)), name_(std::move(name)) {
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw Error(ErrorCode::TooFewVertices, "a closed curve needs at least 3 vertices, got " + std::to_string(n));
  }
  for (auto& v : vertices_) {
    if (!all_finite(v)) throw Error(ErrorCode::InvalidCurve, "non-finite vertex in curve '" + name_ + "'");
    if constexpr (D == 4) {
      const double norm = v.norm();
      if (std::abs(norm - 1.0) > tol.reader_norm) {
        throw Error(ErrorCode::InvalidCurve, "vertex off the unit sphere in curve '" + name_ + "'");
      }
      v /= norm;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((vertices_[(i + 1) % n] - vertices_[i]).norm() < tol.edge) {
      throw Error(ErrorCode::InvalidCurve,
                  "consecutive vertices " + std::to_string(i) + " coincide in curve '" + name_ + "'");
    }
    if (n > 3 && vertices_[(i + 2) % n] == vertices_[i]) {
      throw Error(ErrorCode::InvalidCurve, "zero-area hairpin at vertex " + std::to_string(i) + " in curve '" + name_ + "'");
    }
  }
}

template <int D>
PolyCurve<D> PolyCurve<D>::with_pole(const SpherePoint& pole) const {
  PolyCurve copy = *this;
  copy.pole_ = pole;
  return copy;
}

template <int D>
PolyCurve<D> PolyCurve<D>::renamed(std::string name) const {
  PolyCurve copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

template <int D>
double PolyCurve<D>::length() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += (vertex(i + 1) - vertices_[i]).norm();
  return total;
}

template <int D>
double PolyCurve<D>::min_edge_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) m = std::min(m, (vertex(i + 1) - vertices_[i]).norm());
  return m;
}

template <int D>
double PolyCurve<D>::max_edge_length() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, (vertex(i + 1) - vertices_[i]).norm());
  return m;
}

template <int D>
PolyCurve<D> PolyCurve<D>::reversed() const {
  std::vector<Point> rev;
  rev.reserve(size());
  rev.push_back(vertices_[0]);
  for (std::size_t i = size() - 1; i > 0; --i) rev.push_back(vertices_[i]);
  PolyCurve out(std::move(rev), name_);
  out.pole_ = pole_;
  return out;
}

template <int D>
typename PolyCurve<D>::Point PolyCurve<D>::tangent(std::size_t i) const {
  const std::size_t n = size();
  Point t = vertex(i + 1) - vertex(i + n - 1);
  if constexpr (D == 4) {
    const Point& p = vertices_[i % n];
    t -= t.dot(p) * p;
  }
  return t.normalized();
}

template class PolyCurve<3>;
template class PolyCurve<4>;

// ---------------------------------------------------------------------------
// Distances

template <int D>
double segment_distance(const Eigen::Matrix<double, D, 1>& a0, const Eigen::Matrix<double, D, 1>& a1,
                        const Eigen::Matrix<double, D, 1>& b0, const Eigen::Matrix<double, D, 1>& b1) {
  // Closest points of two segments (Ericson, Real-Time Collision Detection 5.1.9).
  const auto d1 = (a1 - a0).eval();
  const auto d2 = (b1 - b0).eval();
  const auto r = (a0 - b0).eval();
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) return r.norm();
  if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((a0 + s * d1) - (b0 + t * d2)).norm();
}

template double segment_distance<3>(const Vec3&, const Vec3&, const Vec3&, const Vec3&);
template double segment_distance<4>(const Vec4&, const Vec4&, const Vec4&, const Vec4&);

template <int D>
double curve_separation(const PolyCurve<D>& c1, const PolyCurve<D>& c2, double stop_below) {
  using Point = typename PolyCurve<D>::Point;
  const std::size_t n1 = c1.size();
  const std::size_t n2 = c2.size();
  std::vector<Point> mid2(n2);
  std::vector<double> half2(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    mid2[j] = 0.5 * (c2[j] + c2.vertex(j + 1));
    half2[j] = 0.5 * (c2.vertex(j + 1) - c2[j]).norm();
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n1; ++i) {
    const Point& a0 = c1[i];
    const Point& a1 = c1.vertex(i + 1);
    const Point m1 = 0.5 * (a0 + a1);
    const double h1 = 0.5 * (a1 - a0).norm();
    for (std::size_t j = 0; j < n2; ++j) {
      // Midpoint bound: the segments lie in balls of radius h around their midpoints.
      if ((m1 - mid2[j]).norm() - h1 - half2[j] >= best) continue;
      best = std::min(best, segment_distance<D>(a0, a1, c2[j], c2.vertex(j + 1)));
      if (best <= stop_below) return best;
    }
  }
  return best;
}

template double curve_separation<3>(const Curve3&, const Curve3&, double);
template double curve_separation<4>(const SphereCurve&, const SphereCurve&, double);

// ---------------------------------------------------------------------------
// WeightedLink

template <int D>
WeightedLink<D>::WeightedLink(std::vector<PolyCurve<D>> components, std::vector<long long> multiplicities,
                              const Tolerances& tol)
    : components_(std::move(components)),
      multiplicities_(std::move(multiplicities)),
      separation_(std::numeric_limits<double>::infinity()) {
  if (components_.empty()) throw Error(ErrorCode::InvalidArgument, "a link needs at least one component");
  if (components_.size() != multiplicities_.size()) {
    throw Error(ErrorCode::InvalidArgument, "multiplicities and components differ in length");
  }
  if (std::all_of(multiplicities_.begin(), multiplicities_.end(), [](long long n) { return n == 0; })) {
    throw Error(ErrorCode::InvalidArgument, "all multiplicities are zero");
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    for (std::size_t j = i + 1; j < components_.size(); ++j) {
      const double d = curve_separation(components_[i], components_[j], tol.separation);
      separation_ = std::min(separation_, d);
      if (d <= tol.separation) {
        throw Error(ErrorCode::CurvesTooClose, "components " + std::to_string(i) + " and " + std::to_string(j) +
                                                   " are closer than the separation tolerance");
      }
    }
  }
}

template class WeightedLink<3>;
template class WeightedLink<4>;

// ---------------------------------------------------------------------------
// Chart

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 w;
  for (int k = 0; k < 4; ++k) {
    Eigen::Matrix4d m;
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    m.col(3) = Vec4::Unit(k);
    w[k] = m.determinant();
  }
  return w;
}

std::array<Vec4, 3> chart_frame(const SpherePoint& pole) {
  const Vec4& n = pole.coords();
  int skip = 0;
  n.cwiseAbs().maxCoeff(&skip);
  std::array<Vec4, 3> frame;
  int filled = 0;
  for (int k = 0; k < 4 && filled < 3; ++k) {
    if (k == skip) continue;
    Vec4 v = Vec4::Unit(k);
    v -= v.dot(n) * n;
    for (int m = 0; m < filled; ++m) v -= v.dot(frame[m]) * frame[m];
    frame[filled++] = v.normalized();
  }
  Eigen::Matrix4d m;
  m << n, frame[0], frame[1], frame[2];
  // Projection from e4 along (e1, e2, e3) is orientation preserving and has det = -1.
  if (m.determinant() > 0.0) frame[2] = -frame[2];
  return frame;
}

Vec3 stereographic_project(const Vec4& p, const SpherePoint& pole) {
  const auto frame = chart_frame(pole);
  const double denom = 1.0 - p.dot(pole.coords());
  return Vec3(p.dot(frame[0]), p.dot(frame[1]), p.dot(frame[2])) / denom;
}

Curve3 stereographic_project(const SphereCurve& curve, const SpherePoint& pole, const Tolerances& tol) {
  const auto frame = chart_frame(pole);
  const Vec4& n = pole.coords();
  std::vector<Vec3> out;
  out.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec4& p = curve[i];
    if (pole.angle_to(p) <= tol.pole) {
      throw Error(ErrorCode::PoleTooClose, "vertex " + std::to_string(i) + " of curve '" + curve.name() +
                                               "' is within the pole exclusion radius");
    }
    const double denom = 1.0 - p.dot(n);
    out.emplace_back(p.dot(frame[0]) / denom, p.dot(frame[1]) / denom, p.dot(frame[2]) / denom);
  }
  return Curve3(std::move(out), curve.name(), tol).with_pole(pole);
}

std::vector<SpherePoint> pole_candidates() {
  std::vector<SpherePoint> out;
  out.reserve(136);
  for (int k = 0; k < 4; ++k) {
    out.emplace_back(Vec4(Vec4::Unit(k)));
    out.emplace_back(Vec4(-Vec4::Unit(k)));
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (unsigned k = 1; k <= 128; ++k) {
    // Halton (2,3,5) mapped to the uniform measure on S^3 via Hopf coordinates.
    const double u1 = radical_inverse(k, 2);
    const double u2 = radical_inverse(k, 3);
    const double u3 = radical_inverse(k, 5);
    const double r1 = std::sqrt(u1);
    const double r2 = std::sqrt(1.0 - u1);
    out.emplace_back(Vec4(r1 * std::cos(two_pi * u2), r1 * std::sin(two_pi * u2), r2 * std::cos(two_pi * u3),
                          r2 * std::sin(two_pi * u3)));
  }
  return out;
}

SpherePoint choose_pole(std::span<const SphereCurve> curves, const Tolerances& tol) {
  if (curves.empty()) throw Error(ErrorCode::InvalidArgument, "choose_pole needs at least one curve");
  const auto candidates = pole_candidates();
  double best = -1.0;
  std::size_t best_index = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    // Max dot product <=> min angle.
    double max_dot = -1.0;
    const Vec4& q = candidates[c].coords();
    for (const auto& curve : curves) {
      for (const Vec4& v : curve.vertices()) max_dot = std::max(max_dot, q.dot(v));
    }
    const double min_angle = std::acos(std::clamp(max_dot, -1.0, 1.0));
    if (min_angle > best) {
      best = min_angle;
      best_index = c;
    }
  }
  if (best <= tol.pole) throw Error(ErrorCode::NoValidPole, "every candidate pole is too close to the curves");
  return candidates[best_index];
}

// ---------------------------------------------------------------------------
// Resampling

template <int D>
PolyCurve<D> curve_resample(const PolyCurve<D>& curve, std::size_t n) {
  using Point = typename PolyCurve<D>::Point;
  if (n < 3) throw Error(ErrorCode::TooFewVertices, "resampling needs n >= 3");
  const std::size_t m = curve.size();
  std::vector<double> cumulative(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) cumulative[i + 1] = cumulative[i] + (curve.vertex(i + 1) - curve[i]).norm();
  const double total = cumulative[m];

  std::vector<Point> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < m && cumulative[seg + 1] <= s) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double u = len > 0.0 ? (s - cumulative[seg]) / len : 0.0;
    Point p = (1.0 - u) * curve[seg] + u * curve.vertex(seg + 1);
    if constexpr (D == 4) p.normalize();
    out.push_back(p);
  }
  PolyCurve<D> result(std::move(out), curve.name());
  return curve.pole() ? result.with_pole(*curve.pole()) : result;
}

template Curve3 curve_resample<3>(const Curve3&, std::size_t);
template SphereCurve curve_resample<4>(const SphereCurve&, std::size_t);

template <int D>
PolyCurve<D> curve_subdivide(const PolyCurve<D>& curve) {
  using Point = typename PolyCurve<D>::Point;
  std::vector<Point> out;
  out.reserve(2 * curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out.push_back(curve[i]);
    Point mid = 0.5 * (curve[i] + curve.vertex(i + 1));
    if constexpr (D == 4) mid.normalize();
    out.push_back(mid);
  }
  PolyCurve<D> result(std::move(out), curve.name());
  return curve.pole() ? result.with_pole(*curve.pole()) : result;
}

template Curve3 curve_subdivide<3>(const Curve3&);
template SphereCurve curve_subdivide<4>(const SphereCurve&);

}  // namespace birkhoff

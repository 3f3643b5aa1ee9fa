#include "birkhoff/framing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Geometry>

#include "birkhoff/errors.hpp"
#include "birkhoff/linking.hpp"

namespace birkhoff {

template <int D>
std::vector<typename FramingField<D>::Point> FramingField<D>::normals(const PolyCurve<D>& curve,
                                                                      const Tolerances& tol) const {
  const std::size_t n = curve.size();
  if (const auto* given = std::get_if<std::vector<Point>>(&source_); given && given->size() != n) {
    throw Error(ErrorCode::DegenerateFraming, "explicit framing has " + std::to_string(given->size()) +
                                                  " normals for a curve with " + std::to_string(n) + " vertices");
  }
  std::vector<Point> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = curve[i];
    Point v = std::holds_alternative<Evaluator>(source_) ? std::get<Evaluator>(source_)(p)
                                                         : std::get<std::vector<Point>>(source_)[i];
    if constexpr (D == 4) v -= v.dot(p) * p;
    const double len = v.norm();
    const Point t = curve.tangent(i);
    Point normal = v - v.dot(t) * t;
    // Angle between the framing vector and the tangent line.
    if (!(len > 0.0) || !(normal.norm() > tol.angle * len) || !(normal.norm() > tol.angle)) {
      throw Error(ErrorCode::DegenerateFraming,
                  "framing is tangent to curve '" + curve.name() + "' at vertex " + std::to_string(i));
    }
    out[i] = normal.normalized();
  }
  return out;
}

template class FramingField<3>;
template class FramingField<4>;

template <int D>
double reach_proxy(const PolyCurve<D>& curve) {
  using Point = typename PolyCurve<D>::Point;
  const std::size_t n = curve.size();
  std::vector<Point> mid(n);
  std::vector<double> half(n);
  for (std::size_t e = 0; e < n; ++e) {
    mid[e] = 0.5 * (curve[e] + curve.vertex(e + 1));
    half[e] = 0.5 * (curve.vertex(e + 1) - curve[e]).norm();
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < n; ++v) {
    const Point& p = curve[v];
    for (std::size_t e = 0; e < n; ++e) {
      // Edge e runs from vertex e to e+1; skip the two edges incident to v.
      if (e == v || (e + 1) % n == v) continue;
      if ((p - mid[e]).norm() - half[e] >= best) continue;
      const Point a = curve[e];
      const Point ab = curve.vertex(e + 1) - a;
      const double u = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (a + u * ab - p).norm());
    }
  }
  return 0.5 * best;
}

template double reach_proxy<3>(const Curve3&);
template double reach_proxy<4>(const SphereCurve&);

namespace {

template <int D>
typename PolyCurve<D>::Point binormal(const PolyCurve<D>& curve, std::size_t i,
                                      const typename PolyCurve<D>::Point& normal) {
  const auto t = curve.tangent(i);
  if constexpr (D == 3) {
    return t.cross(normal).normalized();
  } else {
    // det[p, t, n, b] > 0 matches the boundary orientation of S^3.
    return cross4(curve[i], t, normal).normalized();
  }
}

}  // namespace

template <int D>
PolyCurve<D> pushoff(const PolyCurve<D>& curve, const RationalFraming<D>& framing, double epsilon,
                     const Tolerances& tol) {
  using Point = typename PolyCurve<D>::Point;
  if (framing.k_f < 1) throw Error(ErrorCode::InvalidArgument, "k_f must be at least 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "push-off distance must be positive");
  const double reach = reach_proxy(curve);
  if (!(epsilon < reach)) {
    throw Error(ErrorCode::EpsilonTooLarge, "epsilon " + std::to_string(epsilon) + " exceeds the reach bound " +
                                                std::to_string(reach) + " of '" + curve.name() + "'");
  }
  const auto normals = framing.base.normals(curve, tol);
  const std::size_t n = curve.size();

  std::vector<double> arclength(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) arclength[i] = arclength[i - 1] + (curve[i] - curve[i - 1]).norm();
  const double total = curve.length();

  std::vector<Point> out;
  out.reserve(n * static_cast<std::size_t>(framing.k_f));
  for (int lap = 0; lap < framing.k_f; ++lap) {
    for (std::size_t i = 0; i < n; ++i) {
      Point dir = normals[i];
      if (framing.twists != 0) {
        const double progress = (static_cast<double>(lap) + arclength[i] / total) / framing.k_f;
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(framing.twists) * progress;
        dir = std::cos(theta) * normals[i] + std::sin(theta) * binormal(curve, i, normals[i]);
      }
      Point q = curve[i] + epsilon * dir;
      if constexpr (D == 4) q.normalize();
      out.push_back(q);
    }
  }
  PolyCurve<D> result(std::move(out), curve.name() + "^f", tol);
  if (curve_separation(curve, result, tol.separation) <= tol.separation) {
    throw Error(ErrorCode::EpsilonTooLarge, "push-off of '" + curve.name() + "' touches the curve");
  }
  return result;
}

template Curve3 pushoff<3>(const Curve3&, const RationalFraming<3>&, double, const Tolerances&);
template SphereCurve pushoff<4>(const SphereCurve&, const RationalFraming<4>&, double, const Tolerances&);

template <int D>
SelfLinking self_linking(const PolyCurve<D>& curve, const RationalFraming<D>& framing, std::optional<double> epsilon,
                         const Tolerances& tol) {
  const double eps = epsilon.value_or(0.5 * reach_proxy(curve));
  auto evaluate = [&](double e) { return linking_number(curve, pushoff(curve, framing, e, tol), tol); };
  const long long lk = evaluate(eps);
  const long long lk_half = evaluate(0.5 * eps);
  if (lk != lk_half) {
    throw Error(ErrorCode::UnstableSelfLinking, "self-linking of '" + curve.name() + "' changes from " +
                                                    std::to_string(lk) + " to " + std::to_string(lk_half) +
                                                    " when epsilon is halved");
  }
  return SelfLinking{Rational(lk, framing.k_f), lk, eps};
}

template SelfLinking self_linking<3>(const Curve3&, const RationalFraming<3>&, std::optional<double>,
                                     const Tolerances&);
template SelfLinking self_linking<4>(const SphereCurve&, const RationalFraming<4>&, std::optional<double>,
                                     const Tolerances&);

}  // namespace birkhoff

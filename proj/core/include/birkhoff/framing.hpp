#pragma once

// Framings of closed curves, push-offs along them, and self-linking numbers.

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "birkhoff/geometry.hpp"

namespace birkhoff {

using Rational = boost::rational<long long>;

template <int D>
class FramingField {
 public:
  using Point = typename PolyCurve<D>::Point;
  using Evaluator = std::function<Point(const Point&)>;

  enum class Kind { AmbientField, ExplicitNormal };

  // Restriction of a vector field defined on the ambient space.
  static FramingField ambient(Evaluator field) { return FramingField(std::move(field)); }
  // One vector per vertex, in curve order.
  static FramingField explicit_normals(std::vector<Point> normals) { return FramingField(std::move(normals)); }

  Kind kind() const noexcept { return std::holds_alternative<Evaluator>(source_) ? Kind::AmbientField : Kind::ExplicitNormal; }

  // Unit normal framing vectors at every vertex of `curve`. Throws
  // DegenerateFraming where the vector is within tol.angle of the tangent.
  std::vector<Point> normals(const PolyCurve<D>& curve, const Tolerances& tol = {}) const;

 private:
  explicit FramingField(Evaluator f) : source_(std::move(f)) {}
  explicit FramingField(std::vector<Point> n) : source_(std::move(n)) {}

  std::variant<Evaluator, std::vector<Point>> source_;
};

// A framing traversed k_f times along the curve. `twists` adds that many full
// meridional turns spread over the whole k_f-fold traversal, so the framing
// is fractional when k_f does not divide it.
template <int D>
struct RationalFraming {
  FramingField<D> base;
  int k_f = 1;
  long long twists = 0;
};

// Half the minimum distance from a vertex to the edges not incident to it.
template <int D>
double reach_proxy(const PolyCurve<D>& curve);

// Push-off traversing the curve k_f times, offset by epsilon along the unit
// normal framing (renormalized back to S^3 when D = 4).
template <int D>
PolyCurve<D> pushoff(const PolyCurve<D>& curve, const RationalFraming<D>& framing, double epsilon,
                     const Tolerances& tol = {});

struct SelfLinking {
  Rational value;
  long long linking = 0;  // Lk(curve, pushoff) before dividing by k_f
  double epsilon = 0.0;
};

// Lk(curve, pushoff)/k_f, evaluated at epsilon and epsilon/2 (the two must
// agree). Without an explicit epsilon, half the reach proxy is used.
template <int D>
SelfLinking self_linking(const PolyCurve<D>& curve, const RationalFraming<D>& framing,
                         std::optional<double> epsilon = std::nullopt, const Tolerances& tol = {});

extern template class FramingField<3>;
extern template class FramingField<4>;

}  // namespace birkhoff

#pragma once

// Non-singular vector fields on S^3, RK4 orbit integration with per-step
// renormalization, Schwartzman-style orbit closures, periodic orbits and the
// linearized flow along them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "birkhoff/geometry.hpp"

namespace birkhoff {

// A vector field on S^3 given by an ambient R^4 expression. The physical
// field is base/time_scale; every optional analytic piece is expressed in
// base time, so rescaling only reparametrizes time.
struct FlowField {
  std::string name;
  std::function<Vec4(const Vec4&)> base;
  // Field zeta everywhere transverse to `base` (used as a framing).
  std::function<Vec4(const Vec4&)> transverse;
  // Differential of `base` as a map R^4 -> R^4.
  std::function<Eigen::Matrix4d(const Vec4&)> jacobian;
  // Exact flow phi_s(p) and minimal period at p, in base time.
  std::function<Vec4(const Vec4&, double)> flow_map;
  std::function<double(const Vec4&)> period;
  double time_scale = 1.0;

  Vec4 value(const Vec4& p) const { return base(p) / time_scale; }
};

// X(z1, z2) = (i z1, i z2). Transverse field zeta(q) = j q (left quaternion
// multiplication, q = z1 + z2 j), orthogonal to X; with the boundary
// orientation of S^3 fibers link +1 and Slk^zeta(fiber) = -1.
FlowField hopf_field();

// X(z1, z2) = (i p z1, i q z2) with p, q >= 1 coprime; zeta as for hopf_field.
// Generic orbits are (p, q) torus knots of period 2 pi.
FlowField seifert_field(int p, int q);

// Start points on m distinct Hopf fibers, spread over the base sphere by a
// Fibonacci lattice.
std::vector<SpherePoint> spread_fiber_points(std::size_t m);

// The field divided by c (c > 0): orbits are the same sets, periods scale by c.
FlowField scaled(FlowField field, double c);

// "hopf" | "seifert:p,q". "file:<path>" is reserved and throws Unsupported.
FlowField parse_field(std::string_view selector);

struct FieldReport {
  double max_normal_component = 0.0;     // max |<X(p), p>|
  double min_speed = 0.0;                // min |X(p)|
  double min_transverse_angle = 0.0;     // min angle(X, zeta), radians; 0 without zeta
};

// Samples `samples` seeded uniform points and checks tangency (1e-10),
// non-vanishing and, with zeta present, transversality (> 1e-3 rad).
// Throws InvalidArgument on violation.
FieldReport validate_field(const FlowField& field, std::size_t samples = 1000, std::uint64_t seed = 0);

struct IntegratorOptions {
  std::size_t step_cap = 10'000'000;
};

// Time-ordered samples of phi^[0,T](p).
struct OrbitArc {
  std::string field;
  std::vector<double> times;
  std::vector<Vec4> points;
  double duration = 0.0;

  const Vec4& start() const { return points.front(); }
  const Vec4& end() const { return points.back(); }
};

// Classical RK4 with fixed step (T divided into ceil(T/h) equal steps) and
// renormalization to S^3 after every step. Throws StepCapExceeded.
OrbitArc integrate_orbit(const FlowField& field, const SpherePoint& p, double duration, double step = 1e-2,
                         const IntegratorOptions& options = {});

// Arc plus a geodesic closing segment subdivided to the arc's sampling
// density; an endpoint within tol.close of the start is identified with it.
SphereCurve close_arc(const OrbitArc& arc, const Tolerances& tol = {});

struct PeriodicOrbit {
  std::string field;
  SphereCurve curve;
  std::vector<double> times;  // physical time of each vertex
  SpherePoint start;
  double period = 0.0;        // physical time
};

struct PeriodicOrbitOptions {
  double step = 1e-3;              // search step for fields without an analytic period
  double return_tolerance = 1e-6;  // accepted |phi_T(p) - p|
  std::size_t step_cap = 10'000'000;
};

// n_vertices arclength-uniform samples of the orbit through p. Uses the
// analytic flow when available, otherwise detects the first return
// numerically. Throws NotPeriodic, TooFewVertices.
PeriodicOrbit periodic_orbit(const FlowField& field, const SpherePoint& p, std::size_t n_vertices,
                             const PeriodicOrbitOptions& options = {});

struct TransportSample {
  double time = 0.0;
  Vec4 point;
  Vec4 vector;                  // unit, in X^perp at `point`
  std::optional<double> angle;  // unwrapped angle from the zeta framing, when zeta exists
};

struct TransportOptions {
  double step = 1e-3;                 // base-time step
  std::optional<std::size_t> steps;   // overrides `step` when set
  std::size_t step_cap = 10'000'000;
};

// Integrates the variational equation v' = DX(p) v along the orbit of
// `start`, projecting v to the normal bundle X^perp and renormalizing after
// every step. Angles are measured in the oriented frame (zeta_n, b) with
// det[p, X, zeta_n, b] > 0. Throws MissingJacobian, NotNormal.
std::vector<TransportSample> linearized_transport(const FlowField& field, const SpherePoint& start, double duration,
                                                  const Vec4& v0, const TransportOptions& options = {},
                                                  const Tolerances& tol = {});

// Over one period of `orbit`. Throws NotPeriodic for a non-positive period.
std::vector<TransportSample> linearized_transport(const FlowField& field, const PeriodicOrbit& orbit, const Vec4& v0,
                                                  const TransportOptions& options = {}, const Tolerances& tol = {});

// v with its components along p and X(p) removed.
Vec4 normal_part(const FlowField& field, const Vec4& p, const Vec4& v);

}  // namespace birkhoff

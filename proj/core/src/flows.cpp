#include "birkhoff/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Left multiplication by j on q = x1 + y1 i + x2 j + y2 k.
Vec4 left_j(const Vec4& x) { return Vec4(-x[2], x[3], x[0], -x[1]); }

Vec4 rotate_pair(const Vec4& x, double a, double b) {
  const double ca = std::cos(a), sa = std::sin(a);
  const double cb = std::cos(b), sb = std::sin(b);
  return Vec4(ca * x[0] - sa * x[1], sa * x[0] + ca * x[1], cb * x[2] - sb * x[3], sb * x[2] + cb * x[3]);
}

std::size_t step_count(double duration, double step, std::size_t cap) {
  if (duration == 0.0) return 0;
  const double raw = std::ceil(duration / step - 1e-9);
  if (!(raw <= static_cast<double>(cap))) {
    throw Error(ErrorCode::StepCapExceeded, std::to_string(raw) + " steps exceed the cap of " + std::to_string(cap));
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

Vec4 rk4_step(const FlowField& field, const Vec4& p, double h) {
  const Vec4 k1 = field.base(p);
  const Vec4 k2 = field.base(p + 0.5 * h * k1);
  const Vec4 k3 = field.base(p + 0.5 * h * k2);
  const Vec4 k4 = field.base(p + h * k3);
  return (p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
}

Vec4 slerp(const Vec4& a, const Vec4& b, double t) {
  const double theta = std::atan2((b - a.dot(b) * a).norm(), a.dot(b));
  if (theta < 1e-12) return a;
  const double s = std::sin(theta);
  return ((std::sin((1.0 - t) * theta) / s) * a + (std::sin(t * theta) / s) * b).normalized();
}

}  // namespace

FlowField seifert_field(int p, int q) {
  if (p < 1 || q < 1 || std::gcd(p, q) != 1) {
    throw Error(ErrorCode::InvalidArgument, "Seifert field needs coprime p, q >= 1");
  }
  const double pd = p;
  const double qd = q;
  FlowField f;
  f.name = (p == 1 && q == 1) ? "hopf" : "seifert:" + std::to_string(p) + "," + std::to_string(q);
  f.base = [pd, qd](const Vec4& x) { return Vec4(-pd * x[1], pd * x[0], -qd * x[3], qd * x[2]); };
  f.transverse = left_j;
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  a(0, 1) = -pd;
  a(1, 0) = pd;
  a(2, 3) = -qd;
  a(3, 2) = qd;
  f.jacobian = [a](const Vec4&) { return a; };
  f.flow_map = [pd, qd](const Vec4& x, double s) { return rotate_pair(x, pd * s, qd * s); };
  f.period = [pd, qd](const Vec4& x) {
    // Exceptional fibers z1 = 0 and z2 = 0 close up faster.
    constexpr double kCore = 1e-12;
    if (std::hypot(x[0], x[1]) < kCore) return kTwoPi / qd;
    if (std::hypot(x[2], x[3]) < kCore) return kTwoPi / pd;
    return kTwoPi;
  };
  return f;
}

FlowField hopf_field() { return seifert_field(1, 1); }

std::vector<SpherePoint> spread_fiber_points(std::size_t m) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<SpherePoint> out;
  for (std::size_t k = 0; k < m; ++k) {
    const double polar = std::acos(1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(m));
    const double azimuth = golden * static_cast<double>(k);
    const double c = std::cos(polar / 2.0);
    const double s = std::sin(polar / 2.0);
    out.emplace_back(c, 0.0, s * std::cos(azimuth), s * std::sin(azimuth));
  }
  return out;
}

FlowField scaled(FlowField field, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  field.time_scale *= c;
  std::ostringstream name;
  name.precision(17);
  name << field.name << "/" << c;
  field.name = name.str();
  return field;
}

FlowField parse_field(std::string_view selector) {
  if (selector == "hopf") return hopf_field();
  if (selector.starts_with("seifert:")) {
    const std::string body(selector.substr(8));
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected seifert:p,q");
    try {
      std::size_t used_p = 0;
      std::size_t used_q = 0;
      const int p = std::stoi(body.substr(0, comma), &used_p);
      const int q = std::stoi(body.substr(comma + 1), &used_q);
      if (used_p != comma || used_q != body.size() - comma - 1) throw std::invalid_argument("trailing characters");
      return seifert_field(p, q);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "expected seifert:p,q with integer p, q");
    }
  }
  if (selector.starts_with("file:")) throw Error(ErrorCode::Unsupported, "field files are not supported yet");
  throw Error(ErrorCode::InvalidArgument, "unknown field selector '" + std::string(selector) + "'");
}

FieldReport validate_field(const FlowField& field, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  FieldReport report;
  report.min_speed = std::numeric_limits<double>::infinity();
  report.min_transverse_angle = field.transverse ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Vec4 p = Vec4(gauss(rng), gauss(rng), gauss(rng), gauss(rng)).normalized();
    const Vec4 x = field.value(p);
    report.max_normal_component = std::max(report.max_normal_component, std::abs(x.dot(p)));
    report.min_speed = std::min(report.min_speed, x.norm());
    if (field.transverse) {
      const Vec4 z = field.transverse(p);
      const double c = std::abs(x.dot(z)) / (x.norm() * z.norm());
      report.min_transverse_angle = std::min(report.min_transverse_angle, std::acos(std::min(1.0, c)));
    }
  }
  if (report.max_normal_component > 1e-10) throw Error(ErrorCode::InvalidArgument, "field is not tangent to S^3");
  if (!(report.min_speed > 0.0)) throw Error(ErrorCode::InvalidArgument, "field vanishes");
  if (field.transverse && !(report.min_transverse_angle > 1e-3)) {
    throw Error(ErrorCode::InvalidArgument, "transverse field is nearly parallel to the flow");
  }
  return report;
}

// ---------------------------------------------------------------------------

OrbitArc integrate_orbit(const FlowField& field, const SpherePoint& p, double duration, double step,
                         const IntegratorOptions& options) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw Error(ErrorCode::InvalidArgument, "duration must be >= 0");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  // Steps are taken in base time so X/c over cT reproduces X over T.
  const double base_duration = duration / field.time_scale;
  const std::size_t n = step_count(base_duration, step / field.time_scale, options.step_cap);
  OrbitArc arc;
  arc.field = field.name;
  arc.duration = duration;
  arc.times.reserve(n + 1);
  arc.points.reserve(n + 1);
  arc.times.push_back(0.0);
  arc.points.push_back(p.coords());
  if (n == 0) return arc;
  const double h = base_duration / static_cast<double>(n);
  Vec4 x = p.coords();
  for (std::size_t k = 1; k <= n; ++k) {
    x = rk4_step(field, x, h);
    arc.times.push_back(duration * static_cast<double>(k) / static_cast<double>(n));
    arc.points.push_back(x);
  }
  return arc;
}

SphereCurve close_arc(const OrbitArc& arc, const Tolerances& tol) {
  std::vector<Vec4> vertices(arc.points.begin(), arc.points.end());
  const std::string name = arc.field + "-closure";
  if (vertices.size() < 2) return SphereCurve(std::move(vertices), name, tol);

  const Vec4& a = arc.start();
  const Vec4& b = arc.end();
  if ((b - a).norm() < tol.close) {
    vertices.pop_back();
    return SphereCurve(std::move(vertices), name, tol);
  }
  double spacing = 0.0;
  for (std::size_t k = 1; k < arc.points.size(); ++k) spacing += (arc.points[k] - arc.points[k - 1]).norm();
  spacing /= static_cast<double>(arc.points.size() - 1);

  auto append_geodesic = [&](const Vec4& from, const Vec4& to) {
    const double arc_length = std::acos(std::clamp(from.dot(to), -1.0, 1.0));
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil(arc_length / spacing)));
    for (std::size_t k = 1; k < pieces; ++k) vertices.push_back(slerp(from, to, static_cast<double>(k) / pieces));
  };

  const double angle = std::atan2((b - a.dot(b) * a).norm(), a.dot(b));
  if (angle > std::numbers::pi - 1e-6) {
    // Antipodal endpoints: route through a point orthogonal to the start
    // and to the initial velocity.
    Vec4 t = (arc.points[1] - a);
    t = (t - t.dot(a) * a).normalized();
    Vec4 mid = Vec4::Zero();
    double best = -1.0;
    for (int k = 0; k < 4; ++k) {
      Vec4 e = Vec4::Unit(k);
      e -= e.dot(a) * a + e.dot(t) * t;
      if (e.norm() > best) {
        best = e.norm();
        mid = e;
      }
    }
    mid.normalize();
    append_geodesic(b, mid);
    vertices.push_back(mid);
    append_geodesic(mid, a);
  } else {
    append_geodesic(b, a);
  }
  return SphereCurve(std::move(vertices), name, tol);
}

// ---------------------------------------------------------------------------

namespace {

// First return of the orbit of p, refined along the flow direction.
double detect_period(const FlowField& field, const Vec4& p, const PeriodicOrbitOptions& options) {
  const double h = options.step;
  const double speed = field.base(p).norm();
  const double leave = 10.0 * h * speed;
  bool left = false;
  Vec4 prev = p;
  double d_prev2 = 0.0, d_prev = 0.0;
  Vec4 x = p;
  for (std::size_t k = 1; k <= options.step_cap; ++k) {
    x = rk4_step(field, x, h);
    const double d = (x - p).norm();
    if (!left) {
      left = d > leave;
    } else if (k >= 3 && d_prev < d_prev2 && d_prev <= d && d_prev < leave) {
      // prev is a local minimum of |x(t) - p|; correct by the tangential offset.
      const Vec4 v = field.base(prev);
      const double dt = (p - prev).dot(v) / v.squaredNorm();
      Vec4 y = prev;
      const int sub = 16;
      for (int s = 0; s < sub; ++s) y = rk4_step(field, y, dt / sub);
      if ((y - p).norm() < options.return_tolerance) return static_cast<double>(k - 1) * h + dt;
    }
    d_prev2 = d_prev;
    prev = x;
    d_prev = d;
  }
  throw Error(ErrorCode::NotPeriodic, "no return to the start point within the step cap");
}

}  // namespace

PeriodicOrbit periodic_orbit(const FlowField& field, const SpherePoint& p, std::size_t n_vertices,
                             const PeriodicOrbitOptions& options) {
  if (n_vertices < 3) throw Error(ErrorCode::TooFewVertices, "a periodic orbit needs at least 3 vertices");
  const double c = field.time_scale;
  std::vector<Vec4> vertices;
  std::vector<double> times;
  double base_period = 0.0;
  if (field.flow_map && field.period) {
    // Built-in orbits have constant speed, so uniform time is uniform arclength.
    base_period = field.period(p.coords());
    for (std::size_t k = 0; k < n_vertices; ++k) {
      const double s = base_period * static_cast<double>(k) / static_cast<double>(n_vertices);
      vertices.push_back(field.flow_map(p.coords(), s).normalized());
      times.push_back(c * s);
    }
  } else {
    base_period = detect_period(field, p.coords(), options);
    const std::size_t dense = 8 * n_vertices;
    const double h = base_period / static_cast<double>(dense);
    std::vector<Vec4> samples{p.coords()};
    for (std::size_t k = 1; k < dense; ++k) samples.push_back(rk4_step(field, samples.back(), h));
    std::vector<double> arclength(dense + 1, 0.0);
    for (std::size_t k = 0; k < dense; ++k) {
      arclength[k + 1] = arclength[k] + (samples[(k + 1) % dense] - samples[k]).norm();
    }
    const double total = arclength[dense];
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n_vertices; ++k) {
      const double target = total * static_cast<double>(k) / static_cast<double>(n_vertices);
      while (seg + 1 < dense && arclength[seg + 1] <= target) ++seg;
      const double len = arclength[seg + 1] - arclength[seg];
      const double u = len > 0.0 ? (target - arclength[seg]) / len : 0.0;
      vertices.push_back(((1.0 - u) * samples[seg] + u * samples[(seg + 1) % dense]).normalized());
      times.push_back(c * h * (static_cast<double>(seg) + u));
    }
  }
  SphereCurve curve(std::move(vertices), field.name + "-orbit");
  return PeriodicOrbit{field.name, std::move(curve), std::move(times), p, c * base_period};
}

// ---------------------------------------------------------------------------

Vec4 normal_part(const FlowField& field, const Vec4& p, const Vec4& v) {
  const Vec4 x = field.base(p).normalized();
  Vec4 out = v - v.dot(p) * p;
  out -= out.dot(x) * x;
  return out;
}

std::vector<TransportSample> linearized_transport(const FlowField& field, const SpherePoint& start, double duration,
                                                  const Vec4& v0, const TransportOptions& options,
                                                  const Tolerances& tol) {
  if (!field.jacobian) throw Error(ErrorCode::MissingJacobian, "field '" + field.name + "' has no differential");
  if (!(duration >= 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be >= 0");
  const Vec4 n0 = normal_part(field, start.coords(), v0);
  if (!(n0.norm() > tol.angle * v0.norm()) || !(n0.norm() > 0.0)) {
    throw Error(ErrorCode::NotNormal, "initial vector is tangent to the flow");
  }

  const double base_duration = duration / field.time_scale;
  const std::size_t n = options.steps ? *options.steps
                                      : step_count(base_duration, options.step, options.step_cap);
  if (n > options.step_cap) throw Error(ErrorCode::StepCapExceeded, "transport steps exceed the cap");

  auto frame_angle = [&](const Vec4& p, const Vec4& v) -> std::optional<double> {
    if (!field.transverse) return std::nullopt;
    const Vec4 e1 = normal_part(field, p, field.transverse(p)).normalized();
    const Vec4 e2 = cross4(p, field.base(p).normalized(), e1).normalized();
    return std::atan2(v.dot(e2), v.dot(e1));
  };

  std::vector<TransportSample> out;
  out.reserve(n + 1);
  Vec4 p = start.coords();
  Vec4 v = n0.normalized();
  out.push_back({0.0, p, v, frame_angle(p, v)});
  if (n == 0) return out;

  const double h = base_duration / static_cast<double>(n);
  auto rhs = [&](const Vec4& x, const Vec4& w) { return std::pair{field.base(x), Vec4(field.jacobian(x) * w)}; };
  for (std::size_t k = 1; k <= n; ++k) {
    const auto [kp1, kv1] = rhs(p, v);
    const auto [kp2, kv2] = rhs(p + 0.5 * h * kp1, v + 0.5 * h * kv1);
    const auto [kp3, kv3] = rhs(p + 0.5 * h * kp2, v + 0.5 * h * kv2);
    const auto [kp4, kv4] = rhs(p + h * kp3, v + h * kv3);
    p = (p + (h / 6.0) * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4)).normalized();
    v = normal_part(field, p, v + (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4)).normalized();

    TransportSample sample{duration * static_cast<double>(k) / static_cast<double>(n), p, v, frame_angle(p, v)};
    if (sample.angle) {
      // Unwrap against the previous sample.
      const double prev = *out.back().angle;
      double delta = *sample.angle - std::remainder(prev, kTwoPi);
      delta = std::remainder(delta, kTwoPi);
      sample.angle = prev + delta;
    }
    out.push_back(std::move(sample));
  }
  return out;
}

std::vector<TransportSample> linearized_transport(const FlowField& field, const PeriodicOrbit& orbit, const Vec4& v0,
                                                  const TransportOptions& options, const Tolerances& tol) {
  if (!(orbit.period > 0.0)) throw Error(ErrorCode::NotPeriodic, "orbit has no positive period");
  return linearized_transport(field, orbit.start, orbit.period, v0, options, tol);
}

}  // namespace birkhoff

#include "birkhoff/linking.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "birkhoff/errors.hpp"
#include "birkhoff/parallel.hpp"

namespace birkhoff {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr int kResampleRounds = 4;

// Signed solid angle of the spherical triangle (a, b, c), van Oosterom-Strackee.
inline double triangle_solid_angle(const Vec3& a, double la, const Vec3& b, double lb, const Vec3& c, double lc) {
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(num, den);
}

// Quad with corners r13, r23, r24, r14 in the (s, t) parameter order.
inline double quad_solid_angle(const Vec3& r13, double l13, const Vec3& r14, double l14, const Vec3& r23, double l23,
                               const Vec3& r24, double l24) {
  return triangle_solid_angle(r13, l13, r23, l23, r24, l24) + triangle_solid_angle(r13, l13, r24, l24, r14, l14);
}

void check_separation(const Curve3& c1, const Curve3& c2, const Tolerances& tol) {
  if (curve_separation(c1, c2, tol.separation) <= tol.separation) {
    throw Error(ErrorCode::CurvesTooClose,
                "curves '" + c1.name() + "' and '" + c2.name() + "' are closer than the separation tolerance");
  }
}

void check_separation(const SphereCurve& c1, const SphereCurve& c2, const Tolerances& tol) {
  if (curve_separation(c1, c2, tol.separation) <= tol.separation) {
    throw Error(ErrorCode::CurvesTooClose,
                "curves '" + c1.name() + "' and '" + c2.name() + "' are closer than the separation tolerance");
  }
}

long long checked_sum(const Curve3& c1, const Curve3& c2, const Tolerances& tol, double* residual_out) {
  const GaussSum sum = gauss_linking_sum(c1, c2);
  if (residual_out) *residual_out = sum.residual;
  if (!(sum.residual < tol.integer)) {
    throw Error(ErrorCode::NonIntegerResult, "Gauss sum " + std::to_string(sum.value) + " for '" + c1.name() +
                                                 "' and '" + c2.name() + "' is not an integer");
  }
  return sum.nearest;
}

long long linking_in_chart(SphereCurve c1, SphereCurve c2, const SpherePoint& pole, const Tolerances& tol) {
  for (int round = 0;; ++round) {
    try {
      return checked_sum(stereographic_project(c1, pole, tol), stereographic_project(c2, pole, tol), tol, nullptr);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonIntegerResult || round == kResampleRounds) throw;
    }
    c1 = curve_subdivide(c1);
    c2 = curve_subdivide(c2);
  }
}

inline double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double segment_pair_solid_angle(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  const Vec3 r13 = b0 - a0;
  const Vec3 r14 = b1 - a0;
  const Vec3 r23 = b0 - a1;
  const Vec3 r24 = b1 - a1;
  return quad_solid_angle(r13, r13.norm(), r14, r14.norm(), r23, r23.norm(), r24, r24.norm());
}

GaussSum gauss_linking_sum(const Curve3& c1, const Curve3& c2) {
  const std::size_t n1 = c1.size();
  const std::size_t n2 = c2.size();
  std::vector<double> rows(n1, 0.0);
  parallel_for(n1, [&](std::size_t i) {
    const Vec3& a0 = c1[i];
    const Vec3& a1 = c1.vertex(i + 1);
    // Offsets from both endpoints of segment i to every vertex of c2.
    std::vector<Vec3> d0(n2 + 1);
    std::vector<Vec3> d1(n2 + 1);
    std::vector<double> l0(n2 + 1);
    std::vector<double> l1(n2 + 1);
    for (std::size_t k = 0; k <= n2; ++k) {
      const Vec3& b = c2.vertex(k);
      d0[k] = b - a0;
      d1[k] = b - a1;
      l0[k] = d0[k].norm();
      l1[k] = d1[k].norm();
    }
    double row = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
      row += quad_solid_angle(d0[j], l0[j], d0[j + 1], l0[j + 1], d1[j], l1[j], d1[j + 1], l1[j + 1]);
    }
    rows[i] = row;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  GaussSum out;
  out.value = total / kFourPi;
  out.nearest = std::llround(out.value);
  out.residual = std::abs(out.value - static_cast<double>(out.nearest));
  return out;
}

long long linking_number(const Curve3& c1, const Curve3& c2, const Tolerances& tol) {
  check_separation(c1, c2, tol);
  Curve3 a = c1;
  Curve3 b = c2;
  for (int round = 0;; ++round) {
    try {
      return checked_sum(a, b, tol, nullptr);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonIntegerResult || round == kResampleRounds) throw;
    }
    a = curve_resample(a, 2 * a.size());
    b = curve_resample(b, 2 * b.size());
    check_separation(a, b, tol);
  }
}

long long linking_number(const SphereCurve& c1, const SphereCurve& c2, const Tolerances& tol) {
  check_separation(c1, c2, tol);
  const std::array<SphereCurve, 2> both{c1, c2};
  return linking_in_chart(c1, c2, choose_pole(both, tol), tol);
}

long long linking_number_crossings(const Curve3& c1, const Curve3& c2, const Vec3& direction, const Tolerances& tol) {
  if (!(direction.norm() > 0.0)) throw Error(ErrorCode::InvalidArgument, "projection direction must be non-zero");
  const Vec3 d = direction.normalized();
  // (u, w, d) right handed: the viewer sits at +infinity along d.
  const Vec3 u = d.unitOrthogonal();
  const Vec3 w = d.cross(u);

  struct Projected {
    std::vector<Eigen::Vector2d> xy;
    std::vector<double> height;
  };
  auto project = [&](const Curve3& c) {
    Projected p;
    p.xy.reserve(c.size() + 1);
    p.height.reserve(c.size() + 1);
    for (std::size_t k = 0; k <= c.size(); ++k) {
      const Vec3& v = c.vertex(k);
      p.xy.emplace_back(v.dot(u), v.dot(w));
      p.height.push_back(v.dot(d));
    }
    return p;
  };
  const Projected p1 = project(c1);
  const Projected p2 = project(c2);
  constexpr double kEndpointGuard = 1e-10;

  long long signed_crossings = 0;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    const Eigen::Vector2d e1 = p1.xy[i + 1] - p1.xy[i];
    for (std::size_t j = 0; j < c2.size(); ++j) {
      const Eigen::Vector2d e2 = p2.xy[j + 1] - p2.xy[j];
      const Eigen::Vector2d r = p2.xy[j] - p1.xy[i];
      const double denom = cross2(e1, e2);
      const double scale = e1.norm() * e2.norm();
      if (std::abs(denom) <= tol.parallel * scale) {
        // Parallel projected edges only matter if they overlap.
        const double gap = segment_distance<3>(Vec3(p1.xy[i].x(), p1.xy[i].y(), 0.0),
                                               Vec3(p1.xy[i + 1].x(), p1.xy[i + 1].y(), 0.0),
                                               Vec3(p2.xy[j].x(), p2.xy[j].y(), 0.0),
                                               Vec3(p2.xy[j + 1].x(), p2.xy[j + 1].y(), 0.0));
        if (gap <= tol.parallel * std::max(1.0, std::sqrt(scale))) {
          throw Error(ErrorCode::DegenerateProjection, "projected edges overlap");
        }
        continue;
      }
      const double s = cross2(r, e2) / denom;
      const double t = cross2(r, e1) / denom;
      if (s < -kEndpointGuard || s > 1.0 + kEndpointGuard || t < -kEndpointGuard || t > 1.0 + kEndpointGuard) {
        continue;
      }
      if (s < kEndpointGuard || s > 1.0 - kEndpointGuard || t < kEndpointGuard || t > 1.0 - kEndpointGuard) {
        throw Error(ErrorCode::DegenerateProjection, "a crossing falls on a projected vertex");
      }
      const double h1 = (1.0 - s) * p1.height[i] + s * p1.height[i + 1];
      const double h2 = (1.0 - t) * p2.height[j] + t * p2.height[j + 1];
      if (std::abs(h1 - h2) <= tol.separation) {
        throw Error(ErrorCode::CurvesTooClose, "curves meet above a projected crossing");
      }
      // Positive crossing: the under strand passes from right to left of the over strand.
      const double orientation = h1 > h2 ? cross2(e1, e2) : cross2(e2, e1);
      signed_crossings += orientation > 0.0 ? 1 : -1;
    }
  }
  if (signed_crossings % 2 != 0) {
    throw Error(ErrorCode::DegenerateProjection, "odd crossing count between closed curves");
  }
  return signed_crossings / 2;
}

long long linking_number_crossings(const Curve3& c1, const Curve3& c2, const Vec3& direction, std::uint64_t seed,
                                   int attempts, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vec3 d = direction.normalized();
  for (int k = 0;; ++k) {
    try {
      return linking_number_crossings(c1, c2, d, tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateProjection || k + 1 >= attempts) throw;
    }
    const Vec3 jitter(gauss(rng), gauss(rng), gauss(rng));
    d = (direction.normalized() + 0.05 * jitter).normalized();
  }
}

// ---------------------------------------------------------------------------

LinkingMatrix::LinkingMatrix(std::vector<std::string> names)
    : names_(std::move(names)), entries_(names_.size() * names_.size(), 0) {}

LinkingMatrix::LinkingMatrix(std::vector<std::string> names, const std::vector<std::vector<long long>>& values)
    : LinkingMatrix(std::move(names)) {
  if (values.size() != size()) throw Error(ErrorCode::InvalidArgument, "linking matrix has the wrong row count");
  for (std::size_t i = 0; i < size(); ++i) {
    if (values[i].size() != size()) throw Error(ErrorCode::InvalidArgument, "linking matrix is not square");
    for (std::size_t j = 0; j < size(); ++j) {
      if (i == j) continue;
      if (values[i][j] != values[j][i]) throw Error(ErrorCode::InvalidArgument, "linking matrix is not symmetric");
      entries_[i * size() + j] = values[i][j];
    }
  }
}

void LinkingMatrix::check(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw Error(ErrorCode::InvalidArgument, "linking matrix index out of range");
  if (i == j) throw Error(ErrorCode::InvalidArgument, "linking matrix diagonal is not defined");
}

long long LinkingMatrix::at(std::size_t i, std::size_t j) const {
  check(i, j);
  return entries_[i * size() + j];
}

void LinkingMatrix::set(std::size_t i, std::size_t j, long long value) {
  check(i, j);
  entries_[i * size() + j] = value;
  entries_[j * size() + i] = value;
}

LinkingMatrix LinkingMatrix::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != size()) throw Error(ErrorCode::InvalidArgument, "permutation has the wrong length");
  std::vector<std::string> names;
  for (std::size_t a : perm) names.push_back(names_.at(a));
  LinkingMatrix out(std::move(names));
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = a + 1; b < size(); ++b) out.set(a, b, at(perm[a], perm[b]));
  }
  return out;
}

namespace {

template <int D>
std::vector<std::string> component_names(const WeightedLink<D>& link) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < link.size(); ++i) {
    const auto& n = link.component(i).name();
    names.push_back(n.empty() ? "curve" + std::to_string(i) : n);
  }
  return names;
}

Error tagged(const Error& e, std::size_t i, std::size_t j) {
  return e.within("pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

}  // namespace

LinkingMatrix linking_matrix(const WeightedLink<3>& link, const Tolerances& tol) {
  LinkingMatrix m(component_names(link));
  for (std::size_t i = 0; i < link.size(); ++i) {
    for (std::size_t j = i + 1; j < link.size(); ++j) {
      try {
        m.set(i, j, linking_number(link.component(i), link.component(j), tol));
      } catch (const Error& e) {
        throw tagged(e, i, j);
      }
    }
  }
  return m;
}

LinkingMatrix linking_matrix(const WeightedLink<4>& link, const Tolerances& tol) {
  LinkingMatrix m(component_names(link));
  if (link.size() < 2) return m;
  const SpherePoint pole = choose_pole(link.components(), tol);
  for (std::size_t i = 0; i < link.size(); ++i) {
    for (std::size_t j = i + 1; j < link.size(); ++j) {
      try {
        m.set(i, j, linking_in_chart(link.component(i), link.component(j), pole, tol));
      } catch (const Error& e) {
        throw tagged(e, i, j);
      }
    }
  }
  return m;
}

}  // namespace birkhoff

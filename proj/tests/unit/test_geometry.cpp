#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "birkhoff/errors.hpp"
#include "birkhoff/geometry.hpp"
#include "oracles.hpp"

using namespace birkhoff;

namespace {

constexpr double kPi = std::numbers::pi;

SphereCurve hopf_fiber(const Vec4& x, int n) { return SphereCurve(oracle::seifert_orbit(x.normalized(), 1, 1, 2 * kPi, n)); }

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << error_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(SpherePointTest, Renormalizes) {
  SpherePoint p(3.0, 0.0, 4.0, 0.0);
  EXPECT_NEAR(p.coords().norm(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(p[0], 0.6);
}

TEST(SpherePointTest, RejectsZeroAndNonFinite) {
  expect_error(ErrorCode::InvalidArgument, [] { SpherePoint(0, 0, 0, 0); });
  expect_error(ErrorCode::InvalidArgument, [] { SpherePoint(NAN, 0, 0, 1); });
}

TEST(SpherePointTest, CheckedRejectsNormViolation) {
  expect_error(ErrorCode::InvalidCurve, [] { SpherePoint::checked(Vec4(1.01, 0, 0, 0), 1e-6); });
  EXPECT_NO_THROW(SpherePoint::checked(Vec4(1.0 + 1e-9, 0, 0, 0), 1e-6));
}

TEST(SpherePointTest, AngleBetweenOrthogonalPoints) {
  EXPECT_NEAR(SpherePoint(1, 0, 0, 0).angle_to(SpherePoint(0, 1, 0, 0)), kPi / 2, 1e-15);
  EXPECT_NEAR(SpherePoint(1, 0, 0, 0).angle_to(SpherePoint(-1, 0, 0, 0)), kPi, 1e-15);
}

TEST(PolyCurveTest, ValidityChecks) {
  expect_error(ErrorCode::TooFewVertices, [] { Curve3({Vec3(0, 0, 0), Vec3(1, 0, 0)}); });
  expect_error(ErrorCode::InvalidCurve, [] { Curve3({Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 0, 0)}); });
  // Closing edge counts too.
  expect_error(ErrorCode::InvalidCurve, [] { Curve3({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 0)}); });
  // Hairpin: a vertex equal to its successor's successor.
  expect_error(ErrorCode::InvalidCurve,
               [] { Curve3({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 0), Vec3(0, 1, 0)}); });
  expect_error(ErrorCode::InvalidCurve, [] { Curve3({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(INFINITY, 0, 0)}); });
}

TEST(PolyCurveTest, SphereVerticesAreRenormalized) {
  SphereCurve c({Vec4(1 + 1e-9, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0)});
  for (const auto& v : c.vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  expect_error(ErrorCode::InvalidCurve, [] { SphereCurve({Vec4(2, 0, 0, 0), Vec4(0, 1, 0, 0), Vec4(0, 0, 1, 0)}); });
}

TEST(PolyCurveTest, ReversedKeepsFirstVertex) {
  Curve3 c({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)});
  const Curve3 r = c.reversed();
  EXPECT_EQ(r[0], c[0]);
  EXPECT_EQ(r[1], c[3]);
  EXPECT_EQ(r[3], c[1]);
  EXPECT_DOUBLE_EQ(r.length(), 4.0);
}

TEST(PolyCurveTest, TangentIsUnitAndTangentToSphere) {
  const SphereCurve c = hopf_fiber(Vec4(1, 2, 3, 4), 32);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec4 t = c.tangent(i);
    EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    EXPECT_NEAR(t.dot(c[i]), 0.0, 1e-12);
  }
}

TEST(WeightedLinkTest, RejectsAllZeroAndOverlap) {
  const SphereCurve a = hopf_fiber(Vec4(1, 0, 0, 0), 16);
  const SphereCurve b = hopf_fiber(Vec4(0, 0, 1, 0), 16);
  expect_error(ErrorCode::InvalidArgument, [&] { WeightedLink<4>({a, b}, {0, 0}); });
  expect_error(ErrorCode::InvalidArgument, [&] { WeightedLink<4>({a, b}, {1}); });
  expect_error(ErrorCode::CurvesTooClose, [&] { WeightedLink<4>({a, a}, {1, 1}); });
  const WeightedLink<4> ok({a, b}, {-2, 3});
  // Chords cut inside the great circles, so the polygons sit slightly closer.
  EXPECT_LE(ok.separation(), std::sqrt(2.0));
  EXPECT_GE(ok.separation(), std::sqrt(2.0) * std::cos(kPi / 16) - 1e-12);
}

TEST(Cross4Test, PositiveAndOrthogonal) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    const Vec4 a(g(rng), g(rng), g(rng), g(rng)), b(g(rng), g(rng), g(rng), g(rng)), c(g(rng), g(rng), g(rng), g(rng));
    const Vec4 w = cross4(a, b, c);
    EXPECT_NEAR(w.dot(a), 0.0, 1e-12);
    EXPECT_NEAR(w.dot(b), 0.0, 1e-12);
    EXPECT_NEAR(w.dot(c), 0.0, 1e-12);
    Eigen::Matrix4d m;
    m << a, b, c, w;
    EXPECT_GT(m.determinant(), 0.0);
  }
}

TEST(StereographicTest, EquatorialCircleMapsToUnitCircle) {
  const SphereCurve circle(oracle::seifert_orbit(Vec4(1, 0, 0, 0), 1, 0, 2 * kPi, 64));
  const Curve3 img = stereographic_project(circle, SpherePoint(0, 0, 0, 1));
  ASSERT_EQ(img.size(), circle.size());
  for (const auto& v : img.vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  // Planar: every vertex lies in the plane through the origin and two of them.
  const Vec3 normal = img[0].cross(img[16]).normalized();
  for (const auto& v : img.vertices()) EXPECT_NEAR(v.dot(normal), 0.0, 1e-12);
  ASSERT_TRUE(img.pole());
  EXPECT_EQ(img.pole()->coords(), Vec4(0, 0, 0, 1));
}

TEST(StereographicTest, PoleOnCurveRejected) {
  const SphereCurve c = hopf_fiber(Vec4(1, 0, 0, 0), 32);
  expect_error(ErrorCode::PoleTooClose, [&] { stereographic_project(c, SpherePoint(c[5])); });
}

TEST(StereographicTest, PreservesOrientation) {
  // Jacobian determinant on an oriented tangent frame (det[p, a, b, c] > 0).
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int k = 0; k < 40; ++k) {
    const SpherePoint pole(g(rng), g(rng), g(rng), g(rng));
    const Vec4 p = Vec4(g(rng), g(rng), g(rng), g(rng)).normalized();
    if (SpherePoint(p).angle_to(pole) < 0.3) continue;
    Vec4 a(g(rng), g(rng), g(rng), g(rng)), b(g(rng), g(rng), g(rng), g(rng));
    a -= a.dot(p) * p;
    b -= b.dot(p) * p;
    const Vec4 c = cross4(p, a, b);
    Eigen::Matrix3d J;
    const double h = 1e-6;
    int col = 0;
    for (const Vec4& d : {a, b, c}) {
      const Vec3 plus = stereographic_project(Vec4((p + h * d).normalized()), pole);
      const Vec3 minus = stereographic_project(Vec4((p - h * d).normalized()), pole);
      J.col(col++) = (plus - minus) / (2 * h);
    }
    EXPECT_GT(J.determinant(), 0.0);
  }
}

TEST(ChoosePoleTest, EquatorialCircleGivesOrthogonalPole) {
  const SphereCurve circle(oracle::seifert_orbit(Vec4(1, 0, 0, 0), 1, 0, 2 * kPi, 64));
  const std::vector<SphereCurve> curves{circle};
  const SpherePoint pole = choose_pole(curves);
  for (const auto& v : circle.vertices()) EXPECT_NEAR(pole.angle_to(v), kPi / 2, 1e-9);
}

TEST(ChoosePoleTest, EmptyListRejected) {
  expect_error(ErrorCode::InvalidArgument, [] { choose_pole(std::vector<SphereCurve>{}); });
}

TEST(ChoosePoleTest, MatchesExhaustiveSearch) {
  std::vector<SphereCurve> fibers;
  for (const Vec4& x : {Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0), Vec4(1, 0, 1, 0)}) fibers.push_back(hopf_fiber(x, 64));
  auto clearance = [&](const SpherePoint& pole) {
    double best = INFINITY;
    for (const auto& c : fibers) {
      for (const auto& v : c.vertices()) best = std::min(best, pole.angle_to(v));
    }
    return best;
  };
  double grid_best = 0.0;
  const auto candidates = pole_candidates();
  EXPECT_GE(candidates.size(), 72u);
  for (const auto& p : candidates) grid_best = std::max(grid_best, clearance(p));
  const SpherePoint pole = choose_pole(fibers);
  EXPECT_DOUBLE_EQ(clearance(pole), grid_best);
  EXPECT_GT(clearance(pole), 0.3);
}

TEST(ChoosePoleTest, NoValidPole) {
  Tolerances tol;
  tol.pole = 2.0;
  const std::vector<SphereCurve> curves{hopf_fiber(Vec4(1, 0, 0, 0), 16)};
  expect_error(ErrorCode::NoValidPole, [&] { choose_pole(curves, tol); });
}

TEST(ResampleTest, CircleToSquare) {
  const Curve3 circle(oracle::round_circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 100));
  const Curve3 sq = curve_resample(circle, 4);
  ASSERT_EQ(sq.size(), 4u);
  EXPECT_EQ(sq[0], circle[0]);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(sq[i].norm(), 1.0, 1e-12);
    EXPECT_NEAR((sq.vertex(i + 1) - sq[i]).norm(), std::sqrt(2.0), 1e-12);
  }
}

TEST(ResampleTest, UniformCurveIsFixed) {
  const Curve3 circle(oracle::round_circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 40));
  const Curve3 again = curve_resample(circle, 40);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR((again[i] - circle[i]).norm(), 0.0, 1e-12);
  expect_error(ErrorCode::TooFewVertices, [&] { curve_resample(circle, 2); });
}

TEST(ResampleTest, SphericalResampleStaysOnSphere) {
  const SphereCurve c = hopf_fiber(Vec4(1, 1, 0, 1), 30);
  for (const auto& v : curve_resample(c, 97).vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  for (const auto& v : curve_subdivide(c).vertices()) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  EXPECT_EQ(curve_subdivide(c).size(), 60u);
}

TEST(SegmentDistanceTest, AgreesWithSampling) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    const Vec3 a0(g(rng), g(rng), g(rng)), a1(g(rng), g(rng), g(rng)), b0(g(rng), g(rng), g(rng)),
        b1(g(rng), g(rng), g(rng));
    double sampled = INFINITY;
    for (int s = 0; s <= 200; ++s) {
      for (int t = 0; t <= 200; ++t) {
        sampled = std::min(sampled, ((a0 + s / 200.0 * (a1 - a0)) - (b0 + t / 200.0 * (b1 - b0))).norm());
      }
    }
    const double d = segment_distance<3>(a0, a1, b0, b1);
    EXPECT_LE(d, sampled + 1e-12);
    EXPECT_GT(d, sampled - 0.05);
  }
}

#pragma once

// Reference computations used only by the tests. Nothing here calls the
// library's linking code.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "birkhoff/geometry.hpp"

namespace oracle {

using birkhoff::Vec3;
using birkhoff::Vec4;

// (1/4pi) sum over segment pairs of the Gauss integrand, integrated with an
// n-point Gauss-Legendre rule on each segment.
double gauss_integral(const std::vector<Vec3>& a, const std::vector<Vec3>& b, int nodes = 12);

// Signed crossings of the z-projection after rotating both curves by R:
// each crossing counts sign((r1 - r2) . (d1 x d2)), and Lk is half the sum.
// Returns false when the projection is not generic.
bool crossing_linking(const std::vector<Vec3>& a, const std::vector<Vec3>& b, const Eigen::Matrix3d& R,
                      long long& lk);

Eigen::Matrix3d random_rotation(std::mt19937_64& rng);

// Closed random trigonometric curve: c + sum_k (a_k cos kt + b_k sin kt).
std::vector<Vec3> random_trig_curve(std::mt19937_64& rng, int harmonics, int vertices, double scale);

double min_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

// phi_t(p) for X = (i p z1, i q z2).
Vec4 seifert_flow(const Vec4& x, int p, int q, double t);

// n points of the Seifert orbit through x, equally spaced in time over `period`.
std::vector<Vec4> seifert_orbit(const Vec4& x, int p, int q, double period, int n);

std::vector<Vec3> round_circle(const Vec3& center, const Vec3& u, const Vec3& v, double r, int n);

std::vector<Vec3> points(const birkhoff::Curve3& c);

}  // namespace oracle

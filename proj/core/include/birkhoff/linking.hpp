#pragma once

// Linking numbers of disjoint closed polygons: an exact segment-pair Gauss
// sum, and an independent signed-crossing count in a planar projection.

#include <cstdint>
#include <string>
#include <vector>

#include "birkhoff/geometry.hpp"

namespace birkhoff {

// Signed area swept on the unit sphere by (b - a)/|b - a| for a in [a0,a1],
// b in [b0,b1]: the Gauss integrand over one segment pair, times 4 pi.
double segment_pair_solid_angle(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1);

struct GaussSum {
  double value = 0.0;     // (1/4pi) * sum of segment-pair solid angles
  long long nearest = 0;  // nearest integer
  double residual = 0.0;  // |value - nearest|
};

// Raw double sum with a fixed reduction order (bitwise deterministic for any
// thread count). Performs no separation or residual checks.
GaussSum gauss_linking_sum(const Curve3& c1, const Curve3& c2);

// Checked linking number. Throws CurvesTooClose, or NonIntegerResult once
// four rounds of 2x resampling fail to bring the residual under tol.integer.
long long linking_number(const Curve3& c1, const Curve3& c2, const Tolerances& tol = {});

// Same for curves on S^3: both are projected from a common pole chosen by
// choose_pole; retries refine on the sphere by geodesic midpoint subdivision.
long long linking_number(const SphereCurve& c1, const SphereCurve& c2, const Tolerances& tol = {});

// Half the signed crossing count between c1 and c2 when viewed along
// `direction` (viewer at +infinity along it). Throws DegenerateProjection
// for non-generic directions.
long long linking_number_crossings(const Curve3& c1, const Curve3& c2, const Vec3& direction,
                                   const Tolerances& tol = {});

// Retries with up to `attempts` seeded perturbations of `direction`.
long long linking_number_crossings(const Curve3& c1, const Curve3& c2, const Vec3& direction, std::uint64_t seed,
                                   int attempts = 32, const Tolerances& tol = {});

// Symmetric integer matrix of pairwise linking numbers; the diagonal is unset.
class LinkingMatrix {
 public:
  explicit LinkingMatrix(std::vector<std::string> names);
  LinkingMatrix(std::vector<std::string> names, const std::vector<std::vector<long long>>& values);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  // Throws InvalidArgument on the diagonal or out of range.
  long long at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, long long value);

  // Rows/columns reordered so that entry (a, b) of the result is entry
  // (perm[a], perm[b]) of this matrix.
  LinkingMatrix permuted(const std::vector<std::size_t>& perm) const;

  bool operator==(const LinkingMatrix&) const = default;

 private:
  void check(std::size_t i, std::size_t j) const;

  std::vector<std::string> names_;
  std::vector<long long> entries_;
};

LinkingMatrix linking_matrix(const WeightedLink<3>& link, const Tolerances& tol = {});
LinkingMatrix linking_matrix(const WeightedLink<4>& link, const Tolerances& tol = {});

}  // namespace birkhoff

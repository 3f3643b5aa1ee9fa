#pragma once

// Euler characteristic, boundary slopes, boundary-circle counts and genus of a
// surface transverse to a flow, computed from its boundary link alone.

#include <optional>
#include <span>
#include <vector>

#include "birkhoff/framing.hpp"
#include "birkhoff/linking.hpp"

namespace birkhoff {

// Boundary slope on the torus around a component, in (meridian, longitude)
// coordinates with the longitude taken from the zero-framing.
struct Slope {
  long long meridian = 0;
  long long longitude = 0;
  bool operator==(const Slope&) const = default;
};

struct SectionTopology {
  long long chi = 0;
  std::optional<long long> genus;  // absent when the formula says the surface is disconnected
  std::vector<Slope> slopes;
  std::vector<long long> circles;
  bool connected_assumed = true;
  std::vector<long long> multiplicities;
  LinkingMatrix lk{std::vector<std::string>{}};
  std::vector<Rational> slk;
};

// chi = -sum_{i<j} (n_i + n_j) Lk_ij - sum_i n_i Slk_i. Throws NonIntegerChi
// when rational self-linkings do not add up to an integer.
long long euler_characteristic(std::span<const long long> n, const LinkingMatrix& lk, std::span<const Rational> slk);

// (-sum_{j != i} n_j Lk_ij, n_i).
Slope boundary_slope(std::size_t i, std::span<const long long> n, const LinkingMatrix& lk);

// gcd(n_i, sum_{j != i} n_j Lk_ij), gcd(a, 0) = |a|. Throws ZeroBoundary when
// both vanish.
long long boundary_circles(std::size_t i, std::span<const long long> n, const LinkingMatrix& lk);

// g = 1 - (chi + b)/2 with b the total number of boundary circles. A negative
// value clears connected_assumed and leaves genus empty. Throws
// NonIntegerGenus when chi + b is odd (no surface has such boundary data).
SectionTopology genus(std::span<const long long> n, const LinkingMatrix& lk, std::span<const Rational> slk);

// Linking matrix and self-linkings from the curves, then genus().
template <int D>
SectionTopology section_topology(const WeightedLink<D>& link, std::span<const RationalFraming<D>> framings,
                                 const Tolerances& tol = {});

}  // namespace birkhoff

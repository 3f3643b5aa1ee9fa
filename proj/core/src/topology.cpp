#include "birkhoff/topology.hpp"

#include <numeric>
#include <string>

#include "birkhoff/errors.hpp"

namespace birkhoff {

namespace {

void check_sizes(std::span<const long long> n, const LinkingMatrix& lk) {
  if (n.size() != lk.size()) {
    throw Error(ErrorCode::InvalidArgument, "multiplicities and linking matrix differ in size");
  }
}

long long off_longitude(std::size_t i, std::span<const long long> n, const LinkingMatrix& lk) {
  check_sizes(n, lk);
  if (i >= n.size()) throw Error(ErrorCode::InvalidArgument, "component index out of range");
  long long a = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (j != i) a += n[j] * lk.at(i, j);
  }
  return a;
}

}  // namespace

long long euler_characteristic(std::span<const long long> n, const LinkingMatrix& lk, std::span<const Rational> slk) {
  check_sizes(n, lk);
  if (slk.size() != n.size()) throw Error(ErrorCode::InvalidArgument, "self-linking list differs in size");
  Rational total = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    total += Rational(off_longitude(i, n, lk)) + Rational(n[i]) * slk[i];
  }
  if (total.denominator() != 1) {
    throw Error(ErrorCode::NonIntegerChi,
                "sum evaluates to " + std::to_string(total.numerator()) + "/" + std::to_string(total.denominator()));
  }
  return -total.numerator();
}

Slope boundary_slope(std::size_t i, std::span<const long long> n, const LinkingMatrix& lk) {
  return {-off_longitude(i, n, lk), n[i]};
}

long long boundary_circles(std::size_t i, std::span<const long long> n, const LinkingMatrix& lk) {
  const long long a = off_longitude(i, n, lk);
  if (a == 0 && n[i] == 0) {
    throw Error(ErrorCode::ZeroBoundary, "component " + std::to_string(i) + " has zero boundary class");
  }
  return std::gcd(n[i], a);
}

SectionTopology genus(std::span<const long long> n, const LinkingMatrix& lk, std::span<const Rational> slk) {
  SectionTopology out;
  out.chi = euler_characteristic(n, lk, slk);
  long long b = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    out.slopes.push_back(boundary_slope(i, n, lk));
    out.circles.push_back(boundary_circles(i, n, lk));
    b += out.circles.back();
  }
  const long long twice = 2 - out.chi - b;
  if (twice % 2 != 0) {
    throw Error(ErrorCode::NonIntegerGenus,
                "chi + b = " + std::to_string(out.chi + b) + " is odd; no surface has this boundary data");
  }
  if (twice < 0) {
    out.connected_assumed = false;
  } else {
    out.genus = twice / 2;
  }
  out.multiplicities.assign(n.begin(), n.end());
  out.lk = lk;
  out.slk.assign(slk.begin(), slk.end());
  return out;
}

template <int D>
SectionTopology section_topology(const WeightedLink<D>& link, std::span<const RationalFraming<D>> framings,
                                 const Tolerances& tol) {
  if (framings.size() != link.size()) {
    throw Error(ErrorCode::InvalidArgument, "need one framing per component");
  }
  const LinkingMatrix lk = linking_matrix(link, tol);
  std::vector<Rational> slk;
  for (std::size_t i = 0; i < link.size(); ++i) {
    try {
      slk.push_back(self_linking(link.component(i), framings[i], std::nullopt, tol).value);
    } catch (const Error& e) {
      throw e.within("component " + std::to_string(i) + " (" + link.component(i).name() + ")");
    }
  }
  return genus(link.multiplicities(), lk, slk);
}

template SectionTopology section_topology<3>(const WeightedLink<3>&, std::span<const RationalFraming<3>>,
                                             const Tolerances&);
template SectionTopology section_topology<4>(const WeightedLink<4>&, std::span<const RationalFraming<4>>,
                                             const Tolerances&);

}  // namespace birkhoff

#pragma once

// Helicity as average asymptotic linking, the Ruelle invariant of a periodic
// orbit, the three framings of an orbit, and the genus/helicity experiment
// over a family of rescaled Seifert fields.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "birkhoff/flows.hpp"
#include "birkhoff/framing.hpp"

namespace birkhoff {

struct HelicityOptions {
  std::optional<double> step;     // physical RK4 step; default duration / arc_vertices
  std::size_t arc_vertices = 512;
  Tolerances tol;
};

struct HelicityEstimate {
  std::string field;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t num_pairs = 0;
  std::size_t rejected = 0;
  double arc_duration = 0.0;
  double step = 0.0;
  std::uint64_t seed = 0;
  std::vector<long long> linking;  // Lk of each accepted pair, in draw order
};

// Mean of Lk(close(arc1), close(arc2)) / T^2 over num_pairs pairs of start
// points drawn uniformly on S^3 from a mt19937_64 seeded with `seed`. Pairs
// whose closures come too close are redrawn. Throws TooManyRejections when
// more draws are rejected than accepted.
HelicityEstimate estimate_helicity(const FlowField& field, double duration, std::size_t num_pairs,
                                   std::uint64_t seed, const HelicityOptions& options = {});

struct RuelleOptions {
  std::size_t steps_per_vertex = 16;  // transport steps between orbit vertices
  Tolerances tol;
};

// Translation number of the linearized flow along the orbit, measured against
// the field's transverse framing. Throws MissingJacobian,
// MissingTransverseField, NotPeriodic.
double ruelle_invariant(const FlowField& field, const PeriodicOrbit& orbit, const RuelleOptions& options = {});

// Slk^zeta(orbit) + R(orbit). When the monodromy is a whole number of turns
// the orbit is also pushed off along the transported frame and the resulting
// linking number must agree; otherwise FramingEquationViolated.
double slk_flow_framing(const FlowField& field, const PeriodicOrbit& orbit, const RuelleOptions& options = {});

struct FramingTriple {
  std::string orbit;
  double period = 0.0;
  Rational slk_zeta;
  double slk_dx = 0.0;
  double ruelle = 0.0;
  std::optional<long long> pushoff_linking;  // geometric check, when it ran
};

// Self-linking against `framing` (the field's transverse framing when empty),
// the Ruelle invariant and the flow-framing self-linking. Throws
// FramingEquationViolated when slk_zeta != slk_dx - ruelle within tol.frame.
FramingTriple framing_triple(const FlowField& field, const PeriodicOrbit& orbit,
                             const std::optional<RationalFraming<4>>& framing = std::nullopt,
                             const RuelleOptions& options = {});

// The framing of a curve by a field's transverse vector field.
RationalFraming<4> transverse_framing(const FlowField& field);

// One member of the experiment: the periodic orbit of `field` through `start`.
struct FamilyMember {
  FlowField field;
  SpherePoint start;
  int p = 0;  // Seifert parameters, 0 when not a Seifert member
  int q = 0;
};

// X_{p,q} / sqrt(pq), started at a generic point (|z1| = |z2|).
FamilyMember seifert_member(int p, int q);

// (1,2), (2,3), (3,5), ... : `depth` consecutive Fibonacci pairs.
std::vector<FamilyMember> fibonacci_family(std::size_t depth);

struct AsymptoticOptions {
  std::size_t helicity_pairs = 8;
  std::uint64_t seed = 0;
  // Vertices of orbits and helicity arcs; 0 selects 8 (p^2 + q^2) per member
  // (at least 256), enough to resolve the torus knot.
  std::size_t vertices = 0;
  RuelleOptions ruelle;
  Tolerances tol;
};

struct AsymptoticRow {
  std::string field;
  int p = 0;
  int q = 0;
  double t_n = 0.0;
  Rational slk_zeta;
  Rational genus;          // 1 + (Slk^zeta - 1)/2
  double g_over_t2 = 0.0;
  double slk_dx_over_t2 = 0.0;
  double ruelle_over_t2 = 0.0;
  double helicity = 0.0;
  double hel_ref = 0.0;    // helicity / 2
  double rel_dev = 0.0;    // |g/t^2 - hel_ref| / hel_ref
  bool identity_holds = false;  // 2 g == Slk^zeta + 1
};

std::vector<AsymptoticRow> asymptotic_genus_experiment(std::span<const FamilyMember> family,
                                                       const AsymptoticOptions& options = {});

}  // namespace birkhoff

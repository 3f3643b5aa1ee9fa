#include "birkhoff/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "birkhoff/errors.hpp"
#include "birkhoff/linking.hpp"
#include "birkhoff/parallel.hpp"

namespace birkhoff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

bool is_rejection(ErrorCode code) {
  switch (code) {
    case ErrorCode::CurvesTooClose:
    case ErrorCode::NonIntegerResult:
    case ErrorCode::NoValidPole:
    case ErrorCode::PoleTooClose:
    case ErrorCode::InvalidCurve:
      return true;
    default:
      return false;
  }
}

Vec4 uniform_point(std::mt19937_64& rng, std::normal_distribution<double>& gauss) {
  for (;;) {
    const Vec4 v(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    if (v.norm() > 1e-8) return v.normalized();
  }
}

void require_differential(const FlowField& field) {
  if (!field.jacobian) throw Error(ErrorCode::MissingJacobian, "field '" + field.name + "' has no differential");
  if (!field.transverse) {
    throw Error(ErrorCode::MissingTransverseField, "field '" + field.name + "' has no transverse field");
  }
}

struct FlowFramingData {
  double ruelle = 0.0;
  std::optional<long long> pushoff_linking;
};

FlowFramingData flow_framing_data(const FlowField& field, const PeriodicOrbit& orbit, const Rational& slk_zeta,
                                  const RuelleOptions& options) {
  require_differential(field);
  if (!(orbit.period > 0.0)) throw Error(ErrorCode::NotPeriodic, "orbit has no positive period");
  const std::size_t n = orbit.curve.size();
  TransportOptions transport;
  transport.steps = n * options.steps_per_vertex;
  const Vec4 v0 = normal_part(field, orbit.start.coords(), field.transverse(orbit.start.coords()));
  const auto samples = linearized_transport(field, orbit, v0, transport, options.tol);

  FlowFramingData out;
  out.ruelle = (*samples.back().angle - *samples.front().angle) / kTwoPi;
  if (std::abs(out.ruelle - std::round(out.ruelle)) >= options.tol.integer) return out;

  // Whole number of turns: the transported frame closes up, so it is a
  // framing of the orbit and can be pushed off along.
  std::vector<Vec4> normals;
  normals.reserve(n);
  for (std::size_t k = 0; k < n; ++k) normals.push_back(samples[k * options.steps_per_vertex].vector);
  const RationalFraming<4> transported{FramingField<4>::explicit_normals(std::move(normals))};
  const SelfLinking slk = self_linking(orbit.curve, transported, std::nullopt, options.tol);
  out.pushoff_linking = slk.linking;
  const double expected = to_double(slk_zeta) + out.ruelle;
  if (std::abs(static_cast<double>(slk.linking) - expected) >= options.tol.frame) {
    throw Error(ErrorCode::FramingEquationViolated,
                "push-off along the transported frame links " + std::to_string(slk.linking) +
                    " times, expected " + std::to_string(expected));
  }
  return out;
}

}  // namespace

HelicityEstimate estimate_helicity(const FlowField& field, double duration, std::size_t num_pairs,
                                   std::uint64_t seed, const HelicityOptions& options) {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
  if (num_pairs == 0) throw Error(ErrorCode::InvalidArgument, "need at least one pair");
  if (options.arc_vertices < 3) throw Error(ErrorCode::TooFewVertices, "arcs need at least 3 vertices");
  const double step = options.step.value_or(duration / static_cast<double>(options.arc_vertices));

  HelicityEstimate est;
  est.field = field.name;
  est.num_pairs = num_pairs;
  est.arc_duration = duration;
  est.step = step;
  est.seed = seed;
  est.linking.assign(num_pairs, 0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<std::size_t> pending(num_pairs);
  for (std::size_t k = 0; k < num_pairs; ++k) pending[k] = k;

  while (!pending.empty()) {
    // Draws are serial so the sample does not depend on the thread count.
    std::vector<std::pair<Vec4, Vec4>> draws;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      const Vec4 a = uniform_point(rng, gauss);
      const Vec4 b = uniform_point(rng, gauss);
      draws.emplace_back(a, b);
    }
    std::vector<std::optional<long long>> results(draws.size());
    parallel_for(draws.size(), [&](std::size_t k) {
      try {
        const auto c1 = close_arc(integrate_orbit(field, SpherePoint(draws[k].first), duration, step), options.tol);
        const auto c2 = close_arc(integrate_orbit(field, SpherePoint(draws[k].second), duration, step), options.tol);
        results[k] = linking_number(c1, c2, options.tol);
      } catch (const Error& e) {
        if (!is_rejection(e.code())) throw;
      }
    });
    std::vector<std::size_t> again;
    for (std::size_t k = 0; k < pending.size(); ++k) {
      if (results[k]) {
        est.linking[pending[k]] = *results[k];
      } else {
        again.push_back(pending[k]);
        ++est.rejected;
      }
    }
    if (est.rejected > num_pairs) {
      throw Error(ErrorCode::TooManyRejections, std::to_string(est.rejected) + " of " +
                                                    std::to_string(est.rejected + num_pairs - again.size()) +
                                                    " draws rejected; T is too large for the separation tolerance");
    }
    pending = std::move(again);
  }

  // Integer moments keep identical samples at exactly zero spread.
  long long sum = 0;
  long double sum_sq = 0.0L;
  for (long long lk : est.linking) {
    sum += lk;
    sum_sq += static_cast<long double>(lk) * static_cast<long double>(lk);
  }
  const auto n = static_cast<long double>(num_pairs);
  const double t2 = duration * duration;
  est.value = static_cast<double>(static_cast<long double>(sum) / n) / t2;
  if (num_pairs > 1) {
    const long double spread = n * sum_sq - static_cast<long double>(sum) * static_cast<long double>(sum);
    const long double variance = std::max(0.0L, spread / (n * (n - 1.0L)));
    est.std_error = static_cast<double>(std::sqrt(variance / n)) / t2;
  }
  return est;
}

RationalFraming<4> transverse_framing(const FlowField& field) {
  if (!field.transverse) {
    throw Error(ErrorCode::MissingTransverseField, "field '" + field.name + "' has no transverse field");
  }
  return RationalFraming<4>{FramingField<4>::ambient(field.transverse)};
}

double ruelle_invariant(const FlowField& field, const PeriodicOrbit& orbit, const RuelleOptions& options) {
  require_differential(field);
  if (!(orbit.period > 0.0)) throw Error(ErrorCode::NotPeriodic, "orbit has no positive period");
  TransportOptions transport;
  transport.steps = orbit.curve.size() * options.steps_per_vertex;
  const Vec4 v0 = normal_part(field, orbit.start.coords(), field.transverse(orbit.start.coords()));
  const auto samples = linearized_transport(field, orbit, v0, transport, options.tol);
  return (*samples.back().angle - *samples.front().angle) / kTwoPi;
}

double slk_flow_framing(const FlowField& field, const PeriodicOrbit& orbit, const RuelleOptions& options) {
  const Rational slk = self_linking(orbit.curve, transverse_framing(field), std::nullopt, options.tol).value;
  return to_double(slk) + flow_framing_data(field, orbit, slk, options).ruelle;
}

FramingTriple framing_triple(const FlowField& field, const PeriodicOrbit& orbit,
                             const std::optional<RationalFraming<4>>& framing, const RuelleOptions& options) {
  require_differential(field);
  const Rational zeta = self_linking(orbit.curve, transverse_framing(field), std::nullopt, options.tol).value;
  const auto data = flow_framing_data(field, orbit, zeta, options);

  FramingTriple t;
  t.orbit = orbit.curve.name();
  t.period = orbit.period;
  t.slk_zeta = framing ? self_linking(orbit.curve, *framing, std::nullopt, options.tol).value : zeta;
  t.ruelle = data.ruelle;
  t.slk_dx = to_double(zeta) + data.ruelle;
  t.pushoff_linking = data.pushoff_linking;
  const double residual = std::abs(to_double(t.slk_zeta) - (t.slk_dx - t.ruelle));
  if (!(residual < options.tol.frame)) {
    throw Error(ErrorCode::FramingEquationViolated,
                "Slk^zeta - (Slk^DX - R) = " + std::to_string(residual) + " on orbit " + t.orbit);
  }
  return t;
}

FamilyMember seifert_member(int p, int q) {
  FlowField field = scaled(seifert_field(p, q), std::sqrt(static_cast<double>(p) * q));
  return FamilyMember{std::move(field), SpherePoint(1.0, 0.0, 1.0, 0.0), p, q};
}

std::vector<FamilyMember> fibonacci_family(std::size_t depth) {
  std::vector<FamilyMember> out;
  int a = 1;
  int b = 2;
  for (std::size_t k = 0; k < depth; ++k) {
    out.push_back(seifert_member(a, b));
    const int next = a + b;
    a = b;
    b = next;
  }
  return out;
}

std::vector<AsymptoticRow> asymptotic_genus_experiment(std::span<const FamilyMember> family,
                                                       const AsymptoticOptions& options) {
  std::vector<AsymptoticRow> rows;
  for (const FamilyMember& member : family) {
    std::size_t n = options.vertices;
    if (n == 0) n = std::max<std::size_t>(256, 8 * static_cast<std::size_t>(member.p * member.p + member.q * member.q));
    const PeriodicOrbit orbit = periodic_orbit(member.field, member.start, n);
    RuelleOptions ruelle = options.ruelle;
    ruelle.tol = options.tol;
    const FramingTriple triple = framing_triple(member.field, orbit, std::nullopt, ruelle);

    HelicityOptions hel;
    hel.arc_vertices = n;
    hel.tol = options.tol;
    const HelicityEstimate estimate =
        estimate_helicity(member.field, orbit.period, options.helicity_pairs, options.seed, hel);

    AsymptoticRow row;
    row.field = member.field.name;
    row.p = member.p;
    row.q = member.q;
    row.t_n = orbit.period;
    row.slk_zeta = triple.slk_zeta;
    row.genus = Rational(1) + (triple.slk_zeta - Rational(1)) / Rational(2);
    const double t2 = row.t_n * row.t_n;
    row.g_over_t2 = to_double(row.genus) / t2;
    row.slk_dx_over_t2 = triple.slk_dx / t2;
    row.ruelle_over_t2 = triple.ruelle / t2;
    row.helicity = estimate.value;
    row.hel_ref = estimate.value / 2.0;
    row.rel_dev = std::abs(row.g_over_t2 - row.hel_ref) / row.hel_ref;
    row.identity_holds = Rational(2) * row.genus == row.slk_zeta + Rational(1);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace birkhoff

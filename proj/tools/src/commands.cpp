#include <cmath>
#include <ostream>

#include "birkhoff/asymptotics.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/parallel.hpp"
#include "birkhoff/topology.hpp"
#include "birkhoff_cli/cli.hpp"

namespace birkhoff::cli {

using nlohmann::json;

namespace {

bool wants_csv(const RunConfig& c) {
  if (c.format) return *c.format == Format::Csv;
  return c.out && c.out->extension() == ".csv";
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out) {
    write_file_atomic(*c.out, text);
  } else {
    out << text;
  }
}

void json_only(const RunConfig& c) {
  if (c.format == Format::Csv) throw UsageError(c.command + " writes JSON only");
}

CurveFile load_curves(const RunConfig& c) {
  if (!c.curves) throw UsageError(c.command + " needs --curves");
  return read_curve_file(*c.curves, c.tol);
}

template <int D>
std::vector<RationalFraming<D>> framings(const RunConfig& c, const CurveSet<D>& set) {
  std::vector<RationalFraming<D>> out;
  for (std::size_t i = 0; i < set.curves.size(); ++i) {
    if (c.framing == "normals") {
      if (!set.normals[i]) {
        throw UsageError("curve '" + set.curves[i].name() + "' has no normals for --framing normals");
      }
      out.push_back({FramingField<D>::explicit_normals(*set.normals[i]), c.k_f});
    } else if constexpr (D == 4) {
      RationalFraming<4> f = transverse_framing(parse_field(c.field));
      f.k_f = c.k_f;
      out.push_back(std::move(f));
    } else {
      throw UsageError("--framing zeta needs curves on S^3");
    }
  }
  return out;
}

template <int D>
WeightedLink<D> weighted(const CurveSet<D>& set, std::vector<long long> mult) {
  if (mult.empty()) mult.assign(set.curves.size(), 1);
  if (mult.size() != set.curves.size()) throw UsageError("--mult needs one entry per curve");
  return WeightedLink<D>(set.curves, std::move(mult));
}

template <int D>
std::string link_output(const RunConfig& c, const CurveSet<D>& set) {
  if (set.curves.size() < 2) throw UsageError("link needs at least two curves");
  const LinkingMatrix lk = linking_matrix(weighted(set, {}), c.tol);
  if (wants_csv(c)) {
    std::string s = "name";
    for (const auto& n : lk.names()) s += "," + csv_field(n);
    s += "\r\n";
    for (std::size_t i = 0; i < lk.size(); ++i) {
      s += csv_field(lk.names()[i]);
      for (std::size_t j = 0; j < lk.size(); ++j) s += "," + (i == j ? std::string() : std::to_string(lk.at(i, j)));
      s += "\r\n";
    }
    return s;
  }
  if (lk.size() == 2) return std::to_string(lk.at(0, 1)) + "\n";
  return dump(json{{"names", lk.names()}, {"lk", to_json(lk)}});
}

template <int D>
std::string slk_output(const RunConfig& c, const CurveSet<D>& set) {
  const auto fr = framings(c, set);
  std::vector<SelfLinking> values;
  for (std::size_t i = 0; i < set.curves.size(); ++i) {
    try {
      values.push_back(self_linking(set.curves[i], fr[i], std::nullopt, c.tol));
    } catch (const Error& e) {
      throw e.within("curve '" + set.curves[i].name() + "'");
    }
  }
  if (wants_csv(c)) {
    std::string s = "name,slk,linking,epsilon\r\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      s += csv_field(set.curves[i].name()) + "," + csv_field(rational_string(values[i].value)) + "," +
           std::to_string(values[i].linking) + "," + format_real(values[i].epsilon) + "\r\n";
    }
    return s;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows.push_back(json{{"name", set.curves[i].name()},
                        {"slk", to_json(values[i].value)},
                        {"linking", values[i].linking},
                        {"epsilon", values[i].epsilon}});
  }
  json doc{{"framing", c.framing}, {"k_f", c.k_f}, {"curves", std::move(rows)}};
  if (c.framing == "zeta") doc["field"] = c.field;
  return dump(doc);
}

template <int D>
std::string section_output(const RunConfig& c, const CurveSet<D>& set) {
  json_only(c);
  const WeightedLink<D> link = weighted(set, c.mult);
  const auto fr = framings(c, set);
  return dump(to_json(section_topology<D>(link, fr, c.tol)));
}

std::string helicity_output(const RunConfig& c) {
  json_only(c);
  FlowField field = parse_field(c.field);
  if (c.scale != 1.0) field = scaled(std::move(field), c.scale);
  HelicityOptions options;
  options.step = c.step;
  options.tol = c.tol;
  return dump(to_json(estimate_helicity(field, c.T, c.pairs.value_or(100), c.seed, options)));
}

std::string asymptotic_output(const RunConfig& c) {
  if (c.family != "seifert-fib") throw UsageError("unknown family '" + c.family + "'");
  AsymptoticOptions options;
  options.helicity_pairs = c.pairs.value_or(8);
  options.seed = c.seed;
  options.vertices = c.vertices.value_or(0);
  options.tol = c.tol;
  options.ruelle.tol = c.tol;
  const auto family = fibonacci_family(c.depth);
  const auto rows = asymptotic_genus_experiment(family, options);
  if (wants_csv(c)) return asymptotic_csv(rows);
  json list = json::array();
  for (const auto& r : rows) list.push_back(to_json(r));
  return dump(json{{"family", c.family},
                   {"members", "X_{p,q}/sqrt(pq) for consecutive Fibonacci pairs (p,q)"},
                   {"effective_period", "2 pi sqrt(pq)"},
                   {"helicity_pairs", options.helicity_pairs},
                   {"seed", c.seed},
                   {"rows", std::move(list)}});
}

int verify_hopf(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::size_t n = c.vertices.value_or(256);
  const FlowField hopf = hopf_field();
  json rows = json::array();
  std::string csv = "m,chi,genus,expected_chi,expected_genus,match\r\n";
  bool all = true;
  for (std::size_t m = 1; m <= c.max_m; ++m) {
    std::vector<SphereCurve> fibers;
    std::vector<RationalFraming<4>> fr;
    const auto points = spread_fiber_points(m);
    for (std::size_t k = 0; k < m; ++k) {
      fibers.push_back(periodic_orbit(hopf, points[k], n).curve.renamed("fiber" + std::to_string(k)));
      fr.push_back(transverse_framing(hopf));
    }
    const WeightedLink<4> link(std::move(fibers), std::vector<long long>(m, 1), c.tol);
    const SectionTopology s = section_topology<4>(link, fr, c.tol);
    const auto mm = static_cast<long long>(m);
    const long long chi = -mm * (mm - 2);
    const long long g = 1 + mm * (mm - 3) / 2;
    const bool match = s.chi == chi && s.genus == g;
    all = all && match;
    rows.push_back(json{{"m", m},
                        {"chi", s.chi},
                        {"genus", s.genus ? json(*s.genus) : json(nullptr)},
                        {"expected_chi", chi},
                        {"expected_genus", g},
                        {"match", match}});
    csv += std::to_string(m) + "," + std::to_string(s.chi) + "," + (s.genus ? std::to_string(*s.genus) : "") + "," +
           std::to_string(chi) + "," + std::to_string(g) + "," + (match ? "true" : "false") + "\r\n";
  }
  emit(c, wants_csv(c) ? csv : dump(json{{"vertices", n}, {"rows", std::move(rows)}}), out);
  if (!all) {
    err << "verify-hopf: first-principles values differ from the closed forms\n";
    return 2;
  }
  return 0;
}

void check_config(const RunConfig& c) {
  const Tolerances& t = c.tol;
  for (double x : {t.integer, t.frame, t.separation, t.pole}) {
    if (!(x > 0.0)) throw UsageError("tolerances must be positive");
  }
  if (c.k_f < 1) throw UsageError("k_f must be at least 1");
  if (c.framing != "zeta" && c.framing != "normals") throw UsageError("framing must be zeta or normals");
  if (c.step && !(*c.step > 0.0)) throw UsageError("step must be positive");
  if (!(c.T > 0.0) || !(c.scale > 0.0)) throw UsageError("T and scale must be positive");
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    check_config(c);
    set_max_threads(c.threads);
    if (c.command == "link" || c.command == "slk" || c.command == "section") {
      const CurveFile file = load_curves(c);
      std::string text;
      if (c.command == "link") {
        text = file.ambient == Ambient::S3 ? link_output(c, file.s3) : link_output(c, file.r3);
      } else if (c.command == "slk") {
        text = file.ambient == Ambient::S3 ? slk_output(c, file.s3) : slk_output(c, file.r3);
      } else {
        text = file.ambient == Ambient::S3 ? section_output(c, file.s3) : section_output(c, file.r3);
      }
      emit(c, text, out);
      return 0;
    }
    if (c.command == "helicity") {
      emit(c, helicity_output(c), out);
      return 0;
    }
    if (c.command == "asymptotic") {
      emit(c, asymptotic_output(c), out);
      return 0;
    }
    if (c.command == "verify-hopf") return verify_hopf(c, out, err);
    throw UsageError("unknown command '" + c.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? 1 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace birkhoff::cli

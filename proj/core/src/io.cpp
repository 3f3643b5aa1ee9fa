#include "birkhoff/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "birkhoff/errors.hpp"

namespace birkhoff {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <int D>
Eigen::Matrix<double, D, 1> read_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != D) parse_error(where + ": expected " + std::to_string(D) + " coordinates");
  Eigen::Matrix<double, D, 1> p;
  for (int k = 0; k < D; ++k) {
    if (!j[k].is_number()) parse_error(where + ": coordinates must be numbers");
    p[k] = j[k].get<double>();
    if (!std::isfinite(p[k])) throw Error(ErrorCode::InvalidCurve, where + ": non-finite coordinate");
  }
  return p;
}

template <int D>
CurveSet<D> read_curves(const json& list, const Tolerances& tol) {
  CurveSet<D> set;
  for (std::size_t c = 0; c < list.size(); ++c) {
    const json& entry = list[c];
    const std::string where = "curve " + std::to_string(c);
    if (!entry.is_object()) parse_error(where + ": expected an object");
    std::string name = "curve" + std::to_string(c);
    if (entry.contains("name")) {
      if (!entry["name"].is_string()) parse_error(where + ": name must be a string");
      name = entry["name"].get<std::string>();
    }
    if (!entry.contains("vertices") || !entry["vertices"].is_array()) parse_error(where + ": missing vertices");
    std::vector<Eigen::Matrix<double, D, 1>> vertices;
    for (std::size_t k = 0; k < entry["vertices"].size(); ++k) {
      auto p = read_point<D>(entry["vertices"][k], where + " vertex " + std::to_string(k));
      if constexpr (D == 4) {
        if (std::abs(p.norm() - 1.0) > tol.reader_norm) {
          throw Error(ErrorCode::InvalidCurve, where + " vertex " + std::to_string(k) + " is off the unit sphere");
        }
      }
      vertices.push_back(p);
    }
    std::optional<std::vector<Eigen::Matrix<double, D, 1>>> normals;
    if (entry.contains("normals")) {
      if (!entry["normals"].is_array() || entry["normals"].size() != vertices.size()) {
        parse_error(where + ": normals must match the vertices one to one");
      }
      normals.emplace();
      for (std::size_t k = 0; k < entry["normals"].size(); ++k) {
        normals->push_back(read_point<D>(entry["normals"][k], where + " normal " + std::to_string(k)));
      }
    }
    set.curves.emplace_back(std::move(vertices), std::move(name), tol);
    set.normals.push_back(std::move(normals));
  }
  return set;
}

template <int D>
json point_json(const Eigen::Matrix<double, D, 1>& p) {
  json a = json::array();
  for (int k = 0; k < D; ++k) a.push_back(p[k]);
  return a;
}

}  // namespace

CurveFile parse_curve_file(std::string_view text, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(e.what());
  } catch (const json::out_of_range& e) {
    // A literal such as 1e999 overflows to infinity.
    throw Error(ErrorCode::InvalidCurve, std::string("non-finite coordinate: ") + e.what());
  }
  if (!doc.is_object()) parse_error("expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "ambient" && key != "curves") parse_error("unknown key '" + key + "'");
  }
  if (!doc.contains("ambient") || !doc["ambient"].is_string()) parse_error("missing ambient");
  if (!doc.contains("curves") || !doc["curves"].is_array()) parse_error("missing curves");
  const std::string ambient = doc["ambient"].get<std::string>();
  CurveFile file;
  if (ambient == "s3") {
    file.ambient = Ambient::S3;
    file.s3 = read_curves<4>(doc["curves"], tol);
  } else if (ambient == "r3") {
    file.ambient = Ambient::R3;
    file.r3 = read_curves<3>(doc["curves"], tol);
  } else {
    parse_error("ambient must be \"s3\" or \"r3\"");
  }
  return file;
}

CurveFile read_curve_file(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_curve_file(text.str(), tol);
}

template <int D>
json curves_to_json(const CurveSet<D>& set) {
  json curves = json::array();
  for (std::size_t c = 0; c < set.curves.size(); ++c) {
    json entry;
    entry["name"] = set.curves[c].name();
    json vertices = json::array();
    for (const auto& v : set.curves[c].vertices()) vertices.push_back(point_json<D>(v));
    entry["vertices"] = std::move(vertices);
    if (c < set.normals.size() && set.normals[c]) {
      json normals = json::array();
      for (const auto& v : *set.normals[c]) normals.push_back(point_json<D>(v));
      entry["normals"] = std::move(normals);
    }
    curves.push_back(std::move(entry));
  }
  return json{{"ambient", D == 4 ? "s3" : "r3"}, {"curves", std::move(curves)}};
}

template json curves_to_json<3>(const CurveSet<3>&);
template json curves_to_json<4>(const CurveSet<4>&);

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return rational_string(r);
}

json to_json(const LinkingMatrix& lk) {
  json rows = json::array();
  for (std::size_t i = 0; i < lk.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < lk.size(); ++j) row.push_back(i == j ? json(nullptr) : json(lk.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const SectionTopology& s) {
  json j;
  j["chi"] = s.chi;
  if (s.genus) j["genus"] = *s.genus;
  j["connected_assumed"] = s.connected_assumed;
  j["multiplicities"] = s.multiplicities;
  json slopes = json::array();
  for (const Slope& slope : s.slopes) slopes.push_back(json::array({slope.meridian, slope.longitude}));
  j["slopes"] = std::move(slopes);
  j["circles"] = s.circles;
  j["names"] = s.lk.names();
  j["lk"] = to_json(s.lk);
  json slk = json::array();
  for (const Rational& r : s.slk) slk.push_back(to_json(r));
  j["slk"] = std::move(slk);
  return j;
}

json to_json(const HelicityEstimate& h) {
  return json{{"field", h.field},
              {"value", h.value},
              {"stderr", h.std_error},
              {"num_pairs", h.num_pairs},
              {"rejected", h.rejected},
              {"arc_duration", h.arc_duration},
              {"step", h.step},
              {"seed", h.seed},
              {"linking", h.linking}};
}

json to_json(const FramingTriple& t) {
  json j{{"orbit", t.orbit},
         {"period", t.period},
         {"slk_zeta", to_json(t.slk_zeta)},
         {"slk_dx", t.slk_dx},
         {"ruelle", t.ruelle}};
  j["pushoff_linking"] = t.pushoff_linking ? json(*t.pushoff_linking) : json(nullptr);
  return j;
}

json to_json(const AsymptoticRow& r) {
  return json{{"field", r.field},
              {"p", r.p},
              {"q", r.q},
              {"t_n", r.t_n},
              {"slk_zeta", to_json(r.slk_zeta)},
              {"genus", to_json(r.genus)},
              {"g_over_t2", r.g_over_t2},
              {"slk_dx_over_t2", r.slk_dx_over_t2},
              {"ruelle_over_t2", r.ruelle_over_t2},
              {"helicity", r.helicity},
              {"hel_ref", r.hel_ref},
              {"rel_dev", r.rel_dev},
              {"identity_holds", r.identity_holds}};
}

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows) {
  std::string out = "p,q,t_n,genus,g_over_t2,hel_ref,rel_dev\r\n";
  for (const AsymptoticRow& r : rows) {
    out += std::to_string(r.p) + "," + std::to_string(r.q) + "," + format_real(r.t_n) + "," +
           csv_field(rational_string(r.genus)) + "," + format_real(r.g_over_t2) + "," + format_real(r.hel_ref) + "," +
           format_real(r.rel_dev) + "\r\n";
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace birkhoff

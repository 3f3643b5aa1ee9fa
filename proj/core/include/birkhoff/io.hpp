#pragma once

// Curve files and machine-readable output.
//
// Curve file: {"ambient": "s3" | "r3",
//              "curves": [{"name": ..., "vertices": [[x, y, z(, w)], ...],
//                          "normals": [[...], ...]}]}
// "normals" is optional and gives one framing vector per vertex.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "birkhoff/asymptotics.hpp"
#include "birkhoff/linking.hpp"
#include "birkhoff/topology.hpp"

namespace birkhoff {

enum class Ambient { S3, R3 };

template <int D>
struct CurveSet {
  using Point = typename PolyCurve<D>::Point;
  std::vector<PolyCurve<D>> curves;
  std::vector<std::optional<std::vector<Point>>> normals;  // aligned with curves
};

struct CurveFile {
  Ambient ambient = Ambient::S3;
  CurveSet<4> s3;
  CurveSet<3> r3;

  std::size_t size() const { return ambient == Ambient::S3 ? s3.curves.size() : r3.curves.size(); }
};

// Throws ParseError for malformed documents and InvalidCurve for non-finite
// coordinates or S^3 vertices whose norm is off by more than tol.reader_norm.
CurveFile parse_curve_file(std::string_view text, const Tolerances& tol = {});
CurveFile read_curve_file(const std::filesystem::path& path, const Tolerances& tol = {});

template <int D>
nlohmann::json curves_to_json(const CurveSet<D>& set);

// Integers stay integers; other rationals become "n/d".
nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const LinkingMatrix& lk);  // null diagonal
nlohmann::json to_json(const SectionTopology& s);
nlohmann::json to_json(const HelicityEstimate& h);
nlohmann::json to_json(const FramingTriple& t);
nlohmann::json to_json(const AsymptoticRow& r);

std::string rational_string(const Rational& r);

// Shortest decimal that reads back as the same double.
std::string format_real(double x);

// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

// Header p,q,t_n,genus,g_over_t2,hel_ref,rel_dev.
std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows);

// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

// Writes via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace birkhoff

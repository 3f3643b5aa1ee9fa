#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "birkhoff_cli/cli.hpp"

namespace birkhoff::cli {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

double positive(const json& value, const std::string& key) {
  if (!value.is_number()) throw UsageError("config key '" + key + "' must be a number");
  const double x = value.get<double>();
  if (!(x > 0.0)) throw UsageError("config key '" + key + "' must be positive");
  return x;
}

std::size_t count(const json& value, const std::string& key) {
  if (!value.is_number_unsigned()) throw UsageError("config key '" + key + "' must be a non-negative integer");
  return value.get<std::size_t>();
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw UsageError("format must be json or csv");
}

}  // namespace

void apply_config(const json& doc, RunConfig& c) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") c.command = get_as<std::string>(v, key);
    else if (key == "curves") c.curves = get_as<std::string>(v, key);
    else if (key == "out") c.out = get_as<std::string>(v, key);
    else if (key == "mult") c.mult = get_as<std::vector<long long>>(v, key);
    else if (key == "framing") c.framing = get_as<std::string>(v, key);
    else if (key == "k_f") c.k_f = get_as<int>(v, key);
    else if (key == "field") c.field = get_as<std::string>(v, key);
    else if (key == "scale") c.scale = positive(v, key);
    else if (key == "T") c.T = positive(v, key);
    else if (key == "pairs") c.pairs = count(v, key);
    else if (key == "step") c.step = positive(v, key);
    else if (key == "family") c.family = get_as<std::string>(v, key);
    else if (key == "depth") c.depth = count(v, key);
    else if (key == "max_m") c.max_m = count(v, key);
    else if (key == "vertices") c.vertices = count(v, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "threads") c.threads = get_as<unsigned>(v, key);
    else if (key == "eps_int") c.tol.integer = positive(v, key);
    else if (key == "eps_frame") c.tol.frame = positive(v, key);
    else if (key == "eps_sep") c.tol.separation = positive(v, key);
    else if (key == "delta_pole") c.tol.pole = positive(v, key);
    else if (key == "format") c.format = parse_format(get_as<std::string>(v, key));
    else throw UsageError("unknown config key '" + key + "'");
  }
}

std::variant<RunConfig, int> parse_arguments(int argc, const char* const* argv, std::ostream& out,
                                             std::ostream& err) {
  CLI::App app{"Topology of surfaces transverse to flows on S^3", "birkhoff"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig f;  // flag values; only the ones given override
  std::string config_path;
  std::string format;
  std::string curves;
  std::string out_path;
  std::size_t pairs = 0;
  std::size_t vertices = 0;
  double step = 0.0;

  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  auto* o_threads = app.add_option("--threads", f.threads, "worker thread cap (0 = all cores)");
  auto* o_eps_int = app.add_option("--eps-int", f.tol.integer, "integrality tolerance")->check(CLI::PositiveNumber);
  auto* o_eps_frame = app.add_option("--eps-frame", f.tol.frame, "framing-equation tolerance")->check(CLI::PositiveNumber);
  auto* o_eps_sep = app.add_option("--eps-sep", f.tol.separation, "minimum curve separation")->check(CLI::PositiveNumber);
  auto* o_delta_pole = app.add_option("--delta-pole", f.tol.pole, "minimum pole distance (rad)")->check(CLI::PositiveNumber);
  auto* o_seed = app.add_option("--seed", f.seed, "random seed");
  auto* o_step = app.add_option("--step", step, "integrator step")->check(CLI::PositiveNumber);
  auto* o_format = app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  auto* o_out = app.add_option("--out", out_path, "output file (default stdout)");

  auto* link = app.add_subcommand("link", "pairwise linking numbers of the curves in a file");
  auto* slk = app.add_subcommand("slk", "self-linking number of each curve");
  auto* section = app.add_subcommand("section", "Euler characteristic, genus and boundary of a transverse surface");
  auto* helicity = app.add_subcommand("helicity", "Monte-Carlo helicity of a built-in field");
  auto* asymptotic = app.add_subcommand("asymptotic", "genus / helicity over a family of rescaled fields");
  auto* verify = app.add_subcommand("verify-hopf", "Hopf-fiber surfaces from first principles against closed forms");

  std::vector<CLI::Option*> o_curves;
  for (auto* sub : {link, slk, section}) {
    o_curves.push_back(sub->add_option("--curves", curves, "curve file (JSON)"));
  }
  std::vector<CLI::Option*> o_framing, o_field, o_vertices, o_pairs;
  for (auto* sub : {slk, section}) {
    o_framing.push_back(sub->add_option("--framing", f.framing, "zeta | normals")->check(CLI::IsMember({"zeta", "normals"})));
    o_field.push_back(sub->add_option("--field", f.field, "field providing zeta"));
  }
  auto* o_kf = slk->add_option("--k-f", f.k_f, "framing multiplicity")->check(CLI::PositiveNumber);
  auto* o_mult = section->add_option("--mult", f.mult, "multiplicities, comma separated")->delimiter(',');
  o_field.push_back(helicity->add_option("--field", f.field, "hopf | seifert:p,q"));
  auto* o_T = helicity->add_option("--T", f.T, "arc duration")->check(CLI::PositiveNumber);
  o_pairs.push_back(helicity->add_option("--pairs", pairs, "number of orbit pairs")->check(CLI::PositiveNumber));
  auto* o_scale = helicity->add_option("--scale", f.scale, "divide the field by this")->check(CLI::PositiveNumber);
  auto* o_family = asymptotic->add_option("--family", f.family, "family name")->check(CLI::IsMember({"seifert-fib"}));
  auto* o_depth = asymptotic->add_option("--depth", f.depth, "number of family members");
  o_pairs.push_back(asymptotic->add_option("--pairs", pairs, "helicity pairs per member")->check(CLI::PositiveNumber));
  o_vertices.push_back(asymptotic->add_option("--vertices", vertices, "vertices per orbit (0 = automatic)"));
  auto* o_max_m = verify->add_option("--max-m", f.max_m, "largest number of fibers")->check(CLI::PositiveNumber);
  o_vertices.push_back(verify->add_option("--vertices", vertices, "vertices per fiber")->check(CLI::PositiveNumber));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  RunConfig c;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read config " + config_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw UsageError("malformed config: " + std::string(e.what()));
      }
      apply_config(doc, c);
    }
    if (!format.empty()) c.format = parse_format(format);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  c.command = app.get_subcommands().front()->get_name();

  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (auto* o : opts) {
      if (o->count() > 0) return true;
    }
    return false;
  };
  if (o_threads->count()) c.threads = f.threads;
  if (o_eps_int->count()) c.tol.integer = f.tol.integer;
  if (o_eps_frame->count()) c.tol.frame = f.tol.frame;
  if (o_eps_sep->count()) c.tol.separation = f.tol.separation;
  if (o_delta_pole->count()) c.tol.pole = f.tol.pole;
  if (o_seed->count()) c.seed = f.seed;
  if (o_step->count()) c.step = step;
  if (o_out->count()) c.out = out_path;
  (void)o_format;
  if (given(o_curves)) c.curves = curves;
  if (given(o_framing)) c.framing = f.framing;
  if (given(o_field)) c.field = f.field;
  if (given(o_pairs)) c.pairs = pairs;
  if (given(o_vertices)) c.vertices = vertices;
  if (o_kf->count()) c.k_f = f.k_f;
  if (o_mult->count()) c.mult = f.mult;
  if (o_T->count()) c.T = f.T;
  if (o_scale->count()) c.scale = f.scale;
  if (o_family->count()) c.family = f.family;
  if (o_depth->count()) c.depth = f.depth;
  if (o_max_m->count()) c.max_m = f.max_m;
  return c;
}

}  // namespace birkhoff::cli

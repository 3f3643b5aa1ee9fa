// Acceptance suite. Prints one PASS/FAIL line per criterion; the exit status
// is non-zero when any selected criterion fails.
//
//   acceptance                 run every criterion
//   acceptance --criterion 4   run one

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "birkhoff/asymptotics.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/linking.hpp"
#include "birkhoff/topology.hpp"
#include "birkhoff_cli/cli.hpp"
#include "oracles.hpp"

using namespace birkhoff;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<SphereCurve> hopf_fibers(std::size_t m, std::size_t n) {
  std::vector<SphereCurve> out;
  const FlowField h = hopf_field();
  const auto points = spread_fiber_points(m);
  for (std::size_t k = 0; k < m; ++k) out.push_back(periodic_orbit(h, points[k], n).curve.renamed("fiber" + std::to_string(k)));
  return out;
}

SectionTopology hopf_section(std::size_t m, std::size_t n, const std::vector<long long>& mult) {
  const WeightedLink<4> link(hopf_fibers(m, n), mult);
  const std::vector<RationalFraming<4>> fr(m, transverse_framing(hopf_field()));
  return section_topology<4>(link, fr);
}

Outcome hopf_disc() {
  const auto t0 = Clock::now();
  const FlowField h = hopf_field();
  const PeriodicOrbit fiber = periodic_orbit(h, SpherePoint(0.6, 0.0, 0.0, 0.8), 128);
  const SelfLinking slk = self_linking(fiber.curve, transverse_framing(h));
  const std::vector<long long> n{1};
  const SectionTopology s = genus(n, LinkingMatrix({"fiber"}), std::vector<Rational>{slk.value});
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "Slk=" << rational_string(slk.value) << " chi=" << s.chi << " g=" << (s.genus ? std::to_string(*s.genus) : "none") << " in "
    << elapsed << " s";
  return {slk.value == Rational(-1) && s.chi == 1 && s.genus == 0 && elapsed < 1.0, d.str()};
}

Outcome hopf_table() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (std::size_t m = 1; m <= 6; ++m) {
    const SectionTopology s = hopf_section(m, 256, std::vector<long long>(m, 1));
    const auto mm = static_cast<long long>(m);
    const bool row = s.chi == -mm * (mm - 2) && s.genus == 1 + mm * (mm - 3) / 2;
    ok = ok && row;
    d << "m=" << m << ":(" << s.chi << "," << (s.genus ? std::to_string(*s.genus) : "none") << ") ";
  }
  const double elapsed = seconds_since(t0);
  d << "in " << elapsed << " s";
  return {ok && elapsed < 30.0, d.str()};
}

Outcome weighted_hopf() {
  std::mt19937_64 rng(20);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  std::uniform_int_distribution<long long> mult(-3, 6);
  // Linking data from the curves, once per m.
  std::map<std::size_t, std::pair<LinkingMatrix, std::vector<Rational>>> data;
  int done = 0, wrong = 0;
  std::ostringstream d;
  while (done < 20) {
    const std::size_t m = size(rng);
    std::vector<long long> n(m);
    for (auto& x : n) x = mult(rng);
    const long long sum = std::accumulate(n.begin(), n.end(), 0LL);
    if (sum <= 0) continue;
    if (!data.contains(m)) {
      const auto fibers = hopf_fibers(m, 128);
      const LinkingMatrix lk = linking_matrix(WeightedLink<4>(fibers, std::vector<long long>(m, 1)));
      std::vector<Rational> slk;
      for (const auto& f : fibers) slk.push_back(self_linking(f, transverse_framing(hopf_field())).value);
      data.emplace(m, std::pair{lk, slk});
    }
    const auto& [lk, slk] = data.at(m);
    const long long chi = euler_characteristic(n, lk, slk);
    if (chi != (2 - static_cast<long long>(m)) * sum) {
      ++wrong;
      d << "m=" << m << " chi=" << chi << " ";
    }
    ++done;
  }
  d << done << " vectors, " << wrong << " mismatches";
  return {wrong == 0, d.str()};
}

Outcome linking_oracles() {
  std::mt19937_64 rng(4);
  int done = 0, mismatch = 0, nonzero = 0;
  double worst = 0.0;
  while (done < 100) {
    const auto a = oracle::random_trig_curve(rng, 3, 48, 1.5);
    const auto b = oracle::random_trig_curve(rng, 3, 48, 1.5);
    if (oracle::min_distance(a, b) < 0.02) continue;
    const Curve3 ca(a), cb(b);
    const GaussSum g = gauss_linking_sum(ca, cb);
    const long long gauss = linking_number(ca, cb);
    const Vec3 dir(std::normal_distribution<double>()(rng), 0.3, 1.0);
    const long long crossings = linking_number_crossings(ca, cb, dir.normalized(), rng());
    worst = std::max(worst, g.residual);
    if (gauss != crossings) ++mismatch;
    if (gauss != 0) ++nonzero;
    ++done;
  }
  std::ostringstream d;
  d << done << " pairs (" << nonzero << " linked), " << mismatch << " disagreements, max residual " << worst;
  return {mismatch == 0 && worst < 1e-6, d.str()};
}

Outcome slopes_and_parity() {
  const SectionTopology s = hopf_section(2, 128, {1, 1});
  bool slopes_ok = s.slopes.size() == 2;
  for (const Slope& slope : s.slopes) slopes_ok = slopes_ok && slope == Slope{-1, 1};

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<long long> mult(-6, 6), link(-5, 5), half(-6, 6);
  int tested = 0, violations = 0;
  while (tested < 1000) {
    const auto m = static_cast<std::size_t>(size(rng));
    std::vector<long long> n(m);
    for (auto& x : n) x = mult(rng);
    std::vector<std::string> names(m, "c");
    LinkingMatrix lk(names);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) lk.set(i, j, link(rng));
    }
    // Periodic orbits of these fields have odd Slk^zeta.
    std::vector<Rational> slk(m);
    for (auto& x : slk) x = 2 * half(rng) + 1;
    try {
      const SectionTopology t = genus(n, lk, slk);
      const long long b = std::accumulate(t.circles.begin(), t.circles.end(), 0LL);
      if ((t.chi + b) % 2 != 0) ++violations;
      ++tested;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroBoundary) {
        ++violations;
        ++tested;
      }
    }
  }
  std::ostringstream d;
  d << "slopes (" << s.slopes[0].meridian << "," << s.slopes[0].longitude << ") (" << s.slopes[1].meridian << ","
    << s.slopes[1].longitude << "); parity violations " << violations << "/" << tested;
  return {slopes_ok && violations == 0, d.str()};
}

Outcome helicity() {
  const auto t0 = Clock::now();
  const HelicityEstimate hopf = estimate_helicity(hopf_field(), 2 * kPi, 100, 6);
  const HelicityEstimate seifert = estimate_helicity(seifert_field(2, 3), 2 * kPi, 100, 6);
  const double elapsed = seconds_since(t0);
  const double hopf_ref = 1.0 / (4 * kPi * kPi);
  const double seifert_ref = 6.0 / (4 * kPi * kPi);
  std::ostringstream d;
  d.precision(17);
  d << "hopf " << hopf.value << " (ref " << hopf_ref << ", stderr " << hopf.std_error << "), seifert(2,3) "
    << seifert.value << " (ref " << seifert_ref << ") in " << elapsed << " s";
  return {std::abs(hopf.value - hopf_ref) < 1e-9 && hopf.std_error == 0.0 &&
              std::abs(seifert.value - seifert_ref) < 1e-6 && elapsed < 60.0,
          d.str()};
}

Outcome framing_equation() {
  bool ok = true;
  std::ostringstream d;
  struct Case {
    FlowField field;
    std::size_t vertices;
  };
  const std::vector<Case> cases{{hopf_field(), 128}, {seifert_field(2, 3), 104}, {seifert_field(3, 5), 272}};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const PeriodicOrbit o = periodic_orbit(c.field, SpherePoint(0.8, 0.0, 0.0, 0.6), c.vertices);
    const FramingTriple t = framing_triple(c.field, o);
    const double zeta = static_cast<double>(t.slk_zeta.numerator()) / t.slk_zeta.denominator();
    const double residual = std::abs(zeta - (t.slk_dx - t.ruelle));
    ok = ok && residual < 1e-3;
    if (k == 0) {
      ok = ok && t.slk_zeta == Rational(-1) && std::abs(t.slk_dx - 1.0) < 1e-3 && std::abs(t.ruelle - 2.0) < 1e-3;
    }
    d << c.field.name << ":(" << rational_string(t.slk_zeta) << "," << t.slk_dx << "," << t.ruelle << ") ";
  }
  return {ok, d.str()};
}

Outcome asymptotic_genus() {
  const auto rows = asymptotic_genus_experiment(fibonacci_family(6));
  bool monotone = true, identity = true;
  std::ostringstream d;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0 && rows[k].rel_dev > rows[k - 1].rel_dev) monotone = false;
    identity = identity && rows[k].identity_holds;
    d << "(" << rows[k].p << "," << rows[k].q << "):" << rows[k].rel_dev << " ";
  }
  const double last = rows.empty() ? INFINITY : rows.back().rel_dev;
  d << "monotone=" << (monotone ? "yes" : "no") << " identity=" << (identity ? "yes" : "no")
    << " last deviation " << last << " (bound 0.1)";
  return {rows.size() == 6 && monotone && identity && last < 0.10, d.str()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "birkhoff_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string data = BIRKHOFF_DATA_DIR;
  const std::vector<std::vector<std::string>> commands{
      {"link", "--curves", data + "/four_fibers.json"},
      {"slk", "--curves", data + "/two_fibers.json"},
      {"section", "--curves", data + "/four_fibers.json", "--mult", "1,2,1,3"},
      {"helicity", "--field", "seifert:2,3", "--T", "5", "--pairs", "20", "--seed", "42"},
      {"asymptotic", "--depth", "3", "--pairs", "4", "--seed", "1", "--format", "csv"},
      {"asymptotic", "--depth", "3", "--pairs", "4", "--seed", "1"},
      {"verify-hopf", "--max-m", "5"}};
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  int identical = 0;
  std::ostringstream d;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("out" + std::to_string(k) + "_" + std::to_string(rep));
      std::vector<std::string> args{"birkhoff"};
      args.insert(args.end(), commands[k].begin(), commands[k].end());
      args.insert(args.end(), {"--out", out.string()});
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream o, e;
      auto parsed = cli::parse_arguments(static_cast<int>(argv.size()), argv.data(), o, e);
      const int status = std::holds_alternative<int>(parsed) ? std::get<int>(parsed)
                                                             : cli::run(std::get<cli::RunConfig>(parsed), o, e);
      outputs[rep] = status == 0 ? read(out) : "status " + std::to_string(status) + ": " + e.str();
    }
    if (outputs[0] == outputs[1] && !outputs[0].empty() && !outputs[0].starts_with("status")) {
      ++identical;
    } else {
      d << commands[k][0] << " differs; ";
    }
  }
  fs::remove_all(dir);
  d << identical << "/" << commands.size() << " commands byte-identical";
  return {identical == static_cast<int>(commands.size()), d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "Hopf disc", hopf_disc},
      {2, "Hopf table m=1..6", hopf_table},
      {3, "weighted Hopf Euler characteristic", weighted_hopf},
      {4, "Gauss sum vs crossing count", linking_oracles},
      {5, "boundary slopes and parity", slopes_and_parity},
      {6, "helicity of Hopf and Seifert(2,3)", helicity},
      {7, "framing equation", framing_equation},
      {8, "asymptotic genus over the Fibonacci family", asymptotic_genus},
      {9, "byte-identical reruns", determinism},
  };
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--criterion" && k + 1 < argc) {
      only = std::stoi(argv[++k]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

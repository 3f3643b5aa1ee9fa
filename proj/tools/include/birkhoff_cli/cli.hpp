#pragma once

// Command-line front end: argument and config parsing, and the commands.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "birkhoff/tolerances.hpp"

namespace birkhoff::cli {

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;  // link | slk | section | helicity | asymptotic | verify-hopf
  std::optional<std::filesystem::path> curves;
  std::optional<std::filesystem::path> out;
  std::vector<long long> mult;
  std::string framing = "zeta";  // zeta | normals
  int k_f = 1;
  std::string field = "hopf";
  double scale = 1.0;
  double T = 6.283185307179586;
  std::optional<std::size_t> pairs;     // helicity: 100, asymptotic: 8
  std::optional<double> step;
  std::string family = "seifert-fib";
  std::size_t depth = 6;
  std::size_t max_m = 6;
  std::optional<std::size_t> vertices;  // verify-hopf: 256, asymptotic: automatic
  std::uint64_t seed = 0;
  unsigned threads = 0;
  Tolerances tol;
  std::optional<Format> format;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Overwrites the fields named in a config document. Unknown keys and
// mistyped values throw UsageError.
void apply_config(const nlohmann::json& doc, RunConfig& config);

// Subcommand and flags, layered over an optional --config file. Returns an
// exit status instead when parsing fails or help was printed.
std::variant<RunConfig, int> parse_arguments(int argc, const char* const* argv, std::ostream& out,
                                             std::ostream& err);

// Exit status: 0 success, 1 usage or malformed input, 2 domain error (the
// error name goes to err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace birkhoff::cli

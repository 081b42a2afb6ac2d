#pragma once

// Run configuration files, presets for the reproduction runs, and parsing
// with line/column diagnostics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modchar/modified.hpp"
#include "modchar/series.hpp"

namespace modchar {

using Json = nlohmann::ordered_json;

struct CharacterSpec {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> exponents;
  std::optional<std::string> label;

  friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;
};

struct ModificationSpec {
  std::uint64_t p = 0;
  /// f(p) = e^{2πi a/b}
  std::int64_t a = 0;
  std::int64_t b = 1;

  friend bool operator==(const ModificationSpec&, const ModificationSpec&) = default;
};

struct OutputSpec {
  std::string format;  // csv, json or gnuplot
  std::string path;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct RunConfig {
  CharacterSpec character;
  std::vector<ModificationSpec> modifications;
  std::uint64_t x_max = 1000000;
  CheckpointRule checkpoints;
  /// Empty means "auto": the single order min_riesz_order(γ).
  std::optional<std::vector<int>> orders;
  double gamma = 1.0;
  /// Target accuracy for L-function values.
  double precision = 1e-12;
  std::vector<OutputSpec> outputs;
  bool allow_imprimitive = false;
  std::vector<std::string> notes;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws Error(Config) with "source:line:col: message" on any schema violation.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

Json to_json(const RunConfig& config);
std::string serialize_config(const RunConfig& config);

Character resolve_character(const CharacterSpec& spec);
ModifiedCharacter build_modified(const RunConfig& config);
std::vector<int> resolve_orders(const RunConfig& config, const ModifiedCharacter& mc);

const std::vector<std::string>& preset_names();
/// Throws Error(Config) for an unknown name.
RunConfig preset_config(const std::string& name);

}  // namespace modchar

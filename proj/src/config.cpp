#include "modchar/config.hpp"

#include <algorithm>
#include <cmath>
#include <climits>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "modchar/arith.hpp"
#include "modchar/diophantine.hpp"
#include "modchar/error.hpp"

namespace modchar {
namespace {

// Maps JSON pointers to the offset where their value (or, with a "#key"
// suffix, their member name) starts in the source text.
class PositionIndex {
 public:
  explicit PositionIndex(const std::string& text) : t_(text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i] == '\n') line_starts_.push_back(i + 1);
    }
    skip_ws();
    if (i_ < t_.size()) value("");
  }

  std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1};
  }

  std::pair<std::size_t, std::size_t> locate(std::string ptr) const {
    for (;;) {
      auto it = offsets_.find(ptr);
      if (it != offsets_.end()) return line_col(it->second);
      if (ptr.empty()) return {1, 1};
      const auto hash = ptr.rfind('#');
      if (hash != std::string::npos) {
        ptr.erase(hash);
        continue;
      }
      ptr.erase(ptr.rfind('/'));
    }
  }

 private:
  void skip_ws() {
    while (i_ < t_.size() && (t_[i_] == ' ' || t_[i_] == '\t' || t_[i_] == '\n' || t_[i_] == '\r')) ++i_;
  }

  std::string read_string() {
    std::string out;
    ++i_;
    while (i_ < t_.size() && t_[i_] != '"') {
      if (t_[i_] == '\\' && i_ + 1 < t_.size()) {
        ++i_;
        switch (t_[i_]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          default: out += t_[i_];
        }
      } else {
        out += t_[i_];
      }
      ++i_;
    }
    ++i_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& ptr) {
    skip_ws();
    offsets_[ptr] = i_;
    if (i_ >= t_.size()) return;
    const char c = t_[i_];
    if (c == '{') {
      ++i_;
      for (;;) {
        skip_ws();
        if (i_ >= t_.size() || t_[i_] == '}') break;
        const std::size_t key_at = i_;
        const std::string child = ptr + "/" + escape(read_string());
        offsets_[child + "#key"] = key_at;
        skip_ws();
        ++i_;  // ':'
        value(child);
        skip_ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      for (std::size_t n = 0;; ++n) {
        skip_ws();
        if (i_ >= t_.size() || t_[i_] == ']') break;
        value(ptr + "/" + std::to_string(n));
        skip_ws();
        if (i_ < t_.size() && t_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '"') {
      read_string();
    } else {
      while (i_ < t_.size() && std::string(",]} \t\r\n").find(t_[i_]) == std::string::npos) ++i_;
    }
  }

  const std::string& t_;
  std::size_t i_ = 0;
  std::vector<std::size_t> line_starts_;
  std::map<std::string, std::size_t> offsets_;
};

class Validator {
 public:
  Validator(const PositionIndex& index, std::string source) : index_(index), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& message) const {
    const auto [line, col] = index_.locate(ptr);
    throw Error(ErrorCode::Config, source_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + message +
                                       " (at " + (ptr.empty() ? std::string("/") : ptr) + ")");
  }

  void object(const Json& j, const std::string& ptr, const std::set<std::string>& allowed) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (const auto& [key, _] : j.items()) {
      if (!allowed.count(key)) fail(ptr + "/" + key + "#key", "unknown field \"" + key + "\"");
    }
  }

  const Json& required(const Json& j, const std::string& ptr, const std::string& key) const {
    if (!j.contains(key)) fail(ptr, "missing required field \"" + key + "\"");
    return j.at(key);
  }

  std::uint64_t unsigned_int(const Json& j, const std::string& ptr, std::uint64_t lo = 0) const {
    std::uint64_t v = 0;
    if (j.is_number_unsigned()) {
      v = j.get<std::uint64_t>();
    } else if (j.is_number_integer()) {
      fail(ptr, "expected a non-negative integer");
    } else if (j.is_number_float()) {
      const double d = j.get<double>();
      if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) fail(ptr, "expected a non-negative integer");
      v = static_cast<std::uint64_t>(d);
    } else {
      fail(ptr, "expected an integer");
    }
    if (v < lo) fail(ptr, "value must be at least " + std::to_string(lo));
    return v;
  }

  std::int64_t signed_int(const Json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail(ptr, "integer out of range");
    }
    return j.get<std::int64_t>();
  }

  double number(const Json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    return j.get<double>();
  }

  std::string string(const Json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

 private:
  const PositionIndex& index_;
  std::string source_;
};

CharacterSpec parse_character(const Validator& v, const Json& j, const std::string& ptr) {
  v.object(j, ptr, {"modulus", "exponents", "label"});
  CharacterSpec spec;
  spec.modulus = v.unsigned_int(v.required(j, ptr, "modulus"), ptr + "/modulus", 1);
  if (j.contains("exponents")) {
    const Json& e = j.at("exponents");
    if (!e.is_array()) v.fail(ptr + "/exponents", "expected an array of integers");
    for (std::size_t i = 0; i < e.size(); ++i) {
      spec.exponents.push_back(v.unsigned_int(e[i], ptr + "/exponents/" + std::to_string(i)));
    }
  }
  if (j.contains("label")) spec.label = v.string(j.at("label"), ptr + "/label");
  if (!j.contains("exponents") && !spec.label) v.fail(ptr, "character needs \"exponents\" or \"label\"");
  return spec;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  Json root;
  PositionIndex index(text);
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = index.line_col(std::min(offset, text.size()));
    throw Error(ErrorCode::Config, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                       ": malformed JSON: " + e.what());
  }
  const Validator v(index, source);
  v.object(root, "", {"character", "modifications", "x_max", "checkpoints", "orders", "gamma", "precision", "outputs",
                      "allow_imprimitive", "notes"});
  RunConfig cfg;
  cfg.character = parse_character(v, v.required(root, "", "character"), "/character");

  if (root.contains("modifications")) {
    const Json& mods = root.at("modifications");
    if (!mods.is_array()) v.fail("/modifications", "expected an array");
    for (std::size_t i = 0; i < mods.size(); ++i) {
      const std::string ptr = "/modifications/" + std::to_string(i);
      v.object(mods[i], ptr, {"p", "angle"});
      ModificationSpec m;
      m.p = v.unsigned_int(v.required(mods[i], ptr, "p"), ptr + "/p");
      if (!arith::is_prime(m.p)) v.fail(ptr + "/p", "modification key " + std::to_string(m.p) + " is not a prime");
      const Json& angle = v.required(mods[i], ptr, "angle");
      if (!angle.is_array() || angle.size() != 2) v.fail(ptr + "/angle", "angle must be a pair [a, b]");
      m.a = v.signed_int(angle[0], ptr + "/angle/0");
      m.b = v.signed_int(angle[1], ptr + "/angle/1");
      if (m.b < 1) v.fail(ptr + "/angle/1", "angle denominator must be >= 1");
      for (const auto& prev : cfg.modifications) {
        if (prev.p == m.p) v.fail(ptr + "/p", "prime " + std::to_string(m.p) + " is modified twice");
      }
      cfg.modifications.push_back(m);
    }
  }
  if (root.contains("x_max")) cfg.x_max = v.unsigned_int(root.at("x_max"), "/x_max", 1);
  if (root.contains("checkpoints")) {
    try {
      cfg.checkpoints = CheckpointRule::parse(v.string(root.at("checkpoints"), "/checkpoints"));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Config) throw;
      v.fail("/checkpoints", e.what());
    }
  }
  if (root.contains("orders")) {
    const Json& o = root.at("orders");
    if (o.is_string()) {
      if (o.get<std::string>() != "auto") v.fail("/orders", "orders must be \"auto\" or a list of integers");
    } else if (o.is_array()) {
      std::vector<int> orders;
      for (std::size_t i = 0; i < o.size(); ++i) {
        const std::string ptr = "/orders/" + std::to_string(i);
        const auto k = v.unsigned_int(o[i], ptr);
        if (k > static_cast<std::uint64_t>(kMaxRieszOrder)) {
          v.fail(ptr, "Riesz order above " + std::to_string(kMaxRieszOrder));
        }
        orders.push_back(static_cast<int>(k));
      }
      cfg.orders = orders;
    } else {
      v.fail("/orders", "orders must be \"auto\" or a list of integers");
    }
  }
  if (root.contains("gamma")) {
    cfg.gamma = v.number(root.at("gamma"), "/gamma");
    if (!(cfg.gamma > 0.0)) v.fail("/gamma", "gamma must be positive");
  }
  if (root.contains("precision")) {
    cfg.precision = v.number(root.at("precision"), "/precision");
    if (!(cfg.precision > 0.0 && cfg.precision < 1.0)) v.fail("/precision", "precision must lie in (0, 1)");
  }
  if (root.contains("outputs")) {
    const Json& outs = root.at("outputs");
    if (!outs.is_array()) v.fail("/outputs", "expected an array");
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const std::string ptr = "/outputs/" + std::to_string(i);
      v.object(outs[i], ptr, {"format", "path"});
      OutputSpec out;
      out.format = v.string(v.required(outs[i], ptr, "format"), ptr + "/format");
      if (out.format != "csv" && out.format != "json" && out.format != "gnuplot") {
        v.fail(ptr + "/format", "format must be csv, json or gnuplot");
      }
      out.path = v.string(v.required(outs[i], ptr, "path"), ptr + "/path");
      cfg.outputs.push_back(out);
    }
  }
  if (root.contains("allow_imprimitive")) {
    if (!root.at("allow_imprimitive").is_boolean()) v.fail("/allow_imprimitive", "expected true or false");
    cfg.allow_imprimitive = root.at("allow_imprimitive").get<bool>();
  }
  if (root.contains("notes")) {
    const Json& notes = root.at("notes");
    if (!notes.is_array()) v.fail("/notes", "expected an array of strings");
    for (std::size_t i = 0; i < notes.size(); ++i) cfg.notes.push_back(v.string(notes[i], "/notes/" + std::to_string(i)));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

Json to_json(const RunConfig& c) {
  Json j;
  Json ch;
  ch["modulus"] = c.character.modulus;
  if (!c.character.exponents.empty() || !c.character.label) ch["exponents"] = c.character.exponents;
  if (c.character.label) ch["label"] = *c.character.label;
  j["character"] = ch;
  j["modifications"] = Json::array();
  for (const auto& m : c.modifications) {
    Json mj;
    mj["p"] = m.p;
    mj["angle"] = {m.a, m.b};
    j["modifications"].push_back(mj);
  }
  j["x_max"] = c.x_max;
  j["checkpoints"] = c.checkpoints.to_string();
  if (c.orders) j["orders"] = *c.orders;
  else j["orders"] = "auto";
  j["gamma"] = c.gamma;
  j["precision"] = c.precision;
  j["outputs"] = Json::array();
  for (const auto& o : c.outputs) j["outputs"].push_back({{"format", o.format}, {"path", o.path}});
  j["allow_imprimitive"] = c.allow_imprimitive;
  j["notes"] = c.notes;
  return j;
}

std::string serialize_config(const RunConfig& config) { return to_json(config).dump(2) + "\n"; }

Character resolve_character(const CharacterSpec& spec) {
  if (spec.label) {
    const Character chi = character_from_label(*spec.label);
    if (chi.modulus() != spec.modulus) {
      throw Error(ErrorCode::Config, "label " + *spec.label + " does not match modulus " + std::to_string(spec.modulus));
    }
    if (!spec.exponents.empty() && chi.exponents() != spec.exponents) {
      throw Error(ErrorCode::Config, "label " + *spec.label + " does not match the exponent vector");
    }
    return chi;
  }
  return character_from_exponents(spec.modulus, spec.exponents);
}

ModifiedCharacter build_modified(const RunConfig& config) {
  std::vector<Modification> mods;
  for (const auto& m : config.modifications) {
    mods.push_back({m.p, UnitValue::root(m.a, static_cast<std::uint64_t>(m.b))});
  }
  BuildOptions opts;
  opts.allow_imprimitive = config.allow_imprimitive;
  return build_modified(resolve_character(config.character), std::move(mods), opts);
}

std::vector<int> resolve_orders(const RunConfig& config, const ModifiedCharacter& mc) {
  if (config.orders) return *config.orders;
  return {min_riesz_order(mc, config.gamma).k};
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "bcc"};
  return names;
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.character = {3, {1}, std::string("3.2")};
  c.x_max = 1000000;
  c.checkpoints = CheckpointRule::parse("geometric:1.01");
  if (name == "fig1") {
    c.modifications = {{2, 0, 1}, {3, 0, 1}, {5, 0, 1}, {11, 0, 1}};
    c.notes = {"fig1: f(2)=f(3)=f(5)=f(11)=+1, expected N=4."};
  } else if (name == "fig2") {
    c.modifications = {{2, 0, 1}, {3, 0, 1}, {5, 0, 1}, {7, 1, 2}, {11, 0, 1}};
    c.notes = {"fig2: f(2)=f(3)=f(5)=f(11)=+1 and f(7)=-1, expected N=3.",
               "The caption says four modifications but lists five values; all five are used."};
  } else if (name == "fig3") {
    c.modifications = {{3, 1, 2}, {7, 1, 2}, {13, 1, 2}, {19, 1, 2}};
    c.notes = {"fig3: f(3)=f(7)=f(13)=f(19)=-1, expected N=0.",
               "The caption lists f(10); 10 is not prime and is replaced by 19, the next prime with chi(p)=1."};
  } else if (name == "bcc") {
    c.modifications = {{3, 0, 1}};
    c.notes = {"Borwein-Choi-Coons modification f(3)=+1 of chi_3, expected N=1; partial sums grow like log x."};
  } else {
    throw Error(ErrorCode::Config, "unknown preset \"" + name + "\" (expected fig1, fig2, fig3 or bcc)");
  }
  return c;
}

}  // namespace modchar

#include "nirlw/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "nirlw/errors.hpp"

namespace nirlw {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

SummableSequence to_sequence(const std::string& key, const std::string& v) {
  const auto parts = split(v, ':');
  if (parts.size() == 3 && parts[0] == "power")
    return SummableSequence::shifted_power(to_double(key, parts[1]), to_double(key, parts[2]));
  if (parts.size() == 2 && parts[0] == "geometric")
    return SummableSequence::geometric(to_double(key, parts[1]));
  if (parts.size() == 2 && parts[0] == "constant")
    return SummableSequence::constant(static_cast<long>(to_integer(key, parts[1])));
  throw ConfigError("key '" + key + "': expected power:A:beta, geometric:ratio or constant:k, got '" +
                    v + "'");
}

std::optional<std::string> lookup(const KeyValues& kv, const std::string& key) {
  std::optional<std::string> out;
  for (const auto& [k, v] : kv)
    if (k == key) out = v;
  return out;
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key or value");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

std::pair<std::string, std::string> parse_override(const std::string& text) {
  std::istringstream in(text);
  KeyValues kv = parse_key_values(in, "--override " + text);
  if (kv.size() != 1) throw ConfigError("override must be a single key=value, got '" + text + "'");
  return kv.front();
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "preset",      "name",          "N",           "M",
      "p",           "r",             "s",           "strict",
      "delta",       "tau",           "tau_tilde",   "c_alpha",
      "eta",         "nu",            "omega_bar",   "c_omega",
      "vartheta",    "q",             "rho",         "c_const",
      "a_seq",       "alpha00",       "max_outer",   "max_inner",
      "max_total_inner", "eval_stride", "rate_mode", "diagnostics",
      "seed",        "noise",         "outlier_count", "outlier_magnitude", "noise_norm"};
  return keys;
}

void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  SolverConfig& c = spec.config;
  if (key == "preset" || key == "N" || key == "M") {
    throw ConfigError("key '" + key + "' selects the base spec and is only valid in build_spec");
  } else if (key == "name") {
    spec.name = value;
  } else if (key == "p") {
    c.space.p = to_double(key, value);
    c.space.s = std::max(c.space.p, 2.0);
  } else if (key == "r") {
    c.space.r = to_double(key, value);
  } else if (key == "s") {
    c.space.s = to_double(key, value);
  } else if (key == "strict") {
    c.space.strict = to_bool(key, value);
  } else if (key == "delta") {
    spec.noise.delta = to_double(key, value);
    c.delta = spec.noise.delta;
  } else if (key == "tau") {
    c.tau = to_double(key, value);
  } else if (key == "tau_tilde") {
    c.tau_tilde = to_double(key, value);
  } else if (key == "c_alpha") {
    c.c_alpha = to_double(key, value);
  } else if (key == "eta") {
    c.eta = to_double(key, value);
  } else if (key == "nu") {
    c.nu = to_double(key, value);
  } else if (key == "omega_bar") {
    c.omega_bar = to_double(key, value);
  } else if (key == "c_omega") {
    c.c_omega = to_double(key, value);
  } else if (key == "vartheta") {
    if (value == "auto")
      c.vartheta.reset();
    else
      c.vartheta = to_double(key, value);
  } else if (key == "q") {
    c.q = to_double(key, value);
  } else if (key == "rho") {
    c.rho = to_double(key, value);
  } else if (key == "c_const") {
    c.c_const = to_double(key, value);
  } else if (key == "a_seq") {
    c.a_seq = to_sequence(key, value);
  } else if (key == "alpha00") {
    c.alpha00 = to_double(key, value);
  } else if (key == "max_outer") {
    c.budgets.max_outer = static_cast<int>(to_integer(key, value));
  } else if (key == "max_inner") {
    c.budgets.max_inner = static_cast<long>(to_integer(key, value));
  } else if (key == "max_total_inner") {
    c.budgets.max_total_inner = static_cast<long>(to_integer(key, value));
  } else if (key == "eval_stride") {
    c.eval_stride = static_cast<int>(to_integer(key, value));
  } else if (key == "rate_mode") {
    c.rate_mode = to_bool(key, value);
  } else if (key == "diagnostics") {
    c.diagnostics = to_bool(key, value);
  } else if (key == "seed") {
    spec.seed = to_u64(key, value);
  } else if (key == "noise") {
    if (value == "gaussian")
      spec.noise.kind = NoiseSpec::Kind::gaussian;
    else if (value == "gaussian+outliers" || value == "outliers")
      spec.noise.kind = NoiseSpec::Kind::gaussian_outliers;
    else
      throw ConfigError("key 'noise': expected gaussian or gaussian+outliers, got '" + value + "'");
  } else if (key == "outlier_count") {
    spec.noise.outlier_count = static_cast<int>(to_integer(key, value));
  } else if (key == "noise_norm") {
    spec.noise.norm_exponent = to_double(key, value);
  } else if (key == "outlier_magnitude") {
    spec.noise.outlier_magnitude = to_double(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

ExperimentSpec build_spec(const KeyValues& settings) {
  const std::string preset = lookup(settings, "preset").value_or("example1");
  std::optional<int> n, m;
  if (auto v = lookup(settings, "N")) n = static_cast<int>(to_integer("N", *v));
  if (auto v = lookup(settings, "M")) m = static_cast<int>(to_integer("M", *v));
  ExperimentSpec spec = make_preset(preset, n, m);

  auto is_base = [](const std::string& k) { return k == "preset" || k == "N" || k == "M"; };
  // p, r first (p resets s), then s, then everything else in file order.
  for (const char* first : {"p", "r"})
    if (auto v = lookup(settings, first)) apply_setting(spec, first, *v);
  if (auto v = lookup(settings, "s")) apply_setting(spec, "s", *v);
  for (const auto& [k, v] : settings) {
    if (is_base(k) || k == "p" || k == "r" || k == "s") continue;
    apply_setting(spec, k, v);
  }
  return spec;
}

}  // namespace nirlw

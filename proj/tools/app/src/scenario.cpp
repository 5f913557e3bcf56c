#include "beamflutter/app/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace beamflutter::app {

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line) {}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Simulate: return "simulate";
    case ScenarioKind::Sweep: return "sweep";
    case ScenarioKind::Ucrit: return "ucrit";
    case ScenarioKind::Dispersion: return "dispersion";
  }
  return "?";
}

namespace {

// Carries the failing key to the line-aware wrapper in parse_scenario.
struct SettingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw SettingError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw SettingError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw SettingError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

std::string_view strip_brackets(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') text = trim(text.substr(1, text.size() - 2));
  return text;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  text = strip_brackets(text);
  if (text.empty()) return items;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    items.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  text = trim(text);
  for (std::string_view fn : {"linspace", "logspace"}) {
    if (text.substr(0, fn.size()) != fn) continue;
    std::string_view rest = trim(text.substr(fn.size()));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
      throw SettingError(std::string(key) + ": malformed " + std::string(fn) + "(a, b, n)");
    const auto args = split_list(rest.substr(1, rest.size() - 2));
    if (args.size() != 3) throw SettingError(std::string(key) + ": " + std::string(fn) + " takes three arguments");
    const double a = parse_double(key, args[0]);
    const double b = parse_double(key, args[1]);
    const int n = parse_int(key, args[2]);
    if (n < 1) throw SettingError(std::string(key) + ": point count must be positive");
    return fn == "linspace" ? linspace(a, b, n) : logspace(a, b, n);
  }
  std::vector<double> values;
  for (std::string_view item : split_list(text)) values.push_back(parse_double(key, item));
  return values;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

InitialCondition ic_from_name(std::string_view name, const InitialCondition& current) {
  if (name == "equilibrium") return ic::Equilibrium{};
  if (name == "second_mode") return ic::SecondMode{};
  if (name == "polynomial") return ic::PolynomialID{};
  if (name == "linear_iv") return ic::LinearIV{};
  if (name == "scaled_linear_iv") {
    if (const auto* s = std::get_if<ic::ScaledLinearIV>(&current)) return *s;
    return ic::ScaledLinearIV{};
  }
  if (name == "custom") {
    if (const auto* c = std::get_if<ic::Custom>(&current)) return *c;
    return ic::Custom{};
  }
  throw SettingError("ic: unknown initial condition '" + std::string(name) + "'");
}

ic::Custom& custom_ic(InitialCondition& ic) {
  if (!std::holds_alternative<ic::Custom>(ic)) ic = ic::Custom{};
  return std::get<ic::Custom>(ic);
}

void set_outputs(OutputSelection& out, std::string_view text) {
  out = OutputSelection{false, false, false, false};
  for (std::string_view item : split_list(text)) {
    if (item == "none") continue;
    if (item == "trajectory") out.trajectory = true;
    else if (item == "energies") out.energies = true;
    else if (item == "tip") out.tip = true;
    else if (item == "sweep") out.sweep_table = true;
    else throw SettingError("outputs: unknown output '" + std::string(item) + "'");
  }
}

std::string outputs_text(const OutputSelection& out) {
  std::vector<std::string> names;
  if (out.trajectory) names.emplace_back("trajectory");
  if (out.energies) names.emplace_back("energies");
  if (out.tip) names.emplace_back("tip");
  if (out.sweep_table) names.emplace_back("sweep");
  if (names.empty()) return "none";
  std::string text;
  for (std::size_t i = 0; i < names.size(); ++i) text += (i ? ", " : "") + names[i];
  return text;
}

void apply_setting_impl(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  BeamConfig& b = cfg.beam;
  SimulationOptions& sim = cfg.simulation;
  if (key == "name") {
    if (value.empty()) throw SettingError("name: must not be empty");
    cfg.name = std::string(value);
  } else if (key == "kind") {
    if (value == "simulate") cfg.kind = ScenarioKind::Simulate;
    else if (value == "sweep") cfg.kind = ScenarioKind::Sweep;
    else if (value == "ucrit") cfg.kind = ScenarioKind::Ucrit;
    else if (value == "dispersion") cfg.kind = ScenarioKind::Dispersion;
    else throw SettingError("kind: expected simulate, sweep, ucrit or dispersion");
  } else if (key == "D") {
    b.D = parse_double(key, value);
  } else if (key == "L") {
    b.L = parse_double(key, value);
  } else if (key == "alpha") {
    b.alpha = parse_double(key, value);
  } else if (key == "k0") {
    b.k0 = parse_double(key, value);
  } else if (key == "k1") {
    b.k1 = parse_double(key, value);
  } else if (key == "theory_damping") {
    b.theory_damping = parse_bool(key, value);
  } else if (key == "b1") {
    b.b1 = parse_double(key, value);
  } else if (key == "b2") {
    b.b2 = parse_double(key, value);
  } else if (key == "beta") {
    b.beta = parse_double(key, value);
  } else if (key == "U") {
    b.U = parse_double(key, value);
  } else if (key == "p0") {
    b.p0 = Polynomial(parse_list(key, value));
  } else if (key == "bc") {
    try {
      b.bc_variant = boundary_variant_from_string(value);
    } catch (const std::invalid_argument& e) {
      throw SettingError(std::string("bc: ") + e.what());
    }
  } else if (key == "ic") {
    cfg.ic = ic_from_name(value, cfg.ic);
  } else if (key == "ic.c" || key == "c") {
    cfg.ic = ic::ScaledLinearIV{parse_double(key, value)};
  } else if (key == "ic.displacement") {
    custom_ic(cfg.ic).displacement = Polynomial(parse_list(key, value));
  } else if (key == "ic.velocity") {
    custom_ic(cfg.ic).velocity = Polynomial(parse_list(key, value));
  } else if (key == "n_elements") {
    sim.n_elements = parse_int(key, value);
  } else if (key == "dt") {
    sim.dt = parse_double(key, value);
  } else if (key == "T") {
    sim.T = parse_double(key, value);
  } else if (key == "samples") {
    sim.samples = parse_int(key, value);
  } else if (key == "stride") {
    sim.stride = parse_int(key, value);
  } else if (key == "blow_up_energy") {
    sim.blow_up_energy = parse_double(key, value);
  } else if (key == "outputs") {
    set_outputs(cfg.outputs, value);
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(value);
  } else if (key == "metric") {
    try {
      cfg.metric = sweep_metric_from_string(value);
    } catch (const std::invalid_argument& e) {
      throw SettingError(std::string("metric: ") + e.what());
    }
  } else if (key.substr(0, 5) == "grid.") {
    SweepAxis axis;
    try {
      axis = sweep_axis_from_string(key.substr(5));
    } catch (const std::invalid_argument& e) {
      throw SettingError(std::string(key) + ": " + e.what());
    }
    std::vector<double> values = parse_list(key, value);
    auto it = std::find_if(cfg.grid.begin(), cfg.grid.end(), [&](const GridAxis& g) { return g.axis == axis; });
    if (it != cfg.grid.end())
      it->values = std::move(values);
    else
      cfg.grid.push_back({axis, std::move(values)});
  } else if (key == "ucrit.alpha") {
    cfg.ucrit_alphas = parse_list(key, value);
  } else if (key == "ucrit.bracket") {
    const auto v = parse_list(key, value);
    if (v.size() != 2) throw SettingError("ucrit.bracket: expected two values");
    cfg.bracket_lo = v[0];
    cfg.bracket_hi = v[1];
  } else if (key == "ucrit.tol") {
    cfg.ucrit_tolerance = parse_double(key, value);
  } else if (key == "dispersion.alpha") {
    cfg.dispersion_alphas = parse_list(key, value);
  } else if (key == "dispersion.kmax") {
    cfg.kmax = parse_double(key, value);
  } else if (key == "dispersion.points") {
    cfg.k_points = parse_int(key, value);
  } else {
    throw SettingError("unknown key '" + std::string(key) + "'");
  }
}

// Splits `{a: 1, b: [1, 2]}` into entries, respecting brackets and parentheses.
std::vector<std::string> split_braced(std::string_view body) {
  std::vector<std::string> entries;
  int depth = 0;
  std::string current;
  for (char ch : body) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      entries.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!trim(current).empty()) entries.push_back(current);
  return entries;
}

std::pair<std::string_view, std::string_view> split_entry(std::string_view entry) {
  const std::size_t eq = entry.find('=');
  const std::size_t colon = entry.find(':');
  const std::size_t pos = std::min(eq, colon);
  if (pos == std::string_view::npos) return {trim(entry), {}};
  return {trim(entry.substr(0, pos)), trim(entry.substr(pos + 1))};
}

}  // namespace

void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  try {
    apply_setting_impl(cfg, trim(key), value);
  } catch (const SettingError& e) {
    throw ConfigError("setting", 0, e.what());
  }
}

void validate(const ScenarioConfig& cfg) {
  try {
    cfg.beam.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.name, 0, e.what());
  }
  const SimulationOptions& s = cfg.simulation;
  if (s.n_elements < 2) throw ConfigError(cfg.name, 0, "n_elements must be at least 2");
  if (!(s.dt > 0.0)) throw ConfigError(cfg.name, 0, "dt must be positive");
  if (!(s.T > 0.0)) throw ConfigError(cfg.name, 0, "T must be positive");
  if (s.samples < 1) throw ConfigError(cfg.name, 0, "samples must be positive");
  if (s.stride < 0) throw ConfigError(cfg.name, 0, "stride must be non-negative");
  if (cfg.kind == ScenarioKind::Sweep) {
    if (cfg.grid.empty()) throw ConfigError(cfg.name, 0, "sweep needs at least one grid.<axis> entry");
    for (const auto& g : cfg.grid)
      if (g.values.empty()) throw ConfigError(cfg.name, 0, "grid axis without values");
  }
  if (cfg.kind == ScenarioKind::Ucrit) {
    if (cfg.ucrit_alphas.empty()) throw ConfigError(cfg.name, 0, "ucrit.alpha must list at least one value");
    if (!(cfg.bracket_lo >= 0.0 && cfg.bracket_hi > cfg.bracket_lo))
      throw ConfigError(cfg.name, 0, "ucrit.bracket must satisfy 0 <= lo < hi");
    if (!(cfg.ucrit_tolerance > 0.0)) throw ConfigError(cfg.name, 0, "ucrit.tol must be positive");
  }
  if (cfg.kind == ScenarioKind::Dispersion) {
    if (!(cfg.kmax > 0.0)) throw ConfigError(cfg.name, 0, "dispersion.kmax must be positive");
    if (cfg.k_points < 2) throw ConfigError(cfg.name, 0, "dispersion.points must be at least 2");
  }
}

ScenarioConfig parse_scenario(std::istream& in, const std::string& source) {
  ScenarioConfig cfg;
  std::vector<std::pair<int, std::string>> lines;
  std::string raw;
  for (int n = 1; std::getline(in, raw); ++n) {
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (!trim(raw).empty()) lines.emplace_back(n, std::string(trim(raw)));
  }

  std::vector<std::pair<int, std::string>> entries;
  if (!lines.empty() && lines.front().second.front() == '{') {
    std::string body;
    for (const auto& [n, text] : lines) body += text + "\n";
    const std::string_view b = trim(body);
    if (b.back() != '}') throw ConfigError(source, lines.back().first, "unterminated '{'");
    for (auto& e : split_braced(b.substr(1, b.size() - 2)))
      if (!trim(e).empty()) entries.emplace_back(lines.front().first, e);
  } else {
    entries = std::move(lines);
  }

  for (const auto& [n, text] : entries) {
    const auto [key, value] = split_entry(text);
    if (value.data() == nullptr) throw ConfigError(source, n, "expected 'key = value' or 'key: value'");
    if (key.empty()) throw ConfigError(source, n, "missing key");
    try {
      apply_setting_impl(cfg, key, value);
    } catch (const SettingError& e) {
      throw ConfigError(source, n, e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, n, e.what());
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  return parse_scenario(in, path.string());
}

void write_manifest(std::ostream& os, const ScenarioConfig& cfg) {
  const BeamConfig& b = cfg.beam;
  const SimulationOptions& s = cfg.simulation;
  auto kv = [&](std::string_view key, const std::string& value) { os << key << " = " << value << '\n'; };
  auto num = [&](std::string_view key, double v) { kv(key, format_double(v)); };

  kv("name", cfg.name);
  kv("kind", std::string(to_string(cfg.kind)));
  os << "\n# beam\n";
  num("D", b.D);
  num("L", b.L);
  num("alpha", b.alpha);
  num("k0", b.k0);
  num("k1", b.k1);
  kv("theory_damping", b.theory_damping ? "true" : "false");
  num("b1", b.b1);
  num("b2", b.b2);
  num("beta", b.beta);
  num("U", b.U);
  kv("p0", "[" + format_list(b.p0.coefficients()) + "]");
  kv("bc", std::string(to_string(b.bc_variant)));

  os << "\n# initial data\n";
  kv("ic", ic_name(cfg.ic));
  if (const auto* scaled = std::get_if<ic::ScaledLinearIV>(&cfg.ic)) num("ic.c", scaled->c);
  if (const auto* custom = std::get_if<ic::Custom>(&cfg.ic)) {
    kv("ic.displacement", "[" + format_list(custom->displacement.coefficients()) + "]");
    kv("ic.velocity", "[" + format_list(custom->velocity.coefficients()) + "]");
  }

  os << "\n# discretization\n";
  kv("n_elements", std::to_string(s.n_elements));
  num("dt", s.dt);
  num("T", s.T);
  kv("samples", std::to_string(s.samples));
  kv("stride", std::to_string(s.stride));
  num("blow_up_energy", s.blow_up_energy);

  os << "\n# outputs\n";
  kv("outputs", outputs_text(cfg.outputs));
  if (!cfg.output_dir.empty()) kv("output_dir", cfg.output_dir);

  os << "\n# sweep\n";
  kv("metric", std::string(to_string(cfg.metric)));
  for (const auto& g : cfg.grid) kv("grid." + std::string(to_string(g.axis)), format_list(g.values));

  os << "\n# critical velocity search\n";
  kv("ucrit.alpha", format_list(cfg.ucrit_alphas));
  kv("ucrit.bracket", format_double(cfg.bracket_lo) + ", " + format_double(cfg.bracket_hi));
  num("ucrit.tol", cfg.ucrit_tolerance);

  os << "\n# dispersion\n";
  kv("dispersion.alpha", format_list(cfg.dispersion_alphas));
  num("dispersion.kmax", cfg.kmax);
  kv("dispersion.points", std::to_string(cfg.k_points));
}

}  // namespace beamflutter::app

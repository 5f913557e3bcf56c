#include "beamflutter/app/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace beamflutter::app {

namespace {

constexpr double kUcritAlpha0 = 135.97;
constexpr double kUcritAlpha1em3 = 129.68;
constexpr double kUcritAlpha1 = 22.09;

std::string label(std::string_view prefix, std::string_view key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::string(prefix) + "_" + std::string(key) + buf;
}

ScenarioConfig base(std::string_view name) {
  ScenarioConfig cfg;
  cfg.name = std::string(name);
  return cfg;
}

using Setter = std::function<void(ScenarioConfig&, double)>;

std::vector<ScenarioConfig> family(std::string_view prefix, std::string_view key, const std::vector<double>& values,
                                   const ScenarioConfig& proto, const Setter& set) {
  std::vector<ScenarioConfig> out;
  for (double v : values) {
    ScenarioConfig cfg = proto;
    cfg.name = label(prefix, key, v);
    set(cfg, v);
    out.push_back(std::move(cfg));
  }
  return out;
}

std::vector<ScenarioConfig> u_family(std::string_view prefix, double alpha, double b2, double ucrit) {
  ScenarioConfig proto = base(prefix);
  proto.beam.alpha = alpha;
  proto.beam.b2 = b2;
  std::vector<double> us;
  for (double f : kUGridFactors) us.push_back(f * ucrit);
  return family(prefix, "U", us, proto, [](ScenarioConfig& c, double v) { c.beam.U = v; });
}

std::vector<double> decades(int lo, int hi) {
  std::vector<double> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::pow(10.0, e));
  return out;
}

std::vector<ScenarioConfig> ic_family(std::string_view prefix, const ScenarioConfig& proto) {
  std::vector<ScenarioConfig> out;
  const std::pair<const char*, InitialCondition> ics[] = {
      {"second_mode", ic::SecondMode{}}, {"polynomial", ic::PolynomialID{}}, {"linear_iv", ic::LinearIV{}}};
  for (const auto& [tag, ic] : ics) {
    ScenarioConfig cfg = proto;
    cfg.name = std::string(prefix) + "_" + tag;
    cfg.ic = ic;
    out.push_back(std::move(cfg));
  }
  return out;
}

void tip_only(ScenarioConfig& c) { c.outputs = {false, false, true, false}; }

struct Entry {
  const char* name;
  const char* description;
  std::function<std::vector<ScenarioConfig>()> build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"fig0", "critical velocity over alpha (b2 = 0, k0 = k1 = 0)",
       [] {
         ScenarioConfig c = base("fig0");
         c.kind = ScenarioKind::Ucrit;
         c.ucrit_alphas = {0.0, 1e-5, 1e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1, 1.0};
         c.bracket_lo = 5.0;
         c.bracket_hi = 160.0;
         return std::vector<ScenarioConfig>{c};
       }},
      {"fig1", "energy, alpha = 0, b2 = 0, U around 135.97", [] { return u_family("fig1", 0.0, 0.0, kUcritAlpha0); }},
      {"fig2", "energy, alpha = 0, b2 = 1, U around 135.97", [] { return u_family("fig2", 0.0, 1.0, kUcritAlpha0); }},
      {"fig3", "energy, U = 150, b2 = 1, k1 = 0, varying alpha",
       [] {
         ScenarioConfig p = base("fig3");
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         return family("fig3", "alpha", {0.0, 1e-3, 1e-2, 1e-1}, p,
                       [](ScenarioConfig& c, double v) { c.beam.alpha = v; });
       }},
      {"fig4", "tip velocity for the fig3 runs",
       [] {
         ScenarioConfig p = base("fig4");
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         tip_only(p);
         return family("fig4", "alpha", {0.0, 1e-3, 1e-2, 1e-1}, p,
                       [](ScenarioConfig& c, double v) { c.beam.alpha = v; });
       }},
      {"fig5", "energy, alpha = 1e-3, b2 = 0, U = 150, k0 = 0, varying k1",
       [] {
         ScenarioConfig p = base("fig5");
         p.beam.alpha = 1e-3;
         p.beam.U = 150.0;
         return family("fig5", "k1", {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, p,
                       [](ScenarioConfig& c, double v) { c.beam.k1 = v; });
       }},
      {"fig6", "energy, alpha = 1e-3, b2 = 0, U = 150, k1 = 0, varying k0",
       [] {
         ScenarioConfig p = base("fig6");
         p.beam.alpha = 1e-3;
         p.beam.U = 150.0;
         return family("fig6", "k0", {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0}, p,
                       [](ScenarioConfig& c, double v) { c.beam.k0 = v; });
       }},
      {"fig7", "energy, alpha = k1 from 1e-4 to 1e4, b2 = 0, U = 150",
       [] {
         ScenarioConfig p = base("fig7");
         p.beam.U = 150.0;
         return family("fig7", "alpha_k1", decades(-4, 4), p, [](ScenarioConfig& c, double v) {
           c.beam.alpha = v;
           c.beam.k1 = v;
         });
       }},
      {"fig8", "E_max(0, 20) on a fine alpha = k1 grid, b2 = 0, U = 150",
       [] {
         ScenarioConfig c = base("fig8");
         c.kind = ScenarioKind::Sweep;
         c.metric = SweepMetric::EnergyMax;
         c.beam.U = 150.0;
         // Unstable cells must not saturate at the default blow-up cap.
         c.simulation.blow_up_energy = 1e250;
         c.grid = {{SweepAxis::AlphaK1, logspace(-4.0, 4.0, 81)}};
         return std::vector<ScenarioConfig>{c};
       }},
      {"fig9", "tip displacement, alpha = k1 in {1.4, 1.5, 1.6}, b2 = 0, U = 150",
       [] {
         ScenarioConfig p = base("fig9");
         p.beam.U = 150.0;
         tip_only(p);
         return family("fig9", "alpha_k1", {1.4, 1.5, 1.6}, p, [](ScenarioConfig& c, double v) {
           c.beam.alpha = v;
           c.beam.k1 = v;
         });
       }},
      {"fig10", "energy, varying alpha with k0 = k1 = 0, b2 = 0, U = 150",
       [] {
         ScenarioConfig p = base("fig10");
         p.beam.U = 150.0;
         return family("fig10", "alpha", decades(-4, 4), p, [](ScenarioConfig& c, double v) { c.beam.alpha = v; });
       }},
      {"fig11", "energy, alpha = 0, U = 150, varying b2",
       [] {
         ScenarioConfig p = base("fig11");
         p.beam.U = 150.0;
         return family("fig11", "b2", {0.1, 1.0, 10.0, 100.0}, p, [](ScenarioConfig& c, double v) { c.beam.b2 = v; });
       }},
      {"fig12", "energy, alpha = 1e-3, U = 150, varying b2",
       [] {
         ScenarioConfig p = base("fig12");
         p.beam.alpha = 1e-3;
         p.beam.U = 150.0;
         return family("fig12", "b2", {0.1, 1.0, 10.0, 100.0}, p, [](ScenarioConfig& c, double v) { c.beam.b2 = v; });
       }},
      {"fig13", "energy, alpha = 1, b2 = 0, U around 22.09", [] { return u_family("fig13", 1.0, 0.0, kUcritAlpha1); }},
      {"fig14", "energy, alpha = 1, b2 = 1, U around 22.09", [] { return u_family("fig14", 1.0, 1.0, kUcritAlpha1); }},
      {"fig15", "energy, alpha = k1 from 1e-4 to 1e4, b2 = 1, U = 150",
       [] {
         ScenarioConfig p = base("fig15");
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         return family("fig15", "alpha_k1", decades(-4, 4), p, [](ScenarioConfig& c, double v) {
           c.beam.alpha = v;
           c.beam.k1 = v;
         });
       }},
      {"fig16", "energy, alpha = 1e-3, b2 = 0, U around 129.68",
       [] { return u_family("fig16", 1e-3, 0.0, kUcritAlpha1em3); }},
      {"fig17", "energy, alpha = 1e-3, b2 = 1, U around 129.68",
       [] { return u_family("fig17", 1e-3, 1.0, kUcritAlpha1em3); }},
      {"fig18", "energy, alpha = 1, U = 50, varying b2",
       [] {
         ScenarioConfig p = base("fig18");
         p.beam.alpha = 1.0;
         p.beam.U = 50.0;
         return family("fig18", "b2", {0.1, 1.0, 10.0, 100.0}, p, [](ScenarioConfig& c, double v) { c.beam.b2 = v; });
       }},
      {"fig19", "tip displacement, alpha = 0, k1 = 0, b2 = 1, U = 150, varying k0",
       [] {
         ScenarioConfig p = base("fig19");
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         tip_only(p);
         return family("fig19", "k0", {0.0, 1.0, 2.0, 5.0}, p, [](ScenarioConfig& c, double v) { c.beam.k0 = v; });
       }},
      {"fig20", "tip displacement, alpha = 1e-3, k0 = 0, b2 = 1, U = 150, varying k1",
       [] {
         ScenarioConfig p = base("fig20");
         p.beam.alpha = 1e-3;
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         tip_only(p);
         return family("fig20", "k1", {0.0, 0.5, 1.0, 2.0}, p, [](ScenarioConfig& c, double v) { c.beam.k1 = v; });
       }},
      {"fig23", "tip displacement, alpha = 0, b2 = 1, U = 150, three initial configurations",
       [] {
         ScenarioConfig p = base("fig23");
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         tip_only(p);
         return ic_family("fig23", p);
       }},
      {"fig25", "tip displacement, alpha = k1 = 0.01, b2 = 1, U = 150, three initial configurations",
       [] {
         ScenarioConfig p = base("fig25");
         p.beam.alpha = 0.01;
         p.beam.k1 = 0.01;
         p.beam.U = 150.0;
         p.beam.b2 = 1.0;
         tip_only(p);
         return ic_family("fig25", p);
       }},
      {"fig26", "in vacuo tip displacement, b2 = 1, three initial configurations",
       [] {
         ScenarioConfig p = base("fig26");
         p.beam.beta = 0.0;
         p.beam.b2 = 1.0;
         tip_only(p);
         return ic_family("fig26", p);
       }},
      {"naive_bc", "naive boundary variant, in vacuo, w_t = c x for c = 12 and 13 (override with c=...)",
       [] {
         ScenarioConfig p = base("naive_bc");
         p.beam.beta = 0.0;
         p.beam.b2 = 1.0;
         p.beam.bc_variant = BoundaryVariant::NaiveLinear;
         return family("naive_bc", "c", {12.0, 13.0}, p,
                       [](ScenarioConfig& c, double v) { c.ic = ic::ScaledLinearIV{v}; });
       }},
      {"dispersion", "dispersion relation table for several alpha",
       [] {
         ScenarioConfig c = base("dispersion");
         c.kind = ScenarioKind::Dispersion;
         return std::vector<ScenarioConfig>{c};
       }},
  };
  return entries;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = [] {
    std::vector<PresetInfo> out;
    for (const auto& e : registry()) out.push_back({e.name, e.description});
    return out;
  }();
  return catalog;
}

std::vector<ScenarioConfig> make_preset(std::string_view name,
                                        const std::vector<std::pair<std::string, std::string>>& overrides) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return name == e.name; });
  if (it == reg.end()) throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "'");
  std::vector<ScenarioConfig> set = it->build();

  // A scalar override of the family parameter collapses the set to one run.
  const bool collapse = name == "naive_bc" && std::any_of(overrides.begin(), overrides.end(), [](const auto& kv) {
                          return kv.first == "c" || kv.first == "ic.c";
                        });
  if (collapse) set.resize(1);
  for (auto& cfg : set) {
    for (const auto& [key, value] : overrides) apply_setting(cfg, key, value);
    if (const auto* scaled = std::get_if<ic::ScaledLinearIV>(&cfg.ic); collapse && scaled)
      cfg.name = label("naive_bc", "c", scaled->c);
    validate(cfg);
  }
  return set;
}

}  // namespace beamflutter::app

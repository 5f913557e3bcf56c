#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beamflutter/app/scenario.hpp"

namespace beamflutter::app {

/// Multiples of the critical velocity used for the "varying U" energy figures.
inline constexpr double kUGridFactors[] = {0.8, 0.9, 0.95, 1.0, 1.05, 1.1, 1.2};

struct PresetInfo {
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& preset_catalog();

/// Scenario set for a figure protocol, with `key=value` overrides applied to every member.
/// Throws ConfigError for unknown names or bad overrides.
std::vector<ScenarioConfig> make_preset(std::string_view name,
                                        const std::vector<std::pair<std::string, std::string>>& overrides = {});

}  // namespace beamflutter::app

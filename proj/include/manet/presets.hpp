#pragma once

// Named environment presets for the shadowing model: path-loss exponents
// and dB deviations measured in various settings.  Ranged presets resolve
// to their lower bound; the exact value can always be set numerically.

#include <string_view>
#include <vector>

namespace manet {

struct Preset {
  const char* name;
  double lo;
  double hi;  // == lo for point presets
};

const std::vector<Preset>& beta_presets();      // path-loss exponent
const std::vector<Preset>& sigma_db_presets();  // shadowing deviation

// Returns nullptr when the name is unknown.
const Preset* find_beta_preset(std::string_view name);
const Preset* find_sigma_db_preset(std::string_view name);

}  // namespace manet

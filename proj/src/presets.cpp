#include "manet/presets.hpp"

namespace manet {

const std::vector<Preset>& beta_presets() {
  static const std::vector<Preset> t = {
      {"free_space", 2.0, 2.0},
      {"shadowed_urban", 2.7, 5.0},
      {"inbuilding_los", 1.6, 1.8},
      {"obstructed", 4.0, 6.0},
  };
  return t;
}

const std::vector<Preset>& sigma_db_presets() {
  static const std::vector<Preset> t = {
      {"outdoor", 4.0, 12.0},
      {"office_hard", 7.0, 7.0},
      {"office_soft", 9.6, 9.6},
      {"factory_los", 3.0, 6.0},
      {"factory_obstructed", 6.8, 6.8},
  };
  return t;
}

static const Preset* find(const std::vector<Preset>& t, std::string_view n) {
  for (const Preset& p : t) {
    if (n == p.name) return &p;
  }
  return nullptr;
}

const Preset* find_beta_preset(std::string_view name) {
  return find(beta_presets(), name);
}

const Preset* find_sigma_db_preset(std::string_view name) {
  return find(sigma_db_presets(), name);
}

}  // namespace manet

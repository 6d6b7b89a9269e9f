#pragma once

#include <optional>
#include <string>

#include "singlab/invariants.hpp"

namespace singlab {

/// Shipped coefficient preset: geometry of one component plus its sigma/tau
/// table. File format is `key = value` per line with '#' comments; `k` and
/// `ell` may be the symbolic defaults `m` and `m-1` resolved at use time.
struct Preset {
  enum class Rule { Fixed, M, MMinusOne };

  std::string name;
  int n = 3;
  int d = 2;
  int deg_w = 1;
  std::vector<int> ks;
  ChernCoefficientTable table;
  Rule k_rule = Rule::Fixed;
  int k_fixed = 0;
  Rule ell_rule = Rule::Fixed;
  int ell_fixed = 0;

  AmbientSetup setup(std::optional<int> m) const;
};

Preset parse_preset_text(const std::string& text, const std::string& name);
Preset load_preset_file(const std::string& path);
/// The compiled-in table for a known preset name; nullopt otherwise.
std::optional<Preset> builtin_preset(const std::string& name);
/// Resolution order: literal path, ./presets/<name>.preset next to
/// `search_dir` (when given), then the builtin table.
Preset resolve_preset(const std::string& name_or_path,
                      const std::optional<std::string>& search_dir = std::nullopt);

}  // namespace singlab

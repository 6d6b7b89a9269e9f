#include "singlab/preset.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "singlab/errors.hpp"

namespace singlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void parse_rule(const std::string& value, Preset::Rule& rule, int& fixed) {
  if (value == "m") {
    rule = Preset::Rule::M;
  } else if (value == "m-1") {
    rule = Preset::Rule::MMinusOne;
  } else {
    rule = Preset::Rule::Fixed;
    fixed = std::stoi(value);
  }
}

}  // namespace

AmbientSetup Preset::setup(std::optional<int> m) const {
  auto resolve = [&](Rule rule, int fixed, const char* what) -> int {
    switch (rule) {
      case Rule::Fixed: return fixed;
      case Rule::M:
        if (!m) throw MissingTableEntry(std::string(what) + " needs the m parameter");
        return *m;
      case Rule::MMinusOne:
        if (!m) throw MissingTableEntry(std::string(what) + " needs the m parameter");
        return *m - 1;
    }
    return fixed;
  };
  AmbientSetup s;
  s.n = n;
  s.d = d;
  s.deg_w = deg_w;
  s.ks = ks;
  s.k = resolve(k_rule, k_fixed, "preset k");
  s.ell = resolve(ell_rule, ell_fixed, "preset ell");
  s.validate();
  return s;
}

Preset parse_preset_text(const std::string& text, const std::string& name) {
  Preset p;
  p.name = name;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("preset line lacks '=': " + t, 0);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "n") {
      p.n = std::stoi(value);
    } else if (key == "d") {
      p.d = std::stoi(value);
    } else if (key == "degw") {
      p.deg_w = std::stoi(value);
    } else if (key == "ks") {
      p.ks.clear();
      std::stringstream parts(value);
      std::string piece;
      while (std::getline(parts, piece, ',')) p.ks.push_back(std::stoi(trim(piece)));
    } else if (key == "k") {
      parse_rule(value, p.k_rule, p.k_fixed);
    } else if (key == "ell") {
      parse_rule(value, p.ell_rule, p.ell_fixed);
    } else if (key == "chi") {
      p.table.chi = std::stol(value);
    } else if (key.rfind("sigma.", 0) == 0) {
      p.table.sigma[std::stoi(key.substr(6))] = Rational::parse(value);
    } else if (key.rfind("tau.", 0) == 0) {
      p.table.tau[std::stoi(key.substr(4))] = Rational::parse(value);
    } else {
      throw ParseError("unknown preset key '" + key + "'", 0);
    }
  }
  return p;
}

Preset load_preset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open preset '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_preset_text(buf.str(), std::filesystem::path(path).stem().string());
}

std::optional<Preset> builtin_preset(const std::string& name) {
  if (name == "p3-line") {
    // Degree-1 line in P^3: normal bundle O(1) + O(1), chi = 2. Calibrated so
    // this preset reproduces -nu = m^3 + m^2 at k = m, ell = m - 1.
    Preset p;
    p.name = "p3-line";
    p.n = 3;
    p.d = 2;
    p.deg_w = 1;
    p.ks = {1, 1};
    p.k_rule = Preset::Rule::M;
    p.ell_rule = Preset::Rule::MMinusOne;
    p.table.sigma[0] = Rational(1);
    p.table.sigma[1] = Rational(2);
    p.table.sigma[2] = Rational(0);
    p.table.tau[0] = Rational(1);
    p.table.tau[1] = Rational(2);
    p.table.chi = 2;
    return p;
  }
  return std::nullopt;
}

Preset resolve_preset(const std::string& name_or_path,
                      const std::optional<std::string>& search_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path))
    return load_preset_file(name_or_path);
  std::vector<std::string> candidates;
  if (search_dir) candidates.push_back(*search_dir + "/presets/" + name_or_path + ".preset");
  candidates.push_back("presets/" + name_or_path + ".preset");
  for (const auto& c : candidates)
    if (fs::exists(c)) return load_preset_file(c);
  if (auto p = builtin_preset(name_or_path)) return *p;
  throw MissingTableEntry("preset '" + name_or_path + "' not found");
}

}  // namespace singlab

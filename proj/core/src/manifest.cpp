#include "singlab/manifest.hpp"

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

}  // namespace

FieldManifest parse_manifest(std::istream& in) {
  int n = -1;
  std::vector<std::optional<MultivariatePolynomial>> comps;
  std::vector<MultivariatePolynomial> wpolys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("manifest line " + std::to_string(lineno) + " lacks '='", 0);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "n") {
      n = std::stoi(value);
      if (n <= 0) throw ParseError("manifest dimension must be positive", 0);
      comps.assign(static_cast<std::size_t>(n), std::nullopt);
    } else if (!key.empty() && key[0] == 'X') {
      if (n < 0) throw ParseError("manifest must declare n before components", 0);
      int idx = 0;
      try {
        idx = std::stoi(key.substr(1));
      } catch (...) {
        throw ParseError("bad component name '" + key + "'", 0);
      }
      if (idx < 1 || idx > n)
        throw ParseError("component index out of range in '" + key + "'", 0);
      comps[static_cast<std::size_t>(idx - 1)] = MultivariatePolynomial::parse(value, n);
    } else if (key == "W") {
      if (n < 0) throw ParseError("manifest must declare n before W", 0);
      std::stringstream parts(value);
      std::string piece;
      while (std::getline(parts, piece, ';')) {
        const std::string p = trim(piece);
        if (p.empty()) continue;
        wpolys.push_back(MultivariatePolynomial::parse(p, n));
      }
    } else {
      throw ParseError("unknown manifest key '" + key + "'", 0);
    }
  }
  if (n < 0) throw ParseError("manifest lacks 'n ='", 0);
  std::vector<MultivariatePolynomial> fields;
  fields.reserve(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!comps[i])
      throw ParseError("manifest lacks component X" + std::to_string(i + 1), 0);
    fields.push_back(std::move(*comps[i]));
  }
  FieldManifest m{VectorField(n, std::move(fields)), std::nullopt};
  if (!wpolys.empty()) m.w = CompleteIntersection(n, std::move(wpolys));
  return m;
}

FieldManifest parse_manifest_text(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in);
}

FieldManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest '" + path + "'", 0);
  return parse_manifest(in);
}

std::string manifest_text(const VectorField& field,
                          const std::optional<CompleteIntersection>& w) {
  std::ostringstream os;
  os << "n = " << field.nvars << "\n";
  for (std::size_t i = 0; i < field.components.size(); ++i)
    os << "X" << (i + 1) << " = " << field.components[i].str() << "\n";
  if (w) {
    os << "W = ";
    for (std::size_t i = 0; i < w->defining.size(); ++i) {
      if (i) os << "; ";
      os << w->defining[i].str();
    }
    os << "\n";
  }
  return os.str();
}

void save_manifest(const std::string& path, const VectorField& field,
                   const std::optional<CompleteIntersection>& w) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest '" + path + "'");
  out << manifest_text(field, w);
}

}  // namespace singlab

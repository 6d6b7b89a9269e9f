#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "singlab/foliation.hpp"

namespace singlab {

/// A vector field plus an optional component W, as read from the line
/// oriented manifest format:
///   n = <int>
///   X1 = <polynomial>
///   ...
///   Xn = <polynomial>
///   W = <polynomial>; <polynomial>; ...
/// Blank lines and lines starting with '#' are ignored.
struct FieldManifest {
  VectorField field;
  std::optional<CompleteIntersection> w;
};

FieldManifest parse_manifest(std::istream& in);
FieldManifest parse_manifest_text(const std::string& text);
FieldManifest load_manifest(const std::string& path);

std::string manifest_text(const VectorField& field,
                          const std::optional<CompleteIntersection>& w = std::nullopt);
void save_manifest(const std::string& path, const VectorField& field,
                   const std::optional<CompleteIntersection>& w = std::nullopt);

}  // namespace singlab

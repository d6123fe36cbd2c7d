#pragma once

#include <string>
#include <vector>

#include "realop/types.hpp"

namespace realop {

/// One named square matrix, optionally tagged with its role: a generator
/// label p0..k3, "structure" or "density".
struct BundleEntry {
  std::string name;
  Matd matrix;
  std::string tag;
};

/// On-disk unit of work: a common dimension and named matrices in document
/// order. JSON layout {"dim": n, "matrices": {...}, "tags": {...}}.
struct MatrixBundle {
  Index dim = 0;
  std::vector<BundleEntry> entries;

  const BundleEntry* find(const std::string& name) const;
  const BundleEntry* first_with_tag(const std::string& tag) const;
};

/// Validating constructor: unique names, every matrix finite and dim x dim,
/// tags from the known vocabulary.
MatrixBundle make_bundle(Index dim, std::vector<BundleEntry> entries);

/// Parses and validates bundle text. Malformed JSON, unknown fields, ragged
/// rows and unknown tags raise ParseError; wrongly sized matrices raise
/// DimensionMismatch; non-finite entries raise NonFinite.
MatrixBundle parse_bundle(const std::string& text);

MatrixBundle load_bundle(const std::string& path);

/// Deterministic text form. Floats carry 17 significant digits, so a
/// serialize/parse round trip reproduces every matrix bit for bit.
std::string serialize_bundle(const MatrixBundle& bundle);

void save_bundle(const MatrixBundle& bundle, const std::string& path);

}  // namespace realop

#include "realop/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "realop/errors.hpp"
#include "realop/poincare.hpp"

namespace realop {

namespace {

using njson = nlohmann::ordered_json;

bool known_tag(const std::string& tag) {
  if (tag == "structure" || tag == "density") return true;
  for (const std::string& label : poincare_labels())
    if (tag == label) return true;
  return false;
}

std::string number_repr(double v) {
  // A bare "-0" would re-load as the integer zero and lose its sign bit.
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Matd matrix_from_json(const std::string& name, const njson& rows, Index dim) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("matrix " + name + " must be a non-empty array of rows");
  const std::size_t height = rows.size();
  std::size_t width = 0;
  for (const njson& row : rows) {
    if (!row.is_array())
      throw ParseError("matrix " + name + " has a non-array row");
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw ParseError("matrix " + name + " has ragged rows");
  }
  if (static_cast<Index>(height) != dim || static_cast<Index>(width) != dim) {
    std::ostringstream msg;
    msg << "matrix " << name << " is " << height << "x" << width
        << ", bundle dimension is " << dim;
    throw DimensionMismatch(msg.str());
  }
  Matd m(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      const njson& cell = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!cell.is_number())
        throw ParseError("matrix " + name + " has a non-numeric entry");
      m(i, j) = cell.get<double>();
      if (!std::isfinite(m(i, j)))
        throw NonFinite("matrix " + name + " contains a non-finite entry");
    }
  return m;
}

}  // namespace

const BundleEntry* MatrixBundle::find(const std::string& name) const {
  for (const BundleEntry& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

const BundleEntry* MatrixBundle::first_with_tag(const std::string& tag) const {
  for (const BundleEntry& e : entries)
    if (e.tag == tag) return &e;
  return nullptr;
}

MatrixBundle make_bundle(Index dim, std::vector<BundleEntry> entries) {
  if (dim < 1) throw DimensionTooSmall("bundle dimension must be positive");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const BundleEntry& e = entries[i];
    if (e.name.empty()) throw ParseError("matrix names must be non-empty");
    for (std::size_t j = 0; j < i; ++j)
      if (entries[j].name == e.name)
        throw ParseError("duplicate matrix name " + e.name);
    if (e.matrix.rows() != dim || e.matrix.cols() != dim)
      throw DimensionMismatch("matrix " + e.name + " does not match the bundle dimension");
    if (!e.matrix.allFinite())
      throw NonFinite("matrix " + e.name + " contains a non-finite entry");
    if (!e.tag.empty() && !known_tag(e.tag))
      throw ParseError("unknown tag " + e.tag + " on matrix " + e.name);
  }
  return {dim, std::move(entries)};
}

MatrixBundle parse_bundle(const std::string& text) {
  njson root;
  try {
    root = njson::parse(text);
  } catch (const njson::exception& e) {
    // Covers syntax errors and literal overflow alike.
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw ParseError("top level must be an object");
  for (const auto& item : root.items())
    if (item.key() != "dim" && item.key() != "matrices" && item.key() != "tags")
      throw ParseError("unknown top-level field " + item.key());
  if (!root.contains("dim") || !root["dim"].is_number_integer() ||
      root["dim"].get<long long>() < 1)
    throw ParseError("field dim must be a positive integer");
  if (!root.contains("matrices") || !root["matrices"].is_object())
    throw ParseError("field matrices must be an object");

  const Index dim = root["dim"].get<Index>();
  std::vector<BundleEntry> entries;
  for (const auto& item : root["matrices"].items())
    entries.push_back({item.key(), matrix_from_json(item.key(), item.value(), dim), ""});

  if (root.contains("tags")) {
    if (!root["tags"].is_object())
      throw ParseError("field tags must be an object");
    for (const auto& item : root["tags"].items()) {
      if (!item.value().is_string())
        throw ParseError("tag for " + item.key() + " must be a string");
      bool found = false;
      for (BundleEntry& e : entries)
        if (e.name == item.key()) {
          e.tag = item.value().get<std::string>();
          found = true;
        }
      if (!found)
        throw ParseError("tag names unknown matrix " + item.key());
    }
  }
  return make_bundle(dim, std::move(entries));
}

MatrixBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bundle(text.str());
}

std::string serialize_bundle(const MatrixBundle& bundle) {
  for (const BundleEntry& e : bundle.entries)
    if (!e.matrix.allFinite())
      throw NonFinite("matrix " + e.name + " contains a non-finite entry");

  std::ostringstream out;
  out << "{\n  \"dim\": " << bundle.dim << ",\n  \"matrices\": {";
  for (std::size_t k = 0; k < bundle.entries.size(); ++k) {
    const BundleEntry& e = bundle.entries[k];
    out << (k ? ",\n" : "\n") << "    \"" << e.name << "\": [";
    for (Index i = 0; i < e.matrix.rows(); ++i) {
      out << (i ? ",\n" : "\n") << "      [";
      for (Index j = 0; j < e.matrix.cols(); ++j)
        out << (j ? ", " : "") << number_repr(e.matrix(i, j));
      out << "]";
    }
    out << "\n    ]";
  }
  out << "\n  }";

  bool any_tag = false;
  for (const BundleEntry& e : bundle.entries)
    if (!e.tag.empty()) any_tag = true;
  if (any_tag) {
    out << ",\n  \"tags\": {";
    bool first = true;
    for (const BundleEntry& e : bundle.entries) {
      if (e.tag.empty()) continue;
      out << (first ? "\n" : ",\n") << "    \"" << e.name << "\": \"" << e.tag << "\"";
      first = false;
    }
    out << "\n  }";
  }
  out << "\n}\n";
  return out.str();
}

void save_bundle(const MatrixBundle& bundle, const std::string& path) {
  const std::string text = serialize_bundle(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace realop

#pragma once

// JSON documents for ProductHom and FamilySpec. Field order is fixed; integers
// outside the int64 range are written as decimal strings.

#include "coabel/family.hpp"

#include "json.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace coabel {

using Json = nlohmann::ordered_json;

namespace json_detail {

inline Json int_to_json(const Int& v) {
  if (fits_int64(v)) return Json(static_cast<std::int64_t>(v));
  return Json(to_decimal(v));
}

[[noreturn]] inline void schema_error(const std::string& field, const std::string& what) {
  throw InputError("schema error at " + field + ": " + what);
}

inline Int json_to_int(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    if (auto v = parse_decimal(j.get<std::string>())) return *v;
    schema_error(field, "string is not a decimal integer");
  }
  schema_error(field, std::string("expected integer, got ") + j.type_name());
}

inline long long json_to_small(const Json& j, const std::string& field, long long lo, long long hi) {
  Int v = json_to_int(j, field);
  if (v < lo || v > hi)
    schema_error(field, "value " + to_decimal(v) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  return static_cast<long long>(v);
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + key, "missing required field");
  return *it;
}

inline void reject_unknown(const Json& obj, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) schema_error(path + it.key(), "unknown field");
  }
}

inline const Json& require_array(const Json& j, const std::string& field) {
  if (!j.is_array()) schema_error(field, std::string("expected array, got ") + j.type_name());
  return j;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json arr = Json::array();
  for (const auto& x : m.row_major()) arr.push_back(int_to_json(x));
  return arr;
}

inline IntMatrix json_to_matrix(const Json& j, std::size_t rows, std::size_t cols,
                                const std::string& field) {
  require_array(j, field);
  if (j.size() != rows * cols)
    schema_error(field, "expected " + std::to_string(rows * cols) + " entries (" +
                            std::to_string(rows) + "x" + std::to_string(cols) + " row-major), got " +
                            std::to_string(j.size()));
  std::vector<Int> data;
  data.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    data.push_back(json_to_int(j[i], field + "[" + std::to_string(i) + "]"));
  return IntMatrix(rows, cols, std::move(data));
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

inline void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " document must be a JSON object");
}

}  // namespace json_detail

inline Json hom_to_json(const ProductHom& h) {
  using namespace json_detail;
  Json doc;
  doc["genera"] = h.genera();
  doc["target_rank"] = h.target_rank();
  Json blocks = Json::array();
  for (const auto& b : h.blocks()) blocks.push_back(matrix_to_json(b));
  doc["blocks"] = std::move(blocks);
  return doc;
}

inline ProductHom hom_from_json(const Json& doc) {
  using namespace json_detail;
  require_object(doc, "ProductHom");
  reject_unknown(doc, "", {"genera", "target_rank", "blocks"});
  const Json& genera_j = require_array(require(doc, "genera", ""), "genera");
  const auto n = static_cast<std::size_t>(json_to_small(require(doc, "target_rank", ""), "target_rank", 0, 1 << 20));
  const Json& blocks_j = require_array(require(doc, "blocks", ""), "blocks");
  if (genera_j.empty()) schema_error("genera", "at least one factor is required");
  if (blocks_j.size() != genera_j.size())
    schema_error("blocks", "expected " + std::to_string(genera_j.size()) + " blocks (one per genus), got " +
                               std::to_string(blocks_j.size()));
  std::vector<int> genera;
  std::vector<IntMatrix> blocks;
  for (std::size_t i = 0; i < genera_j.size(); ++i) {
    const std::string f = "genera[" + std::to_string(i) + "]";
    auto g = static_cast<int>(json_to_small(genera_j[i], f, INT32_MIN, 1 << 20));
    if (g < 2) schema_error(f, "genus " + std::to_string(g) + " is below 2");
    genera.push_back(g);
    blocks.push_back(json_to_matrix(blocks_j[i], n, 2 * static_cast<std::size_t>(g),
                                    "blocks[" + std::to_string(i) + "]"));
  }
  return ProductHom(std::move(genera), n, std::move(blocks));
}

inline Json family_to_json(const FamilySpec& spec) {
  using namespace json_detail;
  Json doc;
  doc["kind"] = to_string(spec.kind);
  doc["k"] = spec.k;
  doc["r"] = spec.r;
  Json vectors = Json::array();
  for (const auto& v : spec.vectors.vectors) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(int_to_json(x));
    vectors.push_back(std::move(row));
  }
  doc["vectors"] = std::move(vectors);
  Json covers = Json::array();
  for (const auto& c : spec.covers) {
    Json cj;
    cj["genus"] = c.genus;
    cj["block"] = matrix_to_json(c.block);
    cj["pi1_surjective"] = c.pi1_surjective;
    covers.push_back(std::move(cj));
  }
  doc["covers"] = std::move(covers);
  if (spec.m) doc["m"] = *spec.m;
  return doc;
}

inline FamilySpec family_from_json(const Json& doc) {
  using namespace json_detail;
  require_object(doc, "FamilySpec");
  reject_unknown(doc, "", {"kind", "k", "r", "vectors", "covers", "m"});
  FamilySpec spec;
  const Json& kind_j = require(doc, "kind", "");
  if (!kind_j.is_string()) schema_error("kind", "expected string");
  auto kind = family_kind_from_string(kind_j.get<std::string>());
  if (!kind) schema_error("kind", "unknown family kind '" + kind_j.get<std::string>() + "'");
  spec.kind = *kind;
  spec.k = static_cast<std::size_t>(json_to_small(require(doc, "k", ""), "k", 0, 64));
  spec.r = static_cast<std::size_t>(json_to_small(require(doc, "r", ""), "r", 1, kMaxFactors));
  const Json& vectors_j = require_array(require(doc, "vectors", ""), "vectors");
  spec.vectors.dim = spec.k;
  for (std::size_t i = 0; i < vectors_j.size(); ++i) {
    const std::string f = "vectors[" + std::to_string(i) + "]";
    const Json& vj = require_array(vectors_j[i], f);
    if (vj.size() != spec.k)
      schema_error(f, "expected " + std::to_string(spec.k) + " entries, got " + std::to_string(vj.size()));
    IntVector v;
    for (std::size_t c = 0; c < vj.size(); ++c)
      v.push_back(json_to_int(vj[c], f + "[" + std::to_string(c) + "]"));
    spec.vectors.vectors.push_back(std::move(v));
  }
  const Json& covers_j = require_array(require(doc, "covers", ""), "covers");
  for (std::size_t i = 0; i < covers_j.size(); ++i) {
    const std::string f = "covers[" + std::to_string(i) + "]";
    const Json& cj = covers_j[i];
    if (!cj.is_object()) schema_error(f, "expected object");
    reject_unknown(cj, f + ".", {"genus", "block", "pi1_surjective"});
    CoverData c;
    c.genus = static_cast<int>(json_to_small(require(cj, "genus", f + "."), f + ".genus", INT32_MIN, 1 << 20));
    if (c.genus < 2) schema_error(f + ".genus", "genus " + std::to_string(c.genus) + " is below 2");
    c.block = json_to_matrix(require(cj, "block", f + "."), 2, 2 * static_cast<std::size_t>(c.genus),
                             f + ".block");
    const Json& flag = require(cj, "pi1_surjective", f + ".");
    if (!flag.is_boolean()) schema_error(f + ".pi1_surjective", "expected boolean");
    c.pi1_surjective = flag.get<bool>();
    spec.covers.push_back(std::move(c));
  }
  if (auto it = doc.find("m"); it != doc.end())
    spec.m = static_cast<std::size_t>(json_to_small(*it, "m", 0, kMaxFactors));
  return spec;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline ProductHom parse_hom(const std::string& text) {
  return hom_from_json(json_detail::parse_text(text));
}
inline std::string serialize_hom(const ProductHom& h) { return dump(hom_to_json(h)); }

inline FamilySpec parse_family(const std::string& text) {
  return family_from_json(json_detail::parse_text(text));
}
inline std::string serialize_family(const FamilySpec& spec) { return dump(family_to_json(spec)); }

/// Either document type; FamilySpec documents are recognised by "kind".
using Document = std::variant<ProductHom, FamilySpec>;

inline Document parse_document(const std::string& text) {
  Json doc = json_detail::parse_text(text);
  json_detail::require_object(doc, "input");
  if (doc.contains("kind")) return family_from_json(doc);
  return hom_from_json(doc);
}

}  // namespace coabel

#pragma once

#include "qbound/qsystem.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace qbound {

/// Category files are JSON objects
///   {"format": "qbound-category", "version": 1, "name", "gauge",
///    "labels": [{"name", "dual"}], "fusion": [[a, b, c, mult]],
///    "F": {"a,b,c,d;e,f": [re, im]}, "R": {"a,b;c": [re, im]}}
/// with labels referenced by name. Doubles are written in shortest
/// round-trip form, so serialize∘parse is the identity on emitted files.
nlohmann::json category_to_json(const CategoryData& cat);
std::string serialize_category(const CategoryData& cat);
/// Parses and validates; errors carry `origin` and a JSON location.
CatPtr parse_category(const std::string& text, const std::string& origin = "<input>",
                      double tol = default_tolerance());
CatPtr load_category(const std::filesystem::path& path, double tol = default_tolerance());

/// A built-in name, "product:<ref>" for C⊠C^opp, or a category file path.
CatPtr resolve_category(const std::string& ref, const std::filesystem::path& baseDir = {});

/// Splitting-tree identifier "l1#i1;l2#i2>e2;..." used as key in Q-system files.
std::string tree_id(const CategoryData& cat, const Channel& ch);

/// Q-system files:
///   {"format": "qbound-qsystem", "version": 1, "name", "category": ref,
///    "theta": {label: mult}, "w": [entry], "x": [entry]}
/// where entry = {"label", "out", "in", "value": [re, im]} addresses one
/// nonzero matrix element of the block at `label` by tree identifiers. A
/// category that is neither built-in nor a product of one is written inline.
nlohmann::json qsystem_to_json(const QSystem& q);
std::string serialize_qsystem(const QSystem& q);
QSystem parse_qsystem(const std::string& text, const std::string& origin = "<input>",
                      const std::filesystem::path& baseDir = {}, double tol = default_tolerance());
QSystem load_qsystem(const std::filesystem::path& path, double tol = default_tolerance());

/// A Q-system file path or a built-in Q-system name.
QSystem resolve_qsystem(const std::string& ref, double tol = default_tolerance());

} // namespace qbound

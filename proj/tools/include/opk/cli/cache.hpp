#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "opk/operad/operad.hpp"

namespace opk::cli {

using nlohmann::json;

/// Matrix as {"rows", "cols", "entries": [[row, col, "value"], ...]}.
json matrix_to_json(const linalg::ExactMatrix& m);
linalg::ExactMatrix matrix_from_json(const json& j, const linalg::CoefficientRing& ring);

/// Complete structure of a truncated operad: ranks, weights, actions, composites and labels.
json operad_to_json(const operad::Operad& p);
/// Inverse of operad_to_json; throws std::runtime_error on malformed input.
operad::Operad operad_from_json(const json& j);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/**
 * Content-addressed store of computed operads. Entries are JSON documents
 * named by the digest of (source text, arity, ring, tool version) and carry
 * a digest of their payload, so stale or damaged entries are detected.
 */
class OperadCache {
 public:
  explicit OperadCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(const std::string& source, int max_arity, const linalg::CoefficientRing& ring);
  std::filesystem::path path(const std::string& key) const { return dir_ / (key + ".json"); }
  /// Loaded operad, or nothing on a miss; damaged entries set `warning` and count as misses.
  std::optional<operad::Operad> load(const std::string& key, std::string* warning = nullptr) const;
  void store(const std::string& key, const operad::Operad& p) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace opk::cli

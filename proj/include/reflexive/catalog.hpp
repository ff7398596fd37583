#pragma once

// Append-only catalog of polytope classes, one JSON record per line, keyed by
// a hash of the normal form. Writers hold an exclusive lock on the file.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reflexive/io.hpp"

namespace reflexive {

struct CatalogRecord {
  std::string key;
  InvariantReport report;  // report.normal_form identifies the class
};

struct CatalogQuery {
  std::optional<bool> reflexive;
  std::optional<Integer> h11;
  std::optional<Integer> h21;
  std::optional<Integer> euler;
  std::optional<std::size_t> dim;

  bool matches(const InvariantReport& r) const;
};

class CatalogStore {
 public:
  explicit CatalogStore(std::filesystem::path path);

  // FNV-1a of the normal form's text, as 16 hex digits.
  static std::string key_for(const IntMatrix& normal_form);

  // False when the class is already stored. Throws StoreCorrupt.
  bool add(const LatticePolytope& p);
  bool add(const InvariantReport& report);

  // Sorted by key. A missing file is an empty store. Throws StoreCorrupt.
  std::vector<CatalogRecord> list() const;
  std::vector<CatalogRecord> find(const CatalogQuery& query) const;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// REFLEXIVE_CATALOG, or reflexive_catalog.jsonl in the working directory.
std::filesystem::path default_catalog_path();

}  // namespace reflexive

#pragma once

// On-disk catalog of Belyi covers with per-word quotient laws.
//
// File layout (keys sorted, two-space indentation):
//   {"checksum": "<crc32 hex of payload.dump()>",
//    "payload": {"created_with_seed", "degrees_covered", "entries", "word_list"},
//    "schema_version": 1}

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sectorlab/belyi_monodromy.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/quotient_spectra.hpp"
#include "sectorlab/sectors.hpp"

namespace sectorlab {

inline constexpr int kCatalogSchemaVersion = 1;

class CatalogError : public ValidationError {
 public:
  enum class Kind { malformed, version, checksum, revalidation };

  CatalogError(Kind kind, const std::string& what) : ValidationError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct CatalogEntry {
  BelyiCover cover;
  /// Keyed by canonical word text; empty for non-Galois covers.
  std::map<std::string, QuotientLaw> laws;
  int schema_version = kCatalogSchemaVersion;
};

struct Catalog {
  std::vector<CatalogEntry> entries;  // sorted by (degree, canonical_form)
  std::vector<std::size_t> degrees_covered;
  std::vector<std::string> word_list;
  SeedSpec created_with_seed;

  const CatalogEntry* find(std::string_view canonical_form) const;
  /// Laws for one word, in entry order. ValidationError for unknown words.
  std::vector<QuotientLaw> laws_for(const NcPolynomial& word) const;
  /// Per-cover law vectors for a word list, Galois entries only.
  std::vector<LawProfile> profiles(std::span<const NcPolynomial> words) const;
};

bool operator==(const BelyiCover& a, const BelyiCover& b);
bool operator==(const QuotientLaw& a, const QuotientLaw& b);
bool operator==(const CatalogEntry& a, const CatalogEntry& b);
bool operator==(const Catalog& a, const Catalog& b);

/// Transitive covers of every degree 1..max_degree, with quotient laws of
/// each word attached to the Galois ones. ValidationError unless
/// 1 <= max_degree <= 7 and every word is self-adjoint.
Catalog build_catalog(std::size_t max_degree, std::span<const NcPolynomial> words,
                      unsigned threads = 1);

std::string serialize_catalog(const Catalog& catalog);

/// CatalogError on malformed text, a schema_version other than
/// kCatalogSchemaVersion, a checksum mismatch, or (with `revalidate`) a
/// Galois law whose mean disagrees with the symbolic trace.
Catalog parse_catalog(std::string_view text, bool revalidate = true);

void save_catalog(const Catalog& catalog, const std::filesystem::path& path);
Catalog load_catalog(const std::filesystem::path& path, bool revalidate = true);

}  // namespace sectorlab

#include "sectorlab/catalog_store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <boost/crc.hpp>

#include "sectorlab/json_io.hpp"
#include "sectorlab/parallel.hpp"

namespace sectorlab {

namespace {

std::string crc32_hex(const std::string& text) {
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

Json entry_to_json(const CatalogEntry& entry) {
  Json laws = Json::object();
  for (const auto& [word, law] : entry.laws) laws[word] = quotient_law_to_json(law);
  return Json{{"cover", cover_to_json(entry.cover)},
              {"laws", std::move(laws)},
              {"schema_version", entry.schema_version}};
}

CatalogEntry entry_from_json(const Json& j) {
  CatalogEntry entry{cover_from_json(j.at("cover")), {}, j.at("schema_version").get<int>()};
  if (entry.schema_version != kCatalogSchemaVersion) {
    throw CatalogError(CatalogError::Kind::version, "catalog entry has an unsupported schema version");
  }
  for (const auto& [word, law] : j.at("laws").items()) {
    entry.laws.emplace(word, quotient_law_from_json(law));
  }
  return entry;
}

void revalidate_entry(const CatalogEntry& entry) {
  if (!entry.cover.galois) {
    if (!entry.laws.empty()) {
      throw CatalogError(CatalogError::Kind::revalidation, "non-Galois entry carries quotient laws");
    }
    return;
  }
  const FiniteQuotient q = quotient_from_cover(entry.cover);
  for (const auto& [word, law] : entry.laws) {
    const double exact = symbolic_trace(q, law.word).convert_to<double>();
    const double mean = law.law.moment(1);
    if (std::abs(exact - mean) > 1e-12 * std::max(1.0, std::abs(exact))) {
      throw CatalogError(CatalogError::Kind::revalidation,
                         "law of '" + word + "' on " + entry.cover.canonical_form +
                             " fails the trace identity");
    }
  }
}

}  // namespace

const CatalogEntry* Catalog::find(std::string_view canonical_form) const {
  for (const auto& e : entries) {
    if (e.cover.canonical_form == canonical_form) return &e;
  }
  return nullptr;
}

std::vector<QuotientLaw> Catalog::laws_for(const NcPolynomial& word) const {
  const std::string key = to_string(word);
  if (std::find(word_list.begin(), word_list.end(), key) == word_list.end()) {
    throw ValidationError("catalog has no laws for word '" + key + "'");
  }
  std::vector<QuotientLaw> out;
  for (const auto& e : entries) {
    if (auto it = e.laws.find(key); it != e.laws.end()) out.push_back(it->second);
  }
  return out;
}

std::vector<LawProfile> Catalog::profiles(std::span<const NcPolynomial> words) const {
  std::vector<std::string> keys;
  for (const auto& w : words) {
    keys.push_back(to_string(w));
    if (std::find(word_list.begin(), word_list.end(), keys.back()) == word_list.end()) {
      throw ValidationError("catalog has no laws for word '" + keys.back() + "'");
    }
  }
  std::vector<LawProfile> out;
  for (const auto& e : entries) {
    if (!e.cover.galois) continue;
    LawProfile profile{e.cover.canonical_form, {}};
    for (const auto& k : keys) profile.laws.push_back(e.laws.at(k).law);
    out.push_back(std::move(profile));
  }
  return out;
}

bool operator==(const BelyiCover& a, const BelyiCover& b) {
  return a.triple.sigma0 == b.triple.sigma0 && a.triple.sigma1 == b.triple.sigma1 &&
         a.triple.sigma_inf == b.triple.sigma_inf && a.transitive == b.transitive &&
         a.galois == b.galois && a.group_order == b.group_order && a.genus == b.genus &&
         a.canonical_form == b.canonical_form;
}

bool operator==(const QuotientLaw& a, const QuotientLaw& b) {
  return a.cover == b.cover && a.group_order == b.group_order && a.word == b.word &&
         a.law == b.law && a.moment_fingerprint == b.moment_fingerprint;
}

bool operator==(const CatalogEntry& a, const CatalogEntry& b) {
  return a.cover == b.cover && a.laws == b.laws && a.schema_version == b.schema_version;
}

bool operator==(const Catalog& a, const Catalog& b) {
  return a.entries == b.entries && a.degrees_covered == b.degrees_covered &&
         a.word_list == b.word_list && a.created_with_seed == b.created_with_seed;
}

Catalog build_catalog(std::size_t max_degree, std::span<const NcPolynomial> words, unsigned threads) {
  if (max_degree < 1 || max_degree > kMaxEnumerationDegree) {
    throw ValidationError("catalog degree must lie in [1, 7]");
  }
  for (const auto& w : words) {
    if (!w.self_adjoint()) throw ValidationError("catalog word '" + to_string(w) + "' is not self-adjoint");
  }
  Catalog catalog;
  for (const auto& w : words) {
    const std::string key = to_string(w);
    if (std::find(catalog.word_list.begin(), catalog.word_list.end(), key) == catalog.word_list.end()) {
      catalog.word_list.push_back(key);
    }
  }
  for (std::size_t d = 1; d <= max_degree; ++d) {
    catalog.degrees_covered.push_back(d);
    auto covers = enumerate_covers(d, /*require_transitive=*/true, threads);
    std::vector<std::optional<CatalogEntry>> entries(covers.size());
    parallel_for(covers.size(), threads, [&](std::size_t i) {
      CatalogEntry entry{std::move(covers[i]), {}, kCatalogSchemaVersion};
      if (entry.cover.galois) {
        const FiniteQuotient q = quotient_from_cover(entry.cover);
        for (const auto& w : words) entry.laws.emplace(to_string(w), quotient_spectral_law(q, w));
      }
      entries[i] = std::move(entry);
    });
    for (auto& e : entries) catalog.entries.push_back(std::move(*e));
  }
  return catalog;
}

std::string serialize_catalog(const Catalog& catalog) {
  Json entries = Json::array();
  for (const auto& e : catalog.entries) entries.push_back(entry_to_json(e));
  Json payload{{"created_with_seed", seed_to_json(catalog.created_with_seed)},
               {"degrees_covered", catalog.degrees_covered},
               {"entries", std::move(entries)},
               {"word_list", catalog.word_list}};
  const std::string checksum = crc32_hex(payload.dump());
  Json document{{"checksum", checksum},
                {"payload", std::move(payload)},
                {"schema_version", kCatalogSchemaVersion}};
  return document.dump(2) + "\n";
}

Catalog parse_catalog(std::string_view text, bool revalidate) {
  using Kind = CatalogError::Kind;
  Json document;
  try {
    document = Json::parse(text);
  } catch (const Json::exception& e) {
    throw CatalogError(Kind::malformed, std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!document.is_object() || !document.contains("schema_version") ||
      !document["schema_version"].is_number_integer()) {
    throw CatalogError(Kind::malformed, "catalog has no schema_version");
  }
  const int version = document["schema_version"].get<int>();
  if (version != kCatalogSchemaVersion) {
    throw CatalogError(Kind::version, "catalog schema_version " + std::to_string(version) +
                                          " is not supported (expected " +
                                          std::to_string(kCatalogSchemaVersion) + ")");
  }
  if (!document.contains("payload") || !document.contains("checksum") ||
      !document["checksum"].is_string()) {
    throw CatalogError(Kind::malformed, "catalog lacks payload or checksum");
  }
  const Json& payload = document["payload"];
  if (crc32_hex(payload.dump()) != document["checksum"].get<std::string>()) {
    throw CatalogError(Kind::checksum, "catalog checksum mismatch");
  }

  Catalog catalog;
  try {
    for (const auto& e : payload.at("entries")) catalog.entries.push_back(entry_from_json(e));
    catalog.degrees_covered = payload.at("degrees_covered").get<std::vector<std::size_t>>();
    catalog.word_list = payload.at("word_list").get<std::vector<std::string>>();
    catalog.created_with_seed = seed_from_json(payload.at("created_with_seed"));
  } catch (const CatalogError&) {
    throw;
  } catch (const Json::exception& e) {
    throw CatalogError(Kind::malformed, std::string("catalog content is malformed: ") + e.what());
  } catch (const ValidationError& e) {
    throw CatalogError(Kind::malformed, std::string("catalog content is malformed: ") + e.what());
  }
  for (std::size_t i = 1; i < catalog.entries.size(); ++i) {
    const auto& prev = catalog.entries[i - 1].cover;
    const auto& cur = catalog.entries[i].cover;
    if (std::pair(prev.degree(), prev.canonical_form) >= std::pair(cur.degree(), cur.canonical_form)) {
      throw CatalogError(Kind::malformed, "catalog entries are not sorted by (degree, canonical form)");
    }
  }
  if (revalidate) {
    for (const auto& e : catalog.entries) revalidate_entry(e);
  }
  return catalog;
}

void save_catalog(const Catalog& catalog, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << serialize_catalog(catalog);
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

Catalog load_catalog(const std::filesystem::path& path, bool revalidate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open catalog '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str(), revalidate);
}

}  // namespace sectorlab

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/crc.hpp>

#include "sectorlab/catalog_store.hpp"
#include "sectorlab/json_io.hpp"

using namespace sectorlab;

namespace {

std::vector<NcPolynomial> words_of(std::initializer_list<const char*> texts) {
  std::vector<NcPolynomial> out;
  for (const char* t : texts) out.push_back(parse_polynomial(t));
  return out;
}

CatalogError::Kind error_kind(const std::string& text, bool revalidate = true) {
  try {
    (void)parse_catalog(text, revalidate);
  } catch (const CatalogError& e) {
    return e.kind();
  }
  FAIL("expected a CatalogError");
  return CatalogError::Kind::malformed;
}

std::string recompute_checksum(Json doc) {
  const std::string payload = doc["payload"].dump();
  boost::crc_32_type crc;
  crc.process_bytes(payload.data(), payload.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  doc["checksum"] = buf;
  return doc.dump(2) + "\n";
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sectorlab_test_" + name);
}

}  // namespace

TEST_CASE("small catalogs") {
  const auto words = words_of({"X"});
  const auto c1 = build_catalog(1, words);
  REQUIRE(c1.entries.size() == 1);
  const auto& laws = c1.entries[0].laws;
  REQUIRE(laws.count("X") == 1);
  CHECK(laws.at("X").law == DiscreteMeasure::dirac(2.0));

  const auto c2 = build_catalog(2, words);
  CHECK(c2.entries.size() == 4);
  CHECK(c2.degrees_covered == std::vector<std::size_t>{1, 2});
  CHECK(c2.word_list == std::vector<std::string>{"X"});
  for (std::size_t i = 1; i < c2.entries.size(); ++i) {
    const auto& a = c2.entries[i - 1].cover;
    const auto& b = c2.entries[i].cover;
    CHECK(std::make_pair(a.degree(), a.canonical_form) < std::make_pair(b.degree(), b.canonical_form));
  }
  CHECK(c2.find("2:10,01") != nullptr);
  CHECK(c2.find("9:nothing") == nullptr);
  CHECK(c2.laws_for(parse_polynomial("X")).size() == 4);
  CHECK_THROWS_AS(c2.laws_for(parse_polynomial("X + Y")), ValidationError);
}

TEST_CASE("build validation") {
  const auto words = words_of({"X"});
  CHECK_THROWS_AS(build_catalog(0, words), ValidationError);
  CHECK_THROWS_AS(build_catalog(8, words), ValidationError);
  CHECK_THROWS_AS(build_catalog(2, words_of({"X*Y"})), ValidationError);
}

TEST_CASE("Galois entries carry laws and others do not") {
  const auto cat = build_catalog(4, words_of({"X", "X + Y"}));
  for (const auto& e : cat.entries) {
    if (e.cover.galois) {
      CHECK(e.laws.size() == 2);
      for (const auto& [key, law] : e.laws) {
        CHECK(law.cover == e.cover.canonical_form);
        CHECK(law.group_order == e.cover.degree());
        double mass = 0.0;
        for (double w : law.law.weights()) mass += w;
        CHECK(std::abs(mass - 1.0) <= 1e-12);
      }
    } else {
      CHECK(e.laws.empty());
    }
  }
  CHECK(cat.profiles(words_of({"X", "X + Y"})).size() == 1 + 3 + 4 + 7);
}

TEST_CASE("serialisation is byte-identical and round-trips") {
  const auto words = words_of({"X", "X*Y + Y*X"});
  const auto a = build_catalog(3, words, 1);
  const auto b = build_catalog(3, words, 4);
  const std::string text = serialize_catalog(a);
  CHECK(text == serialize_catalog(b));
  CHECK(text.back() == '\n');
  const auto back = parse_catalog(text);
  CHECK(back == a);
  CHECK(serialize_catalog(back) == text);

  const auto path = temp_file("roundtrip.json");
  save_catalog(a, path);
  CHECK(load_catalog(path) == a);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == text);
  std::filesystem::remove(path);
}

TEST_CASE("corrupted catalogs are rejected") {
  const std::string text = serialize_catalog(build_catalog(3, words_of({"X"})));

  CHECK(error_kind(text.substr(0, text.size() / 2)) == CatalogError::Kind::malformed);
  CHECK(error_kind("") == CatalogError::Kind::malformed);
  CHECK(error_kind("[]") == CatalogError::Kind::malformed);

  Json doc = Json::parse(text);
  Json bumped = doc;
  bumped["schema_version"] = kCatalogSchemaVersion + 1;
  CHECK(error_kind(bumped.dump(2)) == CatalogError::Kind::version);

  Json no_version = doc;
  no_version.erase("schema_version");
  CHECK(error_kind(no_version.dump(2)) == CatalogError::Kind::malformed);

  std::string tampered = text;
  const auto pos = tampered.find("\"2:");
  REQUIRE(pos != std::string::npos);
  tampered[pos + 1] = '4';
  CHECK(error_kind(tampered) == CatalogError::Kind::checksum);

  Json forged = doc;
  bool changed = false;
  for (auto& e : forged["payload"]["entries"]) {
    if (e["cover"]["canonical_form"] == "2:10,01") {
      auto& atoms = e["laws"]["X"]["measure"]["atoms"];
      atoms[0] = "0.5";
      atoms[1] = "2";
      changed = true;
    }
  }
  REQUIRE(changed);
  const std::string forged_text = recompute_checksum(forged);
  CHECK(error_kind(forged_text) == CatalogError::Kind::revalidation);
  CHECK_NOTHROW((void)parse_catalog(forged_text, false));

  Json unsorted = doc;
  auto& entries = unsorted["payload"]["entries"];
  std::swap(entries[0], entries[1]);
  CHECK(error_kind(recompute_checksum(unsorted)) == CatalogError::Kind::malformed);

  CHECK_THROWS_AS(load_catalog(temp_file("does_not_exist.json")), ValidationError);
}

TEST_CASE("empty catalog round-trips") {
  const Catalog empty;
  CHECK(parse_catalog(serialize_catalog(empty)) == empty);
}

TEST_CASE("measure JSON round-trip is exact") {
  const auto mu = DiscreteMeasure::from_atoms({-1.0 / 3.0, 0.1, 2.0 / 7.0}, {0.25, 0.5, 0.25});
  CHECK(measure_from_json(Json::parse(measure_to_json(mu).dump())) == mu);
  const auto nu = DiscreteMeasure::from_samples({1e-300, 3.141592653589793, -2.718281828459045});
  CHECK(measure_from_json(Json::parse(measure_to_json(nu).dump())) == nu);
}

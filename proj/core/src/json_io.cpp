#include "sectorlab/json_io.hpp"

#include <charconv>
#include <ostream>

#include "sectorlab/errors.hpp"

namespace sectorlab {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw InvariantError("double formatting failed");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
    throw ValidationError("not a finite decimal: '" + std::string(text) + "'");
  }
  return value;
}

namespace {

double number_of(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get_ref<const std::string&>());
  throw ValidationError("expected a number");
}

std::vector<double> numbers_of(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number_of(x));
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ValidationError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

Json images_json(const Permutation& p) {
  Json out = Json::array();
  for (auto x : p.images()) out.push_back(static_cast<int>(x));
  return out;
}

Permutation permutation_of(const Json& j) {
  if (!j.is_array()) throw ValidationError("permutation images must be an array");
  std::vector<std::uint8_t> images;
  for (const auto& x : j) {
    const int v = x.get<int>();
    if (v < 0 || v > 255) throw ValidationError("permutation image out of range");
    images.push_back(static_cast<std::uint8_t>(v));
  }
  return Permutation(std::move(images));
}

}  // namespace

Json measure_to_json(const DiscreteMeasure& mu) {
  return Json{{"atoms", mu.atoms()}, {"weights", mu.weights()}};
}

Json measure_to_json_strings(const DiscreteMeasure& mu) {
  Json atoms = Json::array(), weights = Json::array();
  for (double x : mu.atoms()) atoms.push_back(format_double(x));
  for (double w : mu.weights()) weights.push_back(format_double(w));
  return Json{{"atoms", std::move(atoms)}, {"weights", std::move(weights)}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  return DiscreteMeasure::from_atoms(numbers_of(field(j, "atoms")), numbers_of(field(j, "weights")));
}

DiscreteMeasure extract_measure(const Json& j) {
  if (j.is_object()) {
    if (j.contains("atoms")) return measure_from_json(j);
    if (j.contains("mc_measure")) return measure_from_json(j.at("mc_measure"));
    if (j.contains("measure")) return measure_from_json(j.at("measure"));
  }
  throw ValidationError("document does not contain a measure");
}

Json matrix_to_json(const HermitianMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t k = 0; k < m.dim(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  return Json{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

HermitianMatrix matrix_from_json(const Json& j) {
  const auto dim = field(j, "dim").get<std::size_t>();
  const auto re = numbers_of(field(j, "re"));
  const auto im = numbers_of(field(j, "im"));
  if (re.size() != dim * dim || im.size() != dim * dim) {
    throw ValidationError("matrix dump has the wrong number of entries");
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(i * n + k);
      m(i, k) = Complex(re[idx], im[idx]);
    }
  }
  return HermitianMatrix::symmetrize(m, 1e-12);
}

Json seed_to_json(const SeedSpec& seed) {
  return Json{{"master_seed", seed.master_seed}, {"stream_id", seed.stream_id}};
}

SeedSpec seed_from_json(const Json& j) {
  return {field(j, "master_seed").get<std::uint64_t>(), field(j, "stream_id").get<std::uint64_t>()};
}

Json free_law_to_json(const FreeLawSummary& summary) {
  Json moments = Json::array();
  for (const auto& m : summary.moments) moments.push_back(m.str());
  return Json{{"word", to_string(summary.word)},
              {"moments", std::move(moments)},
              {"mc_measure", measure_to_json(summary.mc_measure)},
              {"mc_dim", summary.mc_dim},
              {"mc_trials", summary.mc_trials},
              {"seed", seed_to_json(summary.seed)},
              {"moment_errors", summary.moment_errors},
              {"moment_tolerance", summary.moment_tolerance},
              {"moments_consistent", summary.moments_consistent}};
}

Json cover_to_json(const BelyiCover& cover) {
  return Json{{"degree", cover.degree()},
              {"sigma0", images_json(cover.triple.sigma0)},
              {"sigma1", images_json(cover.triple.sigma1)},
              {"sigma_inf", images_json(cover.triple.sigma_inf)},
              {"transitive", cover.transitive},
              {"galois", cover.galois},
              {"group_order", cover.group_order},
              {"genus", cover.genus ? Json(*cover.genus) : Json(nullptr)},
              {"canonical_form", cover.canonical_form}};
}

BelyiCover cover_from_json(const Json& j) {
  const Permutation s0 = permutation_of(field(j, "sigma0"));
  const Permutation s1 = permutation_of(field(j, "sigma1"));
  if (s0.degree() != field(j, "degree").get<std::size_t>() || s1.degree() != s0.degree()) {
    throw ValidationError("cover degree does not match its permutations");
  }
  BelyiCover cover = make_cover(s0, s1);
  const Json& genus = field(j, "genus");
  const bool same = cover.triple.sigma_inf == permutation_of(field(j, "sigma_inf")) &&
                    cover.transitive == field(j, "transitive").get<bool>() &&
                    cover.galois == field(j, "galois").get<bool>() &&
                    cover.group_order == field(j, "group_order").get<std::size_t>() &&
                    cover.canonical_form == field(j, "canonical_form").get<std::string>() &&
                    (genus.is_null() ? !cover.genus : cover.genus == genus.get<unsigned>());
  if (!same) throw ValidationError("stored cover fields disagree with its permutations");
  return cover;
}

Json quotient_law_to_json(const QuotientLaw& law) {
  Json moments = Json::array();
  for (double m : law.moment_fingerprint) moments.push_back(format_double(m));
  return Json{{"cover", law.cover},
              {"group_order", law.group_order},
              {"word", to_string(law.word)},
              {"measure", measure_to_json_strings(law.law)},
              {"moments", std::move(moments)}};
}

QuotientLaw quotient_law_from_json(const Json& j) {
  return QuotientLaw{field(j, "cover").get<std::string>(), field(j, "group_order").get<std::size_t>(),
                     parse_polynomial(field(j, "word").get<std::string>()),
                     measure_from_json(field(j, "measure")), numbers_of(field(j, "moments"))};
}

Json classification_to_json(const ClassificationResult& result) {
  const bool finite = std::isfinite(result.runner_up_distance);
  return Json{{"best_cover", result.best_cover},
              {"distance", result.distance},
              {"runner_up_distance", finite ? Json(result.runner_up_distance) : Json(nullptr)},
              {"ambiguous", result.ambiguous},
              {"tied_covers", result.tied_covers}};
}

void write_probe_csv(std::ostream& out, std::span<const SectorProbeResult> probes) {
  out << "m,trials,hits,p_hat,rate_hat\n";
  for (const auto& p : probes) {
    out << p.dim << ',' << p.trials << ',' << p.hits << ',' << format_double(p.p_hat) << ','
        << format_double(p.rate_hat) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
  out << "bin_center,mass\n";
  for (const auto& b : bins) out << format_double(b.center) << ',' << format_double(b.mass) << '\n';
}

}  // namespace sectorlab

#pragma once

// File formats shared by the library and the CLI.
//
//   measure       {"atoms": [..], "weights": [..]}
//   matrix dump   {"dim": m, "re": [row-major], "im": [row-major]}
//   free law      {"word", "moments": ["p/q", ..], "mc_measure", "mc_dim", ...}
//   cover         {"degree", "sigma0", "sigma1", "sigma_inf", "transitive",
//                  "galois", "group_order", "genus", "canonical_form"}
//   quotient law  {"cover", "group_order", "word", "measure", "moments"}
//
// Readers accept numbers either as JSON numbers or as decimal strings.

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "sectorlab/belyi_monodromy.hpp"
#include "sectorlab/free_moments.hpp"
#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/quotient_spectra.hpp"
#include "sectorlab/sectors.hpp"
#include "sectorlab/spectral_measures.hpp"

namespace sectorlab {

using Json = nlohmann::json;

/// Shortest decimal string that reads back to the same double.
std::string format_double(double value);
/// ValidationError unless the whole string is a finite decimal.
double parse_double(std::string_view text);

Json measure_to_json(const DiscreteMeasure& mu);
/// Same layout with every number as a decimal string.
Json measure_to_json_strings(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

/// Finds a measure inside any of this library's documents: a bare measure,
/// a free-law summary ("mc_measure"), a quotient law ("measure").
DiscreteMeasure extract_measure(const Json& j);

Json matrix_to_json(const HermitianMatrix& m);
HermitianMatrix matrix_from_json(const Json& j);

Json seed_to_json(const SeedSpec& seed);
SeedSpec seed_from_json(const Json& j);

Json free_law_to_json(const FreeLawSummary& summary);

Json cover_to_json(const BelyiCover& cover);
/// Recomputes the derived fields and checks them against the stored ones.
BelyiCover cover_from_json(const Json& j);

Json quotient_law_to_json(const QuotientLaw& law);
QuotientLaw quotient_law_from_json(const Json& j);

Json classification_to_json(const ClassificationResult& result);

void write_probe_csv(std::ostream& out, std::span<const SectorProbeResult> probes);
void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins);

}  // namespace sectorlab

#pragma once

// Microstate sectors
//   Gamma_m(nu, eps) = { (A, B) on S_m x S_m : d(esd(w(A, B)), nu) < eps },
// their Monte Carlo probabilities with an m^2-speed decay estimate, and
// nearest-law classification of a spectral law against a quotient catalog.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/quotient_spectra.hpp"
#include "sectorlab/spectral_measures.hpp"
#include "sectorlab/word_algebra.hpp"

namespace sectorlab {

struct SectorSpec {
  NcPolynomial word;
  DiscreteMeasure target;
  double epsilon = 0.1;
  MetricChoice metric = MetricChoice::levy;

  /// ValidationError unless epsilon > 0 and the word is self-adjoint.
  void validate() const;
};

struct SectorMembership {
  bool member = false;
  double distance = 0.0;
};

/// Works on any pair of equal-dimension Hermitian matrices; sphere samples
/// pass their .matrix().
SectorMembership sector_membership(const HermitianMatrix& a, const HermitianMatrix& b,
                                   const SectorSpec& spec);

struct SectorProbeResult {
  std::size_t dim = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  /// -ln(p_hat)/m^2, or ln(trials)/m^2 as a lower bound when hits == 0.
  double rate_hat = 0.0;
  bool rate_is_lower_bound = false;
};

/// Trial t samples its pair from seed.child(t); the hit count does not depend
/// on `threads`.
SectorProbeResult sector_probability(const SectorSpec& spec, std::size_t m, std::size_t trials,
                                     const SeedSpec& seed, unsigned threads = 1);

/// One probe per dimension, the probe at dimension m seeded with seed.child(m).
/// ValidationError unless dims are strictly ascending.
std::vector<SectorProbeResult> rate_curve(const SectorSpec& spec, std::span<const std::size_t> dims,
                                          std::size_t trials, const SeedSpec& seed,
                                          unsigned threads = 1);

/// True when p_hat never increases along the curve.
bool is_nonincreasing(std::span<const SectorProbeResult> curve);

/// Best catalog distances within this gap are reported as ambiguous.
inline constexpr double kAmbiguityGap = 1e-6;

struct ClassificationResult {
  std::string best_cover;
  double distance = 0.0;
  double runner_up_distance = std::numeric_limits<double>::infinity();
  bool ambiguous = false;
  /// Every cover whose distance lies within kAmbiguityGap of the best,
  /// including best_cover, in catalog order.
  std::vector<std::string> tied_covers;
};

/// Nearest catalog law. Ties resolve to the earliest catalog entry and are
/// flagged. ValidationError for an empty catalog or mixed words.
ClassificationResult classify_sector(const DiscreteMeasure& law, const NcPolynomial& word,
                                     std::span<const QuotientLaw> catalog, MetricChoice metric);

/// One cover's laws for an ordered word list.
struct LawProfile {
  std::string cover;
  std::vector<DiscreteMeasure> laws;
};

/// Joint classification over several words: the score of a cover is the
/// maximum of its per-word distances.
ClassificationResult classify_profile(std::span<const DiscreteMeasure> observed,
                                      std::span<const LawProfile> catalog, MetricChoice metric);

}  // namespace sectorlab

#include "sectorlab/sectors.hpp"

#include <cmath>

#include "sectorlab/errors.hpp"
#include "sectorlab/parallel.hpp"

namespace sectorlab {

void SectorSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("sector epsilon must be positive");
  }
  if (!word.self_adjoint()) {
    throw ValidationError("sector word '" + to_string(word) + "' is not self-adjoint");
  }
}

SectorMembership sector_membership(const HermitianMatrix& a, const HermitianMatrix& b,
                                   const SectorSpec& spec) {
  spec.validate();
  if (a.dim() != b.dim()) throw ValidationError("sector pair has mismatched dimensions");
  const double distance = metric_distance(esd(evaluate_word(spec.word, a, b)), spec.target, spec.metric);
  return {distance < spec.epsilon, distance};
}

SectorProbeResult sector_probability(const SectorSpec& spec, std::size_t m, std::size_t trials,
                                     const SeedSpec& seed, unsigned threads) {
  spec.validate();
  if (trials == 0) throw ValidationError("sector probe needs at least one trial");
  if (m == 0) throw ValidationError("matrix dimension must be positive");

  std::vector<char> hit(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto [a, b] = sample_sphere_pair(m, seed.child(t));
    hit[t] = sector_membership(a.matrix(), b.matrix(), spec).member ? 1 : 0;
  });

  SectorProbeResult result;
  result.dim = m;
  result.trials = trials;
  for (char h : hit) result.hits += static_cast<std::size_t>(h);
  result.p_hat = static_cast<double>(result.hits) / static_cast<double>(trials);
  const double m2 = static_cast<double>(m) * static_cast<double>(m);
  if (result.hits == 0) {
    result.rate_hat = std::log(static_cast<double>(trials)) / m2;
    result.rate_is_lower_bound = true;
  } else {
    // -ln(1) is -0.0; normalize to +0.0 for stable output.
    result.rate_hat = result.hits == trials ? 0.0 : -std::log(result.p_hat) / m2;
  }
  return result;
}

std::vector<SectorProbeResult> rate_curve(const SectorSpec& spec, std::span<const std::size_t> dims,
                                          std::size_t trials, const SeedSpec& seed,
                                          unsigned threads) {
  for (std::size_t i = 1; i < dims.size(); ++i) {
    if (dims[i] <= dims[i - 1]) throw ValidationError("rate curve dimensions must be ascending");
  }
  std::vector<SectorProbeResult> curve;
  curve.reserve(dims.size());
  for (std::size_t m : dims) curve.push_back(sector_probability(spec, m, trials, seed.child(m), threads));
  return curve;
}

bool is_nonincreasing(std::span<const SectorProbeResult> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].p_hat > curve[i - 1].p_hat) return false;
  }
  return true;
}

namespace {

ClassificationResult rank_scores(const std::vector<double>& scores,
                                 const std::vector<const std::string*>& ids) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] < scores[best]) best = i;
  }
  ClassificationResult result;
  result.best_cover = *ids[best];
  result.distance = scores[best];
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (i != best) result.runner_up_distance = std::min(result.runner_up_distance, scores[i]);
    if (scores[i] - scores[best] < kAmbiguityGap) result.tied_covers.push_back(*ids[i]);
  }
  result.ambiguous = result.tied_covers.size() > 1;
  return result;
}

}  // namespace

ClassificationResult classify_sector(const DiscreteMeasure& law, const NcPolynomial& word,
                                     std::span<const QuotientLaw> catalog, MetricChoice metric) {
  if (catalog.empty()) throw ValidationError("classification catalog is empty");
  std::vector<double> scores;
  std::vector<const std::string*> ids;
  for (const auto& entry : catalog) {
    if (!(entry.word == word)) throw ValidationError("catalog laws are for a different word");
    scores.push_back(metric_distance(law, entry.law, metric));
    ids.push_back(&entry.cover);
  }
  return rank_scores(scores, ids);
}

ClassificationResult classify_profile(std::span<const DiscreteMeasure> observed,
                                      std::span<const LawProfile> catalog, MetricChoice metric) {
  if (catalog.empty()) throw ValidationError("classification catalog is empty");
  if (observed.empty()) throw ValidationError("no observed laws to classify");
  std::vector<double> scores;
  std::vector<const std::string*> ids;
  for (const auto& profile : catalog) {
    if (profile.laws.size() != observed.size()) {
      throw ValidationError("catalog profile has a different word count");
    }
    double score = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      score = std::max(score, metric_distance(observed[i], profile.laws[i], metric));
    }
    scores.push_back(score);
    ids.push_back(&profile.cover);
  }
  return rank_scores(scores, ids);
}

}  // namespace sectorlab

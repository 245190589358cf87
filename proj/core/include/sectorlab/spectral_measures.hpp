#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/word_algebra.hpp"

namespace sectorlab {

/// Relative tolerance under which two eigenvalues count as one atom.
inline constexpr double kAtomMergeTolerance = 1e-9;

/// Finite atomic probability measure on the real line. Atoms are strictly
/// increasing and weights are positive with total mass 1 (within 1e-12).
class DiscreteMeasure {
 public:
  /// Sorts, merges atoms closer than merge_tolerance * max(1, |x|) (weights
  /// summed, atom placed at the weighted mean) and renormalizes. Throws
  /// ValidationError for empty input, non-finite atoms, non-positive weights
  /// or a total mass off by more than 1e-9.
  static DiscreteMeasure from_atoms(std::vector<double> atoms, std::vector<double> weights,
                                    double merge_tolerance = 0.0);
  /// Uniform weights 1/n on the given values.
  static DiscreteMeasure from_samples(std::vector<double> values,
                                      double merge_tolerance = kAtomMergeTolerance);
  static DiscreteMeasure dirac(double x);

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Mass of (-inf, x].
  double cdf(double x) const;
  /// Mass of (-inf, x).
  double cdf_left(double x) const;
  double moment(unsigned k) const;
  double min_atom() const { return atoms_.front(); }
  double max_atom() const { return atoms_.back(); }

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  DiscreteMeasure() = default;

  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Semicircle law of variance t: density (1/(2 pi t)) sqrt(4t - s^2) on [-2 sqrt t, 2 sqrt t].
struct SemicircleLaw {
  double variance = 1.0;

  double density(double x) const;
  double cdf(double x) const;
  double radius() const;
};

double semicircle_cdf(double variance, double x);

/// 0 for odd k, t^(k/2) * Catalan(k/2) for even k.
Rational semicircle_moment(const Rational& variance, unsigned k);

Rational catalan(unsigned n);

enum class MetricChoice { levy, wasserstein1, bhattacharyya_angle };

/// Accepts "levy", "w1", "wasserstein1", "bhattacharyya", "bhattacharyya_angle".
MetricChoice parse_metric(std::string_view name);
std::string to_string(MetricChoice metric);

inline constexpr double kLevyResolution = 1e-9;
inline constexpr std::size_t kBhattacharyyaBins = 256;

double levy_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
double wasserstein1_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
double bhattacharyya_angle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           std::size_t bins = kBhattacharyyaBins);
double metric_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricChoice metric);

/// Kolmogorov-Smirnov distance between a step CDF and a continuous CDF.
template <class Cdf>
double ks_distance(const DiscreteMeasure& mu, Cdf&& reference) {
  double worst = 0.0;
  for (double x : mu.atoms()) {
    const double g = reference(x);
    worst = std::max({worst, std::abs(mu.cdf(x) - g), std::abs(mu.cdf_left(x) - g)});
  }
  return worst;
}

double ks_distance_to_semicircle(const DiscreteMeasure& mu, double variance = 1.0);

// ---------------------------------------------------------------------------

/// Ascending eigenvalues. Throws ValidationError on non-finite entries.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);

struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

EigenDecomposition hermitian_eigendecomposition(const HermitianMatrix& m);

DiscreteMeasure esd(const HermitianMatrix& m, double merge_tolerance = kAtomMergeTolerance);

/// Evaluates p at (A, B) respecting letter order; no adjoint requirement.
ComplexMatrix evaluate_polynomial(const NcPolynomial& p, const ComplexMatrix& a,
                                  const ComplexMatrix& b);

/// Evaluates a self-adjoint p and returns its Hermitian part after checking
/// the skew part is below 1e-10 (relative). ValidationError when p is not
/// self-adjoint or the dimensions differ.
HermitianMatrix evaluate_word(const NcPolynomial& p, const HermitianMatrix& a,
                              const HermitianMatrix& b);

struct HistogramBin {
  double center;
  double mass;
};

/// Fixed-width histogram over [lo, hi]; atoms outside the range are clamped
/// into the edge bins.
std::vector<HistogramBin> histogram(const DiscreteMeasure& mu, std::size_t bins, double lo,
                                    double hi);

}  // namespace sectorlab

#include "sectorlab/spectral_measures.hpp"

#include <numbers>
#include <numeric>

#include "sectorlab/errors.hpp"

namespace sectorlab {

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<double> atoms, std::vector<double> weights,
                                            double merge_tolerance) {
  if (atoms.empty()) throw ValidationError("measure has no atoms");
  if (atoms.size() != weights.size()) throw ValidationError("atom and weight counts differ");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(atoms.size());
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw ValidationError("measure atom is not finite");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw ValidationError("measure weights must be positive and finite");
    }
    pairs.emplace_back(atoms[i], weights[i]);
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("measure weights sum to " + std::to_string(total) + ", not 1");
  }
  std::sort(pairs.begin(), pairs.end());

  // Within 1e-12 the weights are kept bit-exact, so that serialized
  // measures reload unchanged.
  const double scale = std::abs(total - 1.0) <= 1e-12 ? 1.0 : total;

  DiscreteMeasure mu;
  double cluster_mass = 0.0;
  double cluster_moment = 0.0;
  std::size_t cluster_size = 0;
  double previous = pairs.front().first;
  auto flush = [&] {
    mu.atoms_.push_back(cluster_size == 1 ? previous : cluster_moment / cluster_mass);
    mu.weights_.push_back(scale == 1.0 ? cluster_mass : cluster_mass / scale);
  };
  for (const auto& [x, w] : pairs) {
    const double gap_limit = merge_tolerance * std::max({1.0, std::abs(x), std::abs(previous)});
    if (cluster_size > 0 && x - previous > gap_limit) {
      flush();
      cluster_mass = 0.0;
      cluster_moment = 0.0;
      cluster_size = 0;
    }
    cluster_mass += w;
    cluster_moment += w * x;
    ++cluster_size;
    previous = x;
  }
  flush();

  mu.cumulative_.resize(mu.weights_.size());
  std::partial_sum(mu.weights_.begin(), mu.weights_.end(), mu.cumulative_.begin());
  mu.cumulative_.back() = 1.0;
  return mu;
}

DiscreteMeasure DiscreteMeasure::from_samples(std::vector<double> values, double merge_tolerance) {
  const double w = values.empty() ? 0.0 : 1.0 / static_cast<double>(values.size());
  std::vector<double> weights(values.size(), w);
  return from_atoms(std::move(values), std::move(weights), merge_tolerance);
}

DiscreteMeasure DiscreteMeasure::dirac(double x) { return from_atoms({x}, {1.0}); }

double DiscreteMeasure::cdf(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteMeasure::cdf_left(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteMeasure::moment(unsigned k) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    sum += weights_[i] * std::pow(atoms_[i], static_cast<double>(k));
  }
  return sum;
}

// ---------------------------------------------------------------------------

double SemicircleLaw::radius() const { return 2.0 * std::sqrt(variance); }

double SemicircleLaw::density(double x) const {
  const double r2 = 4.0 * variance - x * x;
  return r2 <= 0.0 ? 0.0 : std::sqrt(r2) / (2.0 * std::numbers::pi * variance);
}

double SemicircleLaw::cdf(double x) const { return semicircle_cdf(variance, x); }

double semicircle_cdf(double variance, double x) {
  if (!(variance > 0.0)) throw ValidationError("semicircle variance must be positive");
  const double r = 2.0 * std::sqrt(variance);
  if (x <= -r) return 0.0;
  if (x >= r) return 1.0;
  const double value = 0.5 + x * std::sqrt(4.0 * variance - x * x) / (4.0 * std::numbers::pi * variance) +
                       std::asin(x / r) / std::numbers::pi;
  return std::clamp(value, 0.0, 1.0);
}

Rational catalan(unsigned n) {
  // C_{k+1} = C_k * 2(2k+1)/(k+2)
  Rational c(1);
  for (unsigned k = 0; k < n; ++k) c = c * Rational(2 * (2 * k + 1)) / Rational(k + 2);
  return c;
}

Rational semicircle_moment(const Rational& variance, unsigned k) {
  if (variance <= 0) throw ValidationError("semicircle variance must be positive");
  if (k % 2 == 1) return Rational(0);
  Rational power(1);
  for (unsigned i = 0; i < k / 2; ++i) power *= variance;
  return power * catalan(k / 2);
}

double ks_distance_to_semicircle(const DiscreteMeasure& mu, double variance) {
  return ks_distance(mu, [variance](double x) { return semicircle_cdf(variance, x); });
}

// ---------------------------------------------------------------------------

MetricChoice parse_metric(std::string_view name) {
  if (name == "levy") return MetricChoice::levy;
  if (name == "w1" || name == "wasserstein1") return MetricChoice::wasserstein1;
  if (name == "bhattacharyya" || name == "bhattacharyya_angle") {
    return MetricChoice::bhattacharyya_angle;
  }
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

std::string to_string(MetricChoice metric) {
  switch (metric) {
    case MetricChoice::levy: return "levy";
    case MetricChoice::wasserstein1: return "w1";
    case MetricChoice::bhattacharyya_angle: return "bhattacharyya";
  }
  return "levy";
}

namespace {

// F(x - eps) - eps <= G(x) <= F(x + eps) + eps for all x. Both sides are step
// functions, so each supremum is attained at a jump of G or in the left limit
// of a shifted jump of F.
bool levy_band_holds(const DiscreteMeasure& f, const DiscreteMeasure& g, double eps) {
  for (double y : g.atoms()) {
    if (g.cdf(y) - f.cdf(y + eps) > eps) return false;
    if (f.cdf_left(y - eps) - g.cdf_left(y) > eps) return false;
  }
  for (double a : f.atoms()) {
    if (g.cdf_left(a - eps) - f.cdf_left(a) > eps) return false;
    if (f.cdf(a) - g.cdf(a + eps) > eps) return false;
  }
  return true;
}

}  // namespace

double levy_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (levy_band_holds(mu, nu, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kLevyResolution) {
    const double mid = 0.5 * (lo + hi);
    if (levy_band_holds(mu, nu, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double wasserstein1_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> breaks;
  breaks.reserve(mu.size() + nu.size());
  std::merge(mu.atoms().begin(), mu.atoms().end(), nu.atoms().begin(), nu.atoms().end(),
             std::back_inserter(breaks));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double width = breaks[i + 1] - breaks[i];
    if (width > 0.0) total += std::abs(mu.cdf(breaks[i]) - nu.cdf(breaks[i])) * width;
  }
  return total;
}

double bhattacharyya_angle(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t bins) {
  if (bins == 0) throw ValidationError("bin count must be positive");
  const double lo = std::min(mu.min_atom(), nu.min_atom());
  const double hi = std::max(mu.max_atom(), nu.max_atom());
  if (hi <= lo) return 0.0;
  auto bin_masses = [&](const DiscreteMeasure& m) {
    std::vector<double> mass(bins, 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double t = (m.atoms()[i] - lo) / (hi - lo);
      const auto idx = std::min(bins - 1, static_cast<std::size_t>(t * static_cast<double>(bins)));
      mass[idx] += m.weights()[i];
    }
    return mass;
  };
  const auto p = bin_masses(mu);
  const auto q = bin_masses(nu);
  // 2 acos(BC) with 1 - BC = h^2 = (1/2) sum (sqrt p - sqrt q)^2, evaluated
  // as 4 asin(h / sqrt 2) to stay exact at BC = 1.
  double h2 = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    h2 += 0.5 * d * d;
  }
  return 4.0 * std::asin(std::min(1.0, std::sqrt(0.5 * h2)));
}

double metric_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, MetricChoice metric) {
  switch (metric) {
    case MetricChoice::levy: return levy_distance(mu, nu);
    case MetricChoice::wasserstein1: return wasserstein1_distance(mu, nu);
    case MetricChoice::bhattacharyya_angle: return bhattacharyya_angle(mu, nu);
  }
  throw InvariantError("unhandled metric");
}

// ---------------------------------------------------------------------------

namespace {

void require_finite(const HermitianMatrix& m) {
  if (m.dim() == 0) throw ValidationError("matrix is empty");
  if (!m.dense().allFinite()) throw ValidationError("matrix has non-finite entries");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
  require_finite(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvariantError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

EigenDecomposition hermitian_eigendecomposition(const HermitianMatrix& m) {
  require_finite(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.dense(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw InvariantError("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {{ev.data(), ev.data() + ev.size()}, solver.eigenvectors()};
}

DiscreteMeasure esd(const HermitianMatrix& m, double merge_tolerance) {
  return DiscreteMeasure::from_samples(hermitian_eigenvalues(m), merge_tolerance);
}

ComplexMatrix evaluate_polynomial(const NcPolynomial& p, const ComplexMatrix& a,
                                  const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ValidationError("word evaluation needs two square matrices of equal dimension");
  }
  const Eigen::Index n = a.rows();
  ComplexMatrix result = ComplexMatrix::Zero(n, n);
  ComplexMatrix scratch(n, n);
  for (const auto& term : p.terms()) {
    const double c = term.coefficient.convert_to<double>();
    if (term.letters.empty()) {
      result.diagonal().array() += c;
      continue;
    }
    ComplexMatrix product = term.letters.front() == Generator::X ? a : b;
    for (std::size_t i = 1; i < term.letters.size(); ++i) {
      scratch.noalias() = product * (term.letters[i] == Generator::X ? a : b);
      product.swap(scratch);
    }
    result += c * product;
  }
  return result;
}

HermitianMatrix evaluate_word(const NcPolynomial& p, const HermitianMatrix& a,
                              const HermitianMatrix& b) {
  if (!p.self_adjoint()) {
    throw ValidationError("word '" + to_string(p) + "' is not self-adjoint");
  }
  return HermitianMatrix::symmetrize(evaluate_polynomial(p, a.dense(), b.dense()), 1e-10);
}

std::vector<HistogramBin> histogram(const DiscreteMeasure& mu, std::size_t bins, double lo,
                                    double hi) {
  if (bins == 0 || !(hi > lo)) throw ValidationError("histogram needs bins > 0 and hi > lo");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t i = 0; i < bins; ++i) out[i] = {lo + (static_cast<double>(i) + 0.5) * width, 0.0};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double t = std::floor((mu.atoms()[i] - lo) / width);
    const auto idx = static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(bins - 1)));
    out[idx].mass += mu.weights()[i];
  }
  return out;
}

}  // namespace sectorlab

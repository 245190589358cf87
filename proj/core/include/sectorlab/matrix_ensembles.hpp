#pragma once

// GUE sampling, radial projection onto the matrix sphere
// S_m = { M Hermitian : (1/m) Tr(M^2) = 1 }, and the corner embeddings
// S_n -> S_m used to build coherent sequences of samples.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include <Eigen/Dense>

namespace sectorlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Reproducible stream identity. Equal specs always produce equal samples.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Deterministic sub-stream; distinct k give distinct streams.
  SeedSpec child(std::uint64_t k) const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

std::mt19937_64 make_engine(const SeedSpec& seed);

/// Dense Hermitian matrix. Every constructor and mutator keeps the stored
/// array exactly Hermitian: the lower triangle mirrors the upper one and the
/// diagonal is real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim);

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);
  /// Copies the upper triangle (including the real part of the diagonal)
  /// and mirrors it into the lower triangle.
  static HermitianMatrix from_upper(const ComplexMatrix& m);
  /// Returns (W + W*)/2 after checking the skew part is at most
  /// tolerance * max(1, max|W_ij|). Throws InvariantError otherwise.
  static HermitianMatrix symmetrize(const ComplexMatrix& w, double tolerance = 1e-10);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  const ComplexMatrix& dense() const noexcept { return data_; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

  /// Writes entry (i, j) and its mirror. Diagonal writes drop the imaginary part.
  void set(std::size_t i, std::size_t j, Complex value);

  HermitianMatrix scaled(double factor) const;
  /// (1/m) Tr(M^2) = (1/m) sum |M_ij|^2.
  double normalized_trace_square() const;
  double max_abs() const;

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.data_.rows() == b.data_.rows() && a.data_ == b.data_;
  }

 private:
  ComplexMatrix data_;
};

/// A matrix on the unit sphere (1/m) Tr(M^2) = 1 (relative tolerance 1e-12).
class SphericalSample {
 public:
  /// Throws InvariantError when the sphere constraint does not hold.
  explicit SphericalSample(HermitianMatrix matrix);

  const HermitianMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

 private:
  HermitianMatrix matrix_;
};

inline constexpr double kSphereTolerance = 1e-12;
/// Larger sample requests raise ResourceError.
inline constexpr std::size_t kMaxSampleDim = 4096;

/// Entries follow the density proportional to exp(-(m/2) Tr M^2): diagonal
/// N(0, 1/m), off-diagonal real and imaginary parts N(0, 1/(2m)).
HermitianMatrix sample_gue(std::size_t m, const SeedSpec& seed);

/// M * sqrt(m / Tr(M^2)). Throws ValidationError for the zero matrix.
SphericalSample project_to_sphere(const HermitianMatrix& m);

/// Two independent sphere samples drawn from seed.child(0) and seed.child(1).
std::pair<SphericalSample, SphericalSample> sample_sphere_pair(std::size_t m,
                                                               const SeedSpec& seed);

/// Corner embedding with the literal scale sqrt(n/m):
///   sqrt(n/m) * [[A, 0], [0, 0]].
/// Compatible under composition, but the result is NOT on the m-sphere
/// ((1/m) Tr = n^2/m^2), hence the plain matrix return type.
HermitianMatrix embed(const HermitianMatrix& a, std::size_t m);

/// Corner embedding with scale sqrt(m/n), which maps S_n into S_m exactly and
/// is equally compatible under composition.
SphericalSample embed_normalized(const SphericalSample& a, std::size_t m);

/// Product of `reflections` random complex Householder reflections.
ComplexMatrix random_unitary(std::size_t m, std::size_t reflections, const SeedSpec& seed);

/// U M U*, re-Hermitized.
HermitianMatrix conjugate(const HermitianMatrix& m, const ComplexMatrix& unitary);

}  // namespace sectorlab

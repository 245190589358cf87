#include "sectorlab/matrix_ensembles.hpp"

#include <cmath>
#include <string>

#include "sectorlab/errors.hpp"

namespace sectorlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require_dim(std::size_t m) {
  if (m == 0) throw ValidationError("matrix dimension must be positive");
  if (m > kMaxSampleDim) {
    throw ResourceError("matrix dimension " + std::to_string(m) + " exceeds the sampling limit " +
                        std::to_string(kMaxSampleDim));
  }
}

ComplexMatrix corner(const ComplexMatrix& a, std::size_t m, double scale) {
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  out.topLeftCorner(a.rows(), a.cols()) = scale * a;
  return out;
}

}  // namespace

SeedSpec SeedSpec::child(std::uint64_t k) const {
  return {master_seed, splitmix64(splitmix64(stream_id) ^ splitmix64(~k))};
}

std::mt19937_64 make_engine(const SeedSpec& seed) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed.master_seed), static_cast<std::uint32_t>(seed.master_seed >> 32),
      static_cast<std::uint32_t>(seed.stream_id), static_cast<std::uint32_t>(seed.stream_id >> 32)};
  return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(std::size_t dim)
    : data_(ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  HermitianMatrix out(dim);
  out.data_.setIdentity();
  return out;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  HermitianMatrix out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.data_(i, i) = values[i];
  return out;
}

HermitianMatrix HermitianMatrix::from_upper(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("Hermitian matrix must be square");
  HermitianMatrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    out.data_(j, j) = m(j, j).real();
    for (Eigen::Index i = 0; i < j; ++i) {
      out.data_(i, j) = m(i, j);
      out.data_(j, i) = std::conj(m(i, j));
    }
  }
  return out;
}

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& w, double tolerance) {
  if (w.rows() != w.cols()) throw ValidationError("Hermitian matrix must be square");
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  const double skew = (w - w.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tolerance * scale) {
    throw InvariantError("matrix is not Hermitian: skew part " + std::to_string(skew));
  }
  return from_upper(0.5 * (w + w.adjoint()));
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex value) {
  if (i == j) {
    data_(i, i) = value.real();
  } else {
    data_(i, j) = value;
    data_(j, i) = std::conj(value);
  }
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  HermitianMatrix out;
  out.data_ = factor * data_;
  return out;
}

double HermitianMatrix::normalized_trace_square() const {
  if (dim() == 0) return 0.0;
  return data_.squaredNorm() / static_cast<double>(dim());
}

double HermitianMatrix::max_abs() const {
  return dim() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

SphericalSample::SphericalSample(HermitianMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.dim() == 0 ||
      std::abs(matrix_.normalized_trace_square() - 1.0) > kSphereTolerance) {
    throw InvariantError("matrix violates the sphere constraint (1/m) Tr(M^2) = 1");
  }
}

// ---------------------------------------------------------------------------

HermitianMatrix sample_gue(std::size_t m, const SeedSpec& seed) {
  require_dim(m);
  auto engine = make_engine(seed);
  const double md = static_cast<double>(m);
  std::normal_distribution<double> diag(0.0, std::sqrt(1.0 / md));
  std::normal_distribution<double> off(0.0, std::sqrt(0.5 / md));
  HermitianMatrix out(m);
  // Column-major upper-triangle fill order is part of the reproducibility contract.
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double re = off(engine);
      const double im = off(engine);
      out.set(i, j, {re, im});
    }
    out.set(j, j, diag(engine));
  }
  return out;
}

SphericalSample project_to_sphere(const HermitianMatrix& m) {
  const double trace_square = m.dense().squaredNorm();
  if (!(trace_square > 0.0) || !std::isfinite(trace_square)) {
    throw ValidationError("cannot project a zero or non-finite matrix onto the sphere");
  }
  const double md = static_cast<double>(m.dim());
  HermitianMatrix scaled = m.scaled(std::sqrt(md / trace_square));
  // One refinement step pulls the constraint to within a few ulps.
  const double residual = scaled.normalized_trace_square();
  if (std::abs(residual - 1.0) > 0.25 * kSphereTolerance) {
    scaled = scaled.scaled(1.0 / std::sqrt(residual));
  }
  return SphericalSample(std::move(scaled));
}

std::pair<SphericalSample, SphericalSample> sample_sphere_pair(std::size_t m,
                                                               const SeedSpec& seed) {
  return {project_to_sphere(sample_gue(m, seed.child(0))),
          project_to_sphere(sample_gue(m, seed.child(1)))};
}

HermitianMatrix embed(const HermitianMatrix& a, std::size_t m) {
  const std::size_t n = a.dim();
  if (m <= n) throw ValidationError("embedding target dimension must exceed the source dimension");
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
  return HermitianMatrix::from_upper(corner(a.dense(), m, scale));
}

SphericalSample embed_normalized(const SphericalSample& a, std::size_t m) {
  const std::size_t n = a.dim();
  if (m <= n) throw ValidationError("embedding target dimension must exceed the source dimension");
  const double scale = std::sqrt(static_cast<double>(m) / static_cast<double>(n));
  return SphericalSample(HermitianMatrix::from_upper(corner(a.matrix().dense(), m, scale)));
}

ComplexMatrix random_unitary(std::size_t m, std::size_t reflections, const SeedSpec& seed) {
  require_dim(m);
  auto engine = make_engine(seed);
  std::normal_distribution<double> normal;
  const auto mi = static_cast<Eigen::Index>(m);
  ComplexMatrix u = ComplexMatrix::Identity(mi, mi);
  for (std::size_t r = 0; r < reflections; ++r) {
    Eigen::VectorXcd v(mi);
    for (Eigen::Index i = 0; i < mi; ++i) v(i) = Complex(normal(engine), normal(engine));
    v.normalize();
    // H = I - 2 v v*, applied on the left.
    u -= 2.0 * v * (v.adjoint() * u);
  }
  return u;
}

HermitianMatrix conjugate(const HermitianMatrix& m, const ComplexMatrix& unitary) {
  const ComplexMatrix w = unitary * m.dense() * unitary.adjoint();
  return HermitianMatrix::symmetrize(w, 1e-9);
}

}  // namespace sectorlab

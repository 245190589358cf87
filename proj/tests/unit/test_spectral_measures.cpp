#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/spectral_measures.hpp"

using namespace sectorlab;

namespace {

// Lévy distance straight from its definition: the band condition is checked
// at every breakpoint of G, F(. - eps), F(. + eps) and at midpoints between
// them, and eps is bisected.
double levy_oracle(const DiscreteMeasure& f, const DiscreteMeasure& g) {
  auto cdf = [](const DiscreteMeasure& m, double x) {
    double s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.atoms()[i] <= x) s += m.weights()[i];
    }
    return s;
  };
  auto holds = [&](double eps) {
    std::vector<double> pts;
    for (double a : g.atoms()) pts.push_back(a);
    for (double a : f.atoms()) {
      pts.push_back(a + eps);
      pts.push_back(a - eps);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> probes = pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) probes.push_back(0.5 * (pts[i] + pts[i + 1]));
    probes.push_back(pts.front() - 1.0);
    probes.push_back(pts.back() + 1.0);
    for (double x : probes) {
      const double gx = cdf(g, x);
      if (cdf(f, x - eps) - eps > gx + 1e-15) return false;
      if (gx > cdf(f, x + eps) + eps + 1e-15) return false;
    }
    return true;
  };
  double lo = 0.0, hi = 1.0;
  if (holds(0.0)) return 0.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

DiscreteMeasure random_measure(std::mt19937_64& rng, int max_atoms = 6) {
  std::uniform_int_distribution<int> n(1, max_atoms);
  std::uniform_real_distribution<double> pos(-3.0, 3.0), w(0.1, 1.0);
  const int k = n(rng);
  std::vector<double> atoms, weights;
  double total = 0;
  for (int i = 0; i < k; ++i) {
    atoms.push_back(pos(rng));
    weights.push_back(w(rng));
    total += weights.back();
  }
  for (auto& x : weights) x /= total;
  return DiscreteMeasure::from_atoms(atoms, weights);
}

DiscreteMeasure measure(std::vector<double> atoms, std::vector<double> weights) {
  return DiscreteMeasure::from_atoms(std::move(atoms), std::move(weights));
}

}  // namespace

TEST_CASE("eigenvalue examples") {
  const std::vector<double> d{2.0, -1.0};
  CHECK(hermitian_eigenvalues(HermitianMatrix::diagonal(d)) == std::vector<double>{-1.0, 2.0});
  HermitianMatrix swap(2);
  swap.set(0, 1, Complex(1.0, 0.0));
  const auto ev = hermitian_eigenvalues(swap);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-15));
  for (double x : hermitian_eigenvalues(HermitianMatrix::identity(6))) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("eigen-decomposition reconstructs the matrix") {
  for (std::size_t m : {3u, 50u, 200u}) {
    const auto a = sample_gue(m, {m, 1});
    const auto [values, q] = hermitian_eigendecomposition(a);
    CHECK(std::is_sorted(values.begin(), values.end()));
    Eigen::VectorXd lam(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) lam(static_cast<Eigen::Index>(i)) = values[i];
    const ComplexMatrix back = q * lam.cast<Complex>().asDiagonal() * q.adjoint();
    CHECK((back - a.dense()).cwiseAbs().maxCoeff() <= 1e-9 * a.max_abs());
  }
  HermitianMatrix bad(2);
  bad.set(0, 1, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), ValidationError);
}

TEST_CASE("ESD examples") {
  const auto id = esd(HermitianMatrix::identity(2));
  CHECK(id == DiscreteMeasure::dirac(1.0));
  const std::vector<double> d{1.0, -1.0};
  CHECK(esd(HermitianMatrix::diagonal(d)) == measure({-1.0, 1.0}, {0.5, 0.5}));
  const std::vector<double> rep{3.0, 3.0, 3.0, -2.0};
  CHECK(esd(HermitianMatrix::diagonal(rep)) == measure({-2.0, 3.0}, {0.25, 0.75}));
}

TEST_CASE("Wigner semicircle at m = 512") {
  const auto [a, b] = sample_sphere_pair(512, {2024, 0});
  CHECK(ks_distance_to_semicircle(esd(a.matrix())) < 0.05);
  CHECK(ks_distance_to_semicircle(esd(b.matrix())) < 0.05);
}

TEST_CASE("ESD moments approach semicircle moments") {
  for (std::size_t m : {128u, 512u}) {
    const auto mu = esd(project_to_sphere(sample_gue(m, {31, m})).matrix());
    const double tol = 10.0 / std::sqrt(static_cast<double>(m));
    for (unsigned k = 1; k <= 6; ++k) {
      CHECK(std::abs(mu.moment(k) - semicircle_moment(1, k).convert_to<double>()) <= tol);
    }
  }
}

TEST_CASE("word evaluation examples") {
  const auto a = project_to_sphere(sample_gue(6, {1, 1})).matrix();
  const auto b = project_to_sphere(sample_gue(6, {1, 2})).matrix();
  CHECK(evaluate_word(parse_polynomial("X"), a, b) == a);

  const std::vector<double> d{1.0, -1.0};
  const auto da = HermitianMatrix::diagonal(d);
  HermitianMatrix sw(2);
  sw.set(0, 1, Complex(1.0, 0.0));
  CHECK(evaluate_word(parse_polynomial("X*Y + Y*X"), da, sw).max_abs() == 0.0);

  const std::vector<double> d2{2.0, 0.0};
  const std::vector<double> d4{4.0, 0.0};
  CHECK(evaluate_word(parse_polynomial("X^2"), HermitianMatrix::diagonal(d2), sw) ==
        HermitianMatrix::diagonal(d4));

  CHECK_THROWS_AS(evaluate_word(parse_polynomial("X*Y"), a, b), ValidationError);
  CHECK_THROWS_AS(evaluate_word(parse_polynomial("X"), a, HermitianMatrix::identity(3)), ValidationError);
  const auto c = evaluate_word(parse_polynomial("2 + X"), a, b);
  CHECK((c.dense() - a.dense() - 2.0 * ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("metric examples") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto mu = random_measure(rng);
    for (auto m : {MetricChoice::levy, MetricChoice::wasserstein1, MetricChoice::bhattacharyya_angle}) {
      CHECK(metric_distance(mu, mu, m) == 0.0);
    }
  }
  CHECK(levy_distance(DiscreteMeasure::dirac(0.0), DiscreteMeasure::dirac(0.5)) ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK(wasserstein1_distance(DiscreteMeasure::dirac(0.0), DiscreteMeasure::dirac(3.0)) == 3.0);
  CHECK(levy_distance(DiscreteMeasure::dirac(0.0), DiscreteMeasure::dirac(5.0)) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(bhattacharyya_angle(DiscreteMeasure::dirac(0.0), DiscreteMeasure::dirac(3.0)) ==
        doctest::Approx(M_PI));
}

TEST_CASE("Lévy distance agrees with the definition oracle") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const auto mu = random_measure(rng), nu = random_measure(rng);
    CHECK(std::abs(levy_distance(mu, nu) - levy_oracle(mu, nu)) <= 2e-9);
  }
}

TEST_CASE("Wasserstein-1 agrees with the sorted-sample formula") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = 2.0 * g(rng) + 0.5;
    auto xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double expected = 0;
    for (std::size_t k = 0; k < n; ++k) expected += std::abs(xs[k] - ys[k]) / static_cast<double>(n);
    const auto mu = DiscreteMeasure::from_samples(x, 0.0), nu = DiscreteMeasure::from_samples(y, 0.0);
    CHECK(wasserstein1_distance(mu, nu) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("metric axioms on random measures") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 150; ++i) {
    const auto a = random_measure(rng), b = random_measure(rng), c = random_measure(rng);
    for (auto m : {MetricChoice::levy, MetricChoice::wasserstein1, MetricChoice::bhattacharyya_angle}) {
      const double ab = metric_distance(a, b, m);
      CHECK(ab >= 0.0);
      CHECK(ab == doctest::Approx(metric_distance(b, a, m)).epsilon(1e-12));
      if (!(a == b)) CHECK(ab > 0.0);
    }
    for (auto m : {MetricChoice::levy, MetricChoice::wasserstein1}) {
      CHECK(metric_distance(a, c, m) <= metric_distance(a, b, m) + metric_distance(b, c, m) + 2e-9);
    }
  }
}

TEST_CASE("metric names") {
  CHECK(parse_metric("levy") == MetricChoice::levy);
  CHECK(parse_metric("w1") == MetricChoice::wasserstein1);
  CHECK(parse_metric("wasserstein1") == MetricChoice::wasserstein1);
  CHECK(parse_metric("bhattacharyya") == MetricChoice::bhattacharyya_angle);
  CHECK(to_string(MetricChoice::wasserstein1) == "w1");
  CHECK_THROWS_AS(parse_metric("kl"), ValidationError);
}

TEST_CASE("semicircle CDF") {
  for (double t : {0.25, 1.0, 3.0}) {
    const double r = 2.0 * std::sqrt(t);
    CHECK(semicircle_cdf(t, 0.0) == doctest::Approx(0.5));
    CHECK(semicircle_cdf(t, r) == doctest::Approx(1.0));
    CHECK(semicircle_cdf(t, -r) == doctest::Approx(0.0));
    CHECK(semicircle_cdf(t, 10 * r) == 1.0);
    CHECK(semicircle_cdf(t, -10 * r) == 0.0);
    CHECK(SemicircleLaw{t}.radius() == doctest::Approx(r));
    double prev = 0;
    for (int i = -50; i <= 50; ++i) {
      const double v = semicircle_cdf(t, r * i / 50.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("semicircle moments match Catalan numbers and quadrature") {
  CHECK(semicircle_moment(1, 2) == 1);
  CHECK(semicircle_moment(1, 4) == 2);
  CHECK(semicircle_moment(1, 3) == 0);
  for (unsigned k = 0; k <= 12; ++k) {
    const double numeric = oracle::semicircle_moment_numeric(1.0, k);
    CHECK(semicircle_moment(1, k).convert_to<double>() == doctest::Approx(numeric).epsilon(1e-5));
    if (k % 2 == 0) CHECK(catalan(k / 2) == Rational(oracle::catalan(k / 2)));
  }
  CHECK(semicircle_moment(Rational(1, 2), 4) == Rational(1, 2));
  CHECK(semicircle_moment(3, 6).convert_to<double>() ==
        doctest::Approx(oracle::semicircle_moment_numeric(3.0, 6)).epsilon(1e-5));
}

TEST_CASE("ESD is invariant under unitary conjugation") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto m = sample_gue(64, {s, 40});
    const auto c = conjugate(m, random_unitary(64, 20, {s, 41}));
    const auto a = esd(m, 0.0), b = esd(c, 0.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.atoms()[i] - b.atoms()[i]) <= 1e-9);
  }
}

TEST_CASE("discrete measures stay normalized and sorted") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto mu = random_measure(rng, 30);
    double total = 0;
    for (double w : mu.weights()) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(std::adjacent_find(mu.atoms().begin(), mu.atoms().end(),
                             [](double x, double y) { return !(x < y); }) == mu.atoms().end());
    CHECK(mu.cdf(mu.max_atom()) == 1.0);
    CHECK(mu.cdf_left(mu.min_atom()) == 0.0);
  }
  const auto merged = DiscreteMeasure::from_samples({1.0, 1.0 + 1e-12, 2.0, 2.0});
  CHECK(merged.size() == 2);
  CHECK(merged.weights()[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(DiscreteMeasure::from_atoms({}, {}), ValidationError);
  CHECK_THROWS_AS(DiscreteMeasure::from_atoms({1.0}, {0.5}), ValidationError);
  CHECK_THROWS_AS(DiscreteMeasure::from_atoms({1.0, 2.0}, {1.5, -0.5}), ValidationError);
  CHECK_THROWS_AS(DiscreteMeasure::from_atoms({NAN}, {1.0}), ValidationError);
  CHECK_THROWS_AS(DiscreteMeasure::from_atoms({1.0}, {1.0, 0.0}), ValidationError);
}

TEST_CASE("histogram mass and centers") {
  const auto mu = measure({-1.0, 0.0, 1.0}, {0.25, 0.5, 0.25});
  const auto h = histogram(mu, 4, -1.0, 1.0);
  REQUIRE(h.size() == 4);
  double total = 0;
  for (const auto& b : h) total += b.mass;
  CHECK(total == doctest::Approx(1.0));
  CHECK(h[0].center == doctest::Approx(-0.75));
  CHECK(h[0].mass == doctest::Approx(0.25));
  CHECK(h[2].mass == doctest::Approx(0.5));
  CHECK(h[3].mass == doctest::Approx(0.25));
  CHECK_THROWS_AS(histogram(mu, 0, -1.0, 1.0), ValidationError);
}

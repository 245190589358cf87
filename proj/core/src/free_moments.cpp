#include "sectorlab/free_moments.hpp"

#include <cmath>
#include <map>

#include "sectorlab/errors.hpp"
#include "sectorlab/parallel.hpp"

namespace sectorlab {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceError("pairing count overflows 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("pairing count overflows 64 bits");
  return out;
}

using Expansion = std::map<GeneratorString, Rational>;

Expansion multiply(const Expansion& lhs, const NcPolynomial& w, std::size_t cap) {
  Expansion out;
  for (const auto& [letters, coeff] : lhs) {
    for (const auto& term : w.terms()) {
      GeneratorString joined = letters;
      joined.insert(joined.end(), term.letters.begin(), term.letters.end());
      out[std::move(joined)] += coeff * term.coefficient;
      if (out.size() > cap) {
        throw ResourceError("expansion exceeds " + std::to_string(cap) + " monomials");
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

std::uint64_t semicircular_mixed_moment(std::span<const Generator> sequence) {
  const std::size_t n = sequence.size();
  if (n % 2 == 1) return 0;
  // count[i][j]: pairings of the half-open interval [i, j). Position i pairs
  // with some k in (i, j) carrying the same letter; the enclosed interval
  // (i, k) and the remainder [k+1, j) are paired independently.
  std::vector<std::vector<std::uint64_t>> count(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) count[i][i] = 1;
  for (std::size_t len = 2; len <= n; len += 2) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      std::uint64_t total = 0;
      for (std::size_t k = i + 1; k < j; k += 2) {
        if (sequence[k] != sequence[i]) continue;
        const std::uint64_t inner = count[i + 1][k];
        if (inner == 0) continue;
        total = checked_add(total, checked_mul(inner, count[k + 1][j]));
      }
      count[i][j] = total;
    }
  }
  return count[0][n];
}

std::vector<Rational> free_word_moments(const NcPolynomial& w, unsigned depth,
                                        std::size_t expansion_cap) {
  std::vector<Rational> moments;
  moments.reserve(depth);
  Expansion power{{GeneratorString{}, Rational(1)}};
  for (unsigned k = 1; k <= depth; ++k) {
    power = multiply(power, w, expansion_cap);
    Rational m(0);
    for (const auto& [letters, coeff] : power) {
      const std::uint64_t pairings = semicircular_mixed_moment(letters);
      if (pairings != 0) m += coeff * Rational(pairings);
    }
    moments.push_back(m);
  }
  return moments;
}

Rational free_word_moment(const NcPolynomial& w, unsigned k, std::size_t expansion_cap) {
  if (k == 0) return Rational(1);
  return free_word_moments(w, k, expansion_cap).back();
}

FreeLawSummary free_law_reference(const NcPolynomial& w, std::size_t m, std::size_t trials,
                                  const SeedSpec& seed, unsigned threads, unsigned depth) {
  if (!w.self_adjoint()) throw ValidationError("word '" + to_string(w) + "' is not self-adjoint");
  if (m < 64) throw ValidationError("free law reference needs dimension >= 64");
  if (trials == 0) throw ValidationError("free law reference needs at least one trial");

  std::vector<std::vector<double>> spectra(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto [a, b] = sample_sphere_pair(m, seed.child(t));
    spectra[t] = hermitian_eigenvalues(evaluate_word(w, a.matrix(), b.matrix()));
  });
  std::vector<double> pooled;
  pooled.reserve(trials * m);
  for (const auto& s : spectra) pooled.insert(pooled.end(), s.begin(), s.end());

  FreeLawSummary summary{.word = w,
                         .moments = free_word_moments(w, depth),
                         .mc_measure = DiscreteMeasure::from_samples(std::move(pooled)),
                         .mc_dim = m,
                         .mc_trials = trials,
                         .seed = seed,
                         .moment_errors = {},
                         .moment_tolerance = 10.0 / std::sqrt(static_cast<double>(m)),
                         .moments_consistent = true};
  for (unsigned k = 1; k <= depth; ++k) {
    const double exact = summary.moments[k - 1].convert_to<double>();
    const double err = std::abs(summary.mc_measure.moment(k) - exact);
    summary.moment_errors.push_back(err);
    if (err > summary.moment_tolerance) summary.moments_consistent = false;
  }
  return summary;
}

}  // namespace sectorlab

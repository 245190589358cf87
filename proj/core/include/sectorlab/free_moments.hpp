#pragma once

// Exact mixed moments of two free semicircular elements of variance 1, and a
// large-matrix Monte Carlo proxy for the free law of a word.

#include <cstdint>
#include <span>
#include <vector>

#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/spectral_measures.hpp"
#include "sectorlab/word_algebra.hpp"

namespace sectorlab {

/// a-type letters are Generator::X, b-type letters are Generator::Y.
using LetterSequence = GeneratorString;

/// tau(s_1 ... s_L): number of non-crossing pair partitions of positions
/// 0..L-1 in which every pair joins equal letters. Interval DP, O(L^3).
/// Throws ResourceError on 64-bit overflow.
std::uint64_t semicircular_mixed_moment(std::span<const Generator> sequence);

inline constexpr std::size_t kDefaultExpansionCap = 1'000'000;
inline constexpr unsigned kDefaultMomentDepth = 6;

/// tau(w(a, b)^k), exact. Throws ResourceError when the distributive
/// expansion of w^k exceeds `expansion_cap` distinct monomials.
Rational free_word_moment(const NcPolynomial& w, unsigned k,
                          std::size_t expansion_cap = kDefaultExpansionCap);

/// tau(w^1) .. tau(w^depth), sharing the expansion work.
std::vector<Rational> free_word_moments(const NcPolynomial& w, unsigned depth,
                                        std::size_t expansion_cap = kDefaultExpansionCap);

struct FreeLawSummary {
  NcPolynomial word;
  std::vector<Rational> moments;         // exact m_1 .. m_K
  DiscreteMeasure mc_measure;            // pooled ESD of w(A, B)
  std::size_t mc_dim = 0;
  std::size_t mc_trials = 0;
  SeedSpec seed;
  std::vector<double> moment_errors;     // |mc m_k - exact m_k|
  double moment_tolerance = 0.0;         // 10 / sqrt(mc_dim)
  bool moments_consistent = true;
};

/// Pools the ESDs of w(A, B) over `trials` independent sphere pairs of size m
/// (trial t uses seed.child(t)), each eigenvalue weighted 1/(trials * m).
/// A moment mismatch beyond 10/sqrt(m) is recorded, not thrown.
FreeLawSummary free_law_reference(const NcPolynomial& w, std::size_t m, std::size_t trials,
                                  const SeedSpec& seed, unsigned threads = 1,
                                  unsigned depth = kDefaultMomentDepth);

}  // namespace sectorlab

#pragma once

// Finite quotients G = F2/N realized by Galois covers, their left regular
// representation, and the exact spectral law of w(u, v) with
// u = lambda(g0) + lambda(g0)^-1, v = lambda(g1) + lambda(g1)^-1.

#include <array>
#include <string>
#include <vector>

#include "sectorlab/belyi_monodromy.hpp"
#include "sectorlab/matrix_ensembles.hpp"
#include "sectorlab/spectral_measures.hpp"
#include "sectorlab/word_algebra.hpp"

namespace sectorlab {

class FiniteQuotient {
 public:
  /// The group generated by two permutations, indexed in breadth-first
  /// order from the identity (left multiplication by g0, g1, g0^-1, g1^-1).
  static FiniteQuotient from_generators(const Permutation& g0, const Permutation& g1,
                                        std::string source_id = {});

  std::size_t order() const noexcept { return elements_.size(); }
  /// left(which, h) = index of g_which * h; which = 0 or 1.
  std::size_t left(int which, std::size_t h) const { return cayley_left_[which][h]; }
  std::size_t left_inverse(int which, std::size_t h) const { return cayley_left_inv_[which][h]; }
  std::size_t identity_index() const noexcept { return 0; }
  std::array<std::size_t, 2> generator_images() const noexcept { return generators_; }
  /// Shortest F2 word reaching each element (shortlex among BFS ties).
  const std::vector<F2Word>& element_labels() const noexcept { return labels_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const std::string& source_id() const noexcept { return source_id_; }

  /// Index of the image of an F2 word under a -> g0, b -> g1.
  std::size_t evaluate(const F2Word& word) const;

  /// Same group with generators (h g0 h^-1, h g1 h^-1).
  FiniteQuotient conjugated_by(std::size_t h) const;

 private:
  std::vector<Permutation> elements_;
  std::vector<F2Word> labels_;
  std::array<std::vector<std::size_t>, 2> cayley_left_;
  std::array<std::vector<std::size_t>, 2> cayley_left_inv_;
  std::array<std::size_t, 2> generators_{};
  std::string source_id_;
};

/// Deck group of a Galois cover; ValidationError for non-Galois covers.
FiniteQuotient quotient_from_cover(const BelyiCover& cover);

/// lambda(g_which) + lambda(g_which)^-1 = U + U^T on l2(G).
HermitianMatrix regular_representation_generator(const FiniteQuotient& q, int which);

struct QuotientLaw {
  std::string cover;       // canonical form of the originating cover
  std::size_t group_order = 0;
  NcPolynomial word;
  DiscreteMeasure law;
  std::vector<double> moment_fingerprint;  // m_1 .. m_6 of the law
};

inline constexpr unsigned kFingerprintDepth = 6;

/// Spectral law of w evaluated at the two regular-representation generators.
/// Checks the law's moments against normalized traces of powers of the
/// evaluated matrix (1e-9) and the crude norm bound on the atoms.
/// ValidationError for non-self-adjoint w.
QuotientLaw quotient_spectral_law(const FiniteQuotient& q, const NcPolynomial& w);

/// (1/|G|) Tr w(u, v) computed symbolically: expand w(a + a^-1, b + b^-1),
/// map every reduced word into G and keep the coefficients landing on the
/// identity.
Rational symbolic_trace(const FiniteQuotient& q, const NcPolynomial& w);

}  // namespace sectorlab

#pragma once

// Degree-d Belyi covers as permutation pairs (sigma0, sigma1) in S_d with
// sigma_inf = (sigma0 sigma1)^-1, up to simultaneous conjugation.
//
// Composition convention, used everywhere: (p * q)(x) = p(q(x)). The
// monodromy map rho: F2 -> S_d sends a -> sigma0, b -> sigma1 and
// rho(w1 w2) = rho(w1) * rho(w2).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sectorlab/word_algebra.hpp"

namespace sectorlab {

/// Bijection of {0, .., d-1}; displayed 1-based in cycle notation.
class Permutation {
 public:
  Permutation() = default;
  /// ValidationError unless `images` is a bijection of {0..d-1} with d <= 255.
  explicit Permutation(std::vector<std::uint8_t> images);

  static Permutation identity(std::size_t degree);
  /// Parses 1-based cycle notation such as "(1 2)(3 4 5)" or "()" for the
  /// identity; commas between entries are allowed.
  static Permutation from_cycles(std::string_view cycles, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint8_t operator()(std::size_t x) const { return images_[x]; }
  const std::vector<std::uint8_t>& images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;
  /// Number of cycles including fixed points.
  std::size_t cycle_count() const;
  /// Cycle lengths in descending order.
  std::vector<std::size_t> cycle_type() const;
  std::size_t order() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> images_;
};

/// (p * q)(x) = p(q(x)). ValidationError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

std::string to_cycle_string(const Permutation& p);

struct PermutationTriple {
  Permutation sigma0;
  Permutation sigma1;
  Permutation sigma_inf;

  /// Derives sigma_inf = (sigma0 * sigma1)^-1.
  static PermutationTriple from_pair(const Permutation& sigma0, const Permutation& sigma1);
  std::size_t degree() const noexcept { return sigma0.degree(); }
  /// sigma0 * sigma1 * sigma_inf == identity.
  bool is_consistent() const;
};

struct BelyiCover {
  PermutationTriple triple;
  bool transitive = false;
  bool galois = false;
  std::size_t group_order = 0;
  std::optional<unsigned> genus;  // absent for intransitive pairs
  std::string canonical_form;

  std::size_t degree() const noexcept { return triple.degree(); }
};

inline constexpr std::size_t kMaxEnumerationDegree = 7;
inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

bool is_transitive(const Permutation& sigma0, const Permutation& sigma1);

/// Elements of <gens> in breadth-first discovery order starting from the
/// identity, expanding each element h to g * h for g in gens (in order).
/// ResourceError when more than `cap` elements appear.
std::vector<Permutation> group_closure(std::span<const Permutation> gens,
                                       std::size_t cap = kDefaultClosureCap);

std::size_t group_order(const Permutation& sigma0, const Permutation& sigma1,
                        std::size_t cap = kDefaultClosureCap);

/// Regular action test: |<sigma0, sigma1>| == d and no non-identity element
/// fixes point 0. ValidationError for intransitive input.
bool is_galois(const Permutation& sigma0, const Permutation& sigma1);
bool is_galois(const BelyiCover& cover);

/// Riemann-Hurwitz: g = 1 - d + B/2, B = sum over the triple of (d - cycles).
/// ValidationError for intransitive input; InvariantError when g is not a
/// nonnegative integer.
unsigned genus(const PermutationTriple& triple);

/// Lexicographically minimal (sigma0 images, sigma1 images) over all d!
/// relabelings, encoded as "d:<sigma0 digits>,<sigma1 digits>" (0-based
/// digits). Equal iff the pairs are simultaneously conjugate.
std::string canonical_form(const Permutation& sigma0, const Permutation& sigma1);

/// Fills every derived field of a cover from its generating pair.
BelyiCover make_cover(const Permutation& sigma0, const Permutation& sigma1);

/// All pairs in S_d^2 up to simultaneous conjugation (transitive ones only
/// when requested), sorted by canonical form. Orbits are found by full
/// relabeling search; covers' derived fields are computed on `threads`
/// workers. ValidationError unless 1 <= d <= 7.
std::vector<BelyiCover> enumerate_covers(std::size_t degree, bool require_transitive,
                                         unsigned threads = 1);

/// rho(word) with a -> sigma0, b -> sigma1.
Permutation monodromy_image(const F2Word& word, const Permutation& sigma0,
                            const Permutation& sigma1);

/// Galois covers: rho(word) == e (membership in N = ker rho). Otherwise:
/// rho(word) fixes point 0 (membership in the point stabilizer).
bool word_in_subgroup(const F2Word& word, const BelyiCover& cover);

}  // namespace sectorlab

#pragma once

// Noncommutative polynomials in C<X,Y> with exact rational coefficients,
// reduced words in the free group F2 = <a, b>, and the *-embedding
// X -> a + a^-1, Y -> b + b^-1 into the group algebra.
//
// Surface syntax (whitespace insignificant):
//
//   polynomial := ['+'|'-'] term (('+'|'-') term)*
//   term       := rational ('*'? factor)*  |  factor ('*'? factor)*
//   factor     := ('X'|'Y') ['^' positive-integer]
//   rational   := digits ['/' digits]
//
// A term with no factor is the constant (unit-monomial) term.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sectorlab {

using Rational = boost::multiprecision::cpp_rational;

enum class Generator : std::uint8_t { X = 0, Y = 1 };

/// Sequence of algebra letters; the empty sequence is the unit monomial.
using GeneratorString = std::vector<Generator>;

/// Graded-lexicographic order: shorter first, then X < Y position-wise.
struct GradedLex {
  bool operator()(const GeneratorString& lhs, const GeneratorString& rhs) const;
};

struct NcMonomial {
  Rational coefficient;
  GeneratorString letters;

  friend bool operator==(const NcMonomial&, const NcMonomial&) = default;
};

/// Canonical polynomial: terms sorted by GradedLex on their letters, no two
/// terms share a letter sequence, no zero coefficients. Immutable.
class NcPolynomial {
 public:
  NcPolynomial() = default;

  /// Combines like terms, drops zeros and sorts.
  static NcPolynomial from_terms(std::vector<NcMonomial> terms);
  static NcPolynomial generator(Generator g);
  static NcPolynomial constant(const Rational& c);

  const std::vector<NcMonomial>& terms() const& noexcept { return terms_; }
  std::vector<NcMonomial> terms() && { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool self_adjoint() const noexcept { return self_adjoint_; }
  /// Length of the longest monomial (0 for constants and for zero).
  std::size_t degree() const noexcept;
  /// Sum of |coefficient| over all terms.
  Rational coefficient_l1() const;

  friend NcPolynomial operator+(const NcPolynomial& lhs, const NcPolynomial& rhs);
  friend NcPolynomial operator-(const NcPolynomial& lhs, const NcPolynomial& rhs);
  friend NcPolynomial operator*(const NcPolynomial& lhs, const NcPolynomial& rhs);
  friend NcPolynomial operator*(const Rational& scalar, const NcPolynomial& p);
  friend bool operator==(const NcPolynomial& lhs, const NcPolynomial& rhs) {
    return lhs.terms_ == rhs.terms_;
  }

 private:
  std::vector<NcMonomial> terms_;
  bool self_adjoint_ = true;
};

/// Throws SyntaxError (with position) on malformed text.
NcPolynomial parse_polynomial(std::string_view text);

/// Canonical text; parse_polynomial(to_string(p)) == p.
std::string to_string(const NcPolynomial& p);

/// Reverses every monomial. Coefficients are real, so conjugation is the identity.
NcPolynomial adjoint(const NcPolynomial& p);

bool is_self_adjoint(const NcPolynomial& p);

// ---------------------------------------------------------------------------
// Free group F2

/// A letter of F2: X-type letters print as a / A (inverse), Y-type as b / B.
struct Letter {
  Generator symbol = Generator::X;
  bool inverse = false;

  Letter inverted() const noexcept { return {symbol, !inverse}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class F2Word {
 public:
  F2Word() = default;
  explicit F2Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static F2Word letter(Generator g, bool inverse = false) {
    return F2Word({Letter{g, inverse}});
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  /// True when no two adjacent letters cancel.
  bool is_reduced() const noexcept;
  /// Formal inverse: reversed order, every letter inverted.
  F2Word inverse() const;

  /// Shortlex order with a < A < b < B.
  friend std::strong_ordering operator<=>(const F2Word& lhs, const F2Word& rhs);
  friend bool operator==(const F2Word&, const F2Word&) = default;

 private:
  std::vector<Letter> letters_;
};

F2Word free_reduce(const F2Word& word);

/// Reduced concatenation.
F2Word operator*(const F2Word& lhs, const F2Word& rhs);

/// Accepts letters a, A, b, B (whitespace and '*' ignored) or "e" / "" for
/// the identity. Does not reduce.
F2Word parse_f2_word(std::string_view text);
std::string to_string(const F2Word& word);

/// Finite rational combination of reduced F2 words.
class GroupAlgebraElement {
 public:
  using TermMap = std::map<F2Word, Rational>;

  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(TermMap terms);

  const TermMap& terms() const& noexcept { return terms_; }
  TermMap terms() && { return std::move(terms_); }
  /// Coefficient of the identity element, i.e. the canonical trace.
  Rational identity_coefficient() const;
  /// g -> g^-1 with conjugated coefficients.
  GroupAlgebraElement involution() const;
  bool is_self_adjoint() const { return involution() == *this; }

  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

 private:
  TermMap terms_;
};

/// Expands p(a + a^-1, b + b^-1) and free-reduces every term.
GroupAlgebraElement substitute_group_generators(const NcPolynomial& p);

std::string to_string(const GroupAlgebraElement& element);

}  // namespace sectorlab

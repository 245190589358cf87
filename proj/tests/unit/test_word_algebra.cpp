#include <doctest.h>

#include <random>
#include <string>

#include "sectorlab/errors.hpp"
#include "sectorlab/word_algebra.hpp"

using namespace sectorlab;

namespace {

GeneratorString letters(std::string_view s) {
  GeneratorString out;
  for (char c : s) out.push_back(c == 'X' ? Generator::X : Generator::Y);
  return out;
}

NcPolynomial random_polynomial(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_terms(1, 4), len(0, 4), bit(0, 1), num(-5, 5), den(1, 4);
  std::vector<NcMonomial> terms;
  const int n = n_terms(rng);
  for (int i = 0; i < n; ++i) {
    GeneratorString w;
    const int l = len(rng);
    for (int k = 0; k < l; ++k) w.push_back(bit(rng) ? Generator::Y : Generator::X);
    terms.push_back({Rational(num(rng), den(rng)), w});
  }
  return NcPolynomial::from_terms(std::move(terms));
}

F2Word random_f2_word(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Letter> out;
  for (int i = 0; i < length; ++i) {
    const int c = pick(rng);
    out.push_back({c < 2 ? Generator::X : Generator::Y, (c & 1) != 0});
  }
  return F2Word(std::move(out));
}

Rational coeff(const GroupAlgebraElement& e, std::string_view word) {
  const auto it = e.terms().find(parse_f2_word(word));
  return it == e.terms().end() ? Rational(0) : it->second;
}

}  // namespace

TEST_CASE("parser examples") {
  const auto sym = parse_polynomial("X*Y + Y*X");
  REQUIRE(sym.terms().size() == 2);
  CHECK(sym.terms()[0].letters == letters("XY"));
  CHECK(sym.terms()[1].letters == letters("YX"));
  CHECK(sym.self_adjoint());

  const auto sq = parse_polynomial("X^2");
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.terms()[0].letters == letters("XX"));
  CHECK(sq.terms()[0].coefficient == 1);
  CHECK(sq.self_adjoint());

  const auto two = parse_polynomial("2*X*Y");
  REQUIRE(two.terms().size() == 1);
  CHECK(two.terms()[0].coefficient == 2);
  CHECK_FALSE(two.self_adjoint());
}

TEST_CASE("parser accepts implicit products, signs and rationals") {
  CHECK(parse_polynomial("XY") == parse_polynomial("X*Y"));
  CHECK(parse_polynomial(" 3/2 X^2 Y ") == parse_polynomial("3/2*X*X*Y"));
  CHECK(parse_polynomial("-X + X") .is_zero());
  CHECK(parse_polynomial("X - Y + 1").terms().size() == 3);
  CHECK(parse_polynomial("X + X") == parse_polynomial("2*X"));
}

TEST_CASE("parser rejects malformed input with a position") {
  auto position_of = [](std::string_view text) -> std::size_t {
    try {
      parse_polynomial(text);
    } catch (const SyntaxError& e) {
      return e.position();
    }
    FAIL("expected a syntax error for '" << std::string(text) << "'");
    return 0;
  };
  CHECK(position_of("X^0") == 2);
  CHECK(position_of("X + Z") == 4);
  CHECK(position_of("X +") == 3);
  position_of("");
  position_of("X^");
  position_of("1/0*X");
  position_of("X**Y");
  position_of("(X)");
  CHECK_THROWS_AS(parse_polynomial("Q"), ValidationError);
}

TEST_CASE("printing is canonical and round-trips") {
  CHECK(to_string(parse_polynomial("Y*X + X*Y")) == "X*Y + Y*X");
  CHECK(to_string(parse_polynomial("3/2*X^2*Y")) == "3/2*X^2*Y");
  CHECK(to_string(parse_polynomial("X - X")) == "0");
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_polynomial(rng);
    const std::string once = to_string(p);
    CHECK(parse_polynomial(once) == p);
    CHECK(to_string(parse_polynomial(once)) == once);
  }
}

TEST_CASE("canonical term order is graded lexicographic with X first") {
  const auto p = parse_polynomial("Y*Y + X + Y*X + 1 + X*Y + Y");
  std::vector<GeneratorString> got;
  for (const auto& t : p.terms()) got.push_back(t.letters);
  CHECK(got == std::vector<GeneratorString>{letters(""), letters("X"), letters("Y"), letters("XY"),
                                            letters("YX"), letters("YY")});
}

TEST_CASE("adjoint") {
  CHECK(adjoint(parse_polynomial("X*Y")) == parse_polynomial("Y*X"));
  CHECK(adjoint(parse_polynomial("X + Y")) == parse_polynomial("X + Y"));
  CHECK(adjoint(parse_polynomial("2*X*Y*X")) == parse_polynomial("2*X*Y*X"));
  CHECK(is_self_adjoint(parse_polynomial("X*Y + Y*X")));
  CHECK_FALSE(is_self_adjoint(parse_polynomial("X*Y")));
  CHECK(is_self_adjoint(parse_polynomial("X^2")));
}

TEST_CASE("adjoint is an involution and symmetrization is self-adjoint") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_polynomial(rng);
    CHECK(adjoint(adjoint(p)) == p);
    CHECK(is_self_adjoint(p + adjoint(p)));
    CHECK((p + adjoint(p)).self_adjoint());
    CHECK(p.self_adjoint() == is_self_adjoint(p));
  }
}

TEST_CASE("polynomial arithmetic") {
  const auto x = NcPolynomial::generator(Generator::X);
  const auto y = NcPolynomial::generator(Generator::Y);
  CHECK(x * y + y * x == parse_polynomial("X*Y + Y*X"));
  CHECK((x + y) * (x + y) == parse_polynomial("X^2 + X*Y + Y*X + Y^2"));
  CHECK((x - x).is_zero());
  CHECK(Rational(1, 2) * (x + x) == x);
  CHECK(parse_polynomial("X*Y*X + 3").degree() == 3);
  CHECK(parse_polynomial("-2*X + 1/2*Y").coefficient_l1() == Rational(5, 2));
}

TEST_CASE("free reduction examples") {
  CHECK(free_reduce(parse_f2_word("abBa")) == parse_f2_word("aa"));
  CHECK(free_reduce(parse_f2_word("aA")).empty());
  CHECK(free_reduce(parse_f2_word("bAab")) == parse_f2_word("bb"));
  CHECK(to_string(free_reduce(parse_f2_word("aA"))) == "e");
}

TEST_CASE("free reduction is idempotent and length-nonincreasing") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const F2Word w = random_f2_word(rng, static_cast<int>(rng() % 12));
    const F2Word r = free_reduce(w);
    CHECK(r.is_reduced());
    CHECK(r.length() <= w.length());
    CHECK(free_reduce(r) == r);
    CHECK((w * w.inverse()).empty());
  }
}

TEST_CASE("group-generator substitution examples") {
  const auto x = substitute_group_generators(parse_polynomial("X"));
  CHECK(x.terms().size() == 2);
  CHECK(coeff(x, "a") == 1);
  CHECK(coeff(x, "A") == 1);

  const auto x2 = substitute_group_generators(parse_polynomial("X^2"));
  CHECK(x2.terms().size() == 3);
  CHECK(coeff(x2, "aa") == 1);
  CHECK(coeff(x2, "e") == 2);
  CHECK(coeff(x2, "AA") == 1);
  CHECK(x2.identity_coefficient() == 2);

  const auto xy = substitute_group_generators(parse_polynomial("X*Y"));
  CHECK(xy.terms().size() == 4);
  for (const char* w : {"ab", "aB", "Ab", "AB"}) CHECK(coeff(xy, w) == 1);
}

TEST_CASE("substitution maps self-adjoint polynomials to involution-invariant elements") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_polynomial(rng);
    const auto sym = p + adjoint(p);
    CHECK(substitute_group_generators(sym).is_self_adjoint());
    for (const auto& [w, c] : substitute_group_generators(p).terms()) CHECK(w.is_reduced());
  }
}

TEST_CASE("F2 shortlex order") {
  CHECK(parse_f2_word("a") < parse_f2_word("A"));
  CHECK(parse_f2_word("A") < parse_f2_word("b"));
  CHECK(parse_f2_word("b") < parse_f2_word("B"));
  CHECK(parse_f2_word("B") < parse_f2_word("aa"));
  CHECK(F2Word{} < parse_f2_word("a"));
  CHECK_THROWS_AS(parse_f2_word("ax"), ValidationError);
}

#include "sectorlab/word_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sectorlab/errors.hpp"

namespace sectorlab {

namespace {

constexpr unsigned kMaxExponent = 1024;

using TermMap = std::map<GeneratorString, Rational, GradedLex>;

NcPolynomial from_map(const TermMap& map) {
  std::vector<NcMonomial> terms;
  terms.reserve(map.size());
  for (const auto& [letters, coeff] : map) terms.push_back({coeff, letters});
  return NcPolynomial::from_terms(std::move(terms));
}

char letter_char(Generator g) { return g == Generator::X ? 'X' : 'Y'; }

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  NcPolynomial parse() {
    TermMap acc;
    skip_ws();
    if (at_end()) throw SyntaxError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    while (true) {
      auto [coeff, letters] = parse_term();
      if (negative) coeff = -coeff;
      acc[letters] += coeff;
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') {
        throw SyntaxError(std::string("unexpected character '") + peek() + "'", pos_);
      }
      negative = peek() == '-';
      ++pos_;
    }
    return from_map(acc);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_factor_start() {
    skip_ws();
    return !at_end() && std::isalpha(static_cast<unsigned char>(peek()));
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw SyntaxError("expected digits", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  NcMonomial parse_term() {
    skip_ws();
    if (at_end()) throw SyntaxError("expected term", pos_);
    NcMonomial term{Rational(1), {}};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      term.coefficient = parse_rational();
    } else {
      parse_factor(term.letters);
    }
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
          throw SyntaxError("expected factor after '*'", pos_);
        }
        parse_factor(term.letters);
      } else if (at_factor_start()) {
        parse_factor(term.letters);
      } else {
        break;
      }
    }
    return term;
  }

  Rational parse_rational() {
    boost::multiprecision::cpp_int num(digits());
    boost::multiprecision::cpp_int den(1);
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t den_pos = pos_;
      den = boost::multiprecision::cpp_int(digits());
      if (den == 0) throw SyntaxError("zero denominator", den_pos);
    }
    return Rational(num, den);
  }

  void parse_factor(GeneratorString& out) {
    const char c = peek();
    Generator g;
    if (c == 'X') {
      g = Generator::X;
    } else if (c == 'Y') {
      g = Generator::Y;
    } else {
      throw SyntaxError(std::string("unknown letter '") + c + "'", pos_);
    }
    ++pos_;
    unsigned exponent = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t exp_pos = pos_;
      const std::string text = digits();
      if (text.size() > 5 || std::stoul(text) > kMaxExponent) {
        throw SyntaxError("exponent too large", exp_pos);
      }
      exponent = static_cast<unsigned>(std::stoul(text));
      if (exponent == 0) throw SyntaxError("exponent must be positive", exp_pos);
    }
    out.insert(out.end(), exponent, g);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_letters(const GeneratorString& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    if (!out.empty()) out += '*';
    out += letter_char(letters[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

int letter_rank(const Letter& l) {
  return 2 * static_cast<int>(l.symbol) + (l.inverse ? 1 : 0);
}

}  // namespace

bool GradedLex::operator()(const GeneratorString& lhs, const GeneratorString& rhs) const {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return lhs < rhs;
}

NcPolynomial NcPolynomial::from_terms(std::vector<NcMonomial> terms) {
  TermMap map;
  for (auto& t : terms) map[t.letters] += t.coefficient;
  NcPolynomial p;
  for (auto& [letters, coeff] : map) {
    if (coeff != 0) p.terms_.push_back({coeff, letters});
  }
  // Self-adjointness: the reversed monomial must carry the same coefficient.
  p.self_adjoint_ = std::all_of(p.terms_.begin(), p.terms_.end(), [&](const NcMonomial& t) {
    GeneratorString rev(t.letters.rbegin(), t.letters.rend());
    auto it = map.find(rev);
    return it != map.end() && it->second == t.coefficient;
  });
  return p;
}

NcPolynomial NcPolynomial::generator(Generator g) {
  return from_terms({NcMonomial{Rational(1), {g}}});
}

NcPolynomial NcPolynomial::constant(const Rational& c) {
  return from_terms({NcMonomial{c, {}}});
}

std::size_t NcPolynomial::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.letters.size());
  return d;
}

Rational NcPolynomial::coefficient_l1() const {
  Rational sum(0);
  for (const auto& t : terms_) sum += abs(t.coefficient);
  return sum;
}

NcPolynomial operator+(const NcPolynomial& lhs, const NcPolynomial& rhs) {
  std::vector<NcMonomial> terms = lhs.terms_;
  terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
  return NcPolynomial::from_terms(std::move(terms));
}

NcPolynomial operator-(const NcPolynomial& lhs, const NcPolynomial& rhs) {
  return lhs + Rational(-1) * rhs;
}

NcPolynomial operator*(const NcPolynomial& lhs, const NcPolynomial& rhs) {
  TermMap map;
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) {
      GeneratorString letters = a.letters;
      letters.insert(letters.end(), b.letters.begin(), b.letters.end());
      map[letters] += a.coefficient * b.coefficient;
    }
  }
  return from_map(map);
}

NcPolynomial operator*(const Rational& scalar, const NcPolynomial& p) {
  std::vector<NcMonomial> terms = p.terms_;
  for (auto& t : terms) t.coefficient *= scalar;
  return NcPolynomial::from_terms(std::move(terms));
}

NcPolynomial parse_polynomial(std::string_view text) { return PolynomialParser(text).parse(); }

std::string to_string(const NcPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coefficient < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(t.coefficient);
    if (t.letters.empty()) {
      os << magnitude.str();
    } else {
      if (magnitude != 1) os << magnitude.str() << '*';
      os << format_letters(t.letters);
    }
  }
  return os.str();
}

NcPolynomial adjoint(const NcPolynomial& p) {
  std::vector<NcMonomial> terms = p.terms();
  for (auto& t : terms) std::reverse(t.letters.begin(), t.letters.end());
  return NcPolynomial::from_terms(std::move(terms));
}

bool is_self_adjoint(const NcPolynomial& p) { return adjoint(p) == p; }

// ---------------------------------------------------------------------------

bool F2Word::is_reduced() const noexcept {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == letters_[i - 1].inverted()) return false;
  }
  return true;
}

F2Word F2Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverted());
  return F2Word(std::move(out));
}

std::strong_ordering operator<=>(const F2Word& lhs, const F2Word& rhs) {
  if (auto c = lhs.letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < lhs.letters_.size(); ++i) {
    if (auto c = letter_rank(lhs.letters_[i]) <=> letter_rank(rhs.letters_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

F2Word free_reduce(const F2Word& word) {
  std::vector<Letter> stack;
  stack.reserve(word.length());
  for (const Letter& l : word.letters()) {
    if (!stack.empty() && stack.back() == l.inverted()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return F2Word(std::move(stack));
}

F2Word operator*(const F2Word& lhs, const F2Word& rhs) {
  std::vector<Letter> letters = lhs.letters();
  letters.insert(letters.end(), rhs.letters().begin(), rhs.letters().end());
  return free_reduce(F2Word(std::move(letters)));
}

F2Word parse_f2_word(std::string_view text) {
  std::vector<Letter> letters;
  bool saw_identity = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') continue;
    switch (c) {
      case 'a': letters.push_back({Generator::X, false}); break;
      case 'A': letters.push_back({Generator::X, true}); break;
      case 'b': letters.push_back({Generator::Y, false}); break;
      case 'B': letters.push_back({Generator::Y, true}); break;
      case 'e': saw_identity = true; break;
      default: throw SyntaxError(std::string("unknown group letter '") + c + "'", i);
    }
  }
  if (saw_identity && !letters.empty()) {
    throw ValidationError("identity symbol 'e' cannot be combined with letters");
  }
  return F2Word(std::move(letters));
}

std::string to_string(const F2Word& word) {
  if (word.empty()) return "e";
  std::string out;
  for (const Letter& l : word.letters()) {
    const char base = l.symbol == Generator::X ? 'a' : 'b';
    out += l.inverse ? static_cast<char>(std::toupper(base)) : base;
  }
  return out;
}

GroupAlgebraElement::GroupAlgebraElement(TermMap terms) {
  for (auto& [word, coeff] : terms) {
    if (coeff != 0) terms_[free_reduce(word)] += coeff;
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

Rational GroupAlgebraElement::identity_coefficient() const {
  auto it = terms_.find(F2Word{});
  return it == terms_.end() ? Rational(0) : it->second;
}

GroupAlgebraElement GroupAlgebraElement::involution() const {
  TermMap out;
  for (const auto& [word, coeff] : terms_) out[word.inverse()] += coeff;
  return GroupAlgebraElement(std::move(out));
}

GroupAlgebraElement substitute_group_generators(const NcPolynomial& p) {
  GroupAlgebraElement::TermMap total;
  for (const auto& term : p.terms()) {
    // Right-multiply by (g + g^-1) one letter at a time, reducing as we go.
    std::map<F2Word, Rational> partial{{F2Word{}, term.coefficient}};
    for (Generator g : term.letters) {
      std::map<F2Word, Rational> next;
      for (const auto& [word, coeff] : partial) {
        for (bool inv : {false, true}) {
          next[word * F2Word::letter(g, inv)] += coeff;
        }
      }
      partial = std::move(next);
    }
    for (auto& [word, coeff] : partial) total[word] += coeff;
  }
  return GroupAlgebraElement(std::move(total));
}

std::string to_string(const GroupAlgebraElement& element) {
  if (element.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [word, coeff] : element.terms()) {
    const bool negative = coeff < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(coeff);
    if (magnitude != 1) os << magnitude.str() << '*';
    os << to_string(word);
  }
  return os.str();
}

}  // namespace sectorlab

#include "sectorlab/quotient_spectra.hpp"

#include <cmath>
#include <unordered_map>

#include "sectorlab/errors.hpp"

namespace sectorlab {

namespace {

std::string key_of(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

}  // namespace

FiniteQuotient FiniteQuotient::from_generators(const Permutation& g0, const Permutation& g1,
                                               std::string source_id) {
  if (g0.degree() != g1.degree()) throw ValidationError("generators have different degrees");
  const std::array<Permutation, 4> gens = {g0, g1, g0.inverse(), g1.inverse()};
  const std::array<Letter, 4> letters = {Letter{Generator::X, false}, Letter{Generator::Y, false},
                                         Letter{Generator::X, true}, Letter{Generator::Y, true}};

  FiniteQuotient q;
  q.source_id_ = std::move(source_id);
  std::unordered_map<std::string, std::size_t> index;
  q.elements_.push_back(Permutation::identity(g0.degree()));
  q.labels_.emplace_back();
  index.emplace(key_of(q.elements_.front()), 0);
  for (std::size_t head = 0; head < q.elements_.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation next = compose(gens[k], q.elements_[head]);
      auto [it, inserted] = index.emplace(key_of(next), q.elements_.size());
      if (!inserted) continue;
      std::vector<Letter> label{letters[k]};
      const auto& tail = q.labels_[head].letters();
      label.insert(label.end(), tail.begin(), tail.end());
      q.elements_.push_back(std::move(next));
      q.labels_.push_back(free_reduce(F2Word(std::move(label))));
      if (q.elements_.size() > kDefaultClosureCap) throw ResourceError("quotient is too large");
    }
  }

  const std::size_t n = q.elements_.size();
  for (int w = 0; w < 2; ++w) {
    q.cayley_left_[w].resize(n);
    q.cayley_left_inv_[w].resize(n);
    for (std::size_t h = 0; h < n; ++h) {
      q.cayley_left_[w][h] = index.at(key_of(compose(gens[w], q.elements_[h])));
      q.cayley_left_inv_[w][h] = index.at(key_of(compose(gens[w + 2], q.elements_[h])));
    }
  }
  q.generators_ = {index.at(key_of(g0)), index.at(key_of(g1))};
  return q;
}

std::size_t FiniteQuotient::evaluate(const F2Word& word) const {
  std::size_t x = identity_index();
  const auto& letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const int which = it->symbol == Generator::X ? 0 : 1;
    x = it->inverse ? left_inverse(which, x) : left(which, x);
  }
  return x;
}

FiniteQuotient FiniteQuotient::conjugated_by(std::size_t h) const {
  const Permutation& c = elements_.at(h);
  const Permutation ci = c.inverse();
  return from_generators(c * elements_[generators_[0]] * ci, c * elements_[generators_[1]] * ci,
                         source_id_);
}

FiniteQuotient quotient_from_cover(const BelyiCover& cover) {
  if (!cover.galois) throw ValidationError("quotient requires a Galois cover");
  FiniteQuotient q =
      FiniteQuotient::from_generators(cover.triple.sigma0, cover.triple.sigma1, cover.canonical_form);
  if (q.order() != cover.degree()) throw InvariantError("deck group order differs from degree");
  return q;
}

HermitianMatrix regular_representation_generator(const FiniteQuotient& q, int which) {
  if (which != 0 && which != 1) throw ValidationError("generator index must be 0 or 1");
  const std::size_t n = q.order();
  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix u = ComplexMatrix::Zero(ni, ni);
  for (std::size_t h = 0; h < n; ++h) {
    u(static_cast<Eigen::Index>(q.left(which, h)), static_cast<Eigen::Index>(h)) += 1.0;
  }
  const ComplexMatrix sum = u + u.transpose();
  return HermitianMatrix::from_upper(sum);
}

QuotientLaw quotient_spectral_law(const FiniteQuotient& q, const NcPolynomial& w) {
  if (!w.self_adjoint()) throw ValidationError("word '" + to_string(w) + "' is not self-adjoint");
  const HermitianMatrix u = regular_representation_generator(q, 0);
  const HermitianMatrix v = regular_representation_generator(q, 1);
  const HermitianMatrix evaluated = evaluate_word(w, u, v);
  DiscreteMeasure law = esd(evaluated);

  const double bound =
      w.coefficient_l1().convert_to<double>() * std::pow(2.0, static_cast<double>(w.degree()));
  if (law.size() > q.order() || law.min_atom() < -bound * (1 + 1e-9) ||
      law.max_atom() > bound * (1 + 1e-9)) {
    throw InvariantError("quotient law violates the atom count or norm bound");
  }

  std::vector<double> fingerprint;
  const double n = static_cast<double>(q.order());
  ComplexMatrix power = ComplexMatrix::Identity(evaluated.dense().rows(), evaluated.dense().cols());
  for (unsigned k = 1; k <= kFingerprintDepth; ++k) {
    power = power * evaluated.dense();
    const double trace = power.trace().real() / n;
    const double moment = law.moment(k);
    if (std::abs(trace - moment) > 1e-9 * std::max(1.0, std::abs(trace))) {
      throw InvariantError("law moment disagrees with the normalized trace");
    }
    fingerprint.push_back(moment);
  }
  return QuotientLaw{q.source_id(), q.order(), w, std::move(law), std::move(fingerprint)};
}

Rational symbolic_trace(const FiniteQuotient& q, const NcPolynomial& w) {
  Rational sum(0);
  const GroupAlgebraElement expanded = substitute_group_generators(w);
  for (const auto& [word, coeff] : expanded.terms()) {
    if (q.evaluate(word) == q.identity_index()) sum += coeff;
  }
  return sum;
}

}  // namespace sectorlab

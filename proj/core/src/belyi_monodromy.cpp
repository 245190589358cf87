#include "sectorlab/belyi_monodromy.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "sectorlab/errors.hpp"
#include "sectorlab/parallel.hpp"

namespace sectorlab {

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  if (images_.size() > 255) throw ValidationError("permutation degree exceeds 255");
  std::vector<bool> seen(images_.size(), false);
  for (std::uint8_t x : images_) {
    if (x >= images_.size() || seen[x]) throw ValidationError("images do not form a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint8_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint8_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::string_view cycles, std::size_t degree) {
  std::vector<std::uint8_t> images(degree);
  std::iota(images.begin(), images.end(), std::uint8_t{0});
  std::vector<bool> used(degree, false);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < cycles.size() && (std::isspace(static_cast<unsigned char>(cycles[pos])) || cycles[pos] == ','))
      ++pos;
  };
  skip();
  while (pos < cycles.size()) {
    if (cycles[pos] != '(') throw SyntaxError("expected '('", pos);
    ++pos;
    std::vector<std::size_t> cycle;
    while (true) {
      skip();
      if (pos >= cycles.size()) throw SyntaxError("unterminated cycle", pos);
      if (cycles[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(cycles[pos]))) {
        throw SyntaxError("expected point label", pos);
      }
      std::size_t value = 0;
      const std::size_t start = pos;
      while (pos < cycles.size() && std::isdigit(static_cast<unsigned char>(cycles[pos]))) {
        value = value * 10 + static_cast<std::size_t>(cycles[pos] - '0');
        if (value > degree) throw SyntaxError("point label out of range", start);
        ++pos;
      }
      if (value == 0) throw SyntaxError("point labels are 1-based", start);
      if (used[value - 1]) throw SyntaxError("point repeated across cycles", start);
      used[value - 1] = true;
      cycle.push_back(value - 1);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    }
    skip();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[images_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t x = i; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::size_t Permutation::cycle_count() const { return cycle_type().size(); }

std::size_t Permutation::order() const {
  std::size_t result = 1;
  for (std::size_t len : cycle_type()) result = std::lcm(result, len);
  return result;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw ValidationError("cannot compose permutations of different degree");
  std::vector<std::uint8_t> out(p.degree());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = p(q(x));
  return Permutation(std::move(out));
}

std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out += '(';
    for (std::size_t x = i; !seen[x]; x = p(x)) {
      seen[x] = true;
      if (out.back() != '(') out += ' ';
      out += std::to_string(x + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

PermutationTriple PermutationTriple::from_pair(const Permutation& sigma0, const Permutation& sigma1) {
  return {sigma0, sigma1, compose(sigma0, sigma1).inverse()};
}

bool PermutationTriple::is_consistent() const {
  return compose(compose(sigma0, sigma1), sigma_inf).is_identity();
}

// ---------------------------------------------------------------------------

namespace {

void require_equal_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw ValidationError("permutations have different degrees");
}

// Orbit of point 0 under the generators and their inverses. Raw images, so
// the enumeration loop can use it without constructing Permutations.
bool transitive_raw(const std::uint8_t* s0, const std::uint8_t* s1, std::size_t d) {
  if (d <= 1) return true;
  std::uint8_t inv0[256], inv1[256];
  for (std::size_t i = 0; i < d; ++i) {
    inv0[s0[i]] = static_cast<std::uint8_t>(i);
    inv1[s1[i]] = static_cast<std::uint8_t>(i);
  }
  std::uint32_t seen = 1;
  std::uint8_t stack[256];
  std::size_t top = 0;
  stack[top++] = 0;
  std::size_t reached = 1;
  while (top > 0) {
    const std::uint8_t x = stack[--top];
    for (std::uint8_t y : {s0[x], s1[x], inv0[x], inv1[x]}) {
      if (!(seen >> y & 1u)) {
        seen |= 1u << y;
        stack[top++] = y;
        ++reached;
      }
    }
  }
  return reached == d;
}

std::string encode_pair(const std::vector<std::uint8_t>& s0, const std::vector<std::uint8_t>& s1) {
  std::string out = std::to_string(s0.size()) + ":";
  for (auto x : s0) out += static_cast<char>('0' + x);
  out += ',';
  for (auto x : s1) out += static_cast<char>('0' + x);
  return out;
}

// c s c^-1, written as out[c[x]] = c[s[x]].
void conjugate_into(const std::uint8_t* c, const std::uint8_t* s, std::uint8_t* out, std::size_t d) {
  for (std::size_t x = 0; x < d; ++x) out[c[x]] = c[s[x]];
}

std::string key_of(const Permutation& p) {
  return {p.images().begin(), p.images().end()};
}

BelyiCover derive_cover(const Permutation& sigma0, const Permutation& sigma1, std::string canonical) {
  BelyiCover cover;
  cover.triple = PermutationTriple::from_pair(sigma0, sigma1);
  if (!cover.triple.is_consistent()) throw InvariantError("sigma0 sigma1 sigma_inf != 1");
  cover.transitive = is_transitive(sigma0, sigma1);
  cover.group_order = group_order(sigma0, sigma1);
  cover.galois = cover.transitive && is_galois(sigma0, sigma1);
  if (cover.transitive) cover.genus = genus(cover.triple);
  cover.canonical_form = std::move(canonical);
  if (cover.galois && cover.group_order != cover.degree()) {
    throw InvariantError("Galois cover with group order different from degree");
  }
  return cover;
}

}  // namespace

bool is_transitive(const Permutation& sigma0, const Permutation& sigma1) {
  require_equal_degree(sigma0, sigma1);
  if (sigma0.degree() > 32) {
    // Generic BFS for large degrees: the raw routine uses a 32-bit visited mask.
    std::vector<bool> seen(sigma0.degree(), false);
    const Permutation i0 = sigma0.inverse(), i1 = sigma1.inverse();
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t y : {std::size_t{sigma0(x)}, std::size_t{sigma1(x)}, std::size_t{i0(x)},
                            std::size_t{i1(x)}}) {
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
          ++reached;
        }
      }
    }
    return reached == sigma0.degree();
  }
  return transitive_raw(sigma0.images().data(), sigma1.images().data(), sigma0.degree());
}

std::vector<Permutation> group_closure(std::span<const Permutation> gens, std::size_t cap) {
  if (gens.empty()) throw ValidationError("closure needs at least one generator");
  const std::size_t d = gens.front().degree();
  for (const auto& g : gens) {
    if (g.degree() != d) throw ValidationError("generators have different degrees");
  }
  std::vector<Permutation> elements{Permutation::identity(d)};
  std::unordered_set<std::string> seen{key_of(elements.front())};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      Permutation next = compose(g, elements[head]);
      if (seen.insert(key_of(next)).second) {
        elements.push_back(std::move(next));
        if (elements.size() > cap) {
          throw ResourceError("group closure exceeds " + std::to_string(cap) + " elements");
        }
      }
    }
  }
  return elements;
}

std::size_t group_order(const Permutation& sigma0, const Permutation& sigma1, std::size_t cap) {
  require_equal_degree(sigma0, sigma1);
  const Permutation gens[] = {sigma0, sigma1};
  return group_closure(gens, cap).size();
}

bool is_galois(const Permutation& sigma0, const Permutation& sigma1) {
  if (!is_transitive(sigma0, sigma1)) throw ValidationError("Galois test needs a transitive pair");
  const Permutation gens[] = {sigma0, sigma1};
  const auto elements = group_closure(gens);
  if (elements.size() != sigma0.degree()) return false;
  return std::none_of(elements.begin(), elements.end(),
                      [](const Permutation& g) { return !g.is_identity() && g(0) == 0; });
}

bool is_galois(const BelyiCover& cover) {
  return is_galois(cover.triple.sigma0, cover.triple.sigma1);
}

unsigned genus(const PermutationTriple& triple) {
  if (!is_transitive(triple.sigma0, triple.sigma1)) {
    throw ValidationError("genus is defined for transitive triples only");
  }
  const long d = static_cast<long>(triple.degree());
  long branching = 0;
  for (const auto* s : {&triple.sigma0, &triple.sigma1, &triple.sigma_inf}) {
    branching += d - static_cast<long>(s->cycle_count());
  }
  const long twice_genus = 2 - 2 * d + branching;
  if (twice_genus < 0 || twice_genus % 2 != 0) {
    throw InvariantError("Riemann-Hurwitz gives a non-integral or negative genus");
  }
  return static_cast<unsigned>(twice_genus / 2);
}

std::string canonical_form(const Permutation& sigma0, const Permutation& sigma1) {
  require_equal_degree(sigma0, sigma1);
  const std::size_t d = sigma0.degree();
  if (d > 10) throw ResourceError("canonical form search is limited to degree 10");
  std::vector<std::uint8_t> c(d), a(d), b(d);
  std::iota(c.begin(), c.end(), std::uint8_t{0});
  std::vector<std::uint8_t> best0 = sigma0.images(), best1 = sigma1.images();
  do {
    conjugate_into(c.data(), sigma0.images().data(), a.data(), d);
    conjugate_into(c.data(), sigma1.images().data(), b.data(), d);
    if (std::tie(a, b) < std::tie(best0, best1)) {
      best0 = a;
      best1 = b;
    }
  } while (std::next_permutation(c.begin(), c.end()));
  return encode_pair(best0, best1);
}

BelyiCover make_cover(const Permutation& sigma0, const Permutation& sigma1) {
  return derive_cover(sigma0, sigma1, canonical_form(sigma0, sigma1));
}

std::vector<BelyiCover> enumerate_covers(std::size_t degree, bool require_transitive,
                                         unsigned threads) {
  if (degree < 1 || degree > kMaxEnumerationDegree) {
    throw ValidationError("enumeration degree must lie in [1, 7]");
  }
  const std::size_t d = degree;

  // S_d in lexicographic order, so rank order equals image-array order.
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p(d);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();

  auto pack = [d](const std::uint8_t* images) {
    std::uint32_t key = 0;
    for (std::size_t i = 0; i < d; ++i) key = key << 3 | images[i];
    return key;
  };
  std::vector<std::uint32_t> rank_of(std::size_t{1} << (3 * d), 0);
  for (std::size_t r = 0; r < n; ++r) rank_of[pack(perms[r].data())] = static_cast<std::uint32_t>(r);

  // Scanning pairs in lexicographic order, the first unvisited member of an
  // orbit is its minimum, i.e. its canonical representative. Marking the
  // whole orbit by conjugating with every relabeling skips the rest.
  std::vector<bool> visited(n * n, false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;
  std::uint8_t a[8], b[8];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (visited[i * n + j]) continue;
      if (require_transitive && !transitive_raw(perms[i].data(), perms[j].data(), d)) continue;
      reps.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      for (const auto& c : perms) {
        conjugate_into(c.data(), perms[i].data(), a, d);
        conjugate_into(c.data(), perms[j].data(), b, d);
        visited[std::size_t{rank_of[pack(a)]} * n + rank_of[pack(b)]] = true;
      }
    }
  }

  std::vector<std::optional<BelyiCover>> covers(reps.size());
  parallel_for(reps.size(), threads, [&](std::size_t k) {
    const auto& s0 = perms[reps[k].first];
    const auto& s1 = perms[reps[k].second];
    covers[k] = derive_cover(Permutation(s0), Permutation(s1), encode_pair(s0, s1));
  });
  std::vector<BelyiCover> out;
  out.reserve(covers.size());
  for (auto& c : covers) out.push_back(std::move(*c));
  return out;
}

Permutation monodromy_image(const F2Word& word, const Permutation& sigma0, const Permutation& sigma1) {
  require_equal_degree(sigma0, sigma1);
  const Permutation inv0 = sigma0.inverse(), inv1 = sigma1.inverse();
  Permutation result = Permutation::identity(sigma0.degree());
  for (const Letter& l : word.letters()) {
    const Permutation& g = l.symbol == Generator::X ? (l.inverse ? inv0 : sigma0)
                                                     : (l.inverse ? inv1 : sigma1);
    result = compose(result, g);
  }
  return result;
}

bool word_in_subgroup(const F2Word& word, const BelyiCover& cover) {
  const Permutation image = monodromy_image(word, cover.triple.sigma0, cover.triple.sigma1);
  return cover.galois ? image.is_identity() : image(0) == 0;
}

}  // namespace sectorlab

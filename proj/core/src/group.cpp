#include "ukoszul/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace ukoszul {

// --- Word ---------------------------------------------------------------------

Word Word::identity() { return Word{}; }

Word Word::generator(std::size_t index) {
  Word w;
  w.kind_ = Kind::generator;
  w.index_ = index;
  return w;
}

Word Word::inverse(Word inner) {
  Word w;
  w.kind_ = Kind::inverse;
  w.children_.push_back(std::move(inner));
  return w;
}

Word Word::power(Word base, long long exponent) {
  if (exponent == 1) return base;
  if (exponent == -1) return inverse(std::move(base));
  if (exponent == 0) return identity();
  Word w;
  w.kind_ = Kind::power;
  w.exponent_ = exponent;
  w.children_.push_back(std::move(base));
  return w;
}

Word Word::product(std::vector<Word> factors) {
  if (factors.empty()) return identity();
  if (factors.size() == 1) return std::move(factors.front());
  Word w;
  w.kind_ = Kind::product;
  w.children_ = std::move(factors);
  return w;
}

Word Word::commutator(Word a, Word b) {
  Word w;
  w.kind_ = Kind::commutator;
  w.children_.push_back(std::move(a));
  w.children_.push_back(std::move(b));
  return w;
}

std::string Word::to_string() const {
  auto atom = [](const Word& w) {
    // Forms that can carry an exponent without parentheses.
    if (w.kind_ == Kind::generator || w.kind_ == Kind::commutator || w.kind_ == Kind::identity)
      return w.to_string();
    return "(" + w.to_string() + ")";
  };
  switch (kind_) {
    case Kind::identity: return "1";
    case Kind::generator: return "x" + std::to_string(index_ + 1);
    case Kind::inverse: return atom(children_[0]) + "^-1";
    case Kind::power: return atom(children_[0]) + "^" + std::to_string(exponent_);
    case Kind::commutator: return "[" + children_[0].to_string() + "," + children_[1].to_string() + "]";
    case Kind::product: {
      std::string s;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += "*";
        s += children_[i].kind_ == Kind::product ? "(" + children_[i].to_string() + ")"
                                                 : children_[i].to_string();
      }
      return s;
    }
  }
  return "1";
}

std::size_t Word::generator_bound() const noexcept {
  std::size_t bound = kind_ == Kind::generator ? index_ + 1 : 0;
  for (const auto& c : children_) bound = std::max(bound, c.generator_bound());
  return bound;
}

// --- Parser ---------------------------------------------------------------------

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, std::size_t generators) : text_(text), generators_(generators) {}

  Word parse() {
    Word w = word();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == 'x' || c == '[' || c == '(' || c == '1';
  }

  Word word() {
    std::vector<Word> factors;
    factors.push_back(term());
    while (true) {
      if (peek('*')) {
        ++pos_;
        factors.push_back(term());
      } else if (starts_factor()) {
        factors.push_back(term());
      } else {
        break;
      }
    }
    return Word::product(std::move(factors));
  }

  Word term() {
    Word w = factor();
    while (peek('^')) {
      ++pos_;
      w = Word::power(std::move(w), integer());
    }
    return w;
  }

  long long integer() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    if (ec != std::errc{}) {
      pos_ = start;
      fail("exponent out of range");
    }
    (void)ptr;
    return negative ? -value : value;
  }

  Word factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of word");
    const std::size_t start = pos_;
    char c = text_[pos_];
    if (c == 'x') {
      ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) fail("expected a generator index after 'x'");
      std::size_t index = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, index);
      (void)ptr;
      if (ec != std::errc{} || index == 0 || index > generators_) {
        std::string name(text_.substr(start, pos_ - start));
        pos_ = start;
        fail("unknown generator " + name + " (generators are x1..x" + std::to_string(generators_) + ")");
      }
      return Word::generator(index - 1);
    }
    if (c == '1') {
      ++pos_;
      return Word::identity();
    }
    if (c == '[') {
      ++pos_;
      Word a = word();
      expect(',');
      Word b = word();
      expect(']');
      return Word::commutator(std::move(a), std::move(b));
    }
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t generators_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, std::size_t generator_count) {
  return WordParser(text, generator_count).parse();
}

// --- Magnus expansion -----------------------------------------------------------

MagnusTruncation::MagnusTruncation(const PrimeField& field, std::size_t d)
    : constant(1), linear(d, 0), quadratic(field, d, d) {}

MagnusTruncation magnus_multiply(const PrimeField& f, const MagnusTruncation& a,
                                 const MagnusTruncation& b) {
  const std::size_t d = a.linear.size();
  MagnusTruncation out(f, d);
  out.constant = f.mul(a.constant, b.constant);
  for (std::size_t i = 0; i < d; ++i)
    out.linear[i] = f.add(f.mul(a.constant, b.linear[i]), f.mul(b.constant, a.linear[i]));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Residue v = f.add(f.mul(a.constant, b.quadratic(i, j)), f.mul(b.constant, a.quadratic(i, j)));
      out.quadratic(i, j) = f.add(v, f.mul(a.linear[i], b.linear[j]));
    }
  }
  return out;
}

namespace {

// (1 + u + U)^-1 = 1 - u - U + u u^T modulo degree 3.
MagnusTruncation magnus_inverse(const PrimeField& f, const MagnusTruncation& a) {
  const std::size_t d = a.linear.size();
  MagnusTruncation out(f, d);
  for (std::size_t i = 0; i < d; ++i) out.linear[i] = f.neg(a.linear[i]);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.quadratic(i, j) = f.add(f.neg(a.quadratic(i, j)), f.mul(a.linear[i], a.linear[j]));
  return out;
}

MagnusTruncation magnus_power(const PrimeField& f, MagnusTruncation base, long long exponent) {
  if (exponent < 0) {
    base = magnus_inverse(f, base);
    // -LLONG_MIN overflows; the extra factor keeps the arithmetic in range.
    if (exponent == std::numeric_limits<long long>::min()) {
      return magnus_multiply(f, magnus_power(f, base, std::numeric_limits<long long>::max()), base);
    }
    exponent = -exponent;
  }
  MagnusTruncation result(f, base.linear.size());
  while (exponent > 0) {
    if (exponent & 1) result = magnus_multiply(f, result, base);
    exponent >>= 1;
    if (exponent) base = magnus_multiply(f, base, base);
  }
  return result;
}

}  // namespace

MagnusTruncation magnus_expand(const PrimeField& f, std::size_t d, const Word& w) {
  switch (w.kind()) {
    case Word::Kind::identity:
      return MagnusTruncation(f, d);
    case Word::Kind::generator: {
      if (w.generator_index() >= d) throw InputError("word uses a generator beyond x" + std::to_string(d));
      MagnusTruncation m(f, d);
      m.linear[w.generator_index()] = 1;
      return m;
    }
    case Word::Kind::inverse:
      return magnus_inverse(f, magnus_expand(f, d, w.children()[0]));
    case Word::Kind::power:
      return magnus_power(f, magnus_expand(f, d, w.children()[0]), w.exponent());
    case Word::Kind::product: {
      MagnusTruncation m(f, d);
      for (const auto& c : w.children()) m = magnus_multiply(f, m, magnus_expand(f, d, c));
      return m;
    }
    case Word::Kind::commutator: {
      MagnusTruncation a = magnus_expand(f, d, w.children()[0]);
      MagnusTruncation b = magnus_expand(f, d, w.children()[1]);
      MagnusTruncation m = magnus_multiply(f, magnus_inverse(f, a), magnus_inverse(f, b));
      m = magnus_multiply(f, m, a);
      return magnus_multiply(f, m, b);
    }
  }
  return MagnusTruncation(f, d);
}

MagnusDegree2 magnus_degree2(const GroupPresentation& pres, const Word& w) {
  MagnusTruncation m = magnus_expand(pres.field, pres.generators, w);
  return {std::move(m.linear), std::move(m.quadratic)};
}

std::vector<RelationCoefficients> relation_coefficients(const GroupPresentation& pres) {
  const PrimeField& f = pres.field;
  const std::size_t d = pres.generators;
  std::vector<RelationCoefficients> out;
  for (std::size_t h = 0; h < pres.relators.size(); ++h) {
    MagnusDegree2 m = magnus_degree2(pres, pres.relators[h]);
    if (std::any_of(m.degree1.begin(), m.degree1.end(), [](Residue r) { return r != 0; })) {
      throw InputError("relator " + std::to_string(h + 1) + " (" + pres.relators[h].to_string() +
                       ") is not in the Frattini subgroup: the presentation is not minimal");
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (m.degree2(j, i) != f.neg(m.degree2(i, j)))
          throw std::logic_error("Magnus coefficients of relator " + std::to_string(h + 1) +
                                 " are not antisymmetric");
      }
      if (f.p() != 2 && m.degree2(i, i) != 0)
        throw std::logic_error("Magnus coefficients of relator " + std::to_string(h + 1) +
                               " have a nonzero diagonal at odd p");
    }
    out.push_back(RelationCoefficients{std::move(m.degree2)});
  }
  return out;
}

namespace {

std::size_t alternating_pairs(std::size_t d) { return d * (d - 1) / 2; }

// Row h: the trace functional of relator h on the basis a_i a_j (i < j) of Lambda_2.
FpMatrix trace_matrix(const PrimeField& f, std::size_t d,
                      const std::vector<RelationCoefficients>& coeffs) {
  FpMatrix t(f, 0, alternating_pairs(d));
  for (const auto& c : coeffs) {
    auto row = t.append_zero_row();
    std::size_t col = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) row[col++] = c.alpha(i, j);
  }
  return t;
}

}  // namespace

QdefVerdict quadratically_defined(const GroupPresentation& pres) {
  const PrimeField& f = pres.field;
  const std::size_t d = pres.generators;
  std::vector<RelationCoefficients> coeffs = relation_coefficients(pres);
  if (f.p() == 2) {
    for (std::size_t h = 0; h < coeffs.size(); ++h) {
      for (std::size_t i = 0; i < d; ++i) {
        if (coeffs[h].alpha(i, i) != 0) {
          return {false, "relator " + std::to_string(h + 1) + " has alpha_" + std::to_string(i + 1) +
                             std::to_string(i + 1) + " != 0, so a" + std::to_string(i + 1) +
                             "^2 != 0 in H^2"};
        }
      }
    }
  }
  const std::size_t rank = rref(trace_matrix(f, d, coeffs)).pivots.size();
  if (rank < coeffs.size()) {
    return {false, "the degree-2 parts of the relators span only " + std::to_string(rank) +
                       " of " + std::to_string(coeffs.size()) +
                       " dimensions: the cup product does not reach all of H^2"};
  }
  return {true, "cup product H^1 (x) H^1 -> H^2 is onto" +
                    std::string(f.p() == 2 ? " and squares vanish" : "")};
}

CohomologyAlgebra cohomology_algebra(const GroupPresentation& pres) {
  QdefVerdict q = quadratically_defined(pres);
  if (!q.holds) throw InputError("group is not quadratically defined: " + q.reason);
  const PrimeField& f = pres.field;
  const std::size_t d = pres.generators;
  std::vector<RelationCoefficients> coeffs = relation_coefficients(pres);
  // Kernel of Lambda_2 -> H^2: combinations on which every trace vanishes.
  FpMatrix kernel = left_kernel(trace_matrix(f, d, coeffs).transposed());
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < d; ++i) {
    Vector sq(d * d, 0);
    sq[pair_index(d, i, i)] = 1;
    rows.push_back(std::move(sq));
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector v(d * d, 0);
      v[pair_index(d, i, j)] = 1;
      v[pair_index(d, j, i)] = 1;
      rows.push_back(std::move(v));
    }
  }
  for (std::size_t k = 0; k < kernel.rows(); ++k) {
    Vector v(d * d, 0);
    std::size_t col = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) v[pair_index(d, i, j)] = kernel(k, col++);
    rows.push_back(std::move(v));
  }
  Commutativity cls = f.p() == 2 ? Commutativity::wedge_commutative : Commutativity::graded_commutative;
  CohomologyAlgebra out{QuadraticPresentation(f, d, Subspace::span(f, d * d, rows), cls),
                        coeffs.size(), coeffs.size() <= 2};
  return out;
}

OneRelatorForm one_relator_normal_form(const PrimeField& f, const RelationCoefficients& coeff) {
  FpMatrix m = coeff.matrix;
  const std::size_t d = m.rows();
  bool nonzero = false;
  for (std::size_t i = 0; i < d; ++i) {
    if (f.p() == 2 && m(i, i) != 0) throw InputError("alternating form required: nonzero diagonal at p = 2");
    for (std::size_t j = 0; j < d; ++j) nonzero = nonzero || m(i, j) != 0;
  }
  if (!nonzero) throw InputError("relator lies in F_(3): zero coefficient form");

  // Congruence transforms M -> P M P^T that split off hyperbolic pairs.
  std::vector<bool> used(d, false);
  std::size_t rank = 0;
  while (true) {
    std::size_t pi = d, pj = d;
    for (std::size_t i = 0; i < d && pi == d; ++i) {
      if (used[i]) continue;
      for (std::size_t j = i + 1; j < d; ++j) {
        if (!used[j] && m(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == d) break;
    const Residue c_inv = f.inv(m(pi, pj));
    for (std::size_t k = 0; k < d; ++k) {
      if (used[k] || k == pi || k == pj) continue;
      // e_k' = e_k + alpha e_i + beta e_j is orthogonal to e_i and e_j.
      const Residue alpha = f.neg(f.mul(m(k, pj), c_inv));
      const Residue beta = f.mul(m(k, pi), c_inv);
      axpy(f, m.row(k), alpha, m.row(pi));
      axpy(f, m.row(k), beta, m.row(pj));
      for (std::size_t r = 0; r < d; ++r) {
        m(r, k) = f.add(m(r, k), f.add(f.mul(alpha, m(r, pi)), f.mul(beta, m(r, pj))));
      }
    }
    used[pi] = used[pj] = true;
    rank += 2;
  }
  return {rank, demushkin_algebra(f, rank), standard_algebra(StandardKind::trivial, f, d - rank)};
}

Word synthetic_relator(const PrimeField& f, const FpMatrix& alpha) {
  const std::size_t d = alpha.rows();
  std::vector<Word> factors;
  if (f.p() == 2) {
    for (std::size_t i = 0; i < d; ++i)
      if (alpha(i, i) != 0) factors.push_back(Word::power(Word::generator(i), 2 * alpha(i, i)));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (alpha(i, j) == 0) continue;
      factors.push_back(Word::power(Word::commutator(Word::generator(i), Word::generator(j)), alpha(i, j)));
    }
  }
  return Word::product(std::move(factors));
}

FpMatrix random_coefficients(const PrimeField& f, std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> coin(0, f.p() - 1);
  FpMatrix alpha(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      alpha(i, j) = static_cast<Residue>(coin(rng));
      alpha(j, i) = f.neg(alpha(i, j));
    }
  if (f.p() == 2 && rng() % 2 == 0)
    for (std::size_t i = 0; i < d; ++i) alpha(i, i) = static_cast<Residue>(coin(rng));
  return alpha;
}

namespace {

// A random element of F_(3): a nested commutator or a p-th power (4th at p = 2).
Word random_tail(const PrimeField& f, std::size_t d, std::mt19937_64& rng) {
  auto gen = [&] { return Word::generator(static_cast<std::size_t>(rng() % d)); };
  auto bracket = [&] {
    const std::size_t a = rng() % d, b = (a + 1 + rng() % (d - 1)) % d;
    return Word::commutator(Word::generator(a), Word::generator(b));
  };
  switch (rng() % 3) {
    case 0:
      return Word::commutator(bracket(), gen());
    case 1:
      return Word::power(gen(), f.p() == 2 ? 4 : static_cast<long long>(f.p()));
    default:
      return Word::power(bracket(), static_cast<long long>(f.p()));
  }
}

}  // namespace

GroupPresentation random_quadratically_defined(const PrimeField& f, std::size_t d, std::size_t relators,
                                               std::mt19937_64& rng, std::size_t max_attempts) {
  if (d < 2) throw InputError("random presentations need at least two generators");
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    GroupPresentation pres{f, d, {}};
    for (std::size_t h = 0; h < relators; ++h) {
      Word core = synthetic_relator(f, random_coefficients(f, d, rng));
      std::vector<Word> factors;
      if (core.kind() == Word::Kind::product)
        factors = core.children();
      else
        factors.push_back(core);
      const std::size_t tails = rng() % 3;
      for (std::size_t t = 0; t < tails; ++t) {
        const std::size_t at = static_cast<std::size_t>(rng() % (factors.size() + 1));
        factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(at), random_tail(f, d, rng));
      }
      pres.relators.push_back(Word::product(std::move(factors)));
    }
    if (quadratically_defined(pres).holds) return pres;
  }
  throw LimitError("no quadratically defined presentation found in " + std::to_string(max_attempts) +
                   " attempts");
}

}  // namespace ukoszul

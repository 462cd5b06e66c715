#pragma once

// Pro-p group presentations: relator words, their degree-2 Magnus coefficients,
// quadratic definedness, and the resulting cohomology algebra H^*(G, F_p).
//
// Sign convention: the trace of a_i a_j against relator h is +alpha_ij (the raw
// Magnus coefficient). Only the span of the traces matters downstream, so the
// opposite convention gives identical algebras.

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ukoszul/gfp.hpp"
#include "ukoszul/qalg.hpp"

namespace ukoszul {

/// Group word as a syntax tree. Generators are 0-based internally and printed as x1, x2, ...
class Word {
 public:
  enum class Kind { identity, generator, inverse, power, product, commutator };

  static Word identity();
  static Word generator(std::size_t index);
  static Word inverse(Word w);
  static Word power(Word base, long long exponent);
  static Word product(std::vector<Word> factors);
  /// [a, b] = a^-1 b^-1 a b
  static Word commutator(Word a, Word b);

  Kind kind() const noexcept { return kind_; }
  std::size_t generator_index() const noexcept { return index_; }
  long long exponent() const noexcept { return exponent_; }
  const std::vector<Word>& children() const noexcept { return children_; }

  /// Text in the relator grammar; parse_word(w.to_string()) reproduces w.
  std::string to_string() const;
  /// Largest generator index used, plus one.
  std::size_t generator_bound() const noexcept;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Kind kind_ = Kind::identity;
  std::size_t index_ = 0;
  long long exponent_ = 0;
  std::vector<Word> children_;
};

/// Grammar:
///   word    := term ( '*'? term )*
///   term    := factor ( '^' integer )*
///   factor  := 'x' digits | '[' word ',' word ']' | '(' word ')' | '1'
///   integer := ( '+' | '-' )? digits
/// Whitespace between tokens is ignored. Throws ParseError carrying the byte offset,
/// including for generators outside x1..x{generator_count}.
Word parse_word(std::string_view text, std::size_t generator_count);

struct GroupPresentation {
  PrimeField field;
  std::size_t generators;  // d >= 1
  std::vector<Word> relators;
};

/// Element 1 + linear + quadratic of F_p<<X_1..X_d>> modulo degree 3.
struct MagnusTruncation {
  Residue constant = 1;
  Vector linear;     // length d
  FpMatrix quadratic; // d x d, entry (i, j) is the coefficient of X_i X_j

  MagnusTruncation(const PrimeField& field, std::size_t d);
};

MagnusTruncation magnus_multiply(const PrimeField& field, const MagnusTruncation& a,
                                 const MagnusTruncation& b);
/// Image of w under x_k -> 1 + X_k, modulo degree 3.
MagnusTruncation magnus_expand(const PrimeField& field, std::size_t d, const Word& w);

struct MagnusDegree2 {
  Vector degree1;
  FpMatrix degree2;
};

/// Degree-1 and degree-2 Magnus coefficients of w; w lies in F_(2) iff degree1 = 0.
MagnusDegree2 magnus_degree2(const GroupPresentation& pres, const Word& w);

/// Degree-2 Magnus coefficients of one relator: alpha_ij = matrix(i, j) for i < j,
/// alpha_ii = matrix(i, i) (p = 2).
struct RelationCoefficients {
  FpMatrix matrix;

  Residue alpha(std::size_t i, std::size_t j) const noexcept { return matrix(i, j); }
};

/// Throws InputError if a relator has a nonzero degree-1 part (the presentation is
/// not minimal) or if the antisymmetry invariant fails.
std::vector<RelationCoefficients> relation_coefficients(const GroupPresentation& pres);

struct QdefVerdict {
  bool holds = false;
  std::string reason;
};

/// Cup product onto H^2 plus, at p = 2, vanishing squares.
QdefVerdict quadratically_defined(const GroupPresentation& pres);

struct CohomologyAlgebra {
  QuadraticPresentation presentation;
  std::size_t relations = 0;
  /// False for three or more relators: only the degree <= 2 truncation is certified.
  bool verified = true;
};

/// H^*(G) as Q(V, Omega): exterior relations plus every alternating combination
/// killed by all relator traces. Throws InputError if not quadratically defined.
CohomologyAlgebra cohomology_algebra(const GroupPresentation& pres);

struct OneRelatorForm {
  std::size_t rank;                  // s, the rank of the alternating form
  QuadraticPresentation demushkin;   // on s generators
  QuadraticPresentation trivial;     // on d - s generators
};

/// Rank of the alternating coefficient form by symplectic reduction, plus the
/// matching Demushkin and trivial factors. Throws InputError if the form is zero
/// or, at p = 2, has a nonzero diagonal.
OneRelatorForm one_relator_normal_form(const PrimeField& field, const RelationCoefficients& coeff);

/// prod_i x_i^(2 alpha_ii) (p = 2) times prod_{i<j} [x_i, x_j]^alpha_ij.
Word synthetic_relator(const PrimeField& field, const FpMatrix& alpha);

/// Uniform random coefficient matrix (alternating for p odd; at p = 2 the diagonal is
/// zero with probability 1/2 and uniform otherwise).
FpMatrix random_coefficients(const PrimeField& field, std::size_t d, std::mt19937_64& rng);

/// Presentation with `relators` synthetic relators built from random coefficient
/// matrices, each multiplied by random F_(3) factors at random positions, resampled
/// until quadratically defined. Requires d >= 2. Throws LimitError after
/// `max_attempts` rejections.
GroupPresentation random_quadratically_defined(const PrimeField& field, std::size_t d,
                                               std::size_t relators, std::mt19937_64& rng,
                                               std::size_t max_attempts = 100000);

}  // namespace ukoszul

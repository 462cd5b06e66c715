#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ukoszul/gfp.hpp"
#include "ukoszul/qalg.hpp"

namespace ukoszul {

/// A graded ideal of a GradedAlgebraTable, stored degreewise for degrees 0..cap.
/// The table must outlive the ideal.
class GradedIdeal {
 public:
  GradedIdeal(const GradedAlgebraTable& algebra, std::vector<Subspace> parts);

  static GradedIdeal zero(const GradedAlgebraTable& algebra);
  /// A_+: every positive degree.
  static GradedIdeal augmentation(const GradedAlgebraTable& algebra);

  const GradedAlgebraTable& algebra() const noexcept { return *algebra_; }
  const Subspace& part(int n) const { return parts_.at(static_cast<std::size_t>(n)); }
  const std::vector<Subspace>& parts() const noexcept { return parts_; }
  std::vector<std::size_t> dims() const;

  /// Degreewise containment.
  bool contains(const GradedIdeal& other) const;
  /// A_m * I_n and I_n * A_m land in I_{m+n} for all m + n <= cap.
  bool is_closed() const;

  friend bool operator==(const GradedIdeal& a, const GradedIdeal& b) noexcept {
    return a.parts_ == b.parts_;
  }

 private:
  const GradedAlgebraTable* algebra_;
  std::vector<Subspace> parts_;
};

/// The ideal A * U * A generated by a subspace U of A_1.
GradedIdeal ideal_from_degree_one(const GradedAlgebraTable& algebra, const Subspace& u);

/// True iff the ideal is generated by its degree-one part in every stored degree.
bool is_in_L(const GradedAlgebraTable& algebra, const GradedIdeal& ideal);

/// I : (b) = {a : a*b in I} for graded-commutative (or wedge-commutative) tables.
/// The top degree is completed to A_cap, which is exact whenever A_{cap+1} = 0.
/// Throws InputError for tables without a commutativity class.
GradedIdeal colon_ideal(const GradedAlgebraTable& algebra, const GradedIdeal& ideal,
                        std::span<const Residue> b);

struct UkOptions {
  unsigned jobs = 1;
  Limits limits{};
};

struct UkWitness {
  Subspace ideal_generators;  // I_1, in canonical RREF form
  Vector b;                   // normalized representative of the line through b
  std::vector<std::size_t> colon_dims;      // degreewise dims of I : (b)
  std::vector<std::size_t> generated_dims;  // dims of the ideal generated by (I : (b))_1
};

struct UkVerdict {
  bool holds = true;
  /// Verdict is unconditional: the table vanishes in its top degree.
  bool exact = false;
  std::optional<UkWitness> witness;
  std::size_t ideals = 0;  // |L(A)| examined, i.e. subspaces of A_1
  std::size_t pairs = 0;   // (I, b) pairs examined; only reported when the property holds
};

/// Exhaustive universal-Koszulity search over every I in L(A) and every line b in
/// A_1 \ I_1. On failure reports the first witness in canonical order, independent
/// of `options.jobs`. When A_cap != 0 the top degree is left unchecked, so a
/// witness is always genuine and `exact` tells whether the verdict is complete.
UkVerdict universally_koszul(const GradedAlgebraTable& algebra, const UkOptions& options = {});

/// Universal-Koszulity verdict of the direct product of two presentations.
bool uk_closure_product_check(const QuadraticPresentation& a, const QuadraticPresentation& b,
                              int cap = 4, const UkOptions& options = {});

}  // namespace ukoszul

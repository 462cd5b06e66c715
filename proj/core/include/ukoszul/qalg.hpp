#pragma once

// Quadratic algebras Q(V, Omega) = T(V) / (Omega) and their degreewise
// multiplication tables.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ukoszul/errors.hpp"
#include "ukoszul/gfp.hpp"

namespace ukoszul {

enum class Commutativity {
  none,
  graded_commutative,  // b*a = (-1)^{mn} a*b; at p = 2 this is plain commutativity
  wedge_commutative,   // p = 2 only: commutative with all squares zero
};

const char* to_string(Commutativity c) noexcept;
std::optional<Commutativity> parse_commutativity(std::string_view text) noexcept;

/// Coordinate of e_i (x) e_j in V (x) V, row-major.
constexpr std::size_t pair_index(std::size_t d, std::size_t i, std::size_t j) noexcept {
  return i * d + j;
}

/// Q(V, Omega) with V = F_p^d and Omega a subspace of F_p^{d*d}.
class QuadraticPresentation {
 public:
  /// Throws InputError if `omega` is not d*d-dimensional, if the declared class is not
  /// satisfied by omega, or if wedge_commutative is requested with p != 2.
  QuadraticPresentation(PrimeField field, std::size_t d, Subspace omega, Commutativity cls);

  /// Uses the strongest commutativity class omega supports.
  static QuadraticPresentation with_detected_class(PrimeField field, std::size_t d, Subspace omega);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t generators() const noexcept { return d_; }
  const Subspace& omega() const noexcept { return omega_; }
  Commutativity commutativity() const noexcept { return class_; }
  /// True when degree-one squares vanish as well (p odd graded, or wedge at p = 2).
  bool squares_vanish() const noexcept;

  friend bool operator==(const QuadraticPresentation& a, const QuadraticPresentation& b) noexcept {
    return a.field_ == b.field_ && a.d_ == b.d_ && a.omega_ == b.omega_ && a.class_ == b.class_;
  }

 private:
  PrimeField field_;
  std::size_t d_;
  Subspace omega_;
  Commutativity class_;
};

/// Strongest class whose invariants omega satisfies.
Commutativity detect_commutativity(const PrimeField& field, std::size_t d, const Subspace& omega);

/// Simple undirected graph on vertices 0..vertex_count-1.
class Graph {
 public:
  /// Throws InputError on loops, out-of-range vertices or repeated edges.
  Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  /// Edges as (i, j) with i < j, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  bool has_edge(std::size_t i, std::size_t j) const noexcept;
  Graph relabeled(std::span<const std::size_t> permutation) const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<bool> adjacent_;
};

enum class StandardKind { tensor, trivial, symmetric, exterior };

QuadraticPresentation standard_algebra(StandardKind kind, const PrimeField& field, std::size_t d);
/// Throws InputError unless d is even and at least 2.
QuadraticPresentation demushkin_algebra(const PrimeField& field, std::size_t d);
QuadraticPresentation stanley_reisner(const Graph& graph, const PrimeField& field);
/// A on the first generators, B on the rest; throws InputError on a field mismatch.
QuadraticPresentation direct_product(const QuadraticPresentation& a, const QuadraticPresentation& b);
/// Q(V*, Omega^perp) under the pairing <e_i*(x)e_j*, e_k(x)e_l> = delta_ik delta_jl.
QuadraticPresentation quadratic_dual(const QuadraticPresentation& pres);

enum class Construction {
  automatic,  // exterior coordinates whenever squares vanish, tensor coordinates otherwise
  tensor,
  exterior,
};

/// Per-degree bases and structure constants of a quadratic algebra up to a degree cap.
class GradedAlgebraTable {
 public:
  const PrimeField& field() const noexcept { return pres_.field(); }
  const QuadraticPresentation& presentation() const noexcept { return pres_; }
  Commutativity commutativity() const noexcept { return pres_.commutativity(); }
  int cap() const noexcept { return static_cast<int>(dims_.size()) - 1; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(int n) const noexcept {
    return n >= 0 && n <= cap() ? dims_[static_cast<std::size_t>(n)] : 0;
  }
  const std::vector<std::string>& labels(int n) const { return labels_.at(static_cast<std::size_t>(n)); }
  Construction construction() const noexcept { return route_; }

  /// Basis element i of A_m times basis element j of A_n, as coordinates in A_{m+n}.
  /// Requires m, n >= 1 and m + n <= cap.
  std::span<const Residue> product(int m, std::size_t i, int n, std::size_t j) const noexcept {
    const auto& t = mult_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
    const std::size_t out = dims_[static_cast<std::size_t>(m + n)];
    return {t.data() + (i * dims_[static_cast<std::size_t>(n)] + j) * out, out};
  }

  /// out += x * y for x in A_m, y in A_n (any degrees with m + n <= cap).
  void multiply_accumulate(int m, std::span<const Residue> x, int n, std::span<const Residue> y,
                           std::span<Residue> out) const noexcept;
  Vector multiply(int m, std::span<const Residue> x, int n, std::span<const Residue> y) const;

 private:
  friend GradedAlgebraTable build_algebra(const QuadraticPresentation&, int, const Limits&,
                                          Construction);
  explicit GradedAlgebraTable(QuadraticPresentation pres) : pres_(std::move(pres)) {}

  QuadraticPresentation pres_;
  Construction route_ = Construction::tensor;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::string>> labels_;
  // mult_[m][n] holds dims[m] * dims[n] * dims[m+n] constants for m, n >= 1.
  std::vector<std::vector<std::vector<Residue>>> mult_;
};

/// Throws LimitError if the coordinate workspace (d^cap for tensor coordinates,
/// C(d, n) for exterior coordinates) or the table size limit is exceeded, and
/// InputError if exterior coordinates are requested for an algebra whose squares
/// do not vanish.
GradedAlgebraTable build_algebra(const QuadraticPresentation& pres, int cap = 4,
                                 const Limits& limits = {},
                                 Construction route = Construction::automatic);

std::vector<std::size_t> hilbert_series(const GradedAlgebraTable& table);

/// Exhaustive check of the associativity, unit and (when declared) graded
/// commutativity laws on stored basis elements. Returns a description of the
/// first violation, if any.
std::optional<std::string> check_table_laws(const GradedAlgebraTable& table);

}  // namespace ukoszul

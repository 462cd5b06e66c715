#pragma once

// Exact linear algebra over small prime fields.
//
// Every subspace is kept in reduced row-echelon form, which is its canonical
// representative: two Subspace values are equal iff their RREF matrices are.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "ukoszul/errors.hpp"

namespace ukoszul {

using Residue = std::uint8_t;
using Vector = std::vector<Residue>;

class PrimeField {
 public:
  static constexpr unsigned kMaxPrime = 251;

  /// Throws InputError unless p is a prime in [2, kMaxPrime].
  explicit PrimeField(unsigned p);

  unsigned p() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    unsigned s = unsigned{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(a >= b ? a - b : a + p_ - b);
  }
  Residue neg(Residue a) const noexcept { return static_cast<Residue>(a == 0 ? 0 : p_ - a); }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((unsigned{a} * b) % p_);
  }
  /// Multiplicative inverse; `a` must be nonzero.
  Residue inv(Residue a) const;
  /// Reduces an arbitrary integer into [0, p).
  Residue reduce(long long value) const noexcept {
    long long r = value % static_cast<long long>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  unsigned p_;
  std::array<Residue, kMaxPrime + 1> inverse_{};
};

bool is_prime(unsigned n) noexcept;

/// dst += factor * src, entrywise mod p.
void axpy(const PrimeField& field, std::span<Residue> dst, Residue factor,
          std::span<const Residue> src) noexcept;

class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p.
  FpMatrix(PrimeField field, std::size_t cols,
           std::initializer_list<std::initializer_list<long long>> rows);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Residue& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Residue> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Residue> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  /// Appends a row of length cols(); entries must already be residues.
  void append_row(std::span<const Residue> values);
  /// Appends a zero row and returns it.
  std::span<Residue> append_zero_row();
  void truncate_rows(std::size_t rows);
  void swap_rows(std::size_t a, std::size_t b) noexcept;

  FpMatrix transposed() const;
  const std::vector<Residue>& data() const noexcept { return data_; }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

struct Echelon {
  FpMatrix matrix;                  // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;  // strictly increasing; rank = pivots.size()
};

/// Unique reduced row-echelon form of m.
Echelon rref(FpMatrix m);

/// Rows form an RREF basis of the left kernel {x : x * m = 0}.
FpMatrix left_kernel(const FpMatrix& m);

class Subspace {
 public:
  /// The zero subspace of F_p^ambient_dim.
  Subspace(PrimeField field, std::size_t ambient_dim);

  static Subspace full(PrimeField field, std::size_t ambient_dim);
  /// Row space of `generators`.
  static Subspace span(FpMatrix generators);
  static Subspace span(PrimeField field, std::size_t ambient_dim, std::span<const Vector> vectors);

  const PrimeField& field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_dim(); }

  /// RREF basis with exactly dim() rows.
  const FpMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Subtracts the basis combination that clears every pivot coordinate of v.
  /// v is in the subspace iff the result is zero.
  void reduce_in_place(std::span<Residue> v) const noexcept;
  Vector reduce(std::span<const Residue> v) const;

  bool contains(std::span<const Residue> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the RREF basis, or nullopt if v is not in the subspace.
  /// Throws std::invalid_argument on a length mismatch.
  std::optional<Vector> coordinates(std::span<const Residue> v) const;

  /// Non-pivot coordinate indices, i.e. the canonical complement.
  std::vector<std::size_t> non_pivots() const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.basis_ == b.basis_;
  }

 private:
  Subspace(FpMatrix basis, std::vector<std::size_t> pivots);

  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// {phi : phi(v) = 0 for all v in s} under the standard pairing sum_i phi_i v_i.
Subspace annihilator(const Subspace& s);

/// Canonical order: dimension first, then lexicographic on the RREF entries.
bool canonical_less(const Subspace& a, const Subspace& b) noexcept;

/// Every subspace of F_p^n exactly once, in canonical order.
/// Throws LimitError if n > limits.max_enum_dim or p^n > limits.max_enum_points.
std::vector<Subspace> enumerate_subspaces(const PrimeField& field, std::size_t n,
                                          const Limits& limits = {});

/// One representative per line of F_p^n not contained in `excluding`, normalized
/// to leading coordinate 1, in lexicographic order.
std::vector<Vector> enumerate_projective_points(const PrimeField& field, std::size_t n,
                                                const Subspace& excluding);

}  // namespace ukoszul

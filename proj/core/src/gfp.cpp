#include "ukoszul/gfp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ukoszul {

bool is_prime(unsigned n) noexcept {
  if (n < 2) return false;
  for (unsigned k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(unsigned p) : p_(p) {
  if (p > kMaxPrime || !is_prime(p)) {
    throw InputError("field characteristic must be a prime in [2, " + std::to_string(kMaxPrime) +
                     "], got " + std::to_string(p));
  }
  for (unsigned a = 1; a < p; ++a) {
    for (unsigned b = 1; b < p; ++b) {
      if ((a * b) % p == 1) {
        inverse_[a] = static_cast<Residue>(b);
        break;
      }
    }
  }
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0 || a >= p_) throw std::domain_error("inverse of zero in F_p");
  return inverse_[a];
}

void axpy(const PrimeField& field, std::span<Residue> dst, Residue factor,
          std::span<const Residue> src) noexcept {
  if (factor == 0) return;
  const unsigned p = field.p();
  const std::size_t n = dst.size();
  if (p == 2) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (src[i] != 0) dst[i] = static_cast<Residue>((dst[i] + unsigned{factor} * src[i]) % p);
  }
}

// --- FpMatrix -------------------------------------------------------------

FpMatrix::FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(PrimeField field, std::size_t cols,
                   std::initializer_list<std::initializer_list<long long>> rows)
    : field_(field), rows_(0), cols_(cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("FpMatrix: ragged row");
    for (long long v : r) data_.push_back(field_.reduce(v));
    ++rows_;
  }
}

void FpMatrix::append_row(std::span<const Residue> values) {
  if (values.size() != cols_) throw std::invalid_argument("FpMatrix::append_row: length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::span<Residue> FpMatrix::append_zero_row() {
  data_.resize(data_.size() + cols_, 0);
  ++rows_;
  return row(rows_ - 1);
}

void FpMatrix::truncate_rows(std::size_t rows) {
  if (rows < rows_) {
    rows_ = rows;
    data_.resize(rows_ * cols_);
  }
}

void FpMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

// --- Row reduction ----------------------------------------------------------

Echelon rref(FpMatrix m) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t found = rank;
    while (found < m.rows() && m(found, col) == 0) ++found;
    if (found == m.rows()) continue;
    m.swap_rows(rank, found);
    auto pivot_row = m.row(rank);
    Residue scale = f.inv(pivot_row[col]);
    if (scale != 1) {
      for (std::size_t c = col; c < m.cols(); ++c) pivot_row[c] = f.mul(pivot_row[c], scale);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      Residue v = m(r, col);
      if (v != 0) axpy(f, m.row(r), f.neg(v), m.row(rank));
    }
    pivots.push_back(col);
    ++rank;
  }
  return {std::move(m), std::move(pivots)};
}

FpMatrix left_kernel(const FpMatrix& m) {
  const PrimeField& f = m.field();
  const std::size_t n = m.rows();
  const std::size_t c = m.cols();
  FpMatrix aug(f, n, c + n);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(m.row(r).begin(), m.row(r).end(), aug.row(r).begin());
    aug(r, c + r) = 1;
  }
  Echelon e = rref(std::move(aug));
  // Rows whose pivot lies in the identity block have a zero left part.
  FpMatrix kernel(f, 0, n);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= c) kernel.append_row(e.matrix.row(r).subspan(c));
  }
  // The kernel rows are already in RREF: their pivots are distinct, increasing,
  // and cleared in every other row of the augmented echelon form.
  return kernel;
}

// --- Subspace -----------------------------------------------------------------

Subspace::Subspace(PrimeField field, std::size_t ambient_dim) : basis_(field, 0, ambient_dim) {}

Subspace::Subspace(FpMatrix basis, std::vector<std::size_t> pivots)
    : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim) {
  FpMatrix id(field, ambient_dim, ambient_dim);
  std::vector<std::size_t> piv(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    id(i, i) = 1;
    piv[i] = i;
  }
  return Subspace(std::move(id), std::move(piv));
}

Subspace Subspace::span(FpMatrix generators) {
  Echelon e = rref(std::move(generators));
  e.matrix.truncate_rows(e.pivots.size());
  return Subspace(std::move(e.matrix), std::move(e.pivots));
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim,
                        std::span<const Vector> vectors) {
  FpMatrix m(field, 0, ambient_dim);
  for (const auto& v : vectors) m.append_row(v);
  return span(std::move(m));
}

void Subspace::reduce_in_place(std::span<Residue> v) const noexcept {
  const PrimeField& f = field();
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    Residue x = v[pivots_[r]];
    if (x != 0) axpy(f, v, f.neg(x), basis_.row(r));
  }
}

Vector Subspace::reduce(std::span<const Residue> v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
  Vector out(v.begin(), v.end());
  reduce_in_place(out);
  return out;
}

bool Subspace::contains(std::span<const Residue> v) const {
  Vector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim())
    throw std::invalid_argument("Subspace::contains: dimension mismatch");
  for (std::size_t r = 0; r < other.dim(); ++r) {
    if (!contains(other.basis().row(r))) return false;
  }
  return true;
}

std::optional<Vector> Subspace::coordinates(std::span<const Residue> v) const {
  if (v.size() != ambient_dim())
    throw std::invalid_argument("Subspace::coordinates: dimension mismatch");
  if (!contains(v)) return std::nullopt;
  Vector coords(dim());
  for (std::size_t r = 0; r < dim(); ++r) coords[r] = v[pivots_[r]];
  return coords;
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t c = 0; c < ambient_dim(); ++c) {
    if (next < pivots_.size() && pivots_[next] == c) {
      ++next;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw std::invalid_argument("sum: dimension mismatch");
  FpMatrix m = a.basis();
  for (std::size_t r = 0; r < b.dim(); ++r) m.append_row(b.basis().row(r));
  return Subspace::span(std::move(m));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw std::invalid_argument("intersect: dimension mismatch");
  // x*A + y*B = 0 with (x, y) in the left kernel of [A; B] gives x*A in a ∩ b.
  FpMatrix stacked = a.basis();
  for (std::size_t r = 0; r < b.dim(); ++r) stacked.append_row(b.basis().row(r));
  FpMatrix kernel = left_kernel(stacked);
  const PrimeField& f = a.field();
  FpMatrix gens(f, 0, a.ambient_dim());
  for (std::size_t k = 0; k < kernel.rows(); ++k) {
    auto out = gens.append_zero_row();
    for (std::size_t r = 0; r < a.dim(); ++r) axpy(f, out, kernel(k, r), a.basis().row(r));
  }
  return Subspace::span(std::move(gens));
}

Subspace annihilator(const Subspace& s) {
  // phi annihilates s iff B * phi^T = 0, i.e. phi is in the left kernel of B^T.
  return Subspace::span(left_kernel(s.basis().transposed()));
}

bool canonical_less(const Subspace& a, const Subspace& b) noexcept {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  return std::lexicographical_compare(a.basis().data().begin(), a.basis().data().end(),
                                      b.basis().data().begin(), b.basis().data().end());
}

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t bound) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > bound / base) return bound + 1;
    v *= base;
  }
  return v;
}

// Calls visit(pivots) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Subspace> enumerate_subspaces(const PrimeField& field, std::size_t n,
                                          const Limits& limits) {
  if (n > limits.max_enum_dim) {
    throw LimitError("subspace enumeration: dimension " + std::to_string(n) + " exceeds limit " +
                     std::to_string(limits.max_enum_dim));
  }
  if (checked_power(field.p(), n, limits.max_enum_points) > limits.max_enum_points) {
    throw LimitError("subspace enumeration: p^n exceeds limit " +
                     std::to_string(limits.max_enum_points));
  }
  const unsigned p = field.p();
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Subspace> layer;
    for_each_combination(n, k, [&](const std::vector<std::size_t>& piv) {
      // Free slots: (row r, column c) with c > piv[r] and c not a pivot.
      std::vector<std::pair<std::size_t, std::size_t>> free_slots;
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = piv[r] + 1; c < n; ++c) {
          if (!std::binary_search(piv.begin(), piv.end(), c)) free_slots.emplace_back(r, c);
        }
      }
      FpMatrix m(field, k, n);
      for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
      std::vector<unsigned> counter(free_slots.size(), 0);
      while (true) {
        for (std::size_t s = 0; s < free_slots.size(); ++s)
          m(free_slots[s].first, free_slots[s].second) = static_cast<Residue>(counter[s]);
        layer.push_back(Subspace::span(m));
        std::size_t s = 0;
        while (s < counter.size() && ++counter[s] == p) counter[s++] = 0;
        if (s == counter.size()) break;
      }
    });
    std::sort(layer.begin(), layer.end(), canonical_less);
    for (auto& s : layer) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Vector> enumerate_projective_points(const PrimeField& field, std::size_t n,
                                                const Subspace& excluding) {
  if (excluding.ambient_dim() != n)
    throw std::invalid_argument("enumerate_projective_points: dimension mismatch");
  const unsigned p = field.p();
  std::vector<Vector> out;
  // Lexicographic order: later leading positions first, tails ascending.
  for (std::size_t lead = n; lead-- > 0;) {
    Vector v(n, 0);
    v[lead] = 1;
    const std::size_t tail = n - lead - 1;
    while (true) {
      if (!excluding.contains(v)) out.push_back(v);
      std::size_t i = n;
      while (i > lead + 1) {
        --i;
        if (++v[i] == p) {
          v[i] = 0;
        } else {
          break;
        }
      }
      if (tail == 0 || std::all_of(v.begin() + static_cast<std::ptrdiff_t>(lead) + 1, v.end(),
                                   [](Residue x) { return x == 0; }))
        break;
    }
  }
  return out;
}

}  // namespace ukoszul

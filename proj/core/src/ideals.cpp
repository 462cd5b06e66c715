#include "ukoszul/ideals.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ukoszul {

GradedIdeal::GradedIdeal(const GradedAlgebraTable& algebra, std::vector<Subspace> parts)
    : algebra_(&algebra), parts_(std::move(parts)) {
  if (parts_.size() != static_cast<std::size_t>(algebra.cap()) + 1)
    throw std::invalid_argument("GradedIdeal: one part per degree 0..cap required");
  for (int n = 0; n <= algebra.cap(); ++n) {
    if (parts_[static_cast<std::size_t>(n)].ambient_dim() != algebra.dim(n))
      throw std::invalid_argument("GradedIdeal: part dimension mismatch");
  }
}

GradedIdeal GradedIdeal::zero(const GradedAlgebraTable& algebra) {
  std::vector<Subspace> parts;
  for (int n = 0; n <= algebra.cap(); ++n) parts.emplace_back(algebra.field(), algebra.dim(n));
  return GradedIdeal(algebra, std::move(parts));
}

GradedIdeal GradedIdeal::augmentation(const GradedAlgebraTable& algebra) {
  std::vector<Subspace> parts;
  parts.emplace_back(algebra.field(), 1);
  for (int n = 1; n <= algebra.cap(); ++n) parts.push_back(Subspace::full(algebra.field(), algebra.dim(n)));
  return GradedIdeal(algebra, std::move(parts));
}

std::vector<std::size_t> GradedIdeal::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : parts_) out.push_back(s.dim());
  return out;
}

bool GradedIdeal::contains(const GradedIdeal& other) const {
  for (std::size_t n = 0; n < parts_.size(); ++n) {
    if (!parts_[n].contains(other.parts_.at(n))) return false;
  }
  return true;
}

bool GradedIdeal::is_closed() const {
  const GradedAlgebraTable& a = *algebra_;
  for (int n = 0; n <= a.cap(); ++n) {
    const Subspace& in = part(n);
    for (int m = 1; m + n <= a.cap(); ++m) {
      for (std::size_t r = 0; r < in.dim(); ++r) {
        for (std::size_t i = 0; i < a.dim(m); ++i) {
          Vector e(a.dim(m), 0);
          e[i] = 1;
          if (!part(m + n).contains(a.multiply(n, in.basis().row(r), m, e))) return false;
          if (!part(m + n).contains(a.multiply(m, e, n, in.basis().row(r)))) return false;
        }
      }
    }
  }
  return true;
}

namespace {

// span(prev * A_1), plus A_1 * prev when the table is not commutative.
Subspace next_degree(const GradedAlgebraTable& a, int n, const Subspace& prev) {
  const PrimeField& f = a.field();
  const std::size_t d = a.dim(1);
  const std::size_t out = a.dim(n);
  const bool two_sided = a.commutativity() == Commutativity::none;
  FpMatrix gens(f, 0, out);
  for (std::size_t r = 0; r < prev.dim(); ++r) {
    auto x = prev.basis().row(r);
    for (std::size_t k = 0; k < d; ++k) {
      auto row = gens.append_zero_row();
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) axpy(f, row, x[i], a.product(n - 1, i, 1, k));
      if (two_sided) {
        auto left = gens.append_zero_row();
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i] != 0) axpy(f, left, x[i], a.product(1, k, n - 1, i));
      }
    }
  }
  return Subspace::span(std::move(gens));
}

}  // namespace

GradedIdeal ideal_from_degree_one(const GradedAlgebraTable& algebra, const Subspace& u) {
  if (algebra.cap() < 1) throw std::invalid_argument("ideal_from_degree_one: table has no degree one");
  if (u.ambient_dim() != algebra.dim(1))
    throw std::invalid_argument("ideal_from_degree_one: subspace is not in A_1");
  std::vector<Subspace> parts;
  parts.emplace_back(algebra.field(), 1);
  parts.push_back(u);
  for (int n = 2; n <= algebra.cap(); ++n)
    parts.push_back(next_degree(algebra, n, parts.back()));
  return GradedIdeal(algebra, std::move(parts));
}

bool is_in_L(const GradedAlgebraTable& algebra, const GradedIdeal& ideal) {
  if (algebra.cap() < 1) return ideal.part(0).is_zero();
  if (!ideal.part(0).is_zero()) return false;
  return ideal == ideal_from_degree_one(algebra, ideal.part(1));
}

namespace {

void require_commutative(const GradedAlgebraTable& algebra) {
  if (algebra.commutativity() == Commutativity::none)
    throw InputError("colon ideals need a graded-commutative or wedge-commutative algebra");
}

// {a in A_n : a*b in target}, for n < cap.
Subspace colon_part(const GradedAlgebraTable& a, int n, const Subspace& target,
                    std::span<const Residue> b) {
  const PrimeField& f = a.field();
  const std::size_t rows = a.dim(n);
  const std::size_t cols = a.dim(n + 1);
  FpMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto row = m.row(i);
    if (n == 0) {
      std::copy(b.begin(), b.end(), row.begin());
    } else {
      for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k] != 0) axpy(f, row, b[k], a.product(n, i, 1, k));
    }
    target.reduce_in_place(row);
  }
  return Subspace::span(left_kernel(m));
}

}  // namespace

GradedIdeal colon_ideal(const GradedAlgebraTable& algebra, const GradedIdeal& ideal,
                        std::span<const Residue> b) {
  require_commutative(algebra);
  if (algebra.cap() < 1) throw std::invalid_argument("colon_ideal: table has no degree one");
  if (b.size() != algebra.dim(1)) throw std::invalid_argument("colon_ideal: b is not in A_1");
  const int cap = algebra.cap();
  std::vector<Subspace> parts;
  for (int n = 0; n < cap; ++n) parts.push_back(colon_part(algebra, n, ideal.part(n + 1), b));
  parts.push_back(Subspace::full(algebra.field(), algebra.dim(cap)));
  return GradedIdeal(algebra, std::move(parts));
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Forward elimination of the leading `cols` columns of a row-major block with
// `stride` columns; independent rows end up on top. Returns the rank.
std::size_t eliminate(const PrimeField& f, Residue* m, std::size_t rows, std::size_t cols,
                      std::size_t stride) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * stride + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) std::swap_ranges(m + piv * stride, m + (piv + 1) * stride, m + rank * stride);
    Residue* top = m + rank * stride;
    const Residue inv = f.inv(top[c]);
    if (inv != 1)
      for (std::size_t k = c; k < stride; ++k) top[k] = f.mul(top[k], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      Residue* row = m + r * stride;
      const Residue x = row[c];
      if (x != 0) axpy(f, {row + c, stride - c}, f.neg(x), {top + c, stride - c});
    }
    ++rank;
  }
  return rank;
}

// Decides whether I : (b) equals the ideal generated by its degree-one part,
// comparing dimensions only: the generated ideal always sits inside the colon.
// The completed top degree is compared only when A_cap = 0.
class PairEvaluator {
 public:
  PairEvaluator(const GradedAlgebraTable& a, const GradedIdeal& ideal)
      : a_(a), ideal_(ideal), exact_(a.dims().back() == 0) {}

  bool holds(std::span<const Residue> b) {
    const PrimeField& f = a_.field();
    const int cap = a_.cap();
    const std::size_t d = a_.dim(1);
    if (cap == 1) return true;  // I : (b) = 0 in degree 0 and A_1 on top

    // Degree one: kernel of x -> x*b mod I_2, via [M | Id].
    const std::size_t c2 = a_.dim(2);
    const std::size_t stride = c2 + d;
    buf_.assign(d * stride, 0);
    for (std::size_t i = 0; i < d; ++i) {
      std::span<Residue> row{buf_.data() + i * stride, c2};
      for (std::size_t k = 0; k < d; ++k)
        if (b[k] != 0) axpy(f, row, b[k], a_.product(1, i, 1, k));
      ideal_.part(2).reduce_in_place(row);
      buf_[i * stride + c2 + i] = 1;
    }
    const std::size_t rank1 = eliminate(f, buf_.data(), d, c2, stride);
    std::size_t gen_dim = d - rank1;
    basis_.assign(gen_dim * d, 0);
    for (std::size_t r = 0; r < gen_dim; ++r)
      std::copy_n(buf_.data() + (rank1 + r) * stride + c2, d, basis_.data() + r * d);

    for (int n = 2; n <= cap; ++n) {
      const std::size_t dn = a_.dim(n);
      // Generated part: span(G_{n-1} * A_1).
      const std::size_t prev = a_.dim(n - 1);
      const std::size_t rows = gen_dim * d;
      gen_.assign(rows * dn, 0);
      for (std::size_t r = 0; r < gen_dim; ++r) {
        const Residue* x = basis_.data() + r * prev;
        for (std::size_t k = 0; k < d; ++k) {
          std::span<Residue> out{gen_.data() + (r * d + k) * dn, dn};
          for (std::size_t i = 0; i < prev; ++i)
            if (x[i] != 0) axpy(f, out, x[i], a_.product(n - 1, i, 1, k));
        }
      }
      gen_dim = eliminate(f, gen_.data(), rows, dn, dn);
      gen_.resize(gen_dim * dn);
      std::swap(basis_, gen_);

      // Colon part: dim(A_n) minus rank of x -> x*b mod I_{n+1} (everything on top).
      std::size_t colon_dim = dn;
      if (n < cap) {
        const std::size_t cn = a_.dim(n + 1);
        buf_.assign(dn * cn, 0);
        for (std::size_t i = 0; i < dn; ++i) {
          std::span<Residue> row{buf_.data() + i * cn, cn};
          for (std::size_t k = 0; k < d; ++k)
            if (b[k] != 0) axpy(f, row, b[k], a_.product(n, i, 1, k));
          ideal_.part(n + 1).reduce_in_place(row);
        }
        colon_dim = dn - eliminate(f, buf_.data(), dn, cn, cn);
      }
      if (colon_dim != gen_dim && (n < cap || exact_)) return false;
    }
    return true;
  }

 private:
  const GradedAlgebraTable& a_;
  const GradedIdeal& ideal_;
  bool exact_;
  Vector buf_, basis_, gen_;
};

// Index of the first b (in point order) for which I : (b) leaves L(A), if any.
std::size_t first_failure(const GradedAlgebraTable& a, const Subspace& u, std::size_t& pairs) {
  GradedIdeal ideal = ideal_from_degree_one(a, u);
  PairEvaluator eval(a, ideal);
  std::vector<Vector> points = enumerate_projective_points(a.field(), a.dim(1), u);
  for (std::size_t k = 0; k < points.size(); ++k) {
    ++pairs;
    if (!eval.holds(points[k])) return k;
  }
  return kNone;
}

}  // namespace

UkVerdict universally_koszul(const GradedAlgebraTable& algebra, const UkOptions& options) {
  require_commutative(algebra);
  if (algebra.cap() < 1) throw InputError("universal Koszulity needs a table with degree one");
  UkVerdict verdict;
  verdict.exact = algebra.dims().back() == 0;
  const std::vector<Subspace> subspaces =
      enumerate_subspaces(algebra.field(), algebra.dim(1), options.limits);
  verdict.ideals = subspaces.size();

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  std::atomic<std::size_t> pairs{0};
  std::vector<std::size_t> failures(subspaces.size(), kNone);

  auto worker = [&] {
    std::size_t local_pairs = 0;
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= subspaces.size() || idx > best.load()) break;
      const std::size_t failure = first_failure(algebra, subspaces[idx], local_pairs);
      if (failure != kNone) {
        failures[idx] = failure;
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    }
    pairs += local_pairs;
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  const std::size_t found = best.load();
  if (found == kNone) {
    verdict.holds = true;
    verdict.pairs = pairs.load();
    return verdict;
  }
  verdict.holds = false;
  std::vector<Vector> points =
      enumerate_projective_points(algebra.field(), algebra.dim(1), subspaces[found]);
  const Vector& b = points[failures[found]];
  GradedIdeal colon = colon_ideal(algebra, ideal_from_degree_one(algebra, subspaces[found]), b);
  GradedIdeal generated = ideal_from_degree_one(algebra, colon.part(1));
  if (colon == generated) throw std::logic_error("universally_koszul: witness does not reproduce");
  verdict.witness = UkWitness{subspaces[found], b, colon.dims(), generated.dims()};
  return verdict;
}

bool uk_closure_product_check(const QuadraticPresentation& a, const QuadraticPresentation& b,
                              int cap, const UkOptions& options) {
  for (const auto* factor : {&a, &b}) {
    GradedAlgebraTable t = build_algebra(*factor, cap, options.limits);
    if (!universally_koszul(t, options).holds)
      throw InputError("product check needs universally Koszul factors");
  }
  GradedAlgebraTable product = build_algebra(direct_product(a, b), cap, options.limits);
  return universally_koszul(product, options).holds;
}

}  // namespace ukoszul

#include "ukoszul/resolve.hpp"

#include <string>

namespace ukoszul {

namespace {

// Free right module with generators g_t of degree deg[t]. In internal degree j
// an element is a concatenation of blocks, one per generator with deg <= j,
// holding coordinates in A_{j - deg}.
struct FreeModule {
  std::vector<std::size_t> deg;
  std::vector<Vector> image;  // d(g_t), an element of the previous module in degree deg[t]

  std::size_t size(const GradedAlgebraTable& a, std::size_t j) const {
    std::size_t s = 0;
    for (std::size_t g : deg)
      if (g <= j) s += a.dim(static_cast<int>(j - g));
    return s;
  }
};

// x * y for x in M_j and y in A_n.
void right_multiply(const GradedAlgebraTable& a, const FreeModule& m, std::size_t j,
                    std::span<const Residue> x, int n, std::span<const Residue> y,
                    std::span<Residue> out) {
  std::size_t in_off = 0;
  std::size_t out_off = 0;
  for (std::size_t g : m.deg) {
    if (g > j + static_cast<std::size_t>(n)) continue;
    const std::size_t out_len = a.dim(static_cast<int>(j + static_cast<std::size_t>(n) - g));
    if (g <= j) {
      const int src_deg = static_cast<int>(j - g);
      const std::size_t in_len = a.dim(src_deg);
      a.multiply_accumulate(src_deg, x.subspan(in_off, in_len), n, y, out.subspan(out_off, out_len));
      in_off += in_len;
    }
    out_off += out_len;
  }
}

// Degreewise kernel of d: P -> Q, with d(g_t) = P.image[t].
Subspace kernel_in_degree(const GradedAlgebraTable& a, const FreeModule& p, const FreeModule& q,
                          std::size_t j) {
  const PrimeField& f = a.field();
  FpMatrix m(f, p.size(a, j), q.size(a, j));
  std::size_t row = 0;
  for (std::size_t t = 0; t < p.deg.size(); ++t) {
    if (p.deg[t] > j) continue;
    const int n = static_cast<int>(j - p.deg[t]);
    for (std::size_t b = 0; b < a.dim(n); ++b) {
      Vector e(a.dim(n), 0);
      e[b] = 1;
      right_multiply(a, q, p.deg[t], p.image[t], n, e, m.row(row));
      ++row;
    }
  }
  return Subspace::span(left_kernel(m));
}

}  // namespace

BettiTable bigraded_betti(const GradedAlgebraTable& algebra, std::size_t h_max, std::size_t n_max) {
  if (n_max > static_cast<std::size_t>(algebra.cap()))
    throw InputError("Betti window internal degree " + std::to_string(n_max) + " exceeds the table cap " +
                     std::to_string(algebra.cap()));
  const PrimeField& f = algebra.field();
  const std::size_t d = algebra.dim(1);
  BettiTable table;
  table.entries.assign(h_max + 1, std::vector<std::size_t>(n_max + 1, 0));
  table.entries[0][0] = 1;

  FreeModule current;  // P_0 = A
  current.deg = {0};
  current.image = {Vector{1}};
  // Z_0 = ker(A -> F_p) = A_+.
  std::vector<Subspace> kernel;
  kernel.emplace_back(f, 1);
  for (std::size_t j = 1; j <= n_max; ++j) kernel.push_back(Subspace::full(f, algebra.dim(static_cast<int>(j))));

  for (std::size_t i = 0; i < h_max; ++i) {
    FreeModule next;
    for (std::size_t j = 0; j <= n_max; ++j) {
      // Decomposables (Z * A_+)_j = Z_{j-1} * A_1.
      FpMatrix dec(f, 0, current.size(algebra, j));
      if (j > 0) {
        const Subspace& below = kernel[j - 1];
        for (std::size_t r = 0; r < below.dim(); ++r) {
          for (std::size_t k = 0; k < d; ++k) {
            Vector e(d, 0);
            e[k] = 1;
            right_multiply(algebra, current, j - 1, below.basis().row(r), 1, e, dec.append_zero_row());
          }
        }
      }
      Subspace decomposable = Subspace::span(std::move(dec));
      FpMatrix fresh(f, 0, current.size(algebra, j));
      for (std::size_t r = 0; r < kernel[j].dim(); ++r) {
        auto row = fresh.append_zero_row();
        std::copy(kernel[j].basis().row(r).begin(), kernel[j].basis().row(r).end(), row.begin());
        decomposable.reduce_in_place(row);
      }
      Subspace generators = Subspace::span(std::move(fresh));
      table.entries[i + 1][j] = generators.dim();
      for (std::size_t r = 0; r < generators.dim(); ++r) {
        next.deg.push_back(j);
        auto g = generators.basis().row(r);
        next.image.emplace_back(g.begin(), g.end());
      }
    }
    if (i + 1 == h_max) break;
    std::vector<Subspace> next_kernel;
    for (std::size_t j = 0; j <= n_max; ++j) next_kernel.push_back(kernel_in_degree(algebra, next, current, j));
    current = std::move(next);
    kernel = std::move(next_kernel);
  }
  return table;
}

bool koszul_window_check(const BettiTable& table) noexcept {
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    for (std::size_t j = 0; j < table.entries[i].size(); ++j)
      if (i != j && table.entries[i][j] != 0) return false;
  return true;
}

bool koszul_window_check(const GradedAlgebraTable& algebra, std::size_t h_max, std::size_t n_max) {
  return koszul_window_check(bigraded_betti(algebra, h_max, n_max));
}

std::vector<long long> hilbert_product_check(const QuadraticPresentation& pres, std::size_t n_max,
                                             const Limits& limits) {
  const int cap = static_cast<int>(n_max);
  GradedAlgebraTable a = build_algebra(pres, cap, limits);
  GradedAlgebraTable dual = build_algebra(quadratic_dual(pres), cap, limits);
  std::vector<long long> c(n_max + 1, 0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      long long term = static_cast<long long>(dual.dim(static_cast<int>(k))) *
                       static_cast<long long>(a.dim(static_cast<int>(n - k)));
      c[n] += k % 2 == 0 ? term : -term;
    }
  }
  return c;
}

}  // namespace ukoszul

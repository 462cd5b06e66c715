#include "ukoszul/qalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ukoszul {

const char* to_string(Commutativity c) noexcept {
  switch (c) {
    case Commutativity::none: return "none";
    case Commutativity::graded_commutative: return "graded_commutative";
    case Commutativity::wedge_commutative: return "wedge_commutative";
  }
  return "none";
}

std::optional<Commutativity> parse_commutativity(std::string_view text) noexcept {
  if (text == "none") return Commutativity::none;
  if (text == "graded_commutative") return Commutativity::graded_commutative;
  if (text == "wedge_commutative") return Commutativity::wedge_commutative;
  return std::nullopt;
}

namespace {

bool contains_symmetrizers(const PrimeField& field, std::size_t d, const Subspace& omega) {
  Vector v(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      std::fill(v.begin(), v.end(), 0);
      v[pair_index(d, i, j)] = field.add(v[pair_index(d, i, j)], 1);
      v[pair_index(d, j, i)] = field.add(v[pair_index(d, j, i)], 1);
      if (!omega.contains(v)) return false;
    }
  }
  return true;
}

bool contains_squares(std::size_t d, const Subspace& omega) {
  Vector v(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    std::fill(v.begin(), v.end(), 0);
    v[pair_index(d, i, i)] = 1;
    if (!omega.contains(v)) return false;
  }
  return true;
}

}  // namespace

Commutativity detect_commutativity(const PrimeField& field, std::size_t d, const Subspace& omega) {
  if (!contains_symmetrizers(field, d, omega)) return Commutativity::none;
  if (field.p() == 2 && contains_squares(d, omega)) return Commutativity::wedge_commutative;
  return Commutativity::graded_commutative;
}

QuadraticPresentation::QuadraticPresentation(PrimeField field, std::size_t d, Subspace omega,
                                             Commutativity cls)
    : field_(field), d_(d), omega_(std::move(omega)), class_(cls) {
  if (omega_.ambient_dim() != d * d || !(omega_.field() == field_))
    throw InputError("relation space must live in F_p^(d*d)");
  if (cls == Commutativity::wedge_commutative && field.p() != 2)
    throw InputError("wedge_commutative requires p = 2");
  if (cls != Commutativity::none && !contains_symmetrizers(field_, d_, omega_))
    throw InputError(std::string("relations do not make the algebra ") + to_string(cls));
  if (cls == Commutativity::wedge_commutative && !contains_squares(d_, omega_))
    throw InputError("wedge_commutative requires every v(x)v in the relation space");
}

QuadraticPresentation QuadraticPresentation::with_detected_class(PrimeField field, std::size_t d,
                                                                 Subspace omega) {
  if (omega.ambient_dim() != d * d) throw InputError("relation space must live in F_p^(d*d)");
  Commutativity cls = detect_commutativity(field, d, omega);
  return QuadraticPresentation(field, d, std::move(omega), cls);
}

bool QuadraticPresentation::squares_vanish() const noexcept {
  return class_ == Commutativity::wedge_commutative ||
         (class_ == Commutativity::graded_commutative && field_.p() != 2);
}

// --- Graph ----------------------------------------------------------------------

Graph::Graph(std::size_t vertex_count, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : n_(vertex_count), adjacent_(vertex_count * vertex_count, false) {
  for (auto [a, b] : edges) {
    if (a >= n_ || b >= n_) throw InputError("edge endpoint out of range");
    if (a == b) throw InputError("loop at vertex " + std::to_string(a + 1));
    if (adjacent_[a * n_ + b]) {
      throw InputError("duplicate edge " + std::to_string(std::min(a, b) + 1) + "-" +
                       std::to_string(std::max(a, b) + 1));
    }
    adjacent_[a * n_ + b] = adjacent_[b * n_ + a] = true;
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::has_edge(std::size_t i, std::size_t j) const noexcept {
  return i < n_ && j < n_ && adjacent_[i * n_ + j];
}

Graph Graph::relabeled(std::span<const std::size_t> permutation) const {
  if (permutation.size() != n_) throw std::invalid_argument("relabeled: permutation size");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (auto [a, b] : edges_) e.emplace_back(permutation[a], permutation[b]);
  return Graph(n_, std::move(e));
}

// --- Constructors -----------------------------------------------------------

namespace {

Vector unit_pair(std::size_t d, std::size_t i, std::size_t j) {
  Vector v(d * d, 0);
  v[pair_index(d, i, j)] = 1;
  return v;
}

void add_exterior_relations(const PrimeField& field, std::size_t d, std::vector<Vector>& rows) {
  for (std::size_t i = 0; i < d; ++i) {
    rows.push_back(unit_pair(d, i, i));
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector v(d * d, 0);
      v[pair_index(d, i, j)] = 1;
      v[pair_index(d, j, i)] = 1;
      rows.push_back(std::move(v));
    }
  }
  (void)field;
}

QuadraticPresentation from_rows(const PrimeField& field, std::size_t d,
                                const std::vector<Vector>& rows) {
  return QuadraticPresentation::with_detected_class(field, d,
                                                    Subspace::span(field, d * d, rows));
}

}  // namespace

QuadraticPresentation standard_algebra(StandardKind kind, const PrimeField& field, std::size_t d) {
  std::vector<Vector> rows;
  switch (kind) {
    case StandardKind::tensor:
      break;
    case StandardKind::trivial:
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rows.push_back(unit_pair(d, i, j));
      break;
    case StandardKind::symmetric:
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
          Vector v(d * d, 0);
          v[pair_index(d, i, j)] = 1;
          v[pair_index(d, j, i)] = field.neg(1);
          rows.push_back(std::move(v));
        }
      }
      break;
    case StandardKind::exterior:
      add_exterior_relations(field, d, rows);
      break;
  }
  return from_rows(field, d, rows);
}

QuadraticPresentation demushkin_algebra(const PrimeField& field, std::size_t d) {
  if (d < 2 || d % 2 != 0) throw InputError("Demushkin algebra needs an even number d >= 2 of generators");
  std::vector<Vector> rows;
  add_exterior_relations(field, d, rows);
  // a_i a_{i+1} = a_1 a_2 for odd i; every other a_i a_j (i < j) vanishes.
  for (std::size_t i = 2; i + 1 < d; i += 2) {
    Vector v(d * d, 0);
    v[pair_index(d, 0, 1)] = 1;
    v[pair_index(d, i, i + 1)] = field.neg(1);
    rows.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (i % 2 == 0 && j == i + 1) continue;
      rows.push_back(unit_pair(d, i, j));
    }
  }
  return from_rows(field, d, rows);
}

QuadraticPresentation stanley_reisner(const Graph& graph, const PrimeField& field) {
  const std::size_t d = graph.vertex_count();
  std::vector<Vector> rows;
  add_exterior_relations(field, d, rows);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (graph.has_edge(i, j)) continue;
      rows.push_back(unit_pair(d, i, j));
      rows.push_back(unit_pair(d, j, i));
    }
  }
  return from_rows(field, d, rows);
}

QuadraticPresentation direct_product(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  if (!(a.field() == b.field())) throw InputError("direct product of algebras over different fields");
  const PrimeField& f = a.field();
  const std::size_t da = a.generators();
  const std::size_t db = b.generators();
  const std::size_t d = da + db;
  std::vector<Vector> rows;
  auto embed = [&](const Subspace& omega, std::size_t dim, std::size_t shift) {
    for (std::size_t r = 0; r < omega.dim(); ++r) {
      Vector v(d * d, 0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          v[pair_index(d, i + shift, j + shift)] = omega.basis()(r, pair_index(dim, i, j));
      rows.push_back(std::move(v));
    }
  };
  embed(a.omega(), da, 0);
  embed(b.omega(), db, da);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = da; j < d; ++j) {
      rows.push_back(unit_pair(d, i, j));
      rows.push_back(unit_pair(d, j, i));
    }
  }
  Commutativity cls = Commutativity::graded_commutative;
  if (a.commutativity() == Commutativity::none || b.commutativity() == Commutativity::none) {
    cls = Commutativity::none;
  } else if (a.commutativity() == Commutativity::wedge_commutative &&
             b.commutativity() == Commutativity::wedge_commutative) {
    cls = Commutativity::wedge_commutative;
  }
  return QuadraticPresentation(f, d, Subspace::span(f, d * d, rows), cls);
}

QuadraticPresentation quadratic_dual(const QuadraticPresentation& pres) {
  return QuadraticPresentation::with_detected_class(pres.field(), pres.generators(),
                                                    annihilator(pres.omega()));
}

// --- Table ------------------------------------------------------------------

void GradedAlgebraTable::multiply_accumulate(int m, std::span<const Residue> x, int n,
                                             std::span<const Residue> y,
                                             std::span<Residue> out) const noexcept {
  const PrimeField& f = field();
  if (m == 0) {
    axpy(f, out, x[0], y);
    return;
  }
  if (n == 0) {
    axpy(f, out, y[0], x);
    return;
  }
  const std::size_t dm = dims_[static_cast<std::size_t>(m)];
  const std::size_t dn = dims_[static_cast<std::size_t>(n)];
  for (std::size_t i = 0; i < dm; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dn; ++j) {
      if (y[j] == 0) continue;
      axpy(f, out, f.mul(x[i], y[j]), product(m, i, n, j));
    }
  }
}

Vector GradedAlgebraTable::multiply(int m, std::span<const Residue> x, int n,
                                    std::span<const Residue> y) const {
  if (m < 0 || n < 0 || m + n > cap()) throw std::invalid_argument("multiply: degree beyond cap");
  if (x.size() != dim(m) || y.size() != dim(n)) throw std::invalid_argument("multiply: dimension mismatch");
  Vector out(dim(m + n), 0);
  multiply_accumulate(m, x, n, y, out);
  return out;
}

namespace {

std::string monomial_label(std::span<const std::size_t> letters) {
  if (letters.empty()) return "1";
  std::string s;
  for (std::size_t k : letters) s += "a" + std::to_string(k + 1);
  return s;
}

// Right multiplication by generators: rm[u][k] = (basis u of A_{n-1}) * a_k in A_n.
using GeneratorAction = std::vector<std::vector<Vector>>;

struct Degree {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> words;  // one representative monomial per basis element
  GeneratorAction action;                       // from the previous degree into this one
};

void check_table_size(const std::vector<std::size_t>& dims, const Limits& limits) {
  const int cap = static_cast<int>(dims.size()) - 1;
  std::size_t total = 0;
  for (int m = 1; m <= cap; ++m)
    for (int n = 1; m + n <= cap; ++n)
      total += dims[static_cast<std::size_t>(m)] * dims[static_cast<std::size_t>(n)] *
               dims[static_cast<std::size_t>(m + n)];
  if (total > limits.max_table_entries)
    throw LimitError("multiplication table would hold " + std::to_string(total) +
                     " structure constants, above the limit " + std::to_string(limits.max_table_entries));
}

// Degreewise quotient A_n = (A_{n-1} (x) V) / image(A_{n-2} (x) Omega). The
// ordering of (u, k) pairs refines the lexicographic order of V^{(x)n}, so the
// surviving coordinates are exactly the non-pivot monomials of RREF(R_n) and the
// projection onto them is the same map.
std::vector<Degree> tensor_degrees(const QuadraticPresentation& pres, int cap) {
  const PrimeField& f = pres.field();
  const std::size_t d = pres.generators();
  std::vector<Degree> deg(static_cast<std::size_t>(cap) + 1);
  deg[0].dim = 1;
  deg[0].labels = {"1"};
  deg[0].words = {{}};
  if (cap >= 1) {
    Degree& one = deg[1];
    one.dim = d;
    one.action.assign(1, std::vector<Vector>(d, Vector(d, 0)));
    for (std::size_t k = 0; k < d; ++k) {
      one.action[0][k][k] = 1;
      one.words.push_back({k});
      one.labels.push_back(monomial_label(one.words.back()));
    }
  }
  for (int n = 2; n <= cap; ++n) {
    const Degree& prev = deg[static_cast<std::size_t>(n - 1)];
    const Degree& prev2 = deg[static_cast<std::size_t>(n - 2)];
    const std::size_t ambient = prev.dim * d;
    FpMatrix rel(f, 0, ambient);
    const Subspace& omega = pres.omega();
    for (std::size_t t = 0; t < prev2.dim; ++t) {
      for (std::size_t r = 0; r < omega.dim(); ++r) {
        auto row = rel.append_zero_row();
        auto w = omega.basis().row(r);
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t k = 0; k < d; ++k) {
            Residue c = w[pair_index(d, j, k)];
            if (c == 0) continue;
            // (x_t * a_j) (x) a_k
            const Vector& xj = prev.action[t][j];
            for (std::size_t u = 0; u < prev.dim; ++u) {
              if (xj[u] != 0) row[u * d + k] = f.add(row[u * d + k], f.mul(c, xj[u]));
            }
          }
        }
      }
    }
    Subspace relations = Subspace::span(std::move(rel));
    std::vector<std::size_t> keep = relations.non_pivots();
    std::vector<std::size_t> position(ambient, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = i;

    Degree& cur = deg[static_cast<std::size_t>(n)];
    cur.dim = keep.size();
    for (std::size_t c : keep) {
      std::vector<std::size_t> word = prev.words[c / d];
      word.push_back(c % d);
      cur.labels.push_back(monomial_label(word));
      cur.words.push_back(std::move(word));
    }
    cur.action.assign(prev.dim, std::vector<Vector>(d));
    Vector e(ambient, 0);
    for (std::size_t u = 0; u < prev.dim; ++u) {
      for (std::size_t k = 0; k < d; ++k) {
        std::fill(e.begin(), e.end(), 0);
        e[u * d + k] = 1;
        relations.reduce_in_place(e);
        Vector img(cur.dim, 0);
        for (std::size_t c = 0; c < ambient; ++c)
          if (e[c] != 0) img[position[c]] = e[c];
        cur.action[u][k] = std::move(img);
      }
    }
  }
  return deg;
}

// Sorted subsets of {0..d-1} as bit masks, with signed wedge products.
struct ExteriorCoordinates {
  std::vector<std::vector<std::uint64_t>> subsets;                   // per degree, lex order
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> index;  // per degree

  ExteriorCoordinates(std::size_t d, int cap) {
    subsets.resize(static_cast<std::size_t>(cap) + 1);
    index.resize(static_cast<std::size_t>(cap) + 1);
    for (int n = 0; n <= cap && static_cast<std::size_t>(n) <= d; ++n) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      while (true) {
        std::uint64_t mask = 0;
        for (std::size_t i : idx) mask |= std::uint64_t{1} << i;
        index[static_cast<std::size_t>(n)][mask] = subsets[static_cast<std::size_t>(n)].size();
        subsets[static_cast<std::size_t>(n)].push_back(mask);
        std::size_t i = idx.size();
        while (i > 0 && idx[i - 1] == d - idx.size() + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }

  // e_S ^ e_T = sign * e_{S u T}; sign is 0 when S and T meet.
  static int wedge_sign(std::uint64_t s, std::uint64_t t) {
    if (s & t) return 0;
    int inversions = 0;
    for (std::uint64_t rest = t; rest; rest &= rest - 1) {
      std::uint64_t bit = rest & (~rest + 1);
      inversions += __builtin_popcountll(s & ~((bit << 1) - 1));
    }
    return inversions % 2 == 0 ? 1 : -1;
  }
};

std::string subset_label(std::uint64_t mask) {
  std::vector<std::size_t> letters;
  for (std::size_t i = 0; i < 64; ++i)
    if (mask >> i & 1) letters.push_back(i);
  return monomial_label(letters);
}

}  // namespace

GradedAlgebraTable build_algebra(const QuadraticPresentation& pres, int cap, const Limits& limits,
                                 Construction route) {
  if (cap < 0) throw InputError("degree cap must be non-negative");
  const PrimeField& f = pres.field();
  const std::size_t d = pres.generators();
  if (route == Construction::exterior && !pres.squares_vanish())
    throw InputError("exterior coordinates need an algebra with vanishing squares");
  if (route == Construction::automatic)
    route = pres.squares_vanish() && d <= 64 ? Construction::exterior : Construction::tensor;

  GradedAlgebraTable table(pres);
  table.route_ = route;

  if (route == Construction::tensor) {
    std::size_t power = 1;
    for (int n = 0; n < cap; ++n) {
      if (d != 0 && power > limits.workspace / d) {
        power = limits.workspace + 1;
        break;
      }
      power *= d;
    }
    if (power > limits.workspace)
      throw LimitError("tensor workspace d^cap exceeds limit " + std::to_string(limits.workspace));
    std::vector<Degree> deg = tensor_degrees(pres, cap);
    for (auto& g : deg) {
      table.dims_.push_back(g.dim);
      table.labels_.push_back(g.labels);
    }
    check_table_size(table.dims_, limits);
    table.mult_.assign(static_cast<std::size_t>(cap) + 1,
                       std::vector<std::vector<Residue>>(static_cast<std::size_t>(cap) + 1));
    // x_i * (word of y_j) by successive right multiplication with generators.
    for (int m = 1; m <= cap; ++m) {
      for (int n = 1; m + n <= cap; ++n) {
        const std::size_t dm = table.dims_[static_cast<std::size_t>(m)];
        const std::size_t dn = table.dims_[static_cast<std::size_t>(n)];
        const std::size_t out = table.dims_[static_cast<std::size_t>(m + n)];
        auto& t = table.mult_[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
        t.assign(dm * dn * out, 0);
        for (std::size_t i = 0; i < dm; ++i) {
          for (std::size_t j = 0; j < dn; ++j) {
            Vector v(dm, 0);
            v[i] = 1;
            int level = m;
            for (std::size_t letter : deg[static_cast<std::size_t>(n)].words[j]) {
              const Degree& next = deg[static_cast<std::size_t>(level + 1)];
              Vector w(next.dim, 0);
              for (std::size_t u = 0; u < v.size(); ++u)
                if (v[u] != 0) axpy(f, w, v[u], next.action[u][letter]);
              v = std::move(w);
              ++level;
            }
            std::copy(v.begin(), v.end(), t.begin() + static_cast<std::ptrdiff_t>((i * dn + j) * out));
          }
        }
      }
    }
    return table;
  }

  // Exterior coordinates: A = Lambda(V) / (K) with K the image of Omega in Lambda_2.
  ExteriorCoordinates coords(d, cap);
  for (int n = 0; n <= cap; ++n) {
    if (coords.subsets[static_cast<std::size_t>(n)].size() > limits.workspace)
      throw LimitError("exterior workspace C(d, n) exceeds limit " + std::to_string(limits.workspace));
  }
  std::vector<Subspace> relations;
  std::vector<std::vector<std::size_t>> keep;
  for (int n = 0; n <= cap; ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const std::size_t ambient = coords.subsets[nu].size();
    FpMatrix rel(f, 0, ambient);
    if (n == 2) {
      const Subspace& omega = pres.omega();
      for (std::size_t r = 0; r < omega.dim(); ++r) {
        auto row = rel.append_zero_row();
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            Residue c = omega.basis()(r, pair_index(d, i, j));
            if (c == 0 || i == j) continue;
            std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
            std::size_t col = coords.index[2].at(mask);
            row[col] = i < j ? f.add(row[col], c) : f.sub(row[col], c);
          }
        }
      }
    } else if (n >= 3) {
      const Subspace& below = relations[nu - 1];
      for (std::size_t r = 0; r < below.dim(); ++r) {
        for (std::size_t k = 0; k < d; ++k) {
          auto row = rel.append_zero_row();
          std::uint64_t gen = std::uint64_t{1} << k;
          for (std::size_t c = 0; c < below.ambient_dim(); ++c) {
            Residue x = below.basis()(r, c);
            if (x == 0) continue;
            std::uint64_t s = coords.subsets[nu - 1][c];
            int sign = ExteriorCoordinates::wedge_sign(s, gen);
            if (sign == 0) continue;
            std::size_t col = coords.index[nu].at(s | gen);
            row[col] = sign > 0 ? f.add(row[col], x) : f.sub(row[col], x);
          }
        }
      }
    }
    relations.push_back(Subspace::span(std::move(rel)));
    keep.push_back(relations.back().non_pivots());
    table.dims_.push_back(keep.back().size());
    std::vector<std::string> labels;
    for (std::size_t c : keep.back()) labels.push_back(subset_label(coords.subsets[nu][c]));
    table.labels_.push_back(std::move(labels));
  }
  check_table_size(table.dims_, limits);
  table.mult_.assign(static_cast<std::size_t>(cap) + 1,
                     std::vector<std::vector<Residue>>(static_cast<std::size_t>(cap) + 1));
  for (int m = 1; m <= cap; ++m) {
    for (int n = 1; m + n <= cap; ++n) {
      const auto mu = static_cast<std::size_t>(m);
      const auto nu = static_cast<std::size_t>(n);
      const auto su = static_cast<std::size_t>(m + n);
      const std::size_t dm = table.dims_[mu];
      const std::size_t dn = table.dims_[nu];
      const std::size_t out = table.dims_[su];
      auto& t = table.mult_[mu][nu];
      t.assign(dm * dn * out, 0);
      Vector e(coords.subsets[su].size(), 0);
      std::vector<std::size_t> position(e.size(), 0);
      for (std::size_t i = 0; i < keep[su].size(); ++i) position[keep[su][i]] = i;
      for (std::size_t i = 0; i < dm; ++i) {
        for (std::size_t j = 0; j < dn; ++j) {
          std::uint64_t s = coords.subsets[mu][keep[mu][i]];
          std::uint64_t u = coords.subsets[nu][keep[nu][j]];
          int sign = ExteriorCoordinates::wedge_sign(s, u);
          if (sign == 0) continue;
          std::fill(e.begin(), e.end(), 0);
          e[coords.index[su].at(s | u)] = sign > 0 ? 1 : f.neg(1);
          relations[su].reduce_in_place(e);
          auto dst = t.begin() + static_cast<std::ptrdiff_t>((i * dn + j) * out);
          for (std::size_t c = 0; c < e.size(); ++c)
            if (e[c] != 0) dst[static_cast<std::ptrdiff_t>(position[c])] = e[c];
        }
      }
    }
  }
  return table;
}

std::vector<std::size_t> hilbert_series(const GradedAlgebraTable& table) { return table.dims(); }

std::optional<std::string> check_table_laws(const GradedAlgebraTable& table) {
  const PrimeField& f = table.field();
  const int cap = table.cap();
  auto unit = [](std::size_t dim, std::size_t i) {
    Vector v(dim, 0);
    v[i] = 1;
    return v;
  };
  Vector one{1};
  for (int m = 0; m <= cap; ++m) {
    for (std::size_t i = 0; i < table.dim(m); ++i) {
      Vector x = unit(table.dim(m), i);
      if (table.multiply(0, one, m, x) != x || table.multiply(m, x, 0, one) != x) {
        std::ostringstream os;
        os << "unit law fails on basis element " << i << " of degree " << m;
        return os.str();
      }
    }
  }
  for (int a = 1; a <= cap; ++a) {
    for (int b = 1; a + b <= cap; ++b) {
      for (int c = 1; a + b + c <= cap; ++c) {
        for (std::size_t i = 0; i < table.dim(a); ++i) {
          Vector x = unit(table.dim(a), i);
          for (std::size_t j = 0; j < table.dim(b); ++j) {
            Vector y = unit(table.dim(b), j);
            Vector xy = table.multiply(a, x, b, y);
            for (std::size_t k = 0; k < table.dim(c); ++k) {
              Vector z = unit(table.dim(c), k);
              if (table.multiply(a + b, xy, c, z) != table.multiply(a, x, b + c, table.multiply(b, y, c, z))) {
                std::ostringstream os;
                os << "associativity fails in degrees (" << a << "," << b << "," << c << ")";
                return os.str();
              }
            }
          }
        }
      }
    }
  }
  if (table.commutativity() == Commutativity::none) return std::nullopt;
  for (int m = 1; m <= cap; ++m) {
    for (int n = 1; m + n <= cap; ++n) {
      for (std::size_t i = 0; i < table.dim(m); ++i) {
        for (std::size_t j = 0; j < table.dim(n); ++j) {
          Vector x = unit(table.dim(m), i);
          Vector y = unit(table.dim(n), j);
          Vector xy = table.multiply(m, x, n, y);
          Vector yx = table.multiply(n, y, m, x);
          if ((m * n) % 2 == 1)
            for (auto& v : xy) v = f.neg(v);
          if (xy != yx) {
            std::ostringstream os;
            os << "graded commutativity fails in degrees (" << m << "," << n << ")";
            return os.str();
          }
        }
      }
    }
  }
  if (table.presentation().squares_vanish() && cap >= 2) {
    // Squares of all degree-one elements, not only basis elements.
    const std::size_t d = table.dim(1);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        Vector x(d, 0);
        x[i] = 1;
        x[j] = 1;
        Vector sq = table.multiply(1, x, 1, x);
        if (std::any_of(sq.begin(), sq.end(), [](Residue r) { return r != 0; }))
          return std::string("square of a degree-one element is nonzero");
      }
    }
  }
  return std::nullopt;
}

}  // namespace ukoszul

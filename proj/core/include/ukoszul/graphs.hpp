#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ukoszul/ideals.hpp"
#include "ukoszul/qalg.hpp"

namespace ukoszul {

/// Edge-list format: "<vertex count>;" followed by comma-separated "i-j" pairs with
/// 1-based vertices, e.g. "4; 1-2,2-3,3-4". Whitespace is free. Throws ParseError
/// on syntax errors, loops, out-of-range vertices and duplicate edges.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& graph);

/// Number of n-cliques for n = 0..vertex_count (the empty clique counts once).
std::vector<std::size_t> clique_counts(const Graph& graph);
std::size_t clique_number(const Graph& graph);

struct DiagonalVerdict {
  bool holds = true;
  /// First (lexicographic, 0-based) 3-edge path v1 v2 v3 v4 without a diagonal.
  std::optional<std::array<std::size_t, 4>> witness;
};

DiagonalVerdict diagonal_property(const Graph& graph);

/// Graph number `mask` on n vertices: bit e selects the e-th pair in lexicographic order.
Graph graph_from_mask(std::size_t n, std::uint64_t mask);

struct CrosscheckOptions {
  unsigned jobs = 1;
  /// Evaluate one representative per isomorphism class and reuse its verdicts.
  bool dedup_isomorphic = false;
  std::size_t vertex_limit = 5;
  Limits limits{};
};

struct CrosscheckDisagreement {
  std::uint64_t mask;
  bool universally_koszul;
  bool diagonal;
};

struct CrosscheckReport {
  std::size_t vertices = 0;
  unsigned p = 2;
  std::size_t graphs = 0;
  std::size_t uk_holds = 0;
  std::size_t diagonal_holds = 0;
  std::vector<CrosscheckDisagreement> disagreements;
};

/// Universal Koszulity of the exterior Stanley-Reisner algebra against the
/// diagonal property for every edge subset on `vertices` vertices. Each algebra is
/// built with cap = clique number + 1, so every verdict is exact.
CrosscheckReport uk_diagonal_crosscheck(std::size_t vertices, const PrimeField& field,
                                        const CrosscheckOptions& options = {});

}  // namespace ukoszul

#include "ukoszul/graphs.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <thread>

namespace ukoszul {

namespace {

class GraphParser {
 public:
  explicit GraphParser(std::string_view text) : text_(text) {}

  Graph parse() {
    std::size_t n = number();
    expect(';');
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<bool> seen(n * n, false);
    skip_space();
    if (pos_ < text_.size()) {
      while (true) {
        const std::size_t at = position();
        std::size_t a = number();
        expect('-');
        std::size_t b = number();
        if (a == 0 || b == 0 || a > n || b > n)
          throw ParseError("vertex index out of range 1.." + std::to_string(n), at);
        if (a == b) throw ParseError("loop at vertex " + std::to_string(a), at);
        if (seen[(a - 1) * n + (b - 1)])
          throw ParseError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b), at);
        seen[(a - 1) * n + (b - 1)] = seen[(b - 1) * n + (a - 1)] = true;
        edges.emplace_back(a - 1, b - 1);
        skip_space();
        if (pos_ == text_.size()) break;
        expect(',');
      }
    }
    return Graph(n, std::move(edges));
  }

 private:
  std::size_t position() {
    skip_space();
    return pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::size_t number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    (void)ptr;
    if (pos_ == start || ec != std::errc{}) throw ParseError("expected a number", start);
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph parse_graph(std::string_view text) { return GraphParser(text).parse(); }

std::string format_graph(const Graph& graph) {
  std::string s = std::to_string(graph.vertex_count()) + ";";
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    s += e == 0 ? " " : ",";
    s += std::to_string(graph.edges()[e].first + 1) + "-" + std::to_string(graph.edges()[e].second + 1);
  }
  return s;
}

std::vector<std::size_t> clique_counts(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> counts(n + 1, 0);
  // Extend cliques by vertices larger than their maximum.
  std::vector<std::vector<std::size_t>> frontier{{}};
  counts[0] = 1;
  for (std::size_t size = 1; size <= n && !frontier.empty(); ++size) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : frontier) {
      std::size_t from = c.empty() ? 0 : c.back() + 1;
      for (std::size_t v = from; v < n; ++v) {
        if (std::all_of(c.begin(), c.end(), [&](std::size_t u) { return graph.has_edge(u, v); })) {
          auto grown = c;
          grown.push_back(v);
          next.push_back(std::move(grown));
        }
      }
    }
    counts[size] = next.size();
    frontier = std::move(next);
  }
  return counts;
}

std::size_t clique_number(const Graph& graph) {
  auto counts = clique_counts(graph);
  std::size_t w = 0;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) w = k;
  return w;
}

DiagonalVerdict diagonal_property(const Graph& g) {
  const std::size_t n = g.vertex_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !g.has_edge(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b || !g.has_edge(b, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b || d == c || !g.has_edge(c, d)) continue;
          if (!g.has_edge(a, c) && !g.has_edge(b, d)) return {false, std::array{a, b, c, d}};
        }
      }
    }
  return {true, std::nullopt};
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++bit)
      if (mask >> bit & 1) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

namespace {

std::uint64_t mask_of(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::uint64_t mask = 0;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++bit)
      if (g.has_edge(i, j)) mask |= std::uint64_t{1} << bit;
  return mask;
}

std::uint64_t canonical_mask(const Graph& g) {
  std::vector<std::size_t> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = mask_of(g);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, mask_of(g.relabeled(perm)));
  return best;
}

struct GraphVerdict {
  bool uk = false;
  bool diagonal = false;
};

GraphVerdict evaluate(const Graph& g, const PrimeField& field, const Limits& limits) {
  GraphVerdict v;
  v.diagonal = diagonal_property(g).holds;
  const int cap = static_cast<int>(clique_number(g)) + 1;
  GradedAlgebraTable table = build_algebra(stanley_reisner(g, field), cap, limits);
  v.uk = universally_koszul(table, UkOptions{1, limits}).holds;
  return v;
}

}  // namespace

CrosscheckReport uk_diagonal_crosscheck(std::size_t vertices, const PrimeField& field,
                                        const CrosscheckOptions& options) {
  if (vertices > options.vertex_limit)
    throw LimitError("crosscheck over " + std::to_string(vertices) + " vertices exceeds the limit " +
                     std::to_string(options.vertex_limit));
  const std::size_t pairs = vertices * (vertices - (vertices > 0 ? 1 : 0)) / 2;
  const std::uint64_t count = std::uint64_t{1} << pairs;

  // Representatives to evaluate, in mask order.
  std::vector<std::uint64_t> representative(count);
  std::vector<std::uint64_t> work;
  if (options.dedup_isomorphic) {
    std::map<std::uint64_t, bool> seen;
    for (std::uint64_t m = 0; m < count; ++m) {
      representative[m] = canonical_mask(graph_from_mask(vertices, m));
      if (seen.emplace(representative[m], true).second) work.push_back(representative[m]);
    }
  } else {
    for (std::uint64_t m = 0; m < count; ++m) representative[m] = m;
    work.assign(representative.begin(), representative.end());
  }

  std::vector<GraphVerdict> results(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= work.size()) break;
      results[i] = evaluate(graph_from_mask(vertices, work[i]), field, options.limits);
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::map<std::uint64_t, GraphVerdict> by_mask;
  for (std::size_t i = 0; i < work.size(); ++i) by_mask[work[i]] = results[i];

  CrosscheckReport report;
  report.vertices = vertices;
  report.p = field.p();
  report.graphs = count;
  for (std::uint64_t m = 0; m < count; ++m) {
    const GraphVerdict& v = by_mask.at(representative[m]);
    report.uk_holds += v.uk;
    report.diagonal_holds += v.diagonal;
    if (v.uk != v.diagonal) report.disagreements.push_back({m, v.uk, v.diagonal});
  }
  return report;
}

}  // namespace ukoszul

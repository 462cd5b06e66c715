#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <random>
#include <sstream>

#include "ukoszul/errors.hpp"
#include "ukoszul/formats.hpp"
#include "ukoszul/graphs.hpp"
#include "ukoszul/group.hpp"
#include "ukoszul/ideals.hpp"
#include "ukoszul/qalg.hpp"
#include "ukoszul/resolve.hpp"

namespace ukoszul::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::optional<unsigned> p;
  int cap = 4;
  std::string window;  // empty: (3, cap - 1)
  unsigned jobs = 1;
  std::string out;
  std::string format = "text";
  std::string config;
  std::vector<std::string> limit_overrides;
  bool timing = false;

  std::size_t max_vertices = 0;
  bool dedup = false;
  std::size_t count = 200;
  std::uint64_t seed = 1;
  std::string dims = "3,4,5";
  std::string primes = "2,3";
  std::size_t relators = 2;
};

struct Outcome {
  int code = holds;
  Json result;
  Json input;  // null when the command takes no file
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw InputError(std::string("bad ") + what + " list '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw InputError(std::string("empty ") + what + " list");
  return values;
}

Json vector_json(std::span<const Residue> v) {
  Json a = Json::array();
  for (Residue x : v) a.push_back(x);
  return a;
}

Json subspace_json(const Subspace& s) {
  Json a = Json::array();
  for (std::size_t r = 0; r < s.dim(); ++r) a.push_back(vector_json(s.basis().row(r)));
  return a;
}

// Degree-one element as "a1 + 2a3".
std::string linear_text(std::span<const Residue> v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (!s.empty()) s += " + ";
    if (v[k] != 1) s += std::to_string(v[k]);
    s += "a" + std::to_string(k + 1);
  }
  return s.empty() ? "0" : s;
}

Json dims_json(const std::vector<std::size_t>& dims) { return Json(dims); }

class Session {
 public:
  Session(Options opt, Limits limits) : opt_(std::move(opt)), limits_(limits) {}

  void check_cap(int cap) const {
    if (cap < 1) throw InputError("--cap must be at least 1");
    if (cap > limits_.max_cap)
      throw LimitError("cap " + std::to_string(cap) + " exceeds the limit " + std::to_string(limits_.max_cap));
  }

  std::pair<std::size_t, std::size_t> window() const {
    if (opt_.window.empty()) return {3, static_cast<std::size_t>(std::max(opt_.cap - 1, 1))};
    auto w = parse_list(opt_.window, "window");
    if (w.size() != 2) throw InputError("--window expects h,n");
    return {w[0], w[1]};
  }

  std::string load(Outcome& o) const {
    std::string text = read_file(opt_.file);
    o.input = Json{{"file", opt_.file}, {"sha256", sha256_hex(text)}};
    return text;
  }

  void check_p(unsigned file_p) const {
    if (opt_.p && *opt_.p != file_p)
      throw InputError("--p " + std::to_string(*opt_.p) + " conflicts with p = " + std::to_string(file_p) +
                       " in the input file");
  }

  PrimeField flag_field(unsigned fallback) const {
    unsigned p = opt_.p.value_or(fallback);
    if (!is_prime(p)) throw InputError("--p must be prime");
    if (p > limits_.max_p)
      throw LimitError("p = " + std::to_string(p) + " exceeds the limit " + std::to_string(limits_.max_p));
    return PrimeField(p);
  }

  QuadraticPresentation algebra_input(Outcome& o) const {
    AlgebraDescription desc = parse_algebra(load(o), limits_);
    check_p(desc.presentation.field().p());
    return desc.presentation;
  }

  GroupPresentation group_input(Outcome& o) const {
    GroupPresentation pres = parse_presentation(load(o), limits_);
    check_p(pres.field.p());
    return pres;
  }

  Graph graph_input(Outcome& o, std::optional<PrimeField>& field) const {
    const std::string text = load(o);
    if (text.find('=') != std::string::npos) {
      AlgebraDescription desc = parse_algebra(text, limits_);
      if (!desc.graph) throw InputError("algebra description has no 'graph =' line");
      check_p(desc.presentation.field().p());
      field = desc.presentation.field();
      return *desc.graph;
    }
    // Edge-list files may carry '#' comments; blanking them keeps offsets.
    std::string stripped = text;
    for (std::size_t h = stripped.find('#'); h != std::string::npos; h = stripped.find('#', h)) {
      while (h < stripped.size() && stripped[h] != '\n') stripped[h++] = ' ';
    }
    Graph g = parse_graph(stripped);
    if (g.vertex_count() > limits_.max_enum_dim)
      throw LimitError("graph has " + std::to_string(g.vertex_count()) + " vertices, above the limit " +
                       std::to_string(limits_.max_enum_dim));
    field = flag_field(2);
    return g;
  }

  Json uk_json(const UkVerdict& v) const {
    Json j;
    j["holds"] = v.holds;
    j["exact"] = v.exact;
    j["ideals_examined"] = v.ideals;
    if (v.holds) {
      j["pairs_examined"] = v.pairs;
      j["witness"] = nullptr;
    } else {
      const UkWitness& w = *v.witness;
      Json gens = Json::array();
      for (std::size_t r = 0; r < w.ideal_generators.dim(); ++r)
        gens.push_back(linear_text(w.ideal_generators.basis().row(r)));
      j["witness"] = Json{{"ideal_generators", subspace_json(w.ideal_generators)},
                          {"ideal_generators_text", gens},
                          {"b", vector_json(w.b)},
                          {"b_text", linear_text(w.b)},
                          {"colon_dims", w.colon_dims},
                          {"generated_by_degree_one_dims", w.generated_dims}};
    }
    return j;
  }

  // algebra ...

  Outcome algebra_build() const {
    Outcome o;
    check_cap(opt_.cap);
    QuadraticPresentation pres = algebra_input(o);
    GradedAlgebraTable t = build_algebra(pres, opt_.cap, limits_);
    Json labels = Json::array();
    for (int n = 0; n <= t.cap(); ++n) labels.push_back(t.labels(n));
    auto laws = check_table_laws(t);
    o.result = Json{{"p", pres.field().p()},
                    {"generators", pres.generators()},
                    {"class", to_string(pres.commutativity())},
                    {"relations", pres.omega().dim()},
                    {"cap", t.cap()},
                    {"construction", t.construction() == Construction::exterior ? "exterior" : "tensor"},
                    {"dims", dims_json(t.dims())},
                    {"basis", labels},
                    {"laws_hold", !laws.has_value()},
                    {"witness", laws ? Json(*laws) : Json(nullptr)}};
    o.code = laws ? fails : holds;
    return o;
  }

  Outcome algebra_hilbert() const {
    Outcome o;
    check_cap(opt_.cap);
    QuadraticPresentation pres = algebra_input(o);
    GradedAlgebraTable t = build_algebra(pres, opt_.cap, limits_);
    GradedAlgebraTable dual = build_algebra(quadratic_dual(pres), opt_.cap, limits_);
    std::vector<long long> c = hilbert_product_check(pres, static_cast<std::size_t>(opt_.cap), limits_);
    bool numerical = c[0] == 1 && std::all_of(c.begin() + 1, c.end(), [](long long x) { return x == 0; });
    o.result = Json{{"cap", opt_.cap},
                    {"dims", dims_json(hilbert_series(t))},
                    {"dual_dims", dims_json(hilbert_series(dual))},
                    {"product", c},
                    {"numerically_koszul", numerical}};
    return o;
  }

  Outcome algebra_dual() const {
    Outcome o;
    QuadraticPresentation pres = algebra_input(o);
    QuadraticPresentation dual = quadratic_dual(pres);
    o.result = Json{{"omega_dim", pres.omega().dim()},
                    {"dual_omega_dim", dual.omega().dim()},
                    {"dual_class", to_string(dual.commutativity())},
                    {"dual_relations", subspace_json(dual.omega())},
                    {"dual_description", format_algebra(dual)}};
    return o;
  }

  Outcome algebra_uk() const {
    Outcome o;
    check_cap(opt_.cap);
    QuadraticPresentation pres = algebra_input(o);
    GradedAlgebraTable t = build_algebra(pres, opt_.cap, limits_);
    UkVerdict v = universally_koszul(t, UkOptions{opt_.jobs, limits_});
    o.result = Json{{"dims", dims_json(t.dims())}, {"universally_koszul", uk_json(v)}};
    o.code = v.holds ? holds : fails;
    return o;
  }

  Outcome algebra_betti() const {
    Outcome o;
    auto [h, n] = window();
    const int cap = std::max(opt_.cap, static_cast<int>(n));
    check_cap(cap);
    QuadraticPresentation pres = algebra_input(o);
    GradedAlgebraTable t = build_algebra(pres, cap, limits_);
    BettiTable b = bigraded_betti(t, h, n);
    Json witness = nullptr;
    for (std::size_t i = 0; i <= h && witness.is_null(); ++i)
      for (std::size_t j = 0; j <= n && witness.is_null(); ++j)
        if (i != j && b.at(i, j) != 0) witness = Json{{"homological", i}, {"internal", j}, {"betti", b.at(i, j)}};
    o.result = Json{{"window", {h, n}},
                    {"betti", b.entries},
                    {"window_koszul", witness.is_null()},
                    {"witness", witness}};
    o.code = witness.is_null() ? holds : fails;
    return o;
  }

  // group ...

  Outcome group_parse() const {
    Outcome o;
    GroupPresentation pres = group_input(o);
    Json words = Json::array();
    for (const Word& w : pres.relators) words.push_back(w.to_string());
    o.result = Json{{"p", pres.field.p()}, {"generators", pres.generators}, {"relators", words}};
    return o;
  }

  Outcome group_coeffs() const {
    Outcome o;
    GroupPresentation pres = group_input(o);
    Json list = Json::array();
    for (const RelationCoefficients& c : relation_coefficients(pres)) {
      Json m = Json::array();
      for (std::size_t i = 0; i < c.matrix.rows(); ++i) m.push_back(vector_json(c.matrix.row(i)));
      list.push_back(m);
    }
    o.result = Json{{"p", pres.field.p()}, {"generators", pres.generators}, {"coefficients", list}};
    return o;
  }

  Outcome group_qdef() const {
    Outcome o;
    GroupPresentation pres = group_input(o);
    QdefVerdict q = quadratically_defined(pres);
    o.result = Json{{"quadratically_defined", q.holds}, {"reason", q.reason}};
    o.code = q.holds ? holds : fails;
    return o;
  }

  Outcome group_cohomology() const {
    Outcome o;
    check_cap(opt_.cap);
    GroupPresentation pres = group_input(o);
    CohomologyAlgebra h = cohomology_algebra(pres);
    GradedAlgebraTable t = build_algebra(h.presentation, opt_.cap, limits_);
    o.result = Json{{"relators", h.relations},
                    {"verified", h.verified},
                    {"class", to_string(h.presentation.commutativity())},
                    {"dims", dims_json(t.dims())},
                    {"description", format_algebra(h.presentation)}};
    return o;
  }

  Outcome group_uk() const {
    Outcome o;
    check_cap(opt_.cap);
    GroupPresentation pres = group_input(o);
    CohomologyAlgebra h = cohomology_algebra(pres);
    GradedAlgebraTable t = build_algebra(h.presentation, opt_.cap, limits_);
    UkVerdict v = universally_koszul(t, UkOptions{opt_.jobs, limits_});
    o.result = Json{{"relators", h.relations},
                    {"verified", h.verified},
                    {"dims", dims_json(t.dims())},
                    {"universally_koszul", uk_json(v)}};
    o.code = v.holds ? holds : fails;
    return o;
  }

  Outcome group_sweep() const {
    Outcome o;
    check_cap(opt_.cap);
    const auto dims = parse_list(opt_.dims, "dims");
    const auto primes = parse_list(opt_.primes, "primes");
    for (std::size_t d : dims) {
      if (d == 0) throw InputError("sweep dimensions must be positive");
      if (d > limits_.max_enum_dim)
        throw LimitError("d = " + std::to_string(d) + " exceeds the limit " + std::to_string(limits_.max_enum_dim));
    }
    for (std::size_t p : primes) {
      if (!is_prime(static_cast<unsigned>(p))) throw InputError("sweep primes must be prime");
      if (p > limits_.max_p) throw LimitError("p = " + std::to_string(p) + " exceeds the limit");
    }
    Json cases = Json::array();
    std::size_t uk_holds = 0, exact = 0, top_vanishing = 0;
    Json failures = Json::array();
    for (std::size_t i = 0; i < opt_.count; ++i) {
      const std::size_t d = dims[i % dims.size()];
      const PrimeField f(static_cast<unsigned>(primes[(i / dims.size()) % primes.size()]));
      std::seed_seq seq{static_cast<std::uint32_t>(opt_.seed), static_cast<std::uint32_t>(opt_.seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      GroupPresentation pres = random_quadratically_defined(f, d, opt_.relators, rng);
      CohomologyAlgebra h = cohomology_algebra(pres);
      GradedAlgebraTable t = build_algebra(h.presentation, opt_.cap, limits_);
      UkVerdict v = universally_koszul(t, UkOptions{opt_.jobs, limits_});
      Json words = Json::array();
      for (const Word& w : pres.relators) words.push_back(w.to_string());
      const bool vanishing = t.dim(3) == 0;
      uk_holds += v.holds;
      exact += v.exact;
      top_vanishing += vanishing;
      if (!v.holds || !v.exact) failures.push_back(i);
      cases.push_back(Json{{"index", i},
                           {"p", f.p()},
                           {"generators", d},
                           {"relators", words},
                           {"dims", dims_json(t.dims())},
                           {"universally_koszul", v.holds},
                           {"exact", v.exact}});
    }
    o.result = Json{{"count", opt_.count},
                    {"seed", opt_.seed},
                    {"relators_per_group", opt_.relators},
                    {"uk_holds", uk_holds},
                    {"exact", exact},
                    {"degree3_vanishes", top_vanishing},
                    {"failures", failures},
                    {"cases", cases}};
    o.code = failures.empty() ? holds : fails;
    return o;
  }

  // graph ...

  Outcome graph_diagonal() const {
    Outcome o;
    std::optional<PrimeField> f;
    Graph g = graph_input(o, f);
    DiagonalVerdict v = diagonal_property(g);
    Json witness = nullptr;
    if (v.witness) {
      witness = Json::array();
      for (std::size_t x : *v.witness) witness.push_back(x + 1);
    }
    o.result = Json{{"graph", format_graph(g)}, {"diagonal_property", v.holds}, {"witness", witness}};
    o.code = v.holds ? holds : fails;
    return o;
  }

  Outcome graph_algebra() const {
    Outcome o;
    std::optional<PrimeField> f;
    Graph g = graph_input(o, f);
    const auto counts = clique_counts(g);
    const int cap = static_cast<int>(clique_number(g)) + 1;
    QuadraticPresentation pres = stanley_reisner(g, *f);
    GradedAlgebraTable t = build_algebra(pres, cap, limits_);
    o.result = Json{{"graph", format_graph(g)},
                    {"p", f->p()},
                    {"cap", cap},
                    {"dims", dims_json(t.dims())},
                    {"clique_counts", counts},
                    {"description", format_algebra(pres)}};
    return o;
  }

  Outcome graph_crosscheck() const {
    Outcome o;
    const PrimeField f = flag_field(2);
    CrosscheckOptions c;
    c.jobs = opt_.jobs;
    c.dedup_isomorphic = opt_.dedup;
    c.limits = limits_;
    CrosscheckReport r = uk_diagonal_crosscheck(opt_.max_vertices, f, c);
    Json dis = Json::array();
    for (const auto& x : r.disagreements)
      dis.push_back(Json{{"graph", format_graph(graph_from_mask(r.vertices, x.mask))},
                         {"universally_koszul", x.universally_koszul},
                         {"diagonal_property", x.diagonal}});
    o.result = Json{{"vertices", r.vertices},
                    {"p", r.p},
                    {"graphs", r.graphs},
                    {"uk_holds", r.uk_holds},
                    {"diagonal_holds", r.diagonal_holds},
                    {"disagreements", dis}};
    o.code = r.disagreements.empty() ? holds : fails;
    return o;
  }

 private:
  Options opt_;
  Limits limits_;
};

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }
bool is_flat(const Json& j) {
  return is_scalar(j) || (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return is_scalar(x); }));
}

std::string flat_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) return j.dump();
  std::string s = "[";
  for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + flat_text(j[k]);
  return s + "]";
}

void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
        os << pad << k << ":\n";
        std::stringstream ss(v.get<std::string>());
        for (std::string line; std::getline(ss, line);) os << pad << "  " << line << "\n";
      } else if (is_flat(v)) {
        os << pad << k << ": " << flat_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render_text(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_flat(v)) {
        os << pad << "- " << flat_text(v) << "\n";
      } else {
        os << pad << "-\n";
        render_text(v, os, indent + 2);
      }
    }
  } else {
    os << pad << flat_text(j) << "\n";
  }
}

const char* code_name(int code) {
  switch (code) {
    case holds: return "holds";
    case fails: return "fails";
    case invalid_input: return "invalid input";
    default: return "resource limit";
  }
}

// Command echo without flags that cannot change the result.
Json echo(const std::vector<std::string>& args) {
  Json a = Json::array();
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& s = args[i];
    bool with_value = s == "--jobs" || s == "--out" || s == "--format";
    if (with_value) {
      ++i;
      continue;
    }
    if (s.rfind("--jobs=", 0) == 0 || s.rfind("--out=", 0) == 0 || s.rfind("--format=", 0) == 0 || s == "--timing")
      continue;
    a.push_back(s);
  }
  return a;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact universal-Koszulity engine over F_p", "ukoszul"};
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, Outcome (Session::*)() const>> leaves;

  auto common = [&](CLI::App* c, bool file) {
    if (file) c->add_option("file", opt.file, "input file")->required();
    c->add_option("--p", opt.p, "prime field characteristic");
    c->add_option("--cap", opt.cap, "degree cap of the multiplication table")->capture_default_str();
    c->add_option("--window", opt.window, "Betti window h,n (default 3,cap-1)");
    c->add_option("--jobs", opt.jobs, "worker threads")->capture_default_str();
    c->add_option("--out", opt.out, "write the report to this file");
    c->add_option("--format", opt.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    c->add_option("--config", opt.config, "limits file (key = value)");
    c->add_option("--limit", opt.limit_overrides, "override one limit, key=value");
    c->add_flag("--timing", opt.timing, "include wall time in the report");
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, Outcome (Session::*fn)() const,
                  bool file = true) {
    CLI::App* c = parent->add_subcommand(name, help);
    common(c, file);
    leaves.emplace_back(c, fn);
    return c;
  };

  CLI::App* algebra = app.add_subcommand("algebra", "quadratic algebras from description files");
  algebra->require_subcommand(1);
  leaf(algebra, "build", "multiplication table and basis", &Session::algebra_build);
  leaf(algebra, "hilbert", "Hilbert series and the numerical Koszul test", &Session::algebra_hilbert);
  leaf(algebra, "dual", "quadratic dual", &Session::algebra_dual);
  leaf(algebra, "uk", "universal Koszulity", &Session::algebra_uk);
  leaf(algebra, "betti", "bigraded Betti numbers in a window", &Session::algebra_betti);

  CLI::App* group = app.add_subcommand("group", "pro-p group presentations");
  group->require_subcommand(1);
  leaf(group, "parse", "parse and normalize relators", &Session::group_parse);
  leaf(group, "coeffs", "degree-2 Magnus coefficients", &Session::group_coeffs);
  leaf(group, "qdef", "quadratic definedness", &Session::group_qdef);
  leaf(group, "cohomology", "cohomology algebra", &Session::group_cohomology);
  leaf(group, "uk", "universal Koszulity of the cohomology algebra", &Session::group_uk);
  CLI::App* sweep = leaf(group, "sweep", "random quadratically defined presentations", &Session::group_sweep, false);
  sweep->add_option("--count", opt.count, "number of presentations")->capture_default_str();
  sweep->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  sweep->add_option("--dims", opt.dims, "generator counts, cycled")->capture_default_str();
  sweep->add_option("--primes", opt.primes, "primes, cycled")->capture_default_str();
  sweep->add_option("--relators", opt.relators, "relators per presentation")->capture_default_str();

  CLI::App* graph = app.add_subcommand("graph", "graphs and exterior Stanley-Reisner algebras");
  graph->require_subcommand(1);
  leaf(graph, "diagonal", "diagonal property", &Session::graph_diagonal);
  leaf(graph, "algebra", "exterior Stanley-Reisner algebra", &Session::graph_algebra);
  CLI::App* cross = leaf(graph, "crosscheck", "universal Koszulity against the diagonal property",
                         &Session::graph_crosscheck, false);
  cross->add_option("--max-vertices", opt.max_vertices, "vertex count")->required();
  cross->add_flag("--dedup", opt.dedup, "evaluate one graph per isomorphism class");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? holds : invalid_input;
  }

  Outcome (Session::*fn)() const = nullptr;
  std::string command;
  for (auto& [c, f] : leaves) {
    if (c->parsed()) {
      fn = f;
      command = c->get_parent()->get_name() + " " + c->get_name();
    }
  }

  const auto start = std::chrono::steady_clock::now();
  Json report;
  report["tool"] = "ukoszul";
  report["report_version"] = 1;
  report["command"] = command;
  report["arguments"] = echo(args);
  int code = holds;
  try {
    Limits limits;
    if (!opt.config.empty()) limits = parse_limits(read_file(opt.config), limits);
    for (const std::string& kv : opt.limit_overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw InputError("--limit expects key=value, got '" + kv + "'");
      set_limit(limits, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opt.jobs == 0) throw InputError("--jobs must be at least 1");
    Session session(opt, limits);
    Outcome o = (session.*fn)();
    report["input"] = o.input;
    report["result"] = o.result;
    code = o.code;
  } catch (const LimitError& e) {
    code = resource_limit;
    report["error"] = Json{{"kind", "resource_limit"}, {"message", e.what()}};
  } catch (const ParseError& e) {
    code = invalid_input;
    report["error"] = Json{{"kind", "parse_error"}, {"message", e.what()}, {"offset", e.offset()}};
  } catch (const InputError& e) {
    code = invalid_input;
    report["error"] = Json{{"kind", "invalid_input"}, {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    code = invalid_input;
    report["error"] = Json{{"kind", "invalid_input"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    code = invalid_input;
    report["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
  }
  report["exit_code"] = code;
  report["status"] = code_name(code);
  if (opt.timing)
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  std::string text;
  if (opt.format == "machine") {
    text = report.dump(2) + "\n";
  } else {
    std::ostringstream ss;
    render_text(report, ss, 0);
    text = ss.str();
  }
  if (report.contains("error")) err << "error: " << report["error"]["message"].get<std::string>() << "\n";
  if (opt.out.empty()) {
    out << text;
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << opt.out << "'\n";
      return invalid_input;
    }
    f << text;
  }
  return code;
}

}  // namespace ukoszul::cli

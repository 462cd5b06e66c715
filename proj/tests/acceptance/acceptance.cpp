// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "cli.hpp"
#include "ukoszul/graphs.hpp"
#include "ukoszul/group.hpp"
#include "ukoszul/ideals.hpp"
#include "ukoszul/qalg.hpp"
#include "ukoszul/resolve.hpp"

using namespace ukoszul;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string machine(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("machine");
  std::ostringstream out, err;
  ukoszul::cli::run(args, out, err);
  return out.str();
}

std::string dims_text(const std::vector<std::size_t>& dims) {
  std::string s;
  for (std::size_t x : dims) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// Machine reports shared by criteria 1, 2, 5 and 9.
struct Reports {
  std::string sweep1, sweep8, cross1, cross8;
};

const std::vector<std::string> kSweep = {"group", "sweep", "--count", "200", "--seed", "1",
                                         "--dims", "3,4,5", "--primes", "2,3", "--relators", "2"};
const std::vector<std::string> kCross = {"graph", "crosscheck", "--max-vertices", "5", "--p", "2"};

std::vector<std::string> with_jobs(std::vector<std::string> args, const char* jobs) {
  args.push_back("--jobs");
  args.push_back(jobs);
  return args;
}

Outcome criterion1(const Reports& r) {
  Outcome o;
  Json rep = Json::parse(r.sweep1);
  const auto& res = rep["result"];
  o.require(res["count"] == 200, "sweep did not cover 200 presentations");
  o.require(res["uk_holds"] == 200, "UK failed on " + std::to_string(200 - res["uk_holds"].get<int>()) + " cases");
  o.require(res["exact"] == 200, "inexact verdicts present");
  o.require(rep["exit_code"] == 0, "sweep exit code nonzero");
  for (const auto& c : res["cases"]) {
    const unsigned d = c["generators"], p = c["p"];
    o.require(d >= 3 && d <= 5 && (p == 2 || p == 3), "case outside d in {3,4,5}, p in {2,3}");
    o.require(c["relators"].size() == 2, "case without exactly two relators");
  }
  o.detail = o.pass ? "200/200 hold, exact" : o.detail;
  return o;
}

// Re-derives each sweep case from its relator text instead of trusting the report.
Outcome criterion2(const Reports& r) {
  Outcome o;
  Json rep = Json::parse(r.sweep1);
  std::size_t checked = 0;
  for (const auto& c : rep["result"]["cases"]) {
    const std::size_t d = c["generators"];
    GroupPresentation g{PrimeField(c["p"].get<unsigned>()), d, {}};
    for (const auto& w : c["relators"]) g.relators.push_back(parse_word(w.get<std::string>(), d));
    if (!quadratically_defined(g).holds) {
      o.fail("case " + std::to_string(checked) + " not quadratically defined");
      continue;
    }
    auto table = build_algebra(cohomology_algebra(g).presentation, 4);
    const std::vector<std::size_t> want = {1, d, 2, 0, 0};
    o.require(table.dims() == want, "case " + std::to_string(checked) + " dims " + dims_text(table.dims()));
    o.require(c["dims"] == Json(want), "reported dims disagree with recomputation");
    ++checked;
  }
  if (o.pass) o.detail = std::to_string(checked) + " algebras with dims (1,d,2,0)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (unsigned p : {2u, 3u})
    for (std::size_t d = 1; d <= 4; ++d) {
      auto coh = cohomology_algebra(GroupPresentation{PrimeField(p), d, {}});
      o.require(coh.presentation == standard_algebra(StandardKind::trivial, PrimeField(p), d),
                "zero relators did not give the trivial algebra");
      auto v = universally_koszul(build_algebra(coh.presentation, 3));
      o.require(v.holds && v.exact, "trivial algebra not UK");
    }
  std::mt19937_64 rng(2024);
  std::size_t done = 0;
  while (done < 100) {
    const PrimeField f(done % 2 ? 3u : 2u);
    const std::size_t d = 2 + done % 4;
    GroupPresentation g = random_quadratically_defined(f, d, 1, rng);
    auto coeff = relation_coefficients(g).front();
    bool diagonal = false;
    for (std::size_t i = 0; i < d; ++i) diagonal = diagonal || coeff.alpha(i, i) != 0;
    if (f.p() == 2 && diagonal) continue;
    auto coh = cohomology_algebra(g);
    auto table = build_algebra(coh.presentation, 4);
    auto v = universally_koszul(table);
    o.require(v.holds && v.exact, "one-relator case " + g.relators[0].to_string() + " not UK");
    auto nf = one_relator_normal_form(f, coeff);
    auto product = build_algebra(direct_product(nf.demushkin, nf.trivial), 4);
    o.require(hilbert_series(table) == hilbert_series(product),
              "Hilbert series " + dims_text(hilbert_series(table)) + " vs normal form " +
                  dims_text(hilbert_series(product)));
    ++done;
  }
  if (o.pass) o.detail = "zero relators trivial and UK; 100 one-relator cases UK, series match";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const PrimeField f2(2);
  auto p4 = stanley_reisner(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), f2);
  auto table = build_algebra(p4, 4);
  auto v = universally_koszul(table);
  o.require(!v.holds && v.witness.has_value(), "P4 did not fail with a witness");
  if (v.witness) {
    auto colon = colon_ideal(table, ideal_from_degree_one(table, v.witness->ideal_generators), v.witness->b);
    o.require(!is_in_L(table, colon), "witness colon ideal is generated in degree one");
  }
  o.require(koszul_window_check(table, 3, 3), "window (3,3) check failed");
  auto c = hilbert_product_check(p4, 3);
  o.require(c == std::vector<long long>{1, 0, 0, 0}, "Hilbert product not 1,0,0,0");
  if (o.pass) o.detail = "UK fails with witness; window (3,3) passes; product 1,0,0,0";
  return o;
}

// Graphs in which every path a-b-c-d has a chord ac or bd, by brute force over
// adjacency matrices. These are the labeled {P4, C4}-free graphs: 49 for n = 4,
// 402 for n = 5.
std::size_t quasi_threshold_count(std::size_t n) {
  std::size_t count = 0;
  const std::size_t pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++e)
        if (mask >> e & 1) adj[i][j] = adj[j][i] = true;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        for (std::size_t c = 0; c < n && ok; ++c)
          for (std::size_t d = 0; d < n && ok; ++d) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            if (adj[a][b] && adj[b][c] && adj[c][d] && !adj[a][c] && !adj[b][d]) ok = false;
          }
    count += ok;
  }
  return count;
}

Outcome criterion5(const Reports& r) {
  Outcome o;
  Json five = Json::parse(r.cross1)["result"];
  o.require(five["graphs"] == 1024, "expected 1024 graphs on 5 vertices");
  o.require(five["disagreements"].empty(), std::to_string(five["disagreements"].size()) + " disagreements at n=5");
  o.require(five["uk_holds"] == quasi_threshold_count(5) && five["uk_holds"] == 402,
            "UK count at n=5 differs from brute-force count");
  auto four = uk_diagonal_crosscheck(4, PrimeField(3));
  o.require(four.graphs == 64 && four.disagreements.empty(), "disagreements at n=4, p=3");
  o.require(four.uk_holds == quasi_threshold_count(4) && four.uk_holds == 49, "UK count at n=4 differs from brute-force count");
  if (o.pass)
    o.detail = "0 disagreements: n=5 p=2 (" + std::to_string(five["uk_holds"].get<int>()) + "/1024 UK), n=4 p=3 (" +
               std::to_string(four.uk_holds) + "/64 UK)";
  return o;
}

struct Named {
  std::string name;
  QuadraticPresentation pres;
  int cap;
};

std::vector<Named> named_algebras() {
  std::vector<Named> out;
  for (unsigned p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (std::size_t d : {2u, 4u}) out.push_back({"demushkin d=" + std::to_string(d) + " p=" + std::to_string(p), demushkin_algebra(f, d), 3});
  }
  for (unsigned p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (std::size_t d = 1; d <= 4; ++d) {
      out.push_back({"exterior d=" + std::to_string(d) + " p=" + std::to_string(p),
                     standard_algebra(StandardKind::exterior, f, d), static_cast<int>(d) + 1});
      out.push_back({"trivial d=" + std::to_string(d) + " p=" + std::to_string(p),
                     standard_algebra(StandardKind::trivial, f, d), 2});
    }
  }
  return out;
}

Outcome criterion6() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& a : named_algebras()) {
    auto v = universally_koszul(build_algebra(a.pres, a.cap));
    o.require(v.holds && v.exact, a.name + " not UK");
    ++checked;
  }
  for (unsigned p : {2u, 3u}) {
    const PrimeField f(p);
    const std::vector<Named> factors = {
        {"exterior 2", standard_algebra(StandardKind::exterior, f, 2), 3},
        {"trivial 1", standard_algebra(StandardKind::trivial, f, 1), 2},
        {"trivial 2", standard_algebra(StandardKind::trivial, f, 2), 2},
        {"demushkin 2", demushkin_algebra(f, 2), 3},
        {"exterior 1", standard_algebra(StandardKind::exterior, f, 1), 2},
    };
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (std::size_t j = i; j < factors.size(); ++j) {
        const auto& a = factors[i];
        const auto& b = factors[j];
        const int cap = std::max(a.cap, b.cap);
        o.require(uk_closure_product_check(a.pres, b.pres, cap),
                  a.name + " x " + b.name + " p=" + std::to_string(p) + " not UK");
        auto v = universally_koszul(build_algebra(direct_product(a.pres, b.pres), cap));
        o.require(v.holds && v.exact, "direct search on " + a.name + " x " + b.name + " not UK");
        ++checked;
      }
  }
  if (o.pass) o.detail = std::to_string(checked) + " named algebras and products UK";
  return o;
}

Outcome criterion7(const Reports& r) {
  Outcome o;
  std::vector<Named> set = named_algebras();
  for (unsigned p : {2u, 3u})
    set.push_back({"P4 p=" + std::to_string(p), stanley_reisner(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), PrimeField(p)), 4});
  std::vector<QuadraticPresentation> all;
  for (const auto& a : set) all.push_back(a.pres);
  for (const auto& c : Json::parse(r.sweep1)["result"]["cases"]) {
    const std::size_t d = c["generators"];
    GroupPresentation g{PrimeField(c["p"].get<unsigned>()), d, {}};
    for (const auto& w : c["relators"]) g.relators.push_back(parse_word(w.get<std::string>(), d));
    all.push_back(cohomology_algebra(g).presentation);
  }
  for (const auto& q : all) {
    auto dual = quadratic_dual(q);
    const std::size_t d = q.generators();
    o.require(q.omega().dim() + dual.omega().dim() == d * d, "dim Omega + dim Omega-perp != d^2");
    o.require(quadratic_dual(dual).omega() == q.omega(), "dual(dual) differs from Omega");
  }
  std::size_t windows = 0;
  for (const auto& a : set) {
    if (a.name.rfind("exterior", 0) != 0 && a.name.rfind("trivial", 0) != 0 &&
        a.name.rfind("demushkin", 0) != 0 && a.name.rfind("P4", 0) != 0)
      continue;
    auto table = build_algebra(a.pres, std::max(a.cap, 3));
    auto betti = bigraded_betti(table, 3, 3);
    auto dual = build_algebra(quadratic_dual(a.pres), 3);
    for (int i = 0; i <= 3; ++i)
      o.require(betti.at(i, i) == dual.dim(i), a.name + ": b[" + std::to_string(i) + "][" + std::to_string(i) +
                                                   "] != dim dual_" + std::to_string(i));
    o.require(betti.at(2, 2) == a.pres.omega().dim(), a.name + ": b[2][2] != dim Omega");
    ++windows;
  }
  if (o.pass)
    o.detail = std::to_string(all.size()) + " presentations dualized; " + std::to_string(windows) + " Betti windows";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 500; ++t) {
    const PrimeField f(t % 3 == 0 ? 2u : t % 3 == 1 ? 3u : 5u);
    const std::size_t d = 1 + rng() % 5;
    FpMatrix alpha = random_coefficients(f, d, rng);
    auto c = relation_coefficients(GroupPresentation{f, d, {synthetic_relator(f, alpha)}}).front();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j)
        if (c.alpha(i, j) != alpha(i, j)) o.fail("coefficient round trip failed");
  }
  for (int t = 0; t < 500; ++t) {
    const PrimeField f(t % 2 ? 3u : 2u);
    const std::size_t d = 2 + rng() % 3;
    Word a = oracle::random_word(rng, d, 3), b = oracle::random_word(rng, d, 3);
    auto prod = magnus_expand(f, d, Word::product({a, b}));
    auto mult = magnus_multiply(f, magnus_expand(f, d, a), magnus_expand(f, d, b));
    o.require(prod.linear == mult.linear && prod.quadratic == mult.quadratic, "homomorphism property failed");
    auto cancel = magnus_degree2(GroupPresentation{f, d, {}}, Word::product({a, Word::inverse(a)}));
    o.require(cancel.degree1 == Vector(d, 0) && cancel.degree2 == FpMatrix(f, d, d), "w * w^-1 not trivial");
    auto [lin, quad] = oracle::magnus(a, d, f.p());
    auto m = magnus_degree2(GroupPresentation{f, d, {}}, a);
    for (std::size_t i = 0; i < d; ++i) {
      o.require(m.degree1[i] == static_cast<Residue>(lin[i]), "degree-1 part differs from the oracle");
      for (std::size_t j = 0; j < d; ++j)
        o.require(m.degree2(i, j) == static_cast<Residue>(quad[i][j]), "degree-2 part differs from the oracle");
    }
  }
  for (unsigned p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    auto comm = magnus_degree2(GroupPresentation{f, 3, {}}, parse_word("[x1,x2]", 3));
    o.require(comm.degree1 == Vector(3, 0) && comm.degree2 == FpMatrix(f, 3, {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}),
              "[x1,x2] != E12 - E21");
    auto deep = magnus_degree2(GroupPresentation{f, 3, {}}, parse_word("[[x1,x2],x3]", 3));
    o.require(deep.degree1 == Vector(3, 0) && deep.degree2 == FpMatrix(f, 3, 3), "[[x1,x2],x3] != 0");
  }
  const PrimeField f2(2);
  auto sq = magnus_degree2(GroupPresentation{f2, 2, {}}, parse_word("x1^2", 2));
  o.require(sq.degree1 == Vector(2, 0) && sq.degree2 == FpMatrix(f2, 2, {{1, 0}, {0, 0}}), "x1^2 at p=2 != E11");
  if (o.pass) o.detail = "500 round trips, 500 word checks, 3 fixed examples";
  return o;
}

Outcome criterion9(const Reports& r) {
  Outcome o;
  o.require(!r.sweep1.empty() && r.sweep1 == r.sweep8, "sweep reports differ between --jobs 1 and 8");
  o.require(!r.cross1.empty() && r.cross1 == r.cross8, "crosscheck reports differ between --jobs 1 and 8");
  if (o.pass)
    o.detail = "sweep " + std::to_string(r.sweep1.size()) + " bytes, crosscheck " + std::to_string(r.cross1.size()) +
               " bytes identical";
  return o;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  Reports reports;
  const auto shared = clock::now();
  reports.sweep1 = machine(with_jobs(kSweep, "1"));
  reports.sweep8 = machine(with_jobs(kSweep, "8"));
  reports.cross1 = machine(with_jobs(kCross, "1"));
  reports.cross8 = machine(with_jobs(kCross, "8"));
  std::printf("shared reports (sweep and crosscheck at --jobs 1 and 8) [%.1fs]\n",
              std::chrono::duration<double>(clock::now() - shared).count());

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"two-relator cohomology is universally Koszul", [&] { return criterion1(reports); }},
      {"degree-3 vanishing", [&] { return criterion2(reports); }},
      {"zero- and one-relator cases", criterion3},
      {"path-graph counterexample", criterion4},
      {"diagonal-property equivalence", [&] { return criterion5(reports); }},
      {"named algebras and products", criterion6},
      {"duality and resolution consistency", [&] { return criterion7(reports); }},
      {"Magnus correctness", criterion8},
      {"determinism across job counts", [&] { return criterion9(reports); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "ukoszul/group.hpp"
#include "ukoszul/ideals.hpp"

using namespace ukoszul;

namespace {

FpMatrix matrix(const PrimeField& f, std::size_t d, std::initializer_list<std::tuple<std::size_t, std::size_t, long long>> entries) {
  FpMatrix m(f, d, d);
  for (auto [i, j, v] : entries) m(i, j) = f.reduce(v);
  return m;
}

GroupPresentation pres(unsigned p, std::size_t d, std::initializer_list<const char*> relators) {
  GroupPresentation g{PrimeField(p), d, {}};
  for (const char* r : relators) g.relators.push_back(parse_word(r, d));
  return g;
}

void check_matches_oracle(const PrimeField& f, std::size_t d, const Word& w) {
  auto [lin, quad] = oracle::magnus(w, d, f.p());
  MagnusDegree2 m = magnus_degree2(GroupPresentation{f, d, {}}, w);
  for (std::size_t i = 0; i < d; ++i) {
    CHECK(m.degree1[i] == lin[i]);
    for (std::size_t j = 0; j < d; ++j) CHECK(m.degree2(i, j) == quad[i][j]);
  }
}

}  // namespace

TEST_CASE("word parsing") {
  Word c = parse_word("[x1,x2]", 2);
  CHECK(c == Word::commutator(Word::generator(0), Word::generator(1)));
  Word w = parse_word("[x1,x2]*[x3,x4]^2", 4);
  CHECK(w == Word::product({Word::commutator(Word::generator(0), Word::generator(1)),
                            Word::power(Word::commutator(Word::generator(2), Word::generator(3)), 2)}));
  CHECK(parse_word(" x1 x2^-1 ", 2) == Word::product({Word::generator(0), Word::inverse(Word::generator(1))}));
  CHECK(parse_word("1", 1) == Word::identity());
  CHECK_THROWS_AS(parse_word("[x1,x5]", 4), ParseError);
  try {
    parse_word("[x1,x5]", 4);
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_word("[x1,x2", 2), ParseError);
  CHECK_THROWS_AS(parse_word("x1^", 2), ParseError);
  CHECK_THROWS_AS(parse_word("", 2), ParseError);
  CHECK_THROWS_AS(parse_word("x0", 2), ParseError);
  CHECK_THROWS_AS(parse_word("y1", 2), ParseError);
}

TEST_CASE("word printing round-trips") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 500; ++t) {
    Word w = oracle::random_word(rng, 4, 4);
    CHECK(parse_word(w.to_string(), 4) == w);
    CHECK(w.generator_bound() <= 4);
  }
}

TEST_CASE("fixed Magnus examples") {
  for (unsigned p : {2u, 3u, 5u}) {
    PrimeField f(p);
    auto m = magnus_degree2(GroupPresentation{f, 3, {}}, parse_word("[x1,x2]", 3));
    CHECK(m.degree1 == Vector(3, 0));
    CHECK(m.degree2 == matrix(f, 3, {{0, 1, 1}, {1, 0, -1}}));
    auto deep = magnus_degree2(GroupPresentation{f, 3, {}}, parse_word("[[x1,x2],x3]", 3));
    CHECK(deep.degree1 == Vector(3, 0));
    CHECK(deep.degree2 == FpMatrix(f, 3, 3));
  }
  PrimeField f2(2);
  auto sq = magnus_degree2(GroupPresentation{f2, 2, {}}, parse_word("x1^2", 2));
  CHECK(sq.degree1 == Vector(2, 0));
  CHECK(sq.degree2 == matrix(f2, 2, {{0, 0, 1}}));
}

TEST_CASE("Magnus expansion matches the letter-by-letter oracle") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 300; ++t) {
    PrimeField f(t % 3 == 0 ? 2u : t % 3 == 1 ? 3u : 5u);
    check_matches_oracle(f, 4, oracle::random_word(rng, 4, 4));
  }
}

TEST_CASE("Magnus homomorphism and inverse cancellation") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 300; ++t) {
    PrimeField f(t % 2 ? 3u : 2u);
    const std::size_t d = 2 + rng() % 3;
    Word a = oracle::random_word(rng, d, 3), b = oracle::random_word(rng, d, 3);
    auto ea = magnus_expand(f, d, a), eb = magnus_expand(f, d, b);
    auto prod = magnus_expand(f, d, Word::product({a, b}));
    auto mult = magnus_multiply(f, ea, eb);
    CHECK(prod.linear == mult.linear);
    CHECK(prod.quadratic == mult.quadratic);
    auto cancel = magnus_degree2(GroupPresentation{f, d, {}}, Word::product({a, Word::inverse(a)}));
    CHECK(cancel.degree1 == Vector(d, 0));
    CHECK(cancel.degree2 == FpMatrix(f, d, d));
  }
}

TEST_CASE("relation coefficients") {
  auto c = relation_coefficients(pres(3, 4, {"[x1,x2]*[x3,x4]^2"}));
  REQUIRE(c.size() == 1);
  CHECK(c[0].alpha(0, 1) == 1);
  CHECK(c[0].alpha(2, 3) == 2);
  CHECK(c[0].alpha(0, 2) == 0);
  CHECK(c[0].alpha(1, 0) == 2);  // antisymmetric
  auto c2 = relation_coefficients(pres(2, 4, {"x1^2*[x3,x4]"}));
  CHECK(c2[0].alpha(0, 0) == 1);
  CHECK(c2[0].alpha(2, 3) == 1);
  CHECK_THROWS_AS(relation_coefficients(pres(3, 2, {"x1"})), InputError);
}

TEST_CASE("coefficient round trip through synthetic relators") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 300; ++t) {
    PrimeField f(t % 3 == 0 ? 2u : t % 3 == 1 ? 3u : 5u);
    const std::size_t d = 1 + rng() % 5;
    FpMatrix alpha = random_coefficients(f, d, rng);
    GroupPresentation g{f, d, {synthetic_relator(f, alpha)}};
    auto c = relation_coefficients(g);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) CHECK(c[0].alpha(i, j) == alpha(i, j));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) CHECK(c[0].matrix(j, i) == (i == j ? c[0].matrix(i, i) : f.neg(c[0].matrix(i, j))));
  }
}

TEST_CASE("quadratic definedness") {
  CHECK(quadratically_defined(pres(3, 4, {"[x1,x2]", "[x3,x4]"})).holds);
  CHECK_FALSE(quadratically_defined(pres(3, 4, {"[x1,x2]", "[x1,x2]*[[x1,x2],x3]"})).holds);
  auto sq = quadratically_defined(pres(2, 4, {"x1^2*[x3,x4]"}));
  CHECK_FALSE(sq.holds);
  CHECK_FALSE(sq.reason.empty());
  CHECK(quadratically_defined(pres(2, 3, {})).holds);
}

TEST_CASE("cohomology algebras") {
  auto free3 = cohomology_algebra(pres(3, 3, {}));
  CHECK(build_algebra(free3.presentation, 3).dims() == std::vector<std::size_t>{1, 3, 0, 0});
  auto one = cohomology_algebra(pres(3, 2, {"[x1,x2]"}));
  CHECK(build_algebra(one.presentation, 3).dims() == std::vector<std::size_t>{1, 2, 1, 0});
  CHECK(one.presentation == demushkin_algebra(PrimeField(3), 2));
  auto two = cohomology_algebra(pres(3, 4, {"[x1,x2]", "[x3,x4]"}));
  CHECK(build_algebra(two.presentation, 3).dims() == std::vector<std::size_t>{1, 4, 2, 0});
  CHECK(two.verified);
  auto three = cohomology_algebra(pres(3, 4, {"[x1,x2]", "[x3,x4]", "[x1,x3]"}));
  CHECK_FALSE(three.verified);
  CHECK_THROWS_AS(cohomology_algebra(pres(2, 4, {"x1^2*[x3,x4]"})), InputError);
}

TEST_CASE("two-relator cohomology has dims (1, d, 2, 0) on random input") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 60; ++t) {
    PrimeField f(t % 3 == 0 ? 2u : t % 3 == 1 ? 3u : 5u);
    const std::size_t d = 3 + rng() % 3;
    GroupPresentation g = random_quadratically_defined(f, d, 2, rng);
    auto h = cohomology_algebra(g);
    CHECK(build_algebra(h.presentation, 4).dims() == std::vector<std::size_t>{1, d, 2, 0, 0});
  }
}

TEST_CASE("one-relator normal form") {
  PrimeField f3(3), f5(5);
  auto a = one_relator_normal_form(f3, RelationCoefficients{matrix(f3, 3, {{0, 1, 1}, {1, 0, -1}})});
  CHECK(a.rank == 2);
  CHECK(build_algebra(direct_product(a.demushkin, a.trivial), 3).dims() == std::vector<std::size_t>{1, 3, 1, 0});
  auto b = one_relator_normal_form(f3, RelationCoefficients{matrix(f3, 2, {{0, 1, 1}, {1, 0, -1}})});
  CHECK(b.rank == 2);
  CHECK(b.trivial.generators() == 0);
  auto c = one_relator_normal_form(f5, RelationCoefficients{matrix(f5, 4, {{0, 1, 1}, {1, 0, -1}, {2, 3, 1}, {3, 2, -1}})});
  CHECK(c.rank == 4);
  CHECK_THROWS_AS(one_relator_normal_form(f3, RelationCoefficients{FpMatrix(f3, 3, 3)}), InputError);
  CHECK_THROWS_AS(one_relator_normal_form(PrimeField(2), RelationCoefficients{matrix(PrimeField(2), 2, {{0, 0, 1}})}),
                  InputError);
}

TEST_CASE("one-relator normal form matches the cohomology algebra") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 40; ++t) {
    PrimeField f(t % 2 ? 3u : 2u);
    const std::size_t d = 2 + rng() % 3;
    GroupPresentation g = random_quadratically_defined(f, d, 1, rng);
    auto form = one_relator_normal_form(f, relation_coefficients(g)[0]);
    CHECK(form.rank % 2 == 0);
    auto h = build_algebra(cohomology_algebra(g).presentation, 4);
    auto n = build_algebra(direct_product(form.demushkin, form.trivial), 4);
    CHECK(h.dims() == n.dims());
    CHECK(universally_koszul(h).holds);
    CHECK(universally_koszul(n).holds);
  }
}

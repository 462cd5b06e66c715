#include <doctest.h>

#include "ukoszul/formats.hpp"

using namespace ukoszul;

TEST_CASE("algebra descriptions") {
  auto a = parse_algebra("p = 2\nd = 4\ngraph = 1-2, 2-3, 3-4\n");
  CHECK(a.graph.has_value());
  CHECK(a.presentation == stanley_reisner(*a.graph, PrimeField(2)));

  auto e = parse_algebra("# exterior\np=3\nd=3\nbase = exterior\n");
  CHECK(e.presentation == standard_algebra(StandardKind::exterior, PrimeField(3), 3));

  auto dem = parse_algebra("p = 5\nd = 4\nbase = demushkin\n");
  CHECK(dem.presentation == demushkin_algebra(PrimeField(5), 4));

  auto sym = parse_algebra("p = 3\nd = 2\nrelation = a1*a2 - a2*a1\n");
  CHECK(sym.presentation.omega() == standard_algebra(StandardKind::symmetric, PrimeField(3), 2).omega());
  CHECK(sym.presentation.commutativity() == Commutativity::none);

  auto vec = parse_algebra("p = 3\nd = 2\nrelation = [0, 1, -1, 0]\nclass = none\n");
  CHECK(vec.presentation.omega() == sym.presentation.omega());

  auto mixed = parse_algebra("p = 3\nd = 2\nrelation = 2*a_1*a_1 + a2*a2\nrelation = 3 a1*a2\n");
  CHECK(mixed.presentation.omega().dim() == 1);
}

TEST_CASE("algebra description round trip") {
  for (const auto& pres : {standard_algebra(StandardKind::exterior, PrimeField(2), 3), demushkin_algebra(PrimeField(3), 4),
                           standard_algebra(StandardKind::tensor, PrimeField(5), 2),
                           standard_algebra(StandardKind::symmetric, PrimeField(3), 3)}) {
    CHECK(parse_algebra(format_algebra(pres)).presentation == pres);
  }
}

TEST_CASE("algebra description errors") {
  CHECK_THROWS_AS(parse_algebra("d = 2\n"), InputError);
  CHECK_THROWS_AS(parse_algebra("p = 4\nd = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 101\nd = 2\n"), LimitError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 7\n"), LimitError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 2\nd = 3\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 2\ncolour = red\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 2\nrelation = a1*a3\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 2\nrelation = [1 0 1]\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 2\nrelation = a1 a2\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 2\nd = 3\nbase = demushkin\n"), InputError);
  CHECK_THROWS_AS(parse_algebra("p = 3\nd = 2\nclass = graded_commutative\n"), InputError);
  CHECK_THROWS_AS(parse_algebra("p = 3\nd = 2\ngraph = 1-1\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("p = 3\nd = 2\njunk\n"), ParseError);
  try {
    parse_algebra("p = 2\nd = 2\nrelation = a1*a9\n");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 26);
  }
  Limits roomy;
  roomy.max_p = 101;
  CHECK_NOTHROW(parse_algebra("p = 101\nd = 2\n", roomy));
}

TEST_CASE("presentation files") {
  auto g = parse_presentation("p = 3\nd = 4\nrelator = [x1, x2]\nrelator = [x3,x4]\n");
  CHECK(g.field.p() == 3);
  CHECK(g.generators == 4);
  REQUIRE(g.relators.size() == 2);
  CHECK(g.relators[1] == parse_word("[x3,x4]", 4));
  auto back = parse_presentation(format_presentation(g));
  CHECK(back.relators == g.relators);
  CHECK_THROWS_AS(parse_presentation("p = 3\nrelator = x1\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("p = 3\nd = 2\nrelator = [x1,x3]\n"), ParseError);
  try {
    parse_presentation("p = 3\nd = 2\nrelator = [x1,x3]\n");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 26);
  }
}

TEST_CASE("limit files") {
  Limits l = parse_limits("# widen\nmax_enum_dim = 7\nmax_cap = 6\nmax_p = 101\n");
  CHECK(l.max_enum_dim == 7);
  CHECK(l.max_cap == 6);
  CHECK(l.max_p == 101);
  CHECK(l.workspace == Limits{}.workspace);
  CHECK_THROWS_AS(parse_limits("nope = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_limits("max_cap = -1\n"), ParseError);
  Limits m;
  set_limit(m, "workspace", "5");
  CHECK(m.workspace == 5);
  CHECK_THROWS_AS(set_limit(m, "max_p", "300"), InputError);
}

TEST_CASE("relation polynomials") {
  PrimeField f(5);
  Vector v = parse_relation("a1*a2 - 2*a2*a1 + a1*a2", f, 2);
  CHECK(v == Vector{0, 2, 3, 0});
  CHECK_THROWS_AS(parse_relation("", f, 2), ParseError);
  CHECK_THROWS_AS(parse_relation("a1*", f, 2), ParseError);
}

#include <doctest.h>

#include "ukoszul/ideals.hpp"
#include "ukoszul/resolve.hpp"

using namespace ukoszul;

namespace {

std::vector<QuadraticPresentation> koszul_instances() {
  std::vector<QuadraticPresentation> list;
  for (unsigned p : {2u, 3u}) {
    PrimeField f(p);
    for (std::size_t d = 1; d <= 3; ++d) {
      list.push_back(standard_algebra(StandardKind::exterior, f, d));
      list.push_back(standard_algebra(StandardKind::trivial, f, d));
    }
    list.push_back(demushkin_algebra(f, 2));
    list.push_back(demushkin_algebra(f, 4));
    list.push_back(stanley_reisner(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), f));
  }
  return list;
}

}  // namespace

TEST_CASE("Betti numbers of the exterior algebra on two generators") {
  auto t = build_algebra(standard_algebra(StandardKind::exterior, PrimeField(2), 2), 3);
  BettiTable b = bigraded_betti(t, 3, 3);
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = 0; j <= 3; ++j) CHECK(b.at(i, j) == (i == j ? i + 1 : 0));
  CHECK(b.homological_max() == 3);
  CHECK(b.internal_max() == 3);
}

TEST_CASE("Betti numbers of the trivial algebra on two generators") {
  auto t = build_algebra(standard_algebra(StandardKind::trivial, PrimeField(3), 2), 3);
  BettiTable b = bigraded_betti(t, 3, 3);
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = 0; j <= 3; ++j) CHECK(b.at(i, j) == (i == j ? std::size_t{1} << i : 0));
}

TEST_CASE("Betti window beyond the cap is rejected") {
  auto t = build_algebra(standard_algebra(StandardKind::trivial, PrimeField(3), 2), 2);
  CHECK_THROWS_AS(bigraded_betti(t, 3, 3), InputError);
}

TEST_CASE("window checks") {
  PrimeField f2(2), f3(3);
  auto p4 = build_algebra(stanley_reisner(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), f2), 3);
  CHECK(koszul_window_check(p4, 3, 3));
  CHECK(koszul_window_check(build_algebra(demushkin_algebra(f3, 4), 3), 3, 3));
  // Monomial algebra F<x,y>/(xy) without a commutativity class.
  Subspace omega = Subspace::span(FpMatrix(f3, 4, {{0, 1, 0, 0}}));
  auto q = build_algebra(QuadraticPresentation(f3, 2, omega, Commutativity::none), 4);
  BettiTable b = bigraded_betti(q, 3, 4);
  CHECK(b.at(2, 2) == 1);
  CHECK(koszul_window_check(b));
}

TEST_CASE("Hilbert product examples") {
  PrimeField f3(3);
  CHECK(hilbert_product_check(standard_algebra(StandardKind::exterior, f3, 2), 4) ==
        std::vector<long long>{1, 0, 0, 0, 0});
  CHECK(hilbert_product_check(standard_algebra(StandardKind::trivial, f3, 3), 4) ==
        std::vector<long long>{1, 0, 0, 0, 0});
  CHECK(hilbert_product_check(demushkin_algebra(f3, 4), 3) == std::vector<long long>{1, 0, 0, 0});
  CHECK(hilbert_product_check(stanley_reisner(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), PrimeField(2)), 3) ==
        std::vector<long long>{1, 0, 0, 0});
}

TEST_CASE("Betti numbers agree with the dual and with Omega") {
  for (const auto& pres : koszul_instances()) {
    auto t = build_algebra(pres, 3);
    BettiTable b = bigraded_betti(t, 3, 3);
    auto dual = build_algebra(quadratic_dual(pres), 3);
    CHECK(b.at(2, 2) == pres.omega().dim());
    for (std::size_t i = 0; i <= 3; ++i) CHECK(b.at(i, i) == dual.dim(static_cast<int>(i)));
    const bool window = koszul_window_check(b);
    CHECK(window);
    auto c = hilbert_product_check(pres, 3);
    if (window) CHECK(c == std::vector<long long>{1, 0, 0, 0});
    if (universally_koszul(build_algebra(pres, 4)).holds) CHECK(window);
  }
}

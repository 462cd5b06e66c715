#pragma once

// Koszulity certificates inside a finite window: bigraded Betti numbers of the
// minimal graded free resolution of F_p over A, and the numerical test
// h_A(t) * h_{A^!}(-t) = 1.

#include <cstddef>
#include <vector>

#include "ukoszul/qalg.hpp"

namespace ukoszul {

/// entries[i][j] = number of generators of the i-th free module in internal degree j.
struct BettiTable {
  std::vector<std::vector<std::size_t>> entries;

  std::size_t homological_max() const noexcept { return entries.empty() ? 0 : entries.size() - 1; }
  std::size_t internal_max() const noexcept {
    return entries.empty() ? 0 : entries.front().size() - 1;
  }
  std::size_t at(std::size_t i, std::size_t j) const { return entries.at(i).at(j); }
};

/// Minimal resolution by right A-modules, computed degreewise for homological
/// degrees <= h_max and internal degrees <= n_max. Throws InputError if
/// n_max > cap.
BettiTable bigraded_betti(const GradedAlgebraTable& algebra, std::size_t h_max, std::size_t n_max);

/// True iff every off-diagonal Betti number in the window vanishes. A window
/// certificate only: necessary for Koszulity, not sufficient.
bool koszul_window_check(const GradedAlgebraTable& algebra, std::size_t h_max, std::size_t n_max);
bool koszul_window_check(const BettiTable& table) noexcept;

/// c_n = sum_k (-1)^k dim(A^!_k) dim(A_{n-k}) for n = 0..n_max.
std::vector<long long> hilbert_product_check(const QuadraticPresentation& pres, std::size_t n_max,
                                             const Limits& limits = {});

}  // namespace ukoszul

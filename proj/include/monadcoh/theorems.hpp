#pragma once

// Executable forms of the structural statements the engine is built
// around: intermediate vanishing, the effective extension-splitting bound,
// vanishing transfer along an extension, restriction surjectivity, the
// vanishing chain, and the splitting criterion.  On valid inputs each
// predicate is a theorem; a false return is an engine defect, which is why
// these double as the falsification harness.

#include "monadcoh/extension.hpp"

namespace monadcoh {

inline bool intermediate_rows_zero(const CohomologyTable& t) {
  for (int i = 2; i <= t.n - 2; ++i)
    if (!t.row_zero(i)) return false;
  return true;
}

// H^i_*(E) = 0 for 1 < i < n-1, recomputed from a fresh table (the χ check
// inside table() cross-validates the vanishing rows).
template <class F>
bool intermediate_vanishing_check(const Monad<F>& m) {
  return intermediate_rows_zero(table(m));
}

struct BoundReport {
  int n = 0;
  long long r = 0;
  long long sum_mu_h2 = 0;       // Σ_{i>j} μ_i h²(E(j))
  long long sum_mu_dual_h2 = 0;  // Σ_{i>j} μ*_i h²(E*(j))
  long long floor_dim = 0;       // n - 4
  long long floor_rank = 0;      // r - n + 1
  long long m_star = 0;          // max of the four; splitting applies for
                                 // extensions with m > m_star
  enum class Applicability { Applies, FormulaOnly } applicability =
      Applicability::Applies;
};

namespace detail {

// h²(E(j)) over its certified support: identically zero for n >= 4
// (intermediate vanishing); for n = 3 it is h¹ of the dual at -j-4.
template <class F>
std::map<int, long long> h2_support(const Monad<F>& m, const Monad<F>& md) {
  std::map<int, long long> h2;
  if (m.n() != 3) return h2;
  H1Support sup = h1_support(md);
  for (int e = sup.lo; e <= sup.zero_at; ++e) {
    long long v = sup.at(e);
    if (v != 0) h2[-e - 4] = v;
  }
  return h2;
}

inline long long pair_sum(const std::map<int, long long>& mu,
                          const std::map<int, long long>& h2) {
  long long acc = 0;
  for (auto& [i, mi] : mu)
    for (auto& [j, hj] : h2)
      if (i > j) acc += mi * hj;
  return acc;
}

}  // namespace detail

template <class F>
BoundReport split_bound(const Monad<F>& m) {
  BoundReport b;
  b.n = m.n();
  b.r = m.rank();
  Monad<F> md = m.dual();
  auto mu = mu_invariants(m);
  auto mud = mu_invariants(md);
  b.sum_mu_h2 = detail::pair_sum(mu, detail::h2_support(m, md));
  b.sum_mu_dual_h2 = detail::pair_sum(mud, detail::h2_support(md, m));
  b.floor_dim = b.n - 4;
  b.floor_rank = b.r - b.n + 1;
  b.m_star = std::max({b.sum_mu_h2, b.sum_mu_dual_h2, b.floor_dim,
                       b.floor_rank});
  b.applicability = b.n >= 4 ? BoundReport::Applicability::Applies
                             : BoundReport::Applicability::FormulaOnly;
  return b;
}

// For F = extend_once(E) and E2 = F|_H (which is E plus line bundles):
// H^i_*(E2) = 0  <=>  H^i_*(F) = 0 and H^{i+1}_*(F) = 0, for 1 <= i <= n-1.
template <class F>
bool vanishing_transfer_check(const Monad<F>& e, int i) {
  if (i < 1 || i > e.n() - 1)
    throw StructuralError("vanishing_transfer_check: i out of range");
  Monad<F> up = extend_once(e);
  Monad<F> back = restrict_hyperplane(up);
  bool lhs = table(back).row_zero(i);
  CohomologyTable tf = table(up);
  bool rhs = tf.row_zero(i) && tf.row_zero(i + 1);
  return lhs == rhs;
}

// H^1_*(F) -> H^1_*(F|_H) surjective in every degree  <=>  H^2_*(F) = 0.
template <class F>
bool h1_restriction_surjectivity_check(const Monad<F>& e) {
  Monad<F> up = extend_once(e);
  auto rm = restriction_map_h1(up);
  bool h2_zero = table(up).row_zero(2);
  return rm.globally_surjective == h2_zero;
}

// Along the flag of iterated extensions, H^i_*(F_k) = 0 for
// 2 <= i <= (n+k)-2 at every level k <= steps.
template <class F>
bool vanishing_chain_check(const Monad<F>& e, int steps) {
  if (e.n() < 4)
    throw StructuralError("vanishing_chain_check: need n >= 4");
  if (steps < 1) throw StructuralError("vanishing_chain_check: steps >= 1");
  Monad<F> cur = e;
  for (int k = 1; k <= steps; ++k) {
    cur = extend_once(cur);
    CohomologyTable t = table(cur);
    for (int i = 2; i <= e.n() + k - 2; ++i)
      if (!t.row_zero(i)) return false;
  }
  return true;
}

// If H^1_*(E) = 0 and H^1_*(E*) = 0 then split_check must report a direct
// sum of line bundles; vacuously true otherwise.
template <class F>
bool split_criterion_check(const Monad<F>& e) {
  bool h1_zero = table(e).row_zero(1);
  bool h1_dual_zero = table(e.dual()).row_zero(1);
  if (!h1_zero || !h1_dual_zero) return true;
  return split_check(e).split;
}

}  // namespace monadcoh

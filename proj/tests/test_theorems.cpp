// The executable structural statements: intermediate vanishing, the
// effective splitting bound, vanishing transfer, restriction surjectivity,
// the vanishing chain, and the splitting criterion.

#include <doctest.h>

#include "monadcoh/io.hpp"

using namespace monadcoh;

namespace {
const Fp kF(32003);
}

TEST_CASE("intermediate vanishing holds and corruption is detected") {
  CHECK(intermediate_vanishing_check(euler_monad(kF, 4)));
  CHECK(intermediate_vanishing_check(euler_monad(kF, 5)));
  CHECK(intermediate_vanishing_check(null_correlation_monad(kF)));  // vacuous
  CHECK(intermediate_vanishing_check(random_monad(kF, 5, 5, "small")));

  auto t = table(euler_monad(kF, 5));
  CHECK(intermediate_rows_zero(t));
  t.rows[2][1] = 1;  // injected corruption
  CHECK_FALSE(intermediate_rows_zero(t));
}

TEST_CASE("splitting bound for the cotangent bundle on P^4") {
  auto b = split_bound(euler_monad(kF, 4));
  CHECK(b.n == 4);
  CHECK(b.r == 4);
  CHECK(b.sum_mu_h2 == 0);
  CHECK(b.sum_mu_dual_h2 == 0);
  CHECK(b.floor_dim == 0);
  CHECK(b.floor_rank == 1);
  CHECK(b.m_star == 1);
  CHECK(b.applicability == BoundReport::Applicability::Applies);
}

TEST_CASE("splitting bound for the null correlation bundle (formula only)") {
  auto b = split_bound(null_correlation_monad(kF));
  CHECK(b.n == 3);
  CHECK(b.r == 2);
  CHECK(b.sum_mu_h2 == 1);
  CHECK(b.sum_mu_dual_h2 == 1);
  CHECK(b.floor_dim == -1);
  CHECK(b.floor_rank == 0);
  CHECK(b.m_star == 1);
  CHECK(b.applicability == BoundReport::Applicability::FormulaOnly);
}

TEST_CASE("splitting bound for twist sums is the rank floor") {
  auto b =
      split_bound(line_sum_monad(kF, 5, TwistSum({1, 1, 0, 0, -1, -1})));
  CHECK(b.sum_mu_h2 == 0);
  CHECK(b.sum_mu_dual_h2 == 0);
  CHECK(b.m_star == std::max<long long>(1, 6 - 4));
  auto small = split_bound(line_sum_monad(kF, 5, TwistSum({0})));
  CHECK(small.m_star == 1);  // floor_dim = n - 4
}

TEST_CASE("bound sums match an independent evaluation from the tables") {
  auto m = null_correlation_monad(kF);
  auto b = split_bound(m);
  auto mu = mu_invariants(m);
  // h^2(N(j)) read off the table row n-1
  auto t = table(m);
  long long sum1 = 0;
  for (auto& [i, mi] : mu)
    for (int j = t.d_lo; j <= t.d_hi; ++j)
      if (i > j) sum1 += mi * t.at(2, j);
  CHECK(b.sum_mu_h2 == sum1);
}

TEST_CASE("vanishing transfer biconditional") {
  for (int i = 1; i <= 3; ++i)
    CHECK(vanishing_transfer_check(euler_monad(kF, 4), i));
  for (int i = 1; i <= 2; ++i)
    CHECK(vanishing_transfer_check(null_correlation_monad(kF), i));
  for (int i = 1; i <= 3; ++i)
    CHECK(vanishing_transfer_check(
        line_sum_monad(kF, 4, TwistSum({2, 0, -1})), i));
  CHECK_THROWS_AS(vanishing_transfer_check(euler_monad(kF, 4), 0),
                  StructuralError);
  CHECK_THROWS_AS(vanishing_transfer_check(euler_monad(kF, 4), 4),
                  StructuralError);
}

TEST_CASE("restriction surjectivity matches H^2 vanishing upstairs") {
  CHECK(h1_restriction_surjectivity_check(euler_monad(kF, 4)));
  CHECK(h1_restriction_surjectivity_check(null_correlation_monad(kF)));
  CHECK(h1_restriction_surjectivity_check(
      line_sum_monad(kF, 3, TwistSum({1, -2}))));
}

TEST_CASE("vanishing chain along iterated extensions") {
  CHECK(vanishing_chain_check(euler_monad(kF, 4), 2));
  CHECK(vanishing_chain_check(line_sum_monad(kF, 4, TwistSum({1, 0})), 3));
  CHECK_THROWS_AS(vanishing_chain_check(null_correlation_monad(kF), 1),
                  StructuralError);
}

TEST_CASE("splitting criterion") {
  CHECK(split_criterion_check(line_sum_monad(kF, 3, TwistSum({2, -1}))));
  CHECK(split_criterion_check(euler_monad(kF, 4)));  // hypotheses fail
  CHECK(split_criterion_check(null_correlation_monad(kF)));

  // a disguised sum of line bundles must come back split
  auto disguised = Monad<Fp>::direct_sum(
      line_sum_monad(kF, 3, TwistSum({1, -1})), zero_pair_monad(kF, 3, 0, 1));
  Matrix<Fp> g = Matrix<Fp>::identity(kF, 4);
  g.at(0, 2) = kF.from_int(3);
  g.at(1, 3) = kF.from_int(-2);
  disguised = restrict_hyperplane(extend_once(disguised.substituted(g)));
  CHECK(split_criterion_check(disguised));
  auto s = split_check(disguised);
  REQUIRE(s.split);
  CHECK(s.twists == TwistSum({1, 1, 0, -1}));  // original plus O(1), O(0)
}

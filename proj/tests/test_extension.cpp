// The extension construction, hyperplane restriction, the restriction
// identity with certificates, and the induced map on H^1.

#include <doctest.h>

#include "monadcoh/corpus.hpp"

using namespace monadcoh;

namespace {
const Fp kF(32003);

CohomologyTable on_window(const Monad<Fp>& m, int lo, int hi) {
  TableOptions w;
  w.window = {{lo, hi}};
  return table(m, w);
}
}  // namespace

TEST_CASE("extend_once reproduces the Euler chain") {
  for (int n : {3, 4, 5}) CHECK(extend_once(euler_monad(kF, n)) ==
                                euler_monad(kF, n + 1));
  auto [e6, acc] = extend(euler_monad(kF, 3), 3);
  CHECK(e6 == euler_monad(kF, 6));
  CHECK(acc == TwistSum({-1, -1, -1}));  // K^1(-1) repeated
  auto [same, none] = extend(euler_monad(kF, 3), 0);
  CHECK(same == euler_monad(kF, 3));
  CHECK(none.empty());
}

TEST_CASE("extend_once on the null correlation monad") {
  auto up = extend_once(null_correlation_monad(kF));
  CHECK(up.n() == 4);
  CHECK(up.kminus() == TwistSum({-1}));
  CHECK(up.kzero() == TwistSum({0, 0, 0, 0, 0, 0}));
  CHECK(up.kplus() == TwistSum({1}));
  CHECK(validate(up).valid());
  CHECK(up.rank() == null_correlation_monad(kF).rank() + 2);
}

TEST_CASE("restriction preserves validity and counts ranks") {
  for (auto m : {euler_monad(kF, 3), null_correlation_monad(kF),
                 line_sum_monad(kF, 3, TwistSum({1, -1}))}) {
    auto round = restrict_hyperplane(extend_once(m));
    CHECK(validate(round).valid());
    CHECK(round.rank() ==
          m.rank() + m.kminus().rank() + m.kplus().rank());
  }
  CHECK_THROWS_AS(restrict_hyperplane(euler_monad(kF, 3)), StructuralError);
}

TEST_CASE("restricting the extended Euler monad splits off O(-1)") {
  auto r = restrict_hyperplane(euler_monad(kF, 4));  // (X0..X3, 0) on P^3
  auto te = table(euler_monad(kF, 3));
  auto tl = table(line_sum_monad(kF, 3, TwistSum({-1})));
  int lo = std::min(te.d_lo, tl.d_lo), hi = std::max(te.d_hi, tl.d_hi);
  auto sum = table_sum(on_window(euler_monad(kF, 3), lo, hi),
                       on_window(line_sum_monad(kF, 3, TwistSum({-1})), lo, hi));
  auto tr = on_window(r, lo, hi);
  CHECK(tr.rows == sum.rows);
}

TEST_CASE("stable extension certificates verify") {
  SUBCASE("cotangent bundle on P^4, two steps") {
    auto cert = verify_stable_extension(euler_monad(kF, 4), 2);
    CHECK(cert.verified);
    CHECK(cert.summands == std::vector<int>{-1, -1});
    CHECK(cert.restricted_rank == 4 + 2);
    CHECK(cert.chi_points.size() == 4 + 2 + 2);
  }
  SUBCASE("null correlation, one step: A = O ⊕ O") {
    auto cert = verify_stable_extension(null_correlation_monad(kF), 1);
    CHECK(cert.verified);
    CHECK(cert.summands == std::vector<int>{0, 0});
  }
  SUBCASE("twist sums verify trivially") {
    auto cert =
        verify_stable_extension(line_sum_monad(kF, 3, TwistSum({2, -1})), 2);
    CHECK(cert.verified);
    CHECK(cert.summands.empty());
  }
  SUBCASE("a rank-zero pair accumulates both shifted summands") {
    auto cert = verify_stable_extension(zero_pair_monad(kF, 3, 0, 2), 1);
    CHECK(cert.verified);
    CHECK(cert.summands == std::vector<int>{1, 1});  // O(0+1), O(2-1)
  }
}

TEST_CASE("chi of an extension drops to the restriction by differencing") {
  for (auto m : {euler_monad(kF, 3), null_correlation_monad(kF)}) {
    auto up = extend_once(m);
    auto down = restrict_hyperplane(up);
    auto cu = euler_poly(up);
    auto cd = euler_poly(down);
    for (int d = -5; d <= 5; ++d)
      CHECK(cu.eval(d) - cu.eval(d - 1) == cd.eval(d));
  }
}

TEST_CASE("restriction map on H^1") {
  SUBCASE("Euler monad on P^5: degree-0 piece is an isomorphism") {
    auto rm = restriction_map_h1(euler_monad(kF, 5));
    CHECK(rm.globally_surjective);
    bool found = false;
    for (auto& pc : rm.pieces)
      if (pc.d == 0) {
        found = true;
        CHECK(pc.dim_up == 1);
        CHECK(pc.dim_down == 1);
        CHECK(pc.rank == 1);
        CHECK(pc.surjective);
      }
    CHECK(found);
  }
  SUBCASE("twist sums are vacuously surjective") {
    auto rm =
        restriction_map_h1(line_sum_monad(kF, 4, TwistSum({1, 0, -2})));
    CHECK(rm.globally_surjective);
    CHECK(rm.pieces.empty());
  }
  SUBCASE("extended null correlation is surjective in every degree") {
    auto rm = restriction_map_h1(extend_once(null_correlation_monad(kF)));
    CHECK(rm.globally_surjective);
  }
  SUBCASE("needs the source on P^4 or higher") {
    CHECK_THROWS_AS(restriction_map_h1(euler_monad(kF, 3)), StructuralError);
  }
}

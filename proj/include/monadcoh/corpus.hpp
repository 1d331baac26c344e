#pragma once

// Named built-ins and the seeded random corpus.  Random monads are built by
// closure operations (twist, direct sum, coordinate change, extension and
// extension/restriction round trips) on validated seeds: raw random
// differentials essentially never satisfy the split-mono condition, while
// closure operations exercise every code path and stay valid by
// construction.

#include "monadcoh/extension.hpp"

namespace monadcoh {

template <class F>
Monad<F> builtin_monad(const F& f, const std::string& name, int n,
                       const std::vector<int>& twists = {}) {
  if (name == "euler") return euler_monad(f, n);
  if (name == "nullcorr") {
    if (n != 3) throw StructuralError("nullcorr lives on P^3");
    return null_correlation_monad(f);
  }
  if (name == "linesum") {
    if (twists.empty())
      throw StructuralError("linesum needs a twist list (--twists)");
    return line_sum_monad(f, n, TwistSum(twists));
  }
  throw StructuralError("unknown builtin '" + name +
                        "' (euler, nullcorr, linesum)");
}

struct RandomProfile {
  int ops = 4;
  int amp = 2;

  static RandomProfile parse(const std::string& name) {
    if (name == "small") return {2, 1};
    if (name == "default") return {4, 2};
    if (name == "wide") return {6, 3};
    throw StructuralError("unknown profile '" + name +
                          "' (small, default, wide)");
  }
};

namespace detail {

template <class F>
Matrix<F> random_coordinate_change(const F& f, int n, std::mt19937_64& rng) {
  // L * U with unit diagonals: invertible by construction, deterministic
  Matrix<F> l = Matrix<F>::identity(f, n + 1);
  Matrix<F> u = Matrix<F>::identity(f, n + 1);
  for (int i = 0; i < n + 1; ++i)
    for (int j = 0; j < n + 1; ++j) {
      if (i > j) l.at(i, j) = f.from_int((long long)(rng() % 5) - 2);
      if (i < j) u.at(i, j) = f.from_int((long long)(rng() % 5) - 2);
    }
  return l.mul(u);
}

template <class F>
int twist_spread(const Monad<F>& m) {
  int lo = 0, hi = 0;
  bool any = false;
  for (const TwistSum* t : {&m.kminus(), &m.kzero(), &m.kplus()}) {
    if (t->empty()) continue;
    lo = any ? std::min(lo, t->min()) : t->min();
    hi = any ? std::max(hi, t->max()) : t->max();
    any = true;
  }
  return any ? hi - lo : 0;
}

}  // namespace detail

template <class F>
Monad<F> random_monad(const F& f, std::uint64_t seed, int n,
                      const std::string& profile = "default") {
  if (n < 3) throw StructuralError("random_monad: need n >= 3");
  RandomProfile prof = RandomProfile::parse(profile);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x6d636f68ull);

  int n0 = n == 3 ? 3 : 3 + (int)(rng() % (std::uint64_t)(n - 2));
  Monad<F> m = (n0 == 3 && rng() % 2 == 0) ? null_correlation_monad(f)
                                           : euler_monad(f, n0);
  auto amp_pick = [&]() { return (int)(rng() % (2 * prof.amp + 1)) - prof.amp; };
  for (int op = 0; op < prof.ops; ++op) {
    switch (rng() % 6) {
      case 0: {
        Monad<F> c = m.twisted(amp_pick());
        if (detail::twist_spread(c) <= 3) m = std::move(c);
        break;
      }
      case 1: {
        if (m.kzero().rank() >= 9) break;
        std::vector<int> tw{amp_pick()};
        if (rng() % 2) tw.push_back(amp_pick());
        Monad<F> c = Monad<F>::direct_sum(
            m, line_sum_monad(f, m.n(), TwistSum(tw)));
        if (detail::twist_spread(c) <= 3) m = std::move(c);
        break;
      }
      case 2: {
        if (m.kzero().rank() >= 8) break;
        int s = amp_pick(), t = amp_pick();
        Monad<F> c =
            Monad<F>::direct_sum(m, zero_pair_monad(f, m.n(), s, t));
        if (detail::twist_spread(c) <= 3) m = std::move(c);
        break;
      }
      case 3:
        m = m.substituted(detail::random_coordinate_change(f, m.n(), rng));
        break;
      case 4:
        if (m.n() < n) m = extend_once(m);
        break;
      case 5:
        if (m.kzero().rank() <= 7) m = restrict_hyperplane(extend_once(m));
        break;
    }
  }
  while (m.n() < n) m = extend_once(m);
  ValidationReport rep = validate(m);
  if (!rep.valid())
    throw InternalConsistencyError("random_monad produced a non-valid monad: " +
                                   rep.reason);
  return m;
}

}  // namespace monadcoh

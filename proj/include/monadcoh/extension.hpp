#pragma once

// The explicit stable-extension construction and its verification.
//
// extend_once lifts a monad on P^n to P^{n+1}:
//   K'^{-1} = K~^{-1},  K'^0 = K~^{-1}(1) ⊕ K~^0 ⊕ K~^1(-1),  K'^1 = K~^1
//   d'^{-1} = (X_{n+1}·id, d~^{-1}, 0)^T,   d'^0 = (0, d~^0, X_{n+1}·id)
// where ~ reads the same polynomial entries in one more variable.  The
// complex condition persists verbatim and restricting back to X_{n+1} = 0
// splits off K^{-1}(1) ⊕ K^1(-1).

#include <array>

#include "monadcoh/cohomology.hpp"

namespace monadcoh {

template <class F>
Monad<F> extend_once(const Monad<F>& m) {
  const F& f = m.field();
  const int n = m.n();
  const TwistSum& km = m.kminus();
  const TwistSum& k0 = m.kzero();
  const TwistSum& kp = m.kplus();
  const int a = km.rank(), b = k0.rank();

  auto [left, perm1] = TwistSum::merge(km.twisted(1), k0);
  auto [kmid, perm2] = TwistSum::merge(left, kp.twisted(-1));

  // final index in K'^0 -> (block 0|1|2, offset); blocks keep the original
  // summand order, so offsets index km / k0 / kp directly
  enum Block { ShiftMinus = 0, Middle = 1, ShiftPlus = 2 };
  auto locate = [&](int i) {
    int j2 = perm2[(std::size_t)i];
    if (j2 >= a + b) return std::pair<int, int>(ShiftPlus, j2 - (a + b));
    int j1 = perm1[(std::size_t)j2];
    if (j1 < a) return std::pair<int, int>(ShiftMinus, j1);
    return std::pair<int, int>(Middle, j1 - a);
  };

  GradedMap<F> dml = m.dminus().lifted();
  GradedMap<F> dzl = m.dzero().lifted();
  Form<F> xlast = Form<F>::variable(f, n + 2, n + 1);

  GradedMap<F> dmin = GradedMap<F>::zero(f, n + 1, km, kmid);
  for (int i = 0; i < kmid.rank(); ++i) {
    auto [blk, off] = locate(i);
    if (blk == ShiftMinus)
      dmin.set(i, off, xlast);
    else if (blk == Middle)
      for (int j = 0; j < a; ++j) dmin.set(i, j, dml.at(off, j));
  }

  GradedMap<F> dzer = GradedMap<F>::zero(f, n + 1, kmid, kp);
  for (int i = 0; i < kmid.rank(); ++i) {
    auto [blk, off] = locate(i);
    if (blk == ShiftPlus)
      dzer.set(off, i, xlast);
    else if (blk == Middle)
      for (int r = 0; r < kp.rank(); ++r) dzer.set(r, i, dzl.at(r, off));
  }

  return Monad<F>(f, n + 1, km, kmid, kp, std::move(dmin), std::move(dzer));
}

template <class F>
Monad<F> restrict_hyperplane(const Monad<F>& m) {
  if (m.n() - 1 < 3)
    throw StructuralError("restrict_hyperplane: output would land below P^3");
  return Monad<F>(m.field(), m.n() - 1, m.kminus(), m.kzero(), m.kplus(),
                  m.dminus().restricted_last(), m.dzero().restricted_last());
}

// Iterated extension; the split summand added per step is K^{-1}(1) ⊕
// K^1(-1) of the *original* monad (the end terms repeat their twists).
template <class F>
std::pair<Monad<F>, TwistSum> extend(const Monad<F>& m, int steps) {
  if (steps < 0) throw StructuralError("extend: negative step count");
  Monad<F> cur = m;
  std::vector<int> acc;
  for (int k = 0; k < steps; ++k) {
    for (int t : m.kminus().list()) acc.push_back(t + 1);
    for (int t : m.kplus().list()) acc.push_back(t - 1);
    cur = extend_once(cur);
  }
  return {std::move(cur), TwistSum(std::move(acc))};
}

struct ExtensionCertificate {
  FieldSpec field;
  int n = 0, steps = 0;
  std::string base_hash;  // canonical content hash of the input monad
  long long base_rank = 0, extended_rank = 0, restricted_rank = 0;
  std::vector<std::array<std::vector<int>, 3>> level_twists;  // per extension
  std::vector<int> summands;  // accumulated A twists, canonical order
  CohomologyTable base_table, restricted_table, expected_table;
  std::vector<CohomologyTable> restriction_tables;  // each step back down
  std::vector<long long> chi_points, chi_restricted, chi_expected;
  bool verified = false;
  std::string failure;
};

// Extends `steps` times, restricts back, and checks that the restriction's
// table equals table(E) plus the accumulated line-bundle summands, cellwise
// on a common window, together with rank and Euler-polynomial agreement at
// n + steps + 2 sample points.
template <class F>
ExtensionCertificate verify_stable_extension(const Monad<F>& m, int steps) {
  if (steps < 1) throw StructuralError("verify_stable_extension: steps >= 1");
  ExtensionCertificate cert;
  cert.field = field_spec_of(m.field());
  cert.n = m.n();
  cert.steps = steps;
  cert.base_rank = m.rank();

  Monad<F> up = m;
  std::vector<int> acc;
  for (int k = 0; k < steps; ++k) {
    for (int t : m.kminus().list()) acc.push_back(t + 1);
    for (int t : m.kplus().list()) acc.push_back(t - 1);
    up = extend_once(up);
    cert.level_twists.push_back({up.kminus().list(), up.kzero().list(),
                                 up.kplus().list()});
  }
  cert.extended_rank = up.rank();
  TwistSum a_sum(std::move(acc));
  cert.summands = a_sum.list();

  Monad<F> down = up;
  for (int k = 0; k < steps; ++k) {
    down = restrict_hyperplane(down);
    cert.restriction_tables.push_back(table(down));
  }
  cert.restricted_rank = down.rank();

  Monad<F> line = line_sum_monad(m.field(), m.n(), a_sum);
  CohomologyTable tE = table(m);
  CohomologyTable tR = cert.restriction_tables.back();
  CohomologyTable tA = table(line);
  int lo = std::min({tE.d_lo, tR.d_lo, tA.d_lo});
  int hi = std::max({tE.d_hi, tR.d_hi, tA.d_hi});
  TableOptions w;
  w.window = {lo, hi};
  cert.base_table = table(m, w);
  cert.restricted_table = table(down, w);
  cert.expected_table = table_sum(cert.base_table, table(line, w));

  cert.verified = true;
  if (cert.restricted_rank != cert.base_rank + a_sum.rank()) {
    cert.verified = false;
    cert.failure = "rank mismatch";
  }
  for (int i = 0; i <= m.n() && cert.verified; ++i)
    for (int d = lo; d <= hi; ++d)
      if (cert.restricted_table.at(i, d) != cert.expected_table.at(i, d)) {
        cert.verified = false;
        cert.failure = "table cell (" + std::to_string(i) + "," +
                       std::to_string(d) + ")";
        break;
      }
  EulerPoly chiR = euler_poly(down);
  EulerPoly chiE = euler_poly(m);
  EulerPoly chiA = euler_poly(line);
  for (int s = 0; s < m.n() + steps + 2; ++s) {
    cert.chi_points.push_back(s);
    cert.chi_restricted.push_back(chiR.eval(s));
    cert.chi_expected.push_back(chiE.eval(s) + chiA.eval(s));
  }
  if (cert.verified && cert.chi_restricted != cert.chi_expected) {
    cert.verified = false;
    cert.failure = "Euler polynomial mismatch";
  }
  return cert;
}

// The map H^1(F(d)) -> H^1(F|_H(d)) induced by X_{n+1} = 0, in cokernel
// coordinates, with per-degree and global surjectivity verdicts.
template <class F>
struct H1RestrictionMap {
  struct Piece {
    int d = 0;
    long long dim_up = 0, dim_down = 0, rank = 0;
    bool surjective = true;
  };
  std::vector<Piece> pieces;
  std::vector<Matrix<F>> matrices;  // aligned with pieces
  bool globally_surjective = true;
};

template <class F>
H1RestrictionMap<F> restriction_map_h1(const Monad<F>& up) {
  if (up.n() < 4)
    throw StructuralError("restriction_map_h1: need the source on P^4+");
  const F& f = up.field();
  const int nup = up.n();
  Monad<F> down = restrict_hyperplane(up);
  H1Support supU = h1_support(up);
  H1Support supD = h1_support(down);
  H1RestrictionMap<F> out;
  if (supU.empty() && supD.empty()) return out;
  int lo = supU.empty() ? supD.lo : supD.empty() ? supU.lo
                                                 : std::min(supU.lo, supD.lo);
  int hi = supU.empty()   ? supD.zero_at
           : supD.empty() ? supU.zero_at
                          : std::max(supU.zero_at, supD.zero_at);

  const TwistSum& c = up.kplus();
  for (int d = lo; d <= hi; ++d) {
    Cokernel<F> cokU = cokernel(up.dzero().section_matrix(d));
    Cokernel<F> cokD = cokernel(down.dzero().section_matrix(d));
    typename H1RestrictionMap<F>::Piece pc;
    pc.d = d;
    pc.dim_up = cokU.dim;
    pc.dim_down = cokD.dim;

    std::vector<std::vector<Monomial>> ubas;
    std::vector<MonomialIndex> dix;
    std::vector<int> uoff(1, 0), doff(1, 0);
    for (int i = 0; i < c.rank(); ++i) {
      ubas.push_back(monomial_basis(nup + 1, d + c.at(i)));
      dix.push_back(MonomialIndex::make(nup, d + c.at(i)));
      uoff.push_back(uoff.back() + (int)ubas.back().size());
      doff.push_back(doff.back() + dix.back().size());
    }
    Matrix<F> mat(f, (int)cokD.dim, (int)cokU.dim);
    for (int col = 0; col < (int)cokU.dim; ++col) {
      int gr = cokU.basis_rows[(std::size_t)col];
      int i = 0;
      while (gr >= uoff[(std::size_t)i + 1]) ++i;
      Monomial mono = ubas[(std::size_t)i][(std::size_t)(gr - uoff[(std::size_t)i])];
      if (mono.e.back() != 0) continue;  // killed by the substitution
      Monomial dropped = mono;
      dropped.e.pop_back();
      std::vector<typename F::Elt> w((std::size_t)doff.back(), f.zero());
      w[(std::size_t)(doff[(std::size_t)i] + dix[(std::size_t)i].at(dropped))] =
          f.one();
      auto proj = cokD.project(std::move(w));
      for (int r = 0; r < (int)cokD.dim; ++r) mat.at(r, col) = proj[(std::size_t)r];
    }
    pc.rank = matrix_rank(mat);
    pc.surjective = pc.rank == pc.dim_down;
    out.globally_surjective = out.globally_surjective && pc.surjective;
    out.pieces.push_back(pc);
    out.matrices.push_back(std::move(mat));
  }
  return out;
}

}  // namespace monadcoh

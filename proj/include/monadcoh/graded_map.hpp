#pragma once

// A matrix of homogeneous forms between twist sums on P^n.  Entry (i, j) of
// a map ⊕_j O(a_j) -> ⊕_i O(b_i) is forced to be homogeneous of degree
// b_i - a_j (identically zero when that is negative), in n+1 variables.
//
// The graded piece H^0(φ(d)) is the scalar matrix of
// ⊕_j S_{d+a_j} -> ⊕_i S_{d+b_i} in the canonical monomial bases, blocks
// laid out in twist order.

#include <atomic>
#include <optional>

#include "monadcoh/form.hpp"
#include "monadcoh/twists.hpp"

namespace monadcoh {

// Columns-above-this-size graded pieces take the sparse rank path (F_p
// only).  Tiny config knob; see CLI --sparse-threshold.
inline std::atomic<int>& sparse_threshold_slot() {
  static std::atomic<int> v{2000};
  return v;
}
inline int sparse_threshold() { return sparse_threshold_slot().load(); }
inline void set_sparse_threshold(int v) { sparse_threshold_slot().store(v); }

template <class F>
class GradedMap {
 public:
  using Elt = typename F::Elt;

  GradedMap(const F& f, int n, TwistSum source, TwistSum target,
            std::vector<Form<F>> entries)
      : field_(f), n_(n), source_(std::move(source)),
        target_(std::move(target)), entries_(std::move(entries)) {
    if (n_ < 1) throw StructuralError("GradedMap: need n >= 1");
    if ((int)entries_.size() != source_.rank() * target_.rank())
      throw StructuralError("GradedMap: entry count mismatch");
    for (int i = 0; i < target_.rank(); ++i)
      for (int j = 0; j < source_.rank(); ++j) {
        const Form<F>& e = at(i, j);
        int want = target_.at(i) - source_.at(j);
        if (e.nvars() != n_ + 1)
          throw StructuralError("GradedMap: entry arity mismatch");
        if (!e.is_zero() && (want < 0 || e.degree() != want))
          throw StructuralError("GradedMap: entry degree mismatch at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ")");
      }
  }

  static GradedMap zero(const F& f, int n, TwistSum source, TwistSum target) {
    std::vector<Form<F>> es;
    es.reserve((std::size_t)source.rank() * (std::size_t)target.rank());
    for (int i = 0; i < target.rank(); ++i)
      for (int j = 0; j < source.rank(); ++j)
        es.push_back(Form<F>::zero(f, n + 1,
                                   std::max(0, target.at(i) - source.at(j))));
    return GradedMap(f, n, std::move(source), std::move(target),
                     std::move(es));
  }

  const F& field() const { return field_; }
  int n() const { return n_; }
  const TwistSum& source() const { return source_; }
  const TwistSum& target() const { return target_; }
  const Form<F>& at(int i, int j) const {
    return entries_[(std::size_t)i * source_.rank() + j];
  }

  void set(int i, int j, Form<F> f) {
    int want = target_.at(i) - source_.at(j);
    if (!f.is_zero() && (want < 0 || f.degree() != want))
      throw StructuralError("GradedMap: entry degree mismatch at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
    entries_[(std::size_t)i * source_.rank() + j] = std::move(f);
  }

  bool is_zero() const {
    for (auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  GradedMap compose(const GradedMap& inner) const {
    if (!(inner.target_ == source_) || inner.n_ != n_)
      throw StructuralError("GradedMap: compose shape mismatch");
    GradedMap out = zero(field_, n_, inner.source_, target_);
    for (int i = 0; i < target_.rank(); ++i)
      for (int j = 0; j < inner.source_.rank(); ++j) {
        Form<F> acc = Form<F>::zero(
            field_, n_ + 1, std::max(0, target_.at(i) - inner.source_.at(j)));
        for (int k = 0; k < source_.rank(); ++k) {
          const Form<F>& a = at(i, k);
          const Form<F>& b = inner.at(k, j);
          if (a.is_zero() || b.is_zero()) continue;
          acc = acc + a * b;
        }
        out.set(i, j, std::move(acc));
      }
    return out;
  }

  // Dual map: negated twists, reversed summand order on both sides (to stay
  // canonical), transposed entries.
  GradedMap dual() const {
    GradedMap out = zero(field_, n_, target_.negated(), source_.negated());
    int sr = source_.rank(), tr = target_.rank();
    for (int i = 0; i < tr; ++i)
      for (int j = 0; j < sr; ++j)
        out.set(sr - 1 - j, tr - 1 - i, at(i, j));
    return out;
  }

  GradedMap twisted(int s) const {
    return GradedMap(field_, n_, source_.twisted(s), target_.twisted(s),
                     entries_);
  }

  // Same entries read on P^{n+1}.
  GradedMap lifted() const {
    std::vector<Form<F>> es;
    es.reserve(entries_.size());
    for (auto& e : entries_) es.push_back(e.lifted());
    return GradedMap(field_, n_ + 1, source_, target_, std::move(es));
  }

  // Substitute X_{n+1} = 0 and drop to P^{n-1}.
  GradedMap restricted_last() const {
    if (n_ < 2) throw StructuralError("GradedMap: cannot restrict below P^1");
    std::vector<Form<F>> es;
    es.reserve(entries_.size());
    for (auto& e : entries_) es.push_back(e.restricted_last());
    return GradedMap(field_, n_ - 1, source_, target_, std::move(es));
  }

  GradedMap substituted(const Matrix<F>& g) const {
    std::vector<Form<F>> es;
    es.reserve(entries_.size());
    for (auto& e : entries_) es.push_back(e.substituted(g));
    return GradedMap(field_, n_, source_, target_, std::move(es));
  }

  // Block-diagonal sum with canonical reordering of both sides; the row and
  // column permutations returned by TwistSum::merge keep entries aligned.
  static GradedMap direct_sum(const GradedMap& a, const GradedMap& b) {
    if (a.n_ != b.n_) throw StructuralError("GradedMap: direct_sum dims");
    auto [src, sperm] = TwistSum::merge(a.source_, b.source_);
    auto [tgt, tperm] = TwistSum::merge(a.target_, b.target_);
    GradedMap out = zero(a.field_, a.n_, src, tgt);
    int asr = a.source_.rank(), atr = a.target_.rank();
    for (int i = 0; i < tgt.rank(); ++i)
      for (int j = 0; j < src.rank(); ++j) {
        int oi = tperm[(std::size_t)i], oj = sperm[(std::size_t)j];
        bool ia = oi < atr, ja = oj < asr;
        if (ia && ja)
          out.set(i, j, a.at(oi, oj));
        else if (!ia && !ja)
          out.set(i, j, b.at(oi - atr, oj - asr));
        // mixed blocks stay zero
      }
    return out;
  }

  // dims of the graded pieces at module degree d
  long long section_rows(int d) const {
    long long r = 0;
    for (int i = 0; i < target_.rank(); ++i)
      r += dim_graded_piece(n_ + 1, d + target_.at(i));
    return r;
  }
  long long section_cols(int d) const {
    long long c = 0;
    for (int j = 0; j < source_.rank(); ++j)
      c += dim_graded_piece(n_ + 1, d + source_.at(j));
    return c;
  }

  Matrix<F> section_matrix(int d) const {
    long long rows = section_rows(d), cols = section_cols(d);
    guard_size(rows, cols);
    Matrix<F> m(field_, (int)rows, (int)cols);
    int coff = 0;
    for (int j = 0; j < source_.rank(); ++j) {
      int cdim = (int)dim_graded_piece(n_ + 1, d + source_.at(j));
      if (cdim == 0) continue;
      int roff = 0;
      for (int i = 0; i < target_.rank(); ++i) {
        int rdim = (int)dim_graded_piece(n_ + 1, d + target_.at(i));
        if (rdim > 0 && !at(i, j).is_zero()) {
          Matrix<F> blk = mult_map_matrix(at(i, j), d + source_.at(j));
          for (int r = 0; r < blk.rows(); ++r)
            for (int c = 0; c < blk.cols(); ++c)
              m.at(roff + r, coff + c) = blk.at(r, c);
        }
        roff += rdim;
      }
      coff += cdim;
    }
    return m;
  }

  long long section_rank(int d) const {
    long long cols = section_cols(d), rows = section_rows(d);
    if (cols == 0 || rows == 0) return 0;
    if constexpr (is_prime_field<F>::value) {
      if (cols > sparse_threshold()) return sparse_section_rank(d);
    }
    return matrix_rank(section_matrix(d));
  }

  // rank of H^n(φ(d)), computed on the dual-of-breaks description: blocks
  // S_{-b_i-d-n-1} -> S_{-a_j-d-n-1} given by multiplication with the
  // transposed entry; the rank is all that is ever used.
  long long hn_rank(int d) const {
    std::vector<long long> rdim((std::size_t)source_.rank());
    std::vector<long long> cdim((std::size_t)target_.rank());
    long long rows = 0, cols = 0;
    for (int j = 0; j < source_.rank(); ++j) {
      rdim[(std::size_t)j] =
          dim_graded_piece(n_ + 1, -source_.at(j) - d - n_ - 1);
      rows += rdim[(std::size_t)j];
    }
    for (int i = 0; i < target_.rank(); ++i) {
      cdim[(std::size_t)i] =
          dim_graded_piece(n_ + 1, -target_.at(i) - d - n_ - 1);
      cols += cdim[(std::size_t)i];
    }
    if (rows == 0 || cols == 0) return 0;
    guard_size(rows, cols);
    Matrix<F> m(field_, (int)rows, (int)cols);
    int coff = 0;
    for (int i = 0; i < target_.rank(); ++i) {
      int cd = (int)cdim[(std::size_t)i];
      if (cd == 0) {
        continue;
      }
      int roff = 0;
      for (int j = 0; j < source_.rank(); ++j) {
        int rd = (int)rdim[(std::size_t)j];
        if (rd > 0 && !at(i, j).is_zero()) {
          Matrix<F> blk =
              mult_map_matrix(at(i, j), -target_.at(i) - d - n_ - 1);
          for (int r = 0; r < blk.rows(); ++r)
            for (int c = 0; c < blk.cols(); ++c)
              m.at(roff + r, coff + c) = blk.at(r, c);
        }
        roff += rd;
      }
      coff += cd;
    }
    return matrix_rank(m);
  }

  // Scalar matrix at a point with coordinates in G.
  template <class G, class EmbedFn>
  Matrix<G> evaluated(const G& gf, const std::vector<typename G::Elt>& x,
                      EmbedFn&& embed) const {
    Matrix<G> m(gf, target_.rank(), source_.rank());
    for (int i = 0; i < target_.rank(); ++i)
      for (int j = 0; j < source_.rank(); ++j)
        m.at(i, j) = at(i, j).evaluated(gf, x, embed);
    return m;
  }

  bool operator==(const GradedMap& o) const {
    return n_ == o.n_ && source_ == o.source_ && target_ == o.target_ &&
           entries_ == o.entries_;
  }

 private:
  void guard_size(long long rows, long long cols) const {
    if (rows > 2000000 || cols > 2000000 || rows * cols > 100000000LL)
      throw StructuralError("graded piece too large; narrow the window");
  }

  long long sparse_section_rank(int d) const;

  F field_;
  int n_;
  TwistSum source_, target_;
  std::vector<Form<F>> entries_;
};

template <>
inline long long GradedMap<Fp>::sparse_section_rank(int d) const {
  SparseRowsFp sm;
  sm.rows = (int)section_rows(d);
  sm.cols = (int)section_cols(d);
  sm.data.assign((std::size_t)sm.rows, {});
  int coff = 0;
  for (int j = 0; j < source_.rank(); ++j) {
    int sd = d + source_.at(j);
    auto domain = monomial_basis(n_ + 1, sd);
    if (domain.empty()) continue;
    int roff = 0;
    for (int i = 0; i < target_.rank(); ++i) {
      int rdim = (int)dim_graded_piece(n_ + 1, d + target_.at(i));
      const Form<Fp>& f = at(i, j);
      if (rdim > 0 && !f.is_zero()) {
        auto target_ix = MonomialIndex::make(n_ + 1, sd + f.degree());
        for (int c = 0; c < (int)domain.size(); ++c)
          for (auto& [mono, coef] : f.terms())
            sm.data[(std::size_t)(roff +
                                  target_ix.at(mono * domain[(std::size_t)c]))]
                .emplace_back(coff + c, coef);
      }
      roff += rdim;
    }
    coff += (int)domain.size();
  }
  for (auto& row : sm.data) std::sort(row.begin(), row.end());
  return sparse_rank_fp(field_, std::move(sm));
}

template <class F>
long long GradedMap<F>::sparse_section_rank(int) const {
  throw StructuralError("sparse path is F_p only");
}

}  // namespace monadcoh

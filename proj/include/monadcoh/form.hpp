#pragma once

// Homogeneous forms in v variables with exact coefficients, stored as a
// canonical map monomial -> nonzero coefficient.  The zero form keeps an
// explicit degree tag so entry-degree bookkeeping stays total.

#include <vector>

#include "monadcoh/matrix.hpp"
#include "monadcoh/monomial.hpp"

namespace monadcoh {

template <class F>
class Form {
 public:
  using Elt = typename F::Elt;
  using Terms = std::map<Monomial, Elt, MonomialBefore>;

  Form(const F& f, int nvars, int degree)
      : field_(f), nvars_(nvars), degree_(degree) {
    if (nvars < 1 || degree < 0)
      throw StructuralError("Form: bad arity or degree");
  }

  static Form zero(const F& f, int nvars, int degree) {
    return Form(f, nvars, degree);
  }

  static Form variable(const F& f, int nvars, int i) {
    Form r(f, nvars, 1);
    Monomial m;
    m.e.assign(nvars, 0);
    m.e[i] = 1;
    r.add_term(m, f.one());
    return r;
  }

  static Form constant(const F& f, int nvars, Elt c) {
    Form r(f, nvars, 0);
    Monomial m;
    m.e.assign(nvars, 0);
    r.add_term(m, c);
    return r;
  }

  const F& field() const { return field_; }
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  void add_term(const Monomial& m, const Elt& c) {
    if (field_.is_zero(c)) return;
    if ((int)m.e.size() != nvars_ || m.degree() != degree_)
      throw StructuralError("Form: term does not match degree/arity");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Form operator+(const Form& o) const {
    require_same(o, degree_);
    Form r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  Form scaled(const Elt& c) const {
    Form r(field_, nvars_, degree_);
    if (field_.is_zero(c)) return r;
    for (auto& [m, v] : terms_) r.add_term(m, field_.mul(c, v));
    return r;
  }

  Form operator*(const Form& o) const {
    if (nvars_ != o.nvars_) throw StructuralError("Form: arity mismatch");
    Form r(field_, nvars_, degree_ + o.degree_);
    for (auto& [ma, ca] : terms_)
      for (auto& [mb, cb] : o.terms_) r.add_term(ma * mb, field_.mul(ca, cb));
    return r;
  }

  bool operator==(const Form& o) const {
    if (nvars_ != o.nvars_ || degree_ != o.degree_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (auto& [m, c] : terms_) {
      if (!(m == it->first) || !field_.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  // Same terms read in one more variable (exponent 0 on the new last one).
  Form lifted() const {
    Form r(field_, nvars_ + 1, degree_);
    for (auto& [m, c] : terms_) {
      Monomial mm = m;
      mm.e.push_back(0);
      r.add_term(mm, c);
    }
    return r;
  }

  // Substitute X_last = 0 and drop the variable.
  Form restricted_last() const {
    if (nvars_ < 2) throw StructuralError("Form: cannot drop last variable");
    Form r(field_, nvars_ - 1, degree_);
    for (auto& [m, c] : terms_) {
      if (m.e.back() != 0) continue;
      Monomial mm = m;
      mm.e.pop_back();
      r.add_term(mm, c);
    }
    return r;
  }

  // X_i -> sum_j g(i, j) X_j for a square scalar matrix g.
  Form substituted(const Matrix<F>& g) const {
    if (g.rows() != nvars_ || g.cols() != nvars_)
      throw StructuralError("Form: substitution matrix shape");
    std::vector<Form> lin;
    lin.reserve((std::size_t)nvars_);
    for (int i = 0; i < nvars_; ++i) {
      Form li(field_, nvars_, 1);
      for (int j = 0; j < nvars_; ++j) {
        if (field_.is_zero(g.at(i, j))) continue;
        Monomial m;
        m.e.assign(nvars_, 0);
        m.e[j] = 1;
        li.add_term(m, g.at(i, j));
      }
      lin.push_back(std::move(li));
    }
    Form r(field_, nvars_, degree_);
    for (auto& [m, c] : terms_) {
      Form prod = constant(field_, nvars_, c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) prod = prod * lin[(std::size_t)i];
      r = r + prod;
    }
    return r;
  }

  // Evaluate at a point with coordinates in a (possibly larger) field G.
  template <class G, class EmbedFn>
  typename G::Elt evaluated(const G& gf,
                            const std::vector<typename G::Elt>& x,
                            EmbedFn&& embed) const {
    auto acc = gf.zero();
    for (auto& [m, c] : terms_) {
      auto t = embed(c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.e[i]; ++k) t = gf.mul(t, x[(std::size_t)i]);
      acc = gf.add(acc, t);
    }
    return acc;
  }

 private:
  void require_same(const Form& o, int deg) const {
    if (nvars_ != o.nvars_ || deg != o.degree_)
      throw StructuralError("Form: degree/arity mismatch");
  }

  F field_;
  int nvars_;
  int degree_;
  Terms terms_;
};

// Matrix of S_d -> S_{d+deg f}, v |-> f*v, in the canonical monomial bases.
// d < 0 yields the empty-domain matrix.
template <class F>
Matrix<F> mult_map_matrix(const Form<F>& f, int d) {
  const F& fld = f.field();
  int v = f.nvars();
  auto domain = monomial_basis(v, d);
  auto target = MonomialIndex::make(v, d + f.degree());
  Matrix<F> m(fld, target.size(), (int)domain.size());
  for (int j = 0; j < (int)domain.size(); ++j)
    for (auto& [mono, c] : f.terms())
      m.at(target.at(mono * domain[(std::size_t)j]), j) = c;
  return m;
}

}  // namespace monadcoh

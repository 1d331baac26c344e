#pragma once

// Monomials in a fixed number of variables and bases of the graded pieces
// S_d of S = k[X_0, ..., X_n].
//
// Canonical order: total degree first, then exponent vectors compared
// lexicographically with X_0 > X_1 > ... (so the basis of S_d starts with
// X_0^d and ends with X_{v-1}^d).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace monadcoh {

struct Monomial {
  std::vector<int> e;  // exponents, length = number of variables

  int degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
  }
  int nvars() const { return (int)e.size(); }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
  }
  bool operator==(const Monomial&) const = default;

  std::string str() const;
};

// "a comes before b" in the canonical listing.
struct MonomialBefore {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e > b.e;  // lexicographically larger exponents come first
  }
};

// C(x, k) as the polynomial x(x-1)...(x-k+1)/k!, valid for any integer x.
long long binom_poly(long long x, int k);

// dim S_d in v variables: C(d+v-1, v-1) for d >= 0, else 0.
long long dim_graded_piece(int v, int d);

// All monomials of degree d in v variables, canonical order; empty for d < 0.
std::vector<Monomial> monomial_basis(int v, int d);

struct MonomialIndex {
  std::vector<Monomial> list;
  std::map<Monomial, int, MonomialBefore> pos;

  static MonomialIndex make(int v, int d);
  int at(const Monomial& m) const { return pos.at(m); }
  int size() const { return (int)list.size(); }
};

}  // namespace monadcoh

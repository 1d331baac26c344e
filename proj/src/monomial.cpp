#include "monadcoh/monomial.hpp"

#include <stdexcept>

namespace monadcoh {

std::string Monomial::str() const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "X" + std::to_string(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

long long binom_poly(long long x, int k) {
  if (k < 0) return 0;
  __int128 num = 1;
  for (int i = 0; i < k; ++i) num *= (__int128)(x - i);
  __int128 den = 1;
  for (int i = 2; i <= k; ++i) den *= i;
  __int128 q = num / den;  // exact: k consecutive integers
  if (q > (__int128)INT64_MAX || q < (__int128)INT64_MIN)
    throw std::overflow_error("binom_poly: value out of int64 range");
  return (long long)q;
}

long long dim_graded_piece(int v, int d) {
  if (d < 0) return 0;
  return binom_poly((long long)d + v - 1, v - 1);
}

namespace {
void enumerate(int v, int d, int var, Monomial& cur,
               std::vector<Monomial>& out) {
  if (var == v - 1) {
    cur.e[var] = d;
    out.push_back(cur);
    cur.e[var] = 0;
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur.e[var] = k;
    enumerate(v, d - k, var + 1, cur, out);
  }
  cur.e[var] = 0;
}
}  // namespace

std::vector<Monomial> monomial_basis(int v, int d) {
  if (v < 1) throw std::invalid_argument("monomial_basis: need v >= 1");
  std::vector<Monomial> out;
  if (d < 0) return out;
  out.reserve((std::size_t)dim_graded_piece(v, d));
  Monomial cur;
  cur.e.assign(v, 0);
  enumerate(v, d, 0, cur, out);
  return out;
}

MonomialIndex MonomialIndex::make(int v, int d) {
  MonomialIndex ix;
  ix.list = monomial_basis(v, d);
  for (int i = 0; i < (int)ix.list.size(); ++i) ix.pos.emplace(ix.list[i], i);
  return ix;
}

}  // namespace monadcoh

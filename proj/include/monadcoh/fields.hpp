#pragma once

// Exact coefficient fields: F_p for a prime p < 2^31, the rationals backed
// by GMP, and the quadratic extension F_{p^2} used only for point searches.
//
// A field object is a small value carrying the context (the modulus); the
// element type is a plain value (uint32_t residue, mpq_class, residue pair).
// Everything downstream (forms, matrices, monads) is templated on the field.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "monadcoh/kernels.hpp"

namespace monadcoh {

// Deterministic cross-check failures inside the engine (never expected for
// well-formed inputs).
class InternalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape/degree violations when assembling maps and monads.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime_u32(std::uint64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

class Fp {
 public:
  using Elt = std::uint32_t;

  explicit Fp(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime_u32(p))
      throw StructuralError("Fp: modulus must be a prime in [2, 2^31)");
  }

  std::uint32_t modulus() const { return p_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1 % p_; }
  bool is_zero(Elt a) const { return a == 0; }
  bool eq(Elt a, Elt b) const { return a == b; }

  Elt add(Elt a, Elt b) const {
    std::uint32_t s = a + b;  // no wrap: a, b < 2^31
    return s >= p_ ? s - p_ : s;
  }
  Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p_ - b; }
  Elt neg(Elt a) const { return a == 0 ? 0 : p_ - a; }
  Elt mul(Elt a, Elt b) const {
    return Elt(std::uint64_t(a) * b % p_);
  }
  Elt inv(Elt a) const {
    if (a == 0) throw StructuralError("Fp: inverse of zero");
    // extended Euclid on (a, p)
    std::int64_t t = 0, newt = 1, r = p_, newr = a;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += p_;
    return Elt(t);
  }

  Elt from_int(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += p_;
    return Elt(r);
  }
  Elt from_mpz(const mpz_class& v) const {
    mpz_class r = v % p_;
    if (r < 0) r += p_;
    return Elt(r.get_ui());
  }

  std::string to_string(Elt a) const { return std::to_string(a); }

  // Deterministic across platforms (plain modulo of the engine output).
  Elt random(std::mt19937_64& rng) const { return Elt(rng() % p_); }

  void row_addmul(Elt* y, const Elt* x, std::size_t len, Elt c) const {
    kernels::addmul_mod(y, x, len, c, p_);
  }
  void row_scale(Elt* y, std::size_t len, Elt c) const {
    kernels::scale_mod(y, len, c, p_);
  }

  bool operator==(const Fp& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

class Rational {
 public:
  using Elt = mpq_class;

  Rational() = default;

  Elt zero() const { return Elt(0); }
  Elt one() const { return Elt(1); }
  bool is_zero(const Elt& a) const { return sgn(a) == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }

  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt inv(const Elt& a) const {
    if (sgn(a) == 0) throw StructuralError("Rational: inverse of zero");
    return 1 / a;
  }

  Elt from_int(long long v) const { return Elt((long)v); }

  std::string to_string(const Elt& a) const { return a.get_str(); }

  Elt random(std::mt19937_64& rng) const {
    return from_int((long long)(rng() % 21) - 10);
  }

  void row_addmul(Elt* y, const Elt* x, std::size_t len, const Elt& c) const {
    for (std::size_t i = 0; i < len; ++i)
      if (sgn(x[i]) != 0) y[i] += c * x[i];
  }
  void row_scale(Elt* y, std::size_t len, const Elt& c) const {
    for (std::size_t i = 0; i < len; ++i) y[i] *= c;
  }

  bool operator==(const Rational&) const { return true; }
};

// F_{p^2} as F_p[t]/(t^2 - s) for odd p (s the least quadratic non-residue)
// and F_2[t]/(t^2 + t + 1) for p = 2.  Only what the point search needs.
class Fp2 {
 public:
  struct Elt {
    std::uint32_t a = 0, b = 0;  // a + b*t
    bool operator==(const Elt&) const = default;
  };

  explicit Fp2(std::uint32_t p) : base_(p) {
    if (p == 2) {
      s_ = 0;  // unused; t^2 = t + 1
    } else {
      std::uint32_t s = 2;
      while (pow_mod(s, (p - 1) / 2) != p - 1) ++s;
      s_ = s;
    }
  }

  const Fp& base() const { return base_; }

  Elt zero() const { return {0, 0}; }
  Elt one() const { return {base_.one(), 0}; }
  bool is_zero(const Elt& x) const { return x.a == 0 && x.b == 0; }
  bool eq(const Elt& x, const Elt& y) const { return x == y; }
  Elt embed(std::uint32_t a) const { return {a, 0}; }

  Elt add(const Elt& x, const Elt& y) const {
    return {base_.add(x.a, y.a), base_.add(x.b, y.b)};
  }
  Elt sub(const Elt& x, const Elt& y) const {
    return {base_.sub(x.a, y.a), base_.sub(x.b, y.b)};
  }
  Elt neg(const Elt& x) const { return {base_.neg(x.a), base_.neg(x.b)}; }

  Elt mul(const Elt& x, const Elt& y) const {
    std::uint32_t ac = base_.mul(x.a, y.a);
    std::uint32_t bd = base_.mul(x.b, y.b);
    std::uint32_t cross =
        base_.add(base_.mul(x.a, y.b), base_.mul(x.b, y.a));
    if (base_.modulus() == 2)  // t^2 = t + 1
      return {base_.add(ac, bd), base_.add(cross, bd)};
    return {base_.add(ac, base_.mul(s_, bd)), cross};
  }

  Elt inv(const Elt& x) const {
    if (is_zero(x)) throw StructuralError("Fp2: inverse of zero");
    // multiply by the conjugate; the norm lands in F_p
    Elt cj = conj(x);
    Elt nrm = mul(x, cj);  // nrm.b == 0
    std::uint32_t ninv = base_.inv(nrm.a);
    return {base_.mul(cj.a, ninv), base_.mul(cj.b, ninv)};
  }

  Elt from_int(long long v) const { return {base_.from_int(v), 0}; }

  std::string to_string(const Elt& x) const {
    if (x.b == 0) return std::to_string(x.a);
    std::string tail = (x.b == 1 ? "t" : std::to_string(x.b) + "t");
    return x.a == 0 ? tail : std::to_string(x.a) + "+" + tail;
  }

  Elt random(std::mt19937_64& rng) const {
    std::uint32_t a = base_.random(rng), b = base_.random(rng);
    return {a, b};
  }

  void row_addmul(Elt* y, const Elt* x, std::size_t len, const Elt& c) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!is_zero(x[i])) y[i] = add(y[i], mul(c, x[i]));
  }
  void row_scale(Elt* y, std::size_t len, const Elt& c) const {
    for (std::size_t i = 0; i < len; ++i) y[i] = mul(c, y[i]);
  }

  bool operator==(const Fp2& o) const { return base_ == o.base_; }

 private:
  std::uint32_t pow_mod(std::uint32_t b, std::uint32_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = base_.mul(r, b);
      b = base_.mul(b, b);
      e >>= 1;
    }
    return r;
  }
  Elt conj(const Elt& x) const {
    if (base_.modulus() == 2) return {base_.add(x.a, x.b), x.b};
    return {x.a, base_.neg(x.b)};
  }

  Fp base_;
  std::uint32_t s_;
};

// Runtime description of the coefficient field of a monad file.
struct FieldSpec {
  enum class Kind { Prime, RationalField };
  Kind kind = Kind::Prime;
  std::uint32_t p = 32003;  // classical computer-algebra default

  static FieldSpec prime(std::uint32_t p) { return {Kind::Prime, p}; }
  static FieldSpec rationals() { return {Kind::RationalField, 0}; }
  bool operator==(const FieldSpec&) const = default;
};

template <class F>
struct is_prime_field : std::false_type {};
template <>
struct is_prime_field<Fp> : std::true_type {};

template <class F>
FieldSpec field_spec_of(const F&);
inline FieldSpec field_spec_of(const Fp& f) {
  return FieldSpec::prime(f.modulus());
}
inline FieldSpec field_spec_of(const Rational&) {
  return FieldSpec::rationals();
}

}  // namespace monadcoh

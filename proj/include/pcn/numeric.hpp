#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pcn {

using Int = mpz_class;
using Rat = mpq_class;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_pow(u64 base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

inline Int pow2(unsigned long e) { return int_pow(Int(2), e); }

// floor(v^{1/k}), exact integer arithmetic
inline Int iroot(const Int& v, unsigned long k) {
  Int r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline u64 to_u64(const Int& v) { return mpz_get_ui(v.get_mpz_t()); }

// Unnormalized big rational: den > 0, no gcd reduction. Used for the huge
// theta products where numerator and denominator are coprime by construction
// and mpq canonicalization would waste time.
struct URat {
  Int num{1};
  Int den{1};

  URat() = default;
  URat(Int n, Int d) : num(std::move(n)), den(std::move(d)) {}
  explicit URat(const Rat& r) : num(r.get_num()), den(r.get_den()) {}

  URat& operator*=(const URat& o) {
    num *= o.num;
    den *= o.den;
    return *this;
  }
  URat& operator*=(const Int& v) {
    num *= v;
    return *this;
  }

  bool positive() const { return num > 0; }
  double log2_approx() const;
};

inline URat operator*(URat a, const URat& b) { return a *= b; }

inline URat urat_pow(const URat& a, unsigned long e) {
  return {int_pow(a.num, e), int_pow(a.den, e)};
}

// a <=> b by cross multiplication
inline int urat_cmp(const URat& a, const URat& b) {
  Int l = a.num * b.den;
  Int r = b.num * a.den;
  return cmp(l, r);
}

inline double log2_int(const Int& v) {
  signed long e;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(d) + static_cast<double>(e);
}

inline double URat::log2_approx() const { return log2_int(num) - log2_int(den); }

inline double log2_rat(const Rat& r) {
  return log2_int(Int(r.get_num())) - log2_int(Int(r.get_den()));
}

}  // namespace pcn

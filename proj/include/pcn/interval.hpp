#pragma once

#include <mpfr.h>

#include <optional>
#include <utility>

#include "pcn/errors.hpp"
#include "pcn/numeric.hpp"

namespace pcn {

// Directed-rounding interval on MPFR. lo is always a lower bound of the true
// value and hi an upper bound; every operation preserves that contract.
class Ival {
 public:
  explicit Ival(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_nan(lo_);
    mpfr_set_nan(hi_);
  }
  Ival(const Ival& o) : Ival(mpfr_get_prec(o.lo_)) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Ival(Ival&& o) noexcept {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Ival& operator=(const Ival& o) {
    if (this != &o) {
      mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
      mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  Ival& operator=(Ival&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

  static Ival from_ui(u64 v, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_uj(r.lo_, v, MPFR_RNDD);
    mpfr_set_uj(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static Ival from_int(const Int& v, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static Ival from_rat(const Rat& v, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  // closed interval given by two decimal strings
  static Ival from_bounds(const char* lo, const char* hi, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_str(r.lo_, lo, 10, MPFR_RNDD);
    mpfr_set_str(r.hi_, hi, 10, MPFR_RNDU);
    return r;
  }

  friend Ival operator+(const Ival& a, const Ival& b) {
    Ival r(a.prec());
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend Ival operator-(const Ival& a, const Ival& b) {
    Ival r(a.prec());
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend Ival operator*(const Ival& a, const Ival& b) {
    Ival r(a.prec());
    mpfr_t t;
    mpfr_init2(t, a.prec());
    // lower bound: min of the four corner products rounded down
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // upper bound: max rounded up
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }
  friend Ival operator/(const Ival& a, const Ival& b) {
    if (!b.definitely_positive() && !b.definitely_negative())
      throw UndecidedComparison("interval division by interval containing zero");
    Ival r(a.prec());
    mpfr_t t;
    mpfr_init2(t, a.prec());
    mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  Ival log2() const {
    if (!definitely_positive()) throw UndecidedComparison("log2 of non-positive interval");
    Ival r(prec());
    mpfr_log2(r.lo_, lo_, MPFR_RNDD);
    mpfr_log2(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  Ival ln() const {
    if (!definitely_positive()) throw UndecidedComparison("ln of non-positive interval");
    Ival r(prec());
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
  }
  // k-th root of a nonnegative interval (monotone)
  Ival rootn(unsigned long k) const {
    Ival r(prec());
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
  }

  bool definitely_positive() const { return mpfr_sgn(lo_) > 0; }
  bool definitely_negative() const { return mpfr_sgn(hi_) < 0; }
  bool definitely_nonpositive() const { return mpfr_sgn(hi_) <= 0; }

  // a >= b certainly / a < b certainly; nullopt when the intervals overlap
  static std::optional<bool> compare_ge(const Ival& a, const Ival& b) {
    if (mpfr_cmp(a.lo_, b.hi_) >= 0) return true;
    if (mpfr_cmp(a.hi_, b.lo_) < 0) return false;
    return std::nullopt;
  }

  double mid() const { return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2; }
  double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

 private:
  mpfr_t lo_, hi_;
};

// Evaluates decide(prec) at increasing precision until it returns a value.
// fail_closed: what to return when the comparison stays undecided at the
// precision cap (sufficient-condition checks may only err toward "fails").
template <typename Fn>
bool adaptive_decide(Fn&& decide, bool fail_closed_value = false, bool fail_closed = true,
                     mpfr_prec_t max_prec = 1 << 14) {
  for (mpfr_prec_t prec = 192; prec <= max_prec; prec *= 2) {
    std::optional<bool> r = decide(prec);
    if (r.has_value()) return *r;
  }
  if (fail_closed) return fail_closed_value;
  throw UndecidedComparison("comparison undecided at maximum precision");
}

}  // namespace pcn

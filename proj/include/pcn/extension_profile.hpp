#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "pcn/errors.hpp"
#include "pcn/number_theory.hpp"

namespace pcn {

struct PairContext {
  PrimePowerQ q;
  u64 n = 0;
  unsigned ell = 0;  // n = p^ell * m
  u64 m = 0;
  u64 g = 0;  // gcd(m, q-1)

  static PairContext make(const PrimePowerQ& q, u64 n) {
    if (n < 1) throw DomainError("pair requires n >= 1");
    PairContext c;
    c.q = q;
    c.n = n;
    c.m = n;
    while (c.m % q.p == 0) {
      c.m /= q.p;
      ++c.ell;
    }
    c.g = std::gcd(c.m, q.value - 1);
    return c;
  }
  static PairContext make(u64 q, u64 n) { return make(prime_power_decompose(q), n); }
};

// one cyclotomic-coset class of divisors of m_l: divisors d with a fixed
// ord_d(q^l); each contributes count irreducible factors of degree ord
struct FactorClass {
  u64 d = 0;
  u64 ord = 0;    // e_d = ord_d(q^l)
  u64 count = 0;  // phi(d) / e_d
};

struct ExtensionProfile {
  u64 l = 0;
  u64 m_l = 0;          // p-free part of n/l
  unsigned wild_exp = 0;  // n/l = p^wild_exp * m_l
  std::vector<FactorClass> classes;
  u64 distinct_count = 0;  // D_l
  Int w;                   // W_l = 2^{D_l}
  URat theta;              // exact; denominator q^{l * m_l}
};

struct ProfileBundle {
  PairContext pair;
  std::vector<ExtensionProfile> profiles;  // one per proper divisor l of n
  Int w_product;
  URat theta_q;
};

namespace detail {

inline ExtensionProfile profile_uncached(const PrimePowerQ& q, u64 n, u64 l) {
  if (l == 0 || n % l != 0) throw DomainError("profile requires l | n");
  ExtensionProfile prof;
  prof.l = l;
  u64 nl = n / l;
  prof.m_l = nl;
  while (prof.m_l % q.p == 0) {
    prof.m_l /= q.p;
    ++prof.wild_exp;
  }
  Int ql = int_pow(q.value, static_cast<unsigned long>(l));
  Int theta_num = 1;
  u64 degree_sum = 0;
  for (u64 d : divisors_of(prof.m_l)) {
    u64 e = d == 1 ? 1 : multiplicative_order(ql, d);
    u64 cnt = euler_phi_u64(d) / e;
    prof.classes.push_back({d, e, cnt});
    prof.distinct_count += cnt;
    degree_sum += cnt * e;
    Int qle = int_pow(ql, static_cast<unsigned long>(e));
    theta_num *= int_pow(Int(qle - 1), static_cast<unsigned long>(cnt));
  }
  if (degree_sum != prof.m_l) throw Error("factor class degrees do not sum to deg F_l'");
  prof.w = pow2(static_cast<unsigned long>(prof.distinct_count));
  prof.theta = URat(theta_num, int_pow(ql, static_cast<unsigned long>(prof.m_l)));
  return prof;
}

}  // namespace detail

// the pipeline touches thousands of pairs sharing divisors; memoize
inline ExtensionProfile profile(const PrimePowerQ& q, u64 n, u64 l) {
  static std::shared_mutex mu;
  static std::map<std::tuple<u64, u64, u64>, ExtensionProfile> memo;
  std::tuple<u64, u64, u64> key{q.value, n, l};
  {
    std::shared_lock lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  ExtensionProfile prof = detail::profile_uncached(q, n, l);
  std::unique_lock lk(mu);
  return memo.emplace(key, std::move(prof)).first->second;
}

inline ProfileBundle bundle(const PrimePowerQ& q, u64 n) {
  if (n < 2) throw DomainError("bundle requires n >= 2");
  ProfileBundle b;
  b.pair = PairContext::make(q, n);
  b.w_product = 1;
  for (u64 l : divisors_of(n)) {
    if (l == n) continue;
    b.profiles.push_back(profile(q, n, l));
    b.w_product *= b.profiles.back().w;
    b.theta_q *= b.profiles.back().theta;
  }
  return b;
}

// trivial profile at l = n: W = 2, theta = 1 - q^{-n}
inline URat trivial_profile_factor(const PrimePowerQ& q, u64 n) {
  Int qn = int_pow(q.value, static_cast<unsigned long>(n));
  return URat(2 * (qn - 1), qn);
}

// exact count of elements of F_{q^n} normal over F_{q^l}:
// q^n * prod_d (1 - q^{-l e_d})^{count_d}; multiplicities only affect the
// power of q, so the profile data suffices
inline Int normal_element_count(const PrimePowerQ& q, u64 n, u64 l) {
  ExtensionProfile prof = profile(q, n, l);
  // q^n * theta = q^{n - l*m_l} * theta_num
  Int r = int_pow(q.value, static_cast<unsigned long>(n - l * prof.m_l));
  return r * prof.theta.num;
}

// Completely basic test: for every prime r | n, r must not divide
// ord_{(n/r)'}(q) where (n/r)' is the p-free part of n/r.
inline bool is_completely_basic(const PrimePowerQ& q, u64 n) {
  if (n < 2) throw DomainError("is_completely_basic requires n >= 2");
  for (auto [r, e] : factor_u64(n)) {
    u64 k = n / r;
    while (k % q.p == 0) k /= q.p;
    if (multiplicative_order(q.value, k) % r == 0) return false;
  }
  return true;
}

}  // namespace pcn

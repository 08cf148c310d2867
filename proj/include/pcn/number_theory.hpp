#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcn/errors.hpp"
#include "pcn/interval.hpp"
#include "pcn/numeric.hpp"

namespace pcn {

// ---------------------------------------------------------------------------
// small primes
// ---------------------------------------------------------------------------

class SmallPrimes {
 public:
  static constexpr u32 kLimit = 1u << 20;  // 1048576

  static const SmallPrimes& instance() {
    static SmallPrimes s;
    return s;
  }

  const std::vector<u32>& primes() const { return primes_; }

  u32 smallest_factor(u32 n) const { return spf_[n]; }
  bool is_prime_u32(u32 n) const { return n >= 2 && n <= kLimit && spf_[n] == n; }

  // factorization of n <= kLimit
  std::vector<std::pair<u32, unsigned>> factor(u32 n) const {
    std::vector<std::pair<u32, unsigned>> out;
    while (n > 1) {
      u32 p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }

 private:
  SmallPrimes() : spf_(kLimit + 1) {
    for (u32 i = 0; i <= kLimit; ++i) spf_[i] = i;
    for (u32 i = 2; static_cast<u64>(i) * i <= kLimit; ++i)
      if (spf_[i] == i)
        for (u64 j = static_cast<u64>(i) * i; j <= kLimit; j += i)
          if (spf_[j] == j) spf_[j] = i;
    for (u32 i = 2; i <= kLimit; ++i)
      if (spf_[i] == i) primes_.push_back(i);
  }

  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

// ---------------------------------------------------------------------------
// u64 modular arithmetic and primality
// ---------------------------------------------------------------------------

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod_u64(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Deterministic Miller-Rabin below 3.317e24 (12 prime bases); BPSW-based
// mpz_probab_prime_p beyond that.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  static const Int kDeterministicLimit = Int("3317044064679887385961981");
  if (n < kDeterministicLimit) {
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
      Int x = powmod(Int(static_cast<unsigned long>(a)), d, n);
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (unsigned long i = 0; i + 1 < r; ++i) {
        x = x * x % n;
        if (x == n - 1) {
          composite = false;
          break;
        }
      }
      if (composite) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

// ---------------------------------------------------------------------------
// FactoredInteger
// ---------------------------------------------------------------------------

struct FactoredInteger {
  Int value{1};
  std::vector<std::pair<Int, unsigned>> factors;  // ascending primes

  void check() const {
    Int prod = 1;
    Int prev = 1;
    for (const auto& [p, e] : factors) {
      if (p <= prev) throw Error("factor list not strictly increasing");
      if (!is_prime(p)) throw Error("listed factor is not prime: " + p.get_str());
      prev = p;
      prod *= int_pow(p, e);
    }
    if (prod != value) throw Error("factorization does not reconstruct value");
  }

  Int radical() const {
    Int r = 1;
    for (const auto& [p, e] : factors) r *= p;
    return r;
  }
  std::size_t omega() const { return factors.size(); }
};

// ---------------------------------------------------------------------------
// Pollard rho (Brent) with an iteration budget
// ---------------------------------------------------------------------------

inline Int pollard_brent(const Int& n, u64 budget_iters) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Int y, c, m(128), g, r, q, x, ys, t;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0xC0FFEEul);  // deterministic runs
  u64 spent = 0;
  for (;;) {
    y = rng.get_z_range(n - 3) + 2;
    c = rng.get_z_range(n - 3) + 1;
    g = 1;
    r = 1;
    q = 1;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        Int lim = m < r - k ? m : r - k;
        for (Int i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          t = x - y;
          mpz_abs(t.get_mpz_t(), t.get_mpz_t());
          q = q * t % n;
        }
        g = gcd(q, n);
        k += m;
        spent += mpz_get_ui(lim.get_mpz_t());
        if (spent > budget_iters)
          throw FactorizationTimeout("pollard rho budget exhausted on " + n.get_str());
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        t = x - ys;
        mpz_abs(t.get_mpz_t(), t.get_mpz_t());
        g = gcd(t, n);
        if (++spent > budget_iters)
          throw FactorizationTimeout("pollard rho budget exhausted on " + n.get_str());
      }
    }
    if (g != n) return g;
  }
}

// ---------------------------------------------------------------------------
// factorization cache (JSON persistence, benign concurrent access)
// ---------------------------------------------------------------------------

class FactorCache {
 public:
  static FactorCache& instance() {
    static FactorCache c;
    return c;
  }

  std::optional<std::vector<std::pair<Int, unsigned>>> lookup(const Int& v) const {
    std::shared_lock lk(mu_);
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const Int& v, const std::vector<std::pair<Int, unsigned>>& f) {
    std::unique_lock lk(mu_);
    map_[v] = f;  // last write wins; values are canonical
  }

  void clear() {
    std::unique_lock lk(mu_);
    map_.clear();
  }

  std::size_t size() const {
    std::shared_lock lk(mu_);
    return map_.size();
  }

  // JSON map: decimal value -> ascending [prime, exponent] pairs
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json j;
    in >> j;
    std::unique_lock lk(mu_);
    for (auto it = j.begin(); it != j.end(); ++it) {
      Int v(it.key());
      std::vector<std::pair<Int, unsigned>> f;
      for (const auto& pe : it.value()) f.emplace_back(Int(pe[0].get<std::string>()), pe[1].get<unsigned>());
      map_[v] = std::move(f);
    }
  }

  void save_file(const std::string& path) const {
    nlohmann::ordered_json j;
    {
      std::shared_lock lk(mu_);
      for (const auto& [v, f] : map_) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [p, e] : f) arr.push_back({p.get_str(), e});
        j[v.get_str()] = arr;
      }
    }
    std::ofstream out(path);
    out << j.dump();
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<Int, std::vector<std::pair<Int, unsigned>>> map_;
};

// ---------------------------------------------------------------------------
// factor_integer: trial division to 2^20, then Brent rho
// ---------------------------------------------------------------------------

inline constexpr u64 kDefaultRhoBudget = 80'000'000;

namespace detail {

inline void factor_rec(Int n, std::map<Int, unsigned>& out, u64 budget) {
  std::vector<Int> stack{std::move(n)};
  while (!stack.empty()) {
    Int v = std::move(stack.back());
    stack.pop_back();
    if (v == 1) continue;
    if (is_prime(v)) {
      ++out[v];
      continue;
    }
    // perfect powers collapse before rho
    if (mpz_perfect_power_p(v.get_mpz_t())) {
      for (unsigned long k = 2; k <= mpz_sizeinbase(v.get_mpz_t(), 2); ++k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k) != 0) {
          std::map<Int, unsigned> sub;
          factor_rec(root, sub, budget);
          for (const auto& [p, e] : sub) out[p] += e * k;
          root = 0;
          v = 1;
          break;
        }
      }
      if (v == 1) continue;
    }
    Int d = pollard_brent(v, budget);
    stack.push_back(v / d);
    stack.push_back(std::move(d));
  }
}

}  // namespace detail

inline FactoredInteger factor_integer(const Int& n, u64 rho_budget = kDefaultRhoBudget) {
  if (n < 1) throw DomainError("factor_integer requires N >= 1");
  FactoredInteger out;
  out.value = n;
  if (n == 1) return out;
  if (auto hit = FactorCache::instance().lookup(n)) {
    out.factors = *hit;
    return out;
  }

  std::map<Int, unsigned> acc;
  Int rest = n;
  const auto& sp = SmallPrimes::instance();
  for (u32 p : sp.primes()) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      acc[Int(p)] = e;
    }
    // once rest < p^2 it is prime or 1
    if (rest > 1 && rest < static_cast<u64>(p) * p) break;
  }
  if (rest > 1) detail::factor_rec(rest, acc, rho_budget);

  out.factors.assign(acc.begin(), acc.end());
  FactorCache::instance().insert(n, out.factors);
  return out;
}

// ---------------------------------------------------------------------------
// prime powers
// ---------------------------------------------------------------------------

struct PrimePowerQ {
  u64 value = 0;
  u64 p = 0;
  unsigned e = 0;
};

inline PrimePowerQ prime_power_decompose(u64 q) {
  if (q < 2) throw DomainError("prime power must be >= 2");
  u64 p = q;
  if (!is_prime_u64(q)) {
    // smallest prime factor by trial division
    p = 0;
    for (u32 c : SmallPrimes::instance().primes()) {
      if (static_cast<u64>(c) * c > q) break;
      if (q % c == 0) {
        p = c;
        break;
      }
    }
    if (p == 0) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  }
  unsigned e = 0;
  u64 rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  return {q, p, e};
}

inline bool is_prime_power(u64 q) {
  if (q < 2) return false;
  try {
    prime_power_decompose(q);
    return true;
  } catch (const NotAPrimePower&) {
    return false;
  }
}

// all prime powers q with lo < q < hi (strict real bounds)
inline std::vector<PrimePowerQ> prime_powers_in_interval(double lo, double hi) {
  if (!(lo < hi)) throw DomainError("prime_powers_in_interval requires lo < hi");
  std::vector<PrimePowerQ> out;
  u64 start = lo < 2 ? 2 : static_cast<u64>(std::floor(lo)) ;
  for (u64 q = start; static_cast<double>(q) < hi; ++q) {
    if (static_cast<double>(q) <= lo) continue;
    if (is_prime_power(q)) out.push_back(prime_power_decompose(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// divisors, phi, moebius for u64 (via small factorization or given factors)
// ---------------------------------------------------------------------------

inline std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  if (n <= SmallPrimes::kLimit) {
    for (auto [p, e] : SmallPrimes::instance().factor(static_cast<u32>(n))) out.emplace_back(p, e);
    return out;
  }
  FactoredInteger f = factor_integer(Int(static_cast<unsigned long>(n)));
  for (const auto& [p, e] : f.factors) out.emplace_back(to_u64(p), e);
  return out;
}

inline std::vector<u64> divisors_of(u64 n) {
  std::vector<u64> ds{1};
  for (auto [p, e] : factor_u64(n)) {
    std::size_t base = ds.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline u64 euler_phi_u64(u64 n) {
  u64 r = n;
  for (auto [p, e] : factor_u64(n)) r -= r / p;
  return r;
}

inline int moebius_u64(u64 n) {
  int sign = 1;
  for (auto [p, e] : factor_u64(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

// ---------------------------------------------------------------------------
// multiplicative order
// ---------------------------------------------------------------------------

// smallest e >= 1 with q^e = 1 (mod k); ord modulo 1 is 1
inline u64 multiplicative_order(const Int& q, u64 k) {
  if (k == 0) throw DomainError("order modulo 0 undefined");
  if (k == 1) return 1;
  Int km(static_cast<unsigned long>(k));
  Int qm = q % km;
  if (qm < 0) qm += km;
  if (gcd(Int(qm), km) != 1) throw NotCoprime("multiplicative_order: gcd(q,k) > 1");
  u64 a = to_u64(qm);
  u64 e = euler_phi_u64(k);
  for (auto [u, uexp] : factor_u64(e)) {
    while (e % u == 0 && powmod_u64(a, e / u, k) == 1) e /= u;
  }
  return e;
}

inline u64 multiplicative_order(u64 q, u64 k) {
  return multiplicative_order(Int(static_cast<unsigned long>(q)), k);
}

// ---------------------------------------------------------------------------
// cyclotomic splitting of q^n - 1
// ---------------------------------------------------------------------------

// Phi_d(q) by the Moebius product, exact division
inline Int cyclotomic_value(u64 d, const Int& q) {
  Int num = 1, den = 1;
  for (u64 dd : divisors_of(d)) {
    int mu = moebius_u64(d / dd);
    if (mu == 0) continue;
    Int term = int_pow(q, static_cast<unsigned long>(dd)) - 1;
    (mu > 0 ? num : den) *= term;
  }
  Int r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

// [(d, Phi_d(q))] for d | n; product = q^n - 1
inline std::vector<std::pair<u64, Int>> cyclotomic_split(u64 q, u64 n) {
  if (q < 2 || n < 1) throw DomainError("cyclotomic_split requires q >= 2, n >= 1");
  Int qz(static_cast<unsigned long>(q));
  std::vector<std::pair<u64, Int>> out;
  for (u64 d : divisors_of(n)) out.emplace_back(d, cyclotomic_value(d, qz));
  return out;
}

// full factorization of q^n - 1, splitting cyclotomic pieces individually.
// For q = p^e the pieces are Phi_d(p) over d | e*n, which are finer.
inline FactoredInteger factor_q_pow_n_minus_1(const PrimePowerQ& q, u64 n,
                                              u64 rho_budget = kDefaultRhoBudget) {
  Int value = int_pow(q.value, static_cast<unsigned long>(n)) - 1;
  if (auto hit = FactorCache::instance().lookup(value)) {
    FactoredInteger out;
    out.value = value;
    out.factors = *hit;
    return out;
  }
  std::map<Int, unsigned> acc;
  Int base(static_cast<unsigned long>(q.p));
  for (u64 d : divisors_of(n * q.e)) {
    FactoredInteger piece = factor_integer(cyclotomic_value(d, base), rho_budget);
    for (const auto& [p, e] : piece.factors) acc[p] += e;
  }
  FactoredInteger out;
  out.value = value;
  out.factors.assign(acc.begin(), acc.end());
  FactorCache::instance().insert(value, out.factors);
  return out;
}

// ---------------------------------------------------------------------------
// sum of divisors, Robin's bound
// ---------------------------------------------------------------------------

inline Int sigma_divisors(u64 n) {
  if (n < 1) throw DomainError("sigma_divisors requires n >= 1");
  Int r = 1;
  for (auto [p, e] : factor_u64(n)) {
    Int pe = int_pow(p, e + 1) - 1;
    Int base(static_cast<unsigned long>(p));
    mpz_divexact(pe.get_mpz_t(), pe.get_mpz_t(), Int(base - 1).get_mpz_t());
    r *= pe;
  }
  return r;
}

// e^gamma enclosed per configuration; upper bound always used on the bound side
inline Ival robin_interval(u64 n, mpfr_prec_t prec) {
  if (n < 3) throw DomainError("Robin's bound requires n >= 3");
  Ival eg = Ival::from_bounds("1.78107", "1.78108", prec);
  Ival nn = Ival::from_ui(n, prec);
  Ival ll = nn.ln().ln();
  Ival c = Ival::from_rat(Rat(6483, 10000), prec);
  return eg * nn * ll + c * nn / ll;
}

// guaranteed >= e^gamma n loglog n + 0.6483 n / loglog n
inline double robin_upper_bound(u64 n) { return robin_interval(n, 128).upper_double(); }

// ---------------------------------------------------------------------------
// small prime divisors of q^n - 1 without factoring
// ---------------------------------------------------------------------------

// all primes s <= B with s | q^n - 1, via s not dividing q and ord_s(q) | n
inline std::vector<u64> small_prime_divisors(u64 q, u64 n, u64 B) {
  if (B < 2) throw DomainError("small_prime_divisors requires B >= 2");
  if (B > SmallPrimes::kLimit) throw DomainError("small prime bound exceeds sieve limit");
  std::vector<u64> out;
  for (u32 s : SmallPrimes::instance().primes()) {
    if (s > B) break;
    if (q % s == 0) continue;
    if (n % multiplicative_order(q, s) == 0) out.push_back(s);
  }
  return out;
}

inline std::pair<Int, Int> radical_and_divisor_count(const FactoredInteger& f) {
  Int radical = 1;
  for (const auto& [p, e] : f.factors) radical *= p;
  return {radical, pow2(static_cast<unsigned long>(f.factors.size()))};
}

}  // namespace pcn

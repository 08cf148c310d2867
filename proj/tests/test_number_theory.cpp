#include "pcn/number_theory.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace pcn;

namespace {

// independent oracle: complete trial-division factorization, valid for any N
// whose prime factors are all reachable by dividing out primes <= 10^6 and
// whose final cofactor (if any) is < 10^12, so trial division up to sqrt
// certifies primality.
std::vector<std::pair<Int, unsigned>> trial_factor_oracle(Int n) {
  std::vector<std::pair<Int, unsigned>> out;
  for (u64 p = 2; p <= 1000000; p = (p == 2 ? 3 : p + 2)) {
    if (n == 1) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) out.emplace_back(Int(static_cast<unsigned long>(p)), e);
  }
  if (n > 1) {
    REQUIRE(n < Int("1000000000000"));
    // certify primality of the cofactor by trial division to sqrt
    Int r = iroot(n, 2);
    for (Int d = 2; d <= r; ++d) REQUIRE(n % d != 0);
    out.emplace_back(n, 1);
  }
  return out;
}

}  // namespace

TEST_CASE("prime_power_decompose") {
  auto a = prime_power_decompose(8);
  CHECK(a.p == 2);
  CHECK(a.e == 3);
  auto b = prime_power_decompose(49);
  CHECK(b.p == 7);
  CHECK(b.e == 2);
  CHECK_THROWS_AS(prime_power_decompose(12), NotAPrimePower);
  CHECK_THROWS_AS(prime_power_decompose(1), DomainError);

  // property: p^e round-trips for random p, e
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    u64 p = SmallPrimes::instance().primes()[rng() % 1000];
    unsigned e = 1 + rng() % 3;
    u64 q = 1;
    for (unsigned k = 0; k < e; ++k) q *= p;
    auto d = prime_power_decompose(q);
    CHECK(d.p == p);
    CHECK(d.e == e);
  }
}

TEST_CASE("factor_integer basics") {
  auto f = factor_integer(63);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair<Int, unsigned>{3, 2});
  CHECK(f.factors[1] == std::pair<Int, unsigned>{7, 1});
  f.check();

  auto one = factor_integer(1);
  CHECK(one.factors.empty());
  CHECK(one.value == 1);

  Int big = int_pow(8, 12) - 1;
  auto fb = factor_integer(big);
  fb.check();
  auto oracle = trial_factor_oracle(big);
  REQUIRE(fb.factors.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(fb.factors[i].first == oracle[i].first);
    CHECK(fb.factors[i].second == oracle[i].second);
  }
  std::set<Int> primes;
  for (auto& [p, e] : fb.factors) primes.insert(p);
  CHECK(primes == std::set<Int>{3, 5, 7, 13, 19, 37, 73, 109});
}

TEST_CASE("factor_integer random reconstruction") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    Int n = Int(static_cast<unsigned long>(rng() % 1000000000000ull)) + 2;
    auto f = factor_integer(n);
    f.check();
    CHECK(f.value == n);
  }
}

TEST_CASE("cyclotomic_split") {
  auto s = cyclotomic_split(2, 6);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == std::pair<u64, Int>{1, 1});
  CHECK(s[1] == std::pair<u64, Int>{2, 3});
  CHECK(s[2] == std::pair<u64, Int>{3, 7});
  CHECK(s[3] == std::pair<u64, Int>{6, 3});

  auto t = cyclotomic_split(5, 1);
  REQUIRE(t.size() == 1);
  CHECK(t[0].second == 4);

  auto u = cyclotomic_split(3, 2);
  REQUIRE(u.size() == 2);
  CHECK(u[0].second == 2);
  CHECK(u[1].second == 4);

  // product identity over the full grid
  for (u64 q = 2; q <= 50; ++q)
    for (u64 n = 1; n <= 24; ++n) {
      Int prod = 1;
      for (auto& [d, v] : cyclotomic_split(q, n)) prod *= v;
      REQUIRE(prod == int_pow(q, n) - 1);
    }
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(2, 3) == 2);
  CHECK(multiplicative_order(4, 7) == 3);
  CHECK(multiplicative_order(5, 1) == 1);
  CHECK_THROWS_AS(multiplicative_order(6, 4), NotCoprime);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    u64 k = 2 + rng() % 5000;
    u64 q = 2 + rng() % 100000;
    if (std::gcd(q, k) != 1) continue;
    u64 o = multiplicative_order(q, k);
    CHECK(powmod_u64(q % k, o, k) == 1 % k);
    CHECK(euler_phi_u64(k) % o == 0);
  }
}

TEST_CASE("sigma and Robin") {
  CHECK(sigma_divisors(1) == 1);
  CHECK(sigma_divisors(12) == 28);
  CHECK(sigma_divisors(285) == 480);
  CHECK(sigma_divisors(1680) == 5952);

  CHECK_THROWS_AS(robin_upper_bound(2), DomainError);
  CHECK(robin_upper_bound(3) >= 4.0);
  CHECK(robin_upper_bound(285) >= 480.0);
  CHECK(robin_upper_bound(1680) >= 5952.0);
  for (u64 n = 3; n <= 20000; ++n) {
    REQUIRE(Int(static_cast<long>(std::ceil(robin_upper_bound(n)))) >= sigma_divisors(n));
  }
}

TEST_CASE("small_prime_divisors") {
  CHECK(small_prime_divisors(2, 6, 100) == std::vector<u64>{3, 7});
  CHECK(small_prime_divisors(3, 2, 10) == std::vector<u64>{2});
  auto sp = small_prime_divisors(8, 12, 4096);
  CHECK(sp == std::vector<u64>{3, 5, 7, 13, 19, 37, 73, 109});

  // agreement with explicit factorization on random pairs
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    u64 q = 2 + rng() % 60;
    if (!is_prime_power(q)) continue;
    u64 n = 1 + rng() % 12;
    auto full = factor_q_pow_n_minus_1(prime_power_decompose(q), n);
    std::vector<u64> expect;
    for (auto& [p, e] : full.factors)
      if (p <= 4096) expect.push_back(to_u64(p));
    CHECK(small_prime_divisors(q, n, 4096) == expect);
  }
}

TEST_CASE("radical_and_divisor_count") {
  auto [r1, w1] = radical_and_divisor_count(factor_integer(63));
  CHECK(r1 == 21);
  CHECK(w1 == 4);
  auto [r2, w2] = radical_and_divisor_count(factor_integer(1));
  CHECK(r2 == 1);
  CHECK(w2 == 1);
  auto [r3, w3] = radical_and_divisor_count(factor_q_pow_n_minus_1(prime_power_decompose(8), 12));
  CHECK(r3 == Int(3) * 5 * 7 * 13 * 19 * 37 * 73 * 109);
  CHECK(w3 == 256);
}

TEST_CASE("prime_powers_in_interval") {
  auto a = prime_powers_in_interval(8, 16);
  std::vector<u64> va;
  for (auto& q : a) va.push_back(q.value);
  CHECK(va == std::vector<u64>{9, 11, 13});
  CHECK(prime_powers_in_interval(2, 3).empty());
  auto b = prime_powers_in_interval(1, 10);
  std::vector<u64> vb;
  for (auto& q : b) vb.push_back(q.value);
  CHECK(vb == std::vector<u64>{2, 3, 4, 5, 7, 8, 9});
}

TEST_CASE("factor cache round trip") {
  FactorCache::instance().clear();
  factor_integer(1234567891011);
  factor_integer(63);
  std::string path = "pcn_cache_test.json";
  FactorCache::instance().save_file(path);
  FactorCache::instance().clear();
  CHECK(FactorCache::instance().size() == 0);
  FactorCache::instance().load_file(path);
  auto hit = FactorCache::instance().lookup(Int("1234567891011"));
  REQUIRE(hit.has_value());
  Int prod = 1;
  for (auto& [p, e] : *hit) prod *= int_pow(p, e);
  CHECK(prod == Int("1234567891011"));
  std::remove(path.c_str());
}

TEST_CASE("primality helpers") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int("483563163219889")));
  CHECK_FALSE(is_prime(Int("483563163219891")));
  CHECK(is_prime_u64(4093));
  CHECK_FALSE(is_prime_u64(4095));
  // beyond the deterministic MR range
  CHECK(is_prime(Int("10000000000000000000000000000000000000121")));
}

#include "pcn/finite_field.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pcn;

namespace {

// independent reducibility oracle for small degree: searches a monic divisor
// of degree 1..k/2 by exhaustive polynomial division
bool has_proper_factor(const std::vector<u32>& tail, u64 p) {
  unsigned k = static_cast<unsigned>(tail.size());
  std::vector<u32> full(tail);
  full.push_back(1);
  auto divides = [&](const std::vector<u32>& divisor) {
    std::vector<long long> a(full.begin(), full.end());
    while (a.size() >= divisor.size()) {
      long long c = a.back() % static_cast<long long>(p);
      if (c) {
        std::size_t off = a.size() - divisor.size();
        for (std::size_t i = 0; i < divisor.size(); ++i)
          a[off + i] = ((a[off + i] - c * divisor[i]) % static_cast<long long>(p) +
                        static_cast<long long>(p)) %
                       static_cast<long long>(p);
      }
      a.pop_back();
    }
    for (long long c : a)
      if (c % static_cast<long long>(p)) return false;
    return true;
  };
  for (unsigned d = 1; d <= k / 2; ++d) {
    u64 count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (u64 v = 0; v < count; ++v) {
      std::vector<u32> div;
      u64 t = v;
      for (unsigned i = 0; i < d; ++i) {
        div.push_back(static_cast<u32>(t % p));
        t /= p;
      }
      div.push_back(1);  // monic
      if (divides(div)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("build_field deterministic modulus") {
  auto f21 = build_field(2, 1);
  CHECK(f21.modulus == std::vector<u32>{0});  // modulus X

  auto f22 = build_field(2, 2);
  CHECK(f22.modulus == std::vector<u32>{1, 1});  // X^2+X+1

  // lexicographically smallest irreducible quadratic over F_3, independent scan
  auto f32 = build_field(3, 2);
  std::vector<u32> first;
  for (u64 v = 0; v < 9; ++v) {
    std::vector<u32> tail{static_cast<u32>(v % 3), static_cast<u32>(v / 3)};
    if (!has_proper_factor(tail, 3)) {
      first = tail;
      break;
    }
  }
  CHECK(f32.modulus == first);

  // every selected modulus is actually irreducible (small grid)
  for (u64 p : {2ull, 3ull, 5ull}) {
    for (unsigned k = 2; k <= 5; ++k) {
      auto ctx = build_field(p, k);
      CHECK_FALSE(has_proper_factor(ctx.modulus, p));
    }
  }

  CHECK_THROWS_AS(build_field(2, 60, 1000000), SizeLimit);
  CHECK_THROWS_AS(build_field(4, 2), DomainError);
}

TEST_CASE("field arithmetic") {
  auto f4 = build_field(2, 2);
  FieldElement x{{0, 1}};
  FieldElement xp1{{1, 1}};
  CHECK(f4.mul(x, xp1) == f4.one());  // x(x+1) = 1 in F_4

  // Lagrange and full Frobenius orbit in several small fields
  for (auto [p, k] : std::vector<std::pair<u64, unsigned>>{{2, 4}, {3, 3}, {5, 2}, {7, 1}}) {
    auto ctx = build_field(p, k);
    u64 sz = ctx.size_u64();
    for (u64 i = 1; i < sz; ++i) {
      auto a = ctx.from_index(i);
      CHECK(ctx.pow(a, ctx.order) == ctx.one());
      CHECK(ctx.frobenius(a, k) == a);
    }
  }

  // Frobenius is an F_p-linear field automorphism
  std::mt19937_64 rng(5);
  auto ctx = build_field(3, 4);
  for (int i = 0; i < 200; ++i) {
    auto a = ctx.from_index(rng() % ctx.size_u64());
    auto b = ctx.from_index(rng() % ctx.size_u64());
    unsigned s = 1 + rng() % 3;
    CHECK(ctx.frobenius(ctx.add(a, b), s) == ctx.add(ctx.frobenius(a, s), ctx.frobenius(b, s)));
    CHECK(ctx.frobenius(ctx.mul(a, b), s) == ctx.mul(ctx.frobenius(a, s), ctx.frobenius(b, s)));
    CHECK(ctx.frobenius(a, 1) == ctx.pow(a, Int(3)));
  }
}

TEST_CASE("r-free and primitive") {
  auto f4 = build_field(2, 2);
  FieldElement x{{0, 1}};
  auto r3 = factor_integer(3);
  CHECK(is_r_free(x, r3, f4));  // generator of F_4^*
  CHECK_FALSE(is_r_free(f4.one(), r3, f4));
  CHECK_THROWS_AS(is_r_free(f4.zero(), r3, f4), ZeroElement);

  // exactly phi(3) = 2 primitive elements in F_4
  unsigned prim = 0;
  for (u64 i = 1; i < 4; ++i)
    if (is_primitive(f4.from_index(i), f4)) ++prim;
  CHECK(prim == 2);

  // F_7: 3 is primitive
  auto f7 = build_field(7, 1);
  CHECK(is_primitive(FieldElement{{3}}, f7));
  CHECK_FALSE(is_primitive(f7.one(), f7));

  // F_16, r = 5: an element of order 3 is a 5th power
  auto f16 = build_field(2, 4);
  FieldElement g;
  for (u64 i = 1; i < 16; ++i) {
    g = f16.from_index(i);
    if (is_primitive(g, f16)) break;
  }
  FieldElement ord3 = f16.pow(g, Int(5));
  CHECK(f16.pow(ord3, Int(3)) == f16.one());
  CHECK_FALSE(is_r_free(ord3, factor_integer(5), f16));

  // primitive count equals phi(p^k - 1) for an assortment of small fields
  for (auto [p, k] :
       std::vector<std::pair<u64, unsigned>>{{2, 6}, {3, 4}, {5, 3}, {11, 2}, {97, 1}}) {
    auto ctx = build_field(p, k);
    u64 cnt = 0;
    for (u64 i = 1; i < ctx.size_u64(); ++i)
      if (is_primitive(ctx.from_index(i), ctx)) ++cnt;
    Int phi = ctx.order;
    for (auto& [s, e] : ctx.order_factors.factors) phi = phi / s * (s - 1);
    CHECK(Int(static_cast<unsigned long>(cnt)) == phi);
  }
}

TEST_CASE("normality") {
  // l = n: every nonzero element is normal over the top field
  auto q2 = prime_power_decompose(2);
  auto f16 = build_field(2, 4);
  for (u64 i = 1; i < 16; ++i) CHECK(is_normal_over(f16.from_index(i), q2, 4, 4, f16));
  CHECK_FALSE(is_normal_over(f16.zero(), q2, 4, 4, f16));

  // x = 1 is never normal for n >= 2
  CHECK_FALSE(is_normal_over(f16.one(), q2, 4, 1, f16));

  // count of normal elements of F_16 over F_2 is 8
  unsigned cnt = 0;
  for (u64 i = 1; i < 16; ++i)
    if (is_normal_over(f16.from_index(i), q2, 4, 1, f16)) ++cnt;
  CHECK(cnt == 8);

  CHECK_THROWS_AS(is_normal_over(f16.one(), q2, 4, 3, f16), DomainError);

  // subfield fixed points: frobenius(x, l*e) fixes exactly q^l elements
  auto q4 = prime_power_decompose(4);
  auto f256 = build_field(2, 8);  // F_{4^4}
  for (u64 l : {1ull, 2ull, 4ull}) {
    u64 fixed = 0;
    for (u64 i = 0; i < 256; ++i) {
      auto a = f256.from_index(i);
      if (f256.frobenius(a, static_cast<unsigned>(l * q4.e)) == a) ++fixed;
    }
    u64 expect = 1;
    for (u64 j = 0; j < l; ++j) expect *= 4;
    CHECK(fixed == expect);
  }
}

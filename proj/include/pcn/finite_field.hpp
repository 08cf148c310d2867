#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "pcn/errors.hpp"
#include "pcn/number_theory.hpp"

namespace pcn {

struct FieldElement {
  std::vector<u32> coeffs;  // power-basis coordinates, length k, reduced mod p

  bool is_zero() const {
    for (u32 c : coeffs)
      if (c) return false;
    return true;
  }
  bool operator==(const FieldElement&) const = default;
};

namespace detail {

// dense polynomial helpers over F_p, coefficient vectors low-to-high
inline void poly_mulmod(const std::vector<u32>& a, const std::vector<u32>& b,
                        const std::vector<u32>& mod_tail, u64 p, std::vector<u32>& out,
                        std::vector<u64>& work) {
  // mod_tail: c0..c_{k-1}, modulus = X^k + tail
  std::size_t k = mod_tail.size();
  work.assign(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (!a[i]) continue;
    u64 ai = a[i];
    for (std::size_t j = 0; j < k; ++j) work[i + j] += ai * b[j];
  }
  for (std::size_t i = 2 * k - 2; i >= k; --i) {
    u64 c = work[i] % p;
    if (c) {
      u64 cneg = p - c;  // X^i == -tail * X^{i-k}
      for (std::size_t j = 0; j < k; ++j) {
        work[i - k + j] = (work[i - k + j] + cneg * mod_tail[j]) % p;
      }
    }
    if (i == k) break;
  }
  out.resize(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<u32>(work[i] % p);
}

}  // namespace detail

using Matrix = std::vector<u32>;  // k*k row-major over F_p

class FieldContext {
 public:
  u64 p = 0;
  unsigned k = 0;
  std::vector<u32> modulus;  // c0..c_{k-1}; full modulus is X^k + these
  Int order;                 // p^k - 1
  FactoredInteger order_factors;

  static FieldContext build(u64 p, unsigned k, u64 size_cap = 2'000'000'000ull) {
    if (!is_prime_u64(p)) throw DomainError("field characteristic must be prime");
    if (k == 0) throw DomainError("extension degree must be positive");
    double sz = std::pow(static_cast<double>(p), static_cast<double>(k));
    if (sz > static_cast<double>(size_cap) * 1.0000001)
      throw SizeLimit("field of size p^k exceeds the enumeration cap");
    FieldContext ctx;
    ctx.p = p;
    ctx.k = k;
    ctx.modulus = find_modulus(p, k);
    ctx.order = int_pow(p, k) - 1;
    ctx.order_factors = ctx.order >= 1 ? factor_integer(ctx.order) : FactoredInteger{};
    ctx.frob_ = ctx.power_map_matrix(p);
    return ctx;
  }

  u64 size_u64() const { return to_u64(order) + 1; }

  FieldElement zero() const { return {std::vector<u32>(k, 0)}; }
  FieldElement one() const {
    FieldElement e = zero();
    if (k > 0) e.coeffs[0] = p > 1 ? 1 : 0;
    return e;
  }
  FieldElement from_index(u64 idx) const {
    FieldElement e = zero();
    for (unsigned i = 0; i < k && idx; ++i) {
      e.coeffs[i] = static_cast<u32>(idx % p);
      idx /= p;
    }
    return e;
  }
  u64 to_index(const FieldElement& x) const {
    u64 idx = 0;
    for (unsigned i = k; i-- > 0;) idx = idx * p + x.coeffs[i];
    return idx;
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = a;
    for (unsigned i = 0; i < k; ++i) {
      r.coeffs[i] += b.coeffs[i];
      if (r.coeffs[i] >= p) r.coeffs[i] -= p;
    }
    return r;
  }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    std::vector<u64> work;
    detail::poly_mulmod(a.coeffs, b.coeffs, modulus, p, r.coeffs, work);
    return r;
  }
  FieldElement pow(const FieldElement& a, const Int& e) const {
    if (e < 0) throw DomainError("negative exponent");
    FieldElement base = a, r = one();
    std::vector<u64> work;
    for (std::size_t bit = 0, nb = mpz_sizeinbase(e.get_mpz_t(), 2); bit < nb; ++bit) {
      if (mpz_tstbit(e.get_mpz_t(), bit)) detail::poly_mulmod(r.coeffs, base.coeffs, modulus, p, r.coeffs, work);
      if (bit + 1 < nb) detail::poly_mulmod(base.coeffs, base.coeffs, modulus, p, base.coeffs, work);
    }
    if (e == 0) return one();
    return r;
  }
  // a^{p^steps}
  FieldElement frobenius(const FieldElement& a, unsigned steps) const {
    FieldElement r = a;
    for (unsigned s = 0; s < steps; ++s) r.coeffs = matvec(frob_, r.coeffs);
    return r;
  }

  // x is s-free for every prime s | r  <=>  x^{(p^k-1)/s} != 1
  bool is_r_free(const FieldElement& x, const FactoredInteger& r) const {
    if (x.is_zero()) throw ZeroElement("r-freeness undefined for 0");
    if (order % r.value != 0) throw DomainError("r does not divide the group order");
    FieldElement e1 = one();
    for (const auto& [s, exp] : r.factors) {
      if (pow(x, order / s) == e1) return false;
    }
    return true;
  }
  bool is_primitive(const FieldElement& x) const {
    if (x.is_zero()) throw ZeroElement("primitivity undefined for 0");
    return is_r_free(x, order_factors);
  }

  // matrix of y -> y^t as an F_p-linear map (t a power of p for linearity)
  Matrix power_map_matrix(u64 t) const {
    Matrix m(static_cast<std::size_t>(k) * k, 0);
    std::vector<u64> work;
    // column j: (X^j)^t mod f
    FieldElement xj = one();
    FieldElement x = zero();
    if (k == 1) {
      // F_p itself: the map is c -> c^t
      // linear only if t == p^s; then c^t = c
      m[0] = 1;
      return m;
    }
    x.coeffs[1] = 1;
    for (unsigned j = 0; j < k; ++j) {
      FieldElement col = pow(xj, Int(static_cast<unsigned long>(t)));
      for (unsigned r = 0; r < k; ++r) m[static_cast<std::size_t>(r) * k + j] = col.coeffs[r];
      xj = mul(xj, x);
    }
    return m;
  }

  std::vector<u32> matvec(const Matrix& m, const std::vector<u32>& v) const {
    std::vector<u32> out(k, 0);
    for (unsigned r = 0; r < k; ++r) {
      u64 acc = 0;
      const u32* row = &m[static_cast<std::size_t>(r) * k];
      for (unsigned c = 0; c < k; ++c) acc += static_cast<u64>(row[c]) * v[c];
      out[r] = static_cast<u32>(acc % p);
    }
    return out;
  }

  Matrix matmul(const Matrix& a, const Matrix& b) const {
    Matrix out(static_cast<std::size_t>(k) * k, 0);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) {
        u64 acc = 0;
        for (unsigned t = 0; t < k; ++t)
          acc += static_cast<u64>(a[static_cast<std::size_t>(i) * k + t]) *
                 b[static_cast<std::size_t>(t) * k + j] % p;
        out[static_cast<std::size_t>(i) * k + j] = static_cast<u32>(acc % p);
      }
    return out;
  }

  // Frobenius-orbit normality data for the subfield F_{p^s}, s | k.
  struct NormalTester {
    unsigned s = 0;                 // p-Frobenius steps per orbit hop
    Matrix hop;                     // y -> y^{p^s}
    std::vector<Matrix> zmul;       // multiplication by each F_p-basis elt of F_{p^s};
                                    // zmul[0] is multiplication by 1 (skipped)
  };

  const NormalTester& tester(unsigned s) const {
    std::scoped_lock lk(*mu_);
    auto it = testers_.find(s);
    if (it != testers_.end()) return *it->second;
    if (k % s != 0) throw DomainError("subfield degree must divide k");
    auto t = std::make_unique<NormalTester>();
    t->s = s;
    t->hop = frob_;
    for (unsigned i = 1; i < s; ++i) t->hop = matmul(t->hop, frob_);
    // subfield basis: kernel of (hop - I), forced to start with 1
    std::vector<std::vector<u32>> basis = fixed_space_basis(t->hop, s);
    for (const auto& z : basis) {
      // multiplication-by-z matrix: column j = z * X^j
      Matrix zm(static_cast<std::size_t>(k) * k, 0);
      FieldElement ze{z};
      FieldElement xj = one();
      FieldElement x = zero();
      if (k > 1) x.coeffs[1] = 1;
      for (unsigned j = 0; j < k; ++j) {
        FieldElement col = mul(ze, xj);
        for (unsigned r = 0; r < k; ++r) zm[static_cast<std::size_t>(r) * k + j] = col.coeffs[r];
        if (k > 1) xj = mul(xj, x);
      }
      t->zmul.push_back(std::move(zm));
    }
    auto& slot = testers_[s];
    slot = std::move(t);
    return *slot;
  }

  // true iff {x, x^{q^l}, ...} with q^l = p^s is a basis over F_{p^s}
  bool is_normal_over_subfield(const FieldElement& x, unsigned s) const {
    if (x.is_zero()) return false;
    if (s == k) return true;
    const NormalTester& t = tester(s);
    unsigned orbit = k / s;
    std::vector<u32> rows;
    rows.reserve(static_cast<std::size_t>(k) * k);
    std::vector<u32> y = x.coeffs;
    for (unsigned i = 0; i < orbit; ++i) {
      rows.insert(rows.end(), y.begin(), y.end());
      for (unsigned j = 1; j < s; ++j) {
        std::vector<u32> row = matvec(t.zmul[j], y);
        rows.insert(rows.end(), row.begin(), row.end());
      }
      if (i + 1 < orbit) y = matvec(t.hop, y);
    }
    return rank_mod_p(rows.data(), k, k, p) == k;
  }

  static unsigned rank_mod_p(u32* rows, unsigned nrows, unsigned ncols, u64 p) {
    unsigned rank = 0;
    for (unsigned c = 0; c < ncols && rank < nrows; ++c) {
      unsigned piv = rank;
      while (piv < nrows && rows[static_cast<std::size_t>(piv) * ncols + c] == 0) ++piv;
      if (piv == nrows) continue;
      if (piv != rank)
        for (unsigned j = 0; j < ncols; ++j)
          std::swap(rows[static_cast<std::size_t>(piv) * ncols + j],
                    rows[static_cast<std::size_t>(rank) * ncols + j]);
      u64 inv = powmod_u64(rows[static_cast<std::size_t>(rank) * ncols + c], p - 2, p);
      for (unsigned i = rank + 1; i < nrows; ++i) {
        u64 v = rows[static_cast<std::size_t>(i) * ncols + c];
        if (!v) continue;
        u64 f = mulmod_u64(v, inv, p);
        for (unsigned j = c; j < ncols; ++j) {
          u64 sub = f * rows[static_cast<std::size_t>(rank) * ncols + j] % p;
          u64 cur = rows[static_cast<std::size_t>(i) * ncols + j];
          rows[static_cast<std::size_t>(i) * ncols + j] = static_cast<u32>((cur + p - sub) % p);
        }
      }
      ++rank;
    }
    return rank;
  }

 private:
  Matrix frob_;  // x -> x^p
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  mutable std::map<unsigned, std::unique_ptr<NormalTester>> testers_;

  // basis of the fixed space of the matrix m (expected dimension s), first
  // vector forced to the field element 1
  std::vector<std::vector<u32>> fixed_space_basis(const Matrix& m, unsigned s) const {
    // kernel of (m - I)
    std::vector<u32> a(static_cast<std::size_t>(k) * k);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) {
        u64 v = m[static_cast<std::size_t>(i) * k + j];
        if (i == j) v = (v + p - 1) % p;
        a[static_cast<std::size_t>(i) * k + j] = static_cast<u32>(v);
      }
    // row-reduce with column pivots, then read off kernel
    std::vector<int> pivot_col(k, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < k && rank < k; ++c) {
      unsigned piv = rank;
      while (piv < k && a[static_cast<std::size_t>(piv) * k + c] == 0) ++piv;
      if (piv == k) continue;
      if (piv != rank)
        for (unsigned j = 0; j < k; ++j)
          std::swap(a[static_cast<std::size_t>(piv) * k + j], a[static_cast<std::size_t>(rank) * k + j]);
      u64 inv = powmod_u64(a[static_cast<std::size_t>(rank) * k + c], p - 2, p);
      for (unsigned j = 0; j < k; ++j)
        a[static_cast<std::size_t>(rank) * k + j] =
            static_cast<u32>(mulmod_u64(a[static_cast<std::size_t>(rank) * k + j], inv, p));
      for (unsigned i = 0; i < k; ++i) {
        if (i == rank) continue;
        u64 f = a[static_cast<std::size_t>(i) * k + c];
        if (!f) continue;
        for (unsigned j = 0; j < k; ++j) {
          u64 sub = f * a[static_cast<std::size_t>(rank) * k + j] % p;
          u64 cur = a[static_cast<std::size_t>(i) * k + j];
          a[static_cast<std::size_t>(i) * k + j] = static_cast<u32>((cur + p - sub) % p);
        }
      }
      pivot_col[c] = static_cast<int>(rank);
      ++rank;
    }
    std::vector<std::vector<u32>> kernel;
    for (unsigned c = 0; c < k; ++c) {
      if (pivot_col[c] != -1) continue;
      std::vector<u32> v(k, 0);
      v[c] = 1;
      for (unsigned cc = 0; cc < k; ++cc) {
        if (pivot_col[cc] == -1) continue;
        u64 coef = a[static_cast<std::size_t>(pivot_col[cc]) * k + c];
        v[cc] = static_cast<u32>((p - coef) % p);
      }
      kernel.push_back(std::move(v));
    }
    if (kernel.size() != s)
      throw Error("fixed subfield has unexpected dimension");
    // rotate a vector equivalent to 1 into front: 1 is fixed, so it lies in
    // the span; rebuild the basis starting from 1 by Gaussian extension
    std::vector<std::vector<u32>> out;
    std::vector<u32> onev(k, 0);
    onev[0] = 1;
    out.push_back(onev);
    std::vector<u32> rows;
    rows.insert(rows.end(), onev.begin(), onev.end());
    for (const auto& v : kernel) {
      std::vector<u32> trial = rows;
      trial.insert(trial.end(), v.begin(), v.end());
      std::vector<u32> scratch = trial;
      if (rank_mod_p(scratch.data(), static_cast<unsigned>(out.size()) + 1, k, p) == out.size() + 1) {
        out.push_back(v);
        rows = trial;
      }
      if (out.size() == s) break;
    }
    if (out.size() != s) throw Error("could not extend 1 to a subfield basis");
    return out;
  }

  // lexicographically smallest monic irreducible of degree k over F_p,
  // scanning coefficient vectors in base-p counting order
  static std::vector<u32> find_modulus(u64 p, unsigned k) {
    std::vector<u32> tail(k, 0);
    auto bump = [&]() {
      for (unsigned i = 0; i < k; ++i) {
        if (++tail[i] < p) return true;
        tail[i] = 0;
      }
      return false;
    };
    // x^{p^j} mod f chain irreducibility test
    auto irreducible = [&](const std::vector<u32>& t) {
      if (k == 1) return true;  // X + c is always irreducible
      std::vector<u64> work;
      // f must have a nonzero constant term unless f = X (k == 1)
      if (t[0] == 0) return false;
      std::vector<u32> x(k, 0);
      x[1] = 1;
      // frob_j = X^{p^j} mod f
      std::vector<u32> fr = x;
      auto poly_pow_p = [&](std::vector<u32> base) {
        std::vector<u32> acc(k, 0);
        acc[0] = 1;
        u64 e = p;
        while (e) {
          if (e & 1) detail::poly_mulmod(acc, base, t, p, acc, work);
          e >>= 1;
          if (e) detail::poly_mulmod(base, base, t, p, base, work);
        }
        return acc;
      };
      std::vector<std::vector<u32>> chain(k + 1);
      chain[0] = x;
      for (unsigned j = 1; j <= k; ++j) chain[j] = poly_pow_p(chain[j - 1]);
      if (chain[k] != x) return false;
      for (auto [r, e] : factor_u64(k)) {
        // gcd(X^{p^{k/r}} - X, f) must be 1
        std::vector<u32> diff = chain[k / r];
        diff[1] = static_cast<u32>((diff[1] + p - 1) % p);
        std::vector<u32> f_full(t.begin(), t.end());
        f_full.push_back(1);
        std::vector<u32> b = diff;
        while (!b.empty() && b.back() == 0) b.pop_back();
        if (b.empty()) return false;  // f divides the difference
        std::vector<u32> g = poly_gcd(f_full, b, p);
        if (g.size() != 1) return false;
      }
      return true;
    };
    do {
      if (irreducible(tail)) return tail;
    } while (bump());
    throw Error("no irreducible polynomial found (unreachable)");
  }

  static std::vector<u32> poly_gcd(std::vector<u32> a, std::vector<u32> b, u64 p) {
    auto trim = [](std::vector<u32>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
      // a mod b
      u64 lead_inv = powmod_u64(b.back(), p - 2, p);
      while (a.size() >= b.size()) {
        u64 c = mulmod_u64(a.back(), lead_inv, p);
        if (c) {
          std::size_t off = a.size() - b.size();
          for (std::size_t i = 0; i < b.size(); ++i) {
            u64 sub = c * b[i] % p;
            a[off + i] = static_cast<u32>((a[off + i] + p - sub) % p);
          }
        }
        trim(a);
        if (a.empty()) break;
      }
      std::swap(a, b);
    }
    trim(a);
    if (a.empty()) return {0};
    return a;
  }
};

// spec-level wrappers -------------------------------------------------------

inline FieldContext build_field(u64 p, unsigned k, u64 size_cap = 2'000'000'000ull) {
  return FieldContext::build(p, k, size_cap);
}

inline bool is_r_free(const FieldElement& x, const FactoredInteger& r, const FieldContext& ctx) {
  return ctx.is_r_free(x, r);
}

inline bool is_primitive(const FieldElement& x, const FieldContext& ctx) {
  return ctx.is_primitive(x);
}

// normality of x in F_{q^n} over F_{q^l}, realized inside ctx = F_{p^{e n}}
inline bool is_normal_over(const FieldElement& x, const PrimePowerQ& q, u64 n, u64 l,
                           const FieldContext& ctx) {
  if (n % l != 0) throw DomainError("l must divide n");
  if (ctx.p != q.p || ctx.k != q.e * n) throw DomainError("context does not match q^n");
  return ctx.is_normal_over_subfield(x, static_cast<unsigned>(l * q.e));
}

}  // namespace pcn

#include "bfree/bset.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace bfree {

namespace {

// Shared expanding prime table.
const std::vector<uint64_t>& prime_table(size_t need_count, uint64_t need_value = 0) {
  static std::mutex mu;
  static std::vector<uint64_t> primes;
  static uint64_t bound = 0;
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() < need_count || (need_value > 0 && (primes.empty() || primes.back() < need_value))) {
    bound = std::max<uint64_t>(std::max<uint64_t>(bound * 2, 1024), need_value + 1);
    primes = primes_up_to(bound);
  }
  return primes;
}

uint64_t prime_at(size_t idx1) {  // 1-based
  return prime_table(idx1)[idx1 - 1];
}

// k-th odd prime: 3, 5, 7, 11, ...
uint64_t odd_prime_at(size_t idx1) { return prime_at(idx1 + 1); }

std::vector<uint64_t> prime_factors_u64(const Nat& m) {
  std::vector<uint64_t> out;
  Nat r = m;
  // Strip small primes first; moduli here are lcm values whose factors come
  // from enumerable elements, so the remainder fits the 64-bit factorizer.
  for (uint64_t p = 2; p <= 1000000ull && r > 1 && r > (Nat(1) << 63); p = (p == 2 ? 3 : p + 2))
    if (r % p == 0) {
      out.push_back(p);
      while (r % p == 0) r /= p;
    }
  if (r > (Nat(1) << 63)) throw BudgetError("modulus factorization cap exceeded");
  if (r > 1)
    for (auto& [p, e] : factorize_u64(to_u64(r))) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

unsigned valuation(const Nat& m, uint64_t p) {
  unsigned v = 0;
  Nat r = m;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

Nat pow_nat(uint64_t p, unsigned e) {
  Nat r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

struct BSet::Impl {
  virtual ~Impl() = default;
  virtual std::string id() const = 0;
  virtual std::string describe() const = 0;
  virtual bool finite() const { return false; }
  virtual Tri primitive() const { return Tri::yes; }
  virtual bool scaled_behrend() const { return false; }
  // All elements <= x, any order, duplicates allowed.
  virtual void collect(uint64_t x, std::vector<uint64_t>& out) const = 0;
  // Exact gcd profile over all of B, when structurally available.
  virtual std::optional<FiniteSet> oracle(const Nat& m) const { return std::nullopt; }
  virtual std::optional<FiniteSet> stage(size_t /*k*/) const { return std::nullopt; }
  // Structural membership test, where the family admits one.
  virtual std::optional<bool> member(const Nat& /*x*/) const { return std::nullopt; }

  mutable std::mutex mu;
  mutable std::vector<uint64_t> cache;
  mutable uint64_t covered = 0;
};

namespace {

using Impl = BSet::Impl;

// ---------------------------------------------------------------------------
struct ExplicitImpl : Impl {
  FiniteSet elems;
  explicit ExplicitImpl(FiniteSet e) : elems(std::move(e)) {}
  std::string id() const override { return "explicit"; }
  std::string describe() const override { return "explicit " + elems.str(); }
  bool finite() const override { return true; }
  Tri primitive() const override {
    return primitivize(elems) == elems ? Tri::yes : Tri::no;
  }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (const Nat& e : elems) {
      if (e > x) break;
      out.push_back(to_u64(e));
    }
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<Nat> g;
    for (const Nat& e : elems) g.push_back(nat_gcd(e, m));
    return FiniteSet(std::move(g));
  }
  std::optional<bool> member(const Nat& x) const override { return elems.contains(x); }
};

// ---------------------------------------------------------------------------
struct PrimesImpl : Impl {
  bool odd_only;
  explicit PrimesImpl(bool odd) : odd_only(odd) {}
  std::string id() const override { return odd_only ? "odd-primes" : "primes"; }
  std::string describe() const override { return odd_only ? "all odd primes" : "all primes"; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (uint64_t p : primes_up_to(x))
      if (!odd_only || p != 2) out.push_back(p);
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<Nat> g{Nat(1)};  // infinitely many primes are coprime to m
    for (uint64_t p : prime_factors_u64(m))
      if (!odd_only || p != 2) g.emplace_back(p);
    return FiniteSet(std::move(g));
  }
  std::optional<bool> member(const Nat& x) const override {
    if (x > Nat(UINT64_MAX)) return false;
    uint64_t v = to_u64(x);
    return is_prime_u64(v) && (!odd_only || v != 2);
  }
};

// ---------------------------------------------------------------------------
struct PrimeSquaresImpl : Impl {
  std::string id() const override { return "prime-squares"; }
  std::string describe() const override { return "{p^2 : p prime}"; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (uint64_t p : primes_up_to(static_cast<uint64_t>(std::sqrt(static_cast<double>(x))) + 1))
      if (p * p <= x) out.push_back(p * p);
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<Nat> g{Nat(1)};
    for (uint64_t p : prime_factors_u64(m)) g.push_back(pow_nat(p, std::min(2u, valuation(m, p))));
    return FiniteSet(std::move(g));
  }
  std::optional<bool> member(const Nat& x) const override {
    if (x > Nat(UINT64_MAX)) return false;
    uint64_t v = to_u64(x);
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v && is_prime_u64(r);
  }
};

// ---------------------------------------------------------------------------
// {2^k * u_k : k = 1..K} with u_k odd, pairwise coprime (default: k-th odd
// prime).
struct Power2Impl : Impl {
  std::vector<uint64_t> odd_parts;
  explicit Power2Impl(const FamilyParams& p) {
    if (!p.list.empty()) {
      odd_parts = p.list;
      for (size_t i = 0; i < odd_parts.size(); ++i) {
        if (odd_parts[i] % 2 == 0 || odd_parts[i] < 3) throw std::invalid_argument("power2 odd parts must be odd and >= 3");
        for (size_t j = 0; j < i; ++j)
          if (std::__gcd(odd_parts[i], odd_parts[j]) != 1) throw std::invalid_argument("power2 odd parts must be pairwise coprime");
      }
    } else {
      uint64_t k = p.count ? p.count : 8;
      if (k > 50) throw std::invalid_argument("power2 count too large");
      for (size_t i = 1; i <= k; ++i) odd_parts.push_back(odd_prime_at(i));
    }
  }
  std::string id() const override { return "power2"; }
  std::string describe() const override {
    std::ostringstream os;
    os << "{2^k*u_k, k=1.." << odd_parts.size() << "}";
    return os.str();
  }
  bool finite() const override { return true; }
  uint64_t element(size_t k1) const { return (1ull << k1) * odd_parts[k1 - 1]; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (size_t k = 1; k <= odd_parts.size(); ++k)
      if (element(k) <= x) out.push_back(element(k));
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<Nat> g;
    for (size_t k = 1; k <= odd_parts.size(); ++k) g.push_back(nat_gcd(Nat(element(k)), m));
    return FiniteSet(std::move(g));
  }
  std::optional<FiniteSet> stage(size_t k) const override {
    std::vector<Nat> s;
    for (size_t i = 1; i <= std::min<size_t>(k, odd_parts.size()); ++i) s.emplace_back(element(i));
    return FiniteSet(std::move(s));
  }
  std::optional<bool> member(const Nat& x) const override {
    for (size_t k = 1; k <= odd_parts.size(); ++k)
      if (x == Nat(element(k))) return true;
    return false;
  }
};

// ---------------------------------------------------------------------------
// {36} ∪ {2 p_i} ∪ {3 q_i} with p = primes ≡ 1 (mod 4), q = primes ≡ 3
// (mod 4) above 3. The two streams partition the primes >= 5.
struct TwoThreeImpl : Impl {
  static std::vector<uint64_t> p_stream(size_t k) {
    return primes_where(k, [](uint64_t p) { return p % 4 == 1; });
  }
  static std::vector<uint64_t> q_stream(size_t k) {
    return primes_where(k, [](uint64_t p) { return p > 3 && p % 4 == 3; });
  }
  std::string id() const override { return "two-three"; }
  std::string describe() const override { return "{36} ∪ {2p_i} ∪ {3q_i}, split prime streams"; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    if (x >= 36) out.push_back(36);
    for (uint64_t p : primes_up_to(x / 2))
      if (p >= 5 && p % 4 == 1) out.push_back(2 * p);
    for (uint64_t q : primes_up_to(x / 3))
      if (q > 3 && q % 4 == 3) out.push_back(3 * q);
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    Nat g2 = nat_gcd(Nat(2), m), g3 = nat_gcd(Nat(3), m);
    std::vector<Nat> g{nat_gcd(Nat(36), m), g2, g3};
    for (uint64_t r : prime_factors_u64(m)) {
      if (r < 5) continue;
      if (r % 4 == 1) g.push_back(g2 * r);
      if (r % 4 == 3) g.push_back(g3 * r);
    }
    return FiniteSet(std::move(g));
  }
  std::optional<FiniteSet> stage(size_t k) const override {
    std::vector<Nat> s{Nat(36)};
    for (uint64_t p : p_stream(k)) s.emplace_back(2 * Nat(p));
    for (uint64_t q : q_stream(k)) s.emplace_back(3 * Nat(q));
    return FiniteSet(std::move(s));
  }
  std::optional<bool> member(const Nat& x) const override {
    if (x == 36) return true;
    if (x > Nat(UINT64_MAX)) return false;
    uint64_t v = to_u64(x);
    if (v % 2 == 0 && is_prime_u64(v / 2) && v / 2 >= 5 && (v / 2) % 4 == 1) return true;
    if (v % 3 == 0 && is_prime_u64(v / 3) && v / 3 > 3 && (v / 3) % 4 == 3) return true;
    return false;
  }
};

// ---------------------------------------------------------------------------
// Level sets over two disjoint prime streams p, q (alternating primes):
//   L_1 = {p1 q1}
//   L_k = {P_{k-1} p_k^2, P_{k-1} q_k^2} ∪ {P_{j-1} q_j q_k^2 : j=2..k-1}
//          ∪ {q1 q_k^2},   P_i = p1...p_i.
struct CascadeImpl : Impl {
  static uint64_t p_at(size_t i) { return prime_at(2 * i - 1); }
  static uint64_t q_at(size_t i) { return prime_at(2 * i); }
  static Nat P(size_t i) {
    Nat r = 1;
    for (size_t j = 1; j <= i; ++j) r *= p_at(j);
    return r;
  }
  static std::vector<Nat> level(size_t k) {
    std::vector<Nat> out;
    if (k == 1) {
      out.push_back(Nat(p_at(1)) * q_at(1));
      return out;
    }
    Nat qk2 = Nat(q_at(k)) * q_at(k);
    out.push_back(P(k - 1) * p_at(k) * p_at(k));
    out.push_back(P(k - 1) * qk2);
    for (size_t j = k - 1; j >= 2; --j) out.push_back(P(j - 1) * q_at(j) * qk2);
    out.push_back(Nat(q_at(1)) * qk2);
    return out;
  }
  // Carry parts seen as gcd shadows: {P_k} ∪ {P_{j-1} q_j : j=1..k}.
  static std::vector<Nat> carries(size_t k) {
    std::vector<Nat> out{P(k)};
    for (size_t j = 1; j <= k; ++j) out.push_back(P(j - 1) * q_at(j));
    return out;
  }
  std::string id() const override { return "cascade"; }
  std::string describe() const override { return "cascading level sets over two prime streams"; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (size_t k = 1;; ++k) {
      std::vector<Nat> lv = level(k);
      Nat mn = lv[0];
      for (const Nat& e : lv) mn = std::min(mn, e);
      if (mn > x) break;
      for (const Nat& e : lv)
        if (e <= x) out.push_back(to_u64(e));
      if (k > 64) break;
    }
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    // Stream index beyond every prime of m; levels above it only contribute
    // gcds of their carry parts.
    size_t L = 0;
    for (uint64_t r : prime_factors_u64(m))
      for (size_t i = 1; i <= 64; ++i)
        if (p_at(i) == r || q_at(i) == r) {
          L = std::max(L, i);
          break;
        } else if (p_at(i) > r) {
          break;
        }
    std::vector<Nat> g;
    for (size_t k = 1; k <= L + 2; ++k)
      for (const Nat& e : level(k)) g.push_back(nat_gcd(e, m));
    for (const Nat& t : carries(L + 1)) g.push_back(nat_gcd(t, m));
    return FiniteSet(std::move(g));
  }
  std::optional<FiniteSet> stage(size_t k) const override {
    std::vector<Nat> s;
    for (size_t l = 1; l <= k; ++l)
      for (const Nat& e : level(l)) s.push_back(e);
    return FiniteSet(std::move(s));
  }
};

// ---------------------------------------------------------------------------
// Level sets L_k = {3 p_k} ∪ {p_i p_k : i < k} over p = odd primes above 3.
struct QFamilyImpl : Impl {
  static uint64_t p_at(size_t i) { return prime_at(i + 2); }  // 5, 7, 11, ...
  static std::vector<Nat> level(size_t k) {
    std::vector<Nat> out{Nat(3) * p_at(k)};
    for (size_t i = 1; i < k; ++i) out.push_back(Nat(p_at(i)) * p_at(k));
    return out;
  }
  std::string id() const override { return "q-family"; }
  std::string describe() const override { return "level sets {3 p_k} ∪ {p_i p_k : i<k}"; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (size_t k = 1; 3 * p_at(k) <= x; ++k) {
      uint64_t pk = p_at(k);
      out.push_back(3 * pk);
      for (size_t i = 1; i < k && p_at(i) <= x / pk; ++i) out.push_back(p_at(i) * pk);
    }
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    Nat g3 = nat_gcd(Nat(3), m);
    std::vector<uint64_t> pm;  // stream primes dividing m
    for (uint64_t r : prime_factors_u64(m))
      if (r >= 5) pm.push_back(r);
    std::vector<Nat> g{Nat(1), g3};  // two fresh p's; q with fresh p
    for (uint64_t a : pm) {
      g.emplace_back(a);       // p_i p_l, l fresh
      g.push_back(g3 * a);     // p_i q
      for (uint64_t b : pm)
        if (b != a) g.push_back(Nat(a) * b);
    }
    return FiniteSet(std::move(g));
  }
  std::optional<FiniteSet> stage(size_t k) const override {
    std::vector<Nat> s;
    for (size_t l = 1; l <= k; ++l)
      for (const Nat& e : level(l)) s.push_back(e);
    return FiniteSet(std::move(s));
  }
};

// ---------------------------------------------------------------------------
// ⋃_i p_i^2 (P \ {p_i}): all numbers p^2 q with p, q distinct primes,
// p restricted to the first `indices` primes when that parameter is set.
struct Ape1Impl : Impl {
  uint64_t indices;  // 0 = all primes
  explicit Ape1Impl(const FamilyParams& p) : indices(p.count) {}
  bool p_allowed(uint64_t p) const {
    if (indices == 0) return true;
    const auto& tab = prime_table(indices);
    return std::binary_search(tab.begin(), tab.begin() + indices, p);
  }
  std::string id() const override { return "ape1"; }
  std::string describe() const override { return "{p^2 q : p, q distinct primes}"; }
  bool scaled_behrend() const override { return true; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (uint64_t p : primes_up_to(static_cast<uint64_t>(std::sqrt(static_cast<double>(x) / 2)) + 1)) {
      if (p * p > x / 2) break;
      if (!p_allowed(p)) continue;
      for (uint64_t q : primes_up_to(x / (p * p)))
        if (q != p) out.push_back(p * p * q);
    }
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<uint64_t> pf = prime_factors_u64(m);
    auto p2 = [&](uint64_t p) { return pow_nat(p, std::min(2u, valuation(m, p))); };
    std::vector<Nat> g;
    if (indices == 0) {
      g.emplace_back(1);
      for (uint64_t q : pf) g.emplace_back(q);          // fresh p, q | m
      for (uint64_t p : pf) {
        g.push_back(p2(p));                             // p | m, fresh q
        for (uint64_t q : pf)
          if (q != p) g.push_back(p2(p) * q);
      }
    } else {
      const auto& tab = prime_table(indices);
      bool free_p = false;  // some allowed p coprime to m
      for (size_t i = 0; i < indices; ++i)
        if (valuation(m, tab[i]) == 0) free_p = true;
      if (free_p) {
        g.emplace_back(1);
        for (uint64_t q : pf) g.emplace_back(q);
      }
      for (size_t i = 0; i < indices; ++i) {
        uint64_t p = tab[i];
        if (valuation(m, p) == 0) continue;
        g.push_back(p2(p));
        for (uint64_t q : pf)
          if (q != p) g.push_back(p2(p) * q);
      }
    }
    return FiniteSet(std::move(g));
  }
};

// ---------------------------------------------------------------------------
// Primes minus K constructed exceptions: for the k-th coprime pair (m_k, r_k)
// in lexicographic order, remove the smallest prime > 2^(k+1) in r_k + m_k Z.
struct PuncturedImpl : Impl {
  std::vector<uint64_t> removed;
  explicit PuncturedImpl(const FamilyParams& p) {
    uint64_t K = p.count ? p.count : 8;
    if (K > 30) throw std::invalid_argument("punctured-primes count too large");
    uint64_t k = 0;
    for (uint64_t m = 1; k < K; ++m) {
      for (uint64_t r = 1; r <= m && k < K; ++r) {
        if (std::__gcd(m, r) != 1) continue;
        ++k;
        uint64_t lo = (1ull << (k + 1)) + 1;
        uint64_t n = lo + ((r + m - lo % m) % m);
        while (!is_prime_u64(n)) n += m;
        removed.push_back(n);
      }
    }
    std::sort(removed.begin(), removed.end());
    removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
  }
  std::string id() const override { return "punctured-primes"; }
  std::string describe() const override {
    std::ostringstream os;
    os << "primes minus " << removed.size() << " constructed exceptions";
    return os.str();
  }
  bool is_removed(uint64_t p) const { return std::binary_search(removed.begin(), removed.end(), p); }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    for (uint64_t p : primes_up_to(x))
      if (!is_removed(p)) out.push_back(p);
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<Nat> g{Nat(1)};
    for (uint64_t p : prime_factors_u64(m))
      if (!is_removed(p)) g.emplace_back(p);
    return FiniteSet(std::move(g));
  }
  std::optional<bool> member(const Nat& x) const override {
    if (x > Nat(UINT64_MAX)) return false;
    uint64_t v = to_u64(x);
    return is_prime_u64(v) && !is_removed(v);
  }
};

// ---------------------------------------------------------------------------
// {4, 6} ∪ {p prime : p ≡ 5 or 7 (mod 12)}. Every integer in 5 + 12Z has a
// prime factor in the stream, so that progression lies in the multiples.
struct Mod12Impl : Impl {
  std::string id() const override { return "mod12"; }
  std::string describe() const override { return "{4,6} ∪ {p prime : p ≡ ±5 (mod 12)}"; }
  void collect(uint64_t x, std::vector<uint64_t>& out) const override {
    if (x >= 4) out.push_back(4);
    if (x >= 6) out.push_back(6);
    for (uint64_t p : primes_up_to(x))
      if (p % 12 == 5 || p % 12 == 7) out.push_back(p);
  }
  std::optional<FiniteSet> oracle(const Nat& m) const override {
    std::vector<Nat> g{nat_gcd(Nat(4), m), nat_gcd(Nat(6), m), Nat(1)};
    for (uint64_t p : prime_factors_u64(m))
      if (p % 12 == 5 || p % 12 == 7) g.emplace_back(p);
    return FiniteSet(std::move(g));
  }
  std::optional<bool> member(const Nat& x) const override {
    if (x == 4 || x == 6) return true;
    if (x > Nat(UINT64_MAX)) return false;
    uint64_t v = to_u64(x);
    return is_prime_u64(v) && (v % 12 == 5 || v % 12 == 7);
  }
};

}  // namespace

BSet::BSet(std::shared_ptr<const Impl> impl) : id_(impl->id()), impl_(std::move(impl)) {}

BSet BSet::explicit_set(FiniteSet elems) {
  return BSet(std::make_shared<ExplicitImpl>(std::move(elems)));
}

BSet BSet::make(const std::string& family_id, const FamilyParams& params) {
  if (family_id == "explicit") {
    std::vector<Nat> v;
    for (uint64_t x : params.list) v.emplace_back(x);
    return explicit_set(FiniteSet(std::move(v)));
  }
  if (family_id == "primes") return BSet(std::make_shared<PrimesImpl>(false));
  if (family_id == "odd-primes") return BSet(std::make_shared<PrimesImpl>(true));
  if (family_id == "prime-squares") return BSet(std::make_shared<PrimeSquaresImpl>());
  if (family_id == "power2") return BSet(std::make_shared<Power2Impl>(params));
  if (family_id == "two-three") return BSet(std::make_shared<TwoThreeImpl>());
  if (family_id == "cascade") return BSet(std::make_shared<CascadeImpl>());
  if (family_id == "q-family") return BSet(std::make_shared<QFamilyImpl>());
  if (family_id == "ape1") return BSet(std::make_shared<Ape1Impl>(params));
  if (family_id == "punctured-primes") return BSet(std::make_shared<PuncturedImpl>(params));
  if (family_id == "mod12") return BSet(std::make_shared<Mod12Impl>());
  throw std::invalid_argument("unknown family: " + family_id);
}

std::string BSet::describe() const { return impl_->describe(); }
Tri BSet::primitive_flag() const { return impl_->primitive(); }
bool BSet::is_finite() const { return impl_->finite(); }
bool BSet::declares_scaled_behrend() const { return impl_->scaled_behrend(); }

std::vector<uint64_t> BSet::elements_up_to_u64(uint64_t x) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  if (x > impl_->covered) {
    std::vector<uint64_t> v;
    impl_->collect(x, v);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    impl_->cache = std::move(v);
    impl_->covered = x;
  }
  auto end = std::upper_bound(impl_->cache.begin(), impl_->cache.end(), x);
  return std::vector<uint64_t>(impl_->cache.begin(), end);
}

FiniteSet BSet::elements_up_to(const Nat& x) const {
  if (x < 1) throw std::invalid_argument("elements_up_to requires x >= 1");
  uint64_t xu = x > Nat(UINT64_MAX) ? UINT64_MAX : to_u64(x);
  return FiniteSet::from_u64(elements_up_to_u64(xu));
}

GcdProfile BSet::gcd_profile(const Nat& m) const {
  if (m < 1) throw std::invalid_argument("gcd_profile requires m >= 1");
  if (auto g = impl_->oracle(m)) return GcdProfile{m, std::move(*g), true, 0};
  return gcd_profile_truncated(m, default_horizon());
}

GcdProfile BSet::gcd_profile_truncated(const Nat& m, uint64_t horizon) const {
  std::vector<Nat> g;
  for (uint64_t b : elements_up_to_u64(horizon)) g.push_back(nat_gcd(Nat(b), m));
  return GcdProfile{m, FiniteSet(std::move(g)), impl_->finite(), horizon};
}

bool BSet::contains(const Nat& x) const {
  if (x < 1) return false;
  if (auto m = impl_->member(x)) return *m;
  if (x > Nat(100000000ull)) throw BudgetError("membership probe above enumeration cap");
  return elements_up_to(x).contains(x);
}

bool BSet::has_native_stages() const { return impl_->stage(1).has_value(); }

FiniteSet BSet::native_stage(size_t k) const {
  auto s = impl_->stage(k);
  if (!s) throw std::invalid_argument("family has no native stage structure");
  return *s;
}

std::vector<FamilyDescriptor> family_catalog() {
  return {
      {"explicit", "list=[b1,b2,...]", "explicit finite set"},
      {"primes", "", "all primes"},
      {"odd-primes", "", "all odd primes"},
      {"prime-squares", "", "squares of primes (square-free system)"},
      {"power2", "count=K | list=[odd coprime parts]", "{2^k u_k : k <= K}"},
      {"two-three", "", "{36} ∪ {2p_i} ∪ {3q_i}, prime streams split mod 4"},
      {"cascade", "", "cascading level sets over two prime streams"},
      {"q-family", "", "level sets {3 p_k} ∪ {p_i p_k : i < k}"},
      {"ape1", "count=number of prime indices (0=all)", "{p^2 q : p, q distinct primes}"},
      {"punctured-primes", "count=K", "primes minus K constructed progression primes"},
      {"mod12", "", "{4,6} ∪ {p ≡ ±5 (mod 12)}"},
  };
}

}  // namespace bfree

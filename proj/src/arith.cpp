#include "bfree/arith.hpp"

#include <algorithm>
#include <sstream>

namespace bfree {

uint64_t to_u64(const Nat& n) {
  if (n < 0 || n > Nat(UINT64_MAX)) throw std::overflow_error("value does not fit in 64 bits");
  return n.convert_to<uint64_t>();
}

double to_double(const Nat& n) { return n.convert_to<double>(); }

Rational::Rational(Nat n, Nat d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Nat g = nat_gcd(n < 0 ? Nat(-n) : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

double Rational::to_double() const { return num.convert_to<double>() / den.convert_to<double>(); }

std::string Rational::str() const {
  std::ostringstream os;
  os << num;
  if (den != 1) os << "/" << den;
  return os.str();
}

FiniteSet::FiniteSet(std::vector<Nat> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  for (const Nat& e : elems_)
    if (e < 1) throw std::invalid_argument("finite set elements must be >= 1");
}

FiniteSet FiniteSet::of(std::initializer_list<uint64_t> xs) {
  std::vector<Nat> v;
  v.reserve(xs.size());
  for (uint64_t x : xs) v.emplace_back(x);
  return FiniteSet(std::move(v));
}

FiniteSet FiniteSet::from_u64(const std::vector<uint64_t>& xs) {
  std::vector<Nat> v;
  v.reserve(xs.size());
  for (uint64_t x : xs) v.emplace_back(x);
  return FiniteSet(std::move(v));
}

bool FiniteSet::contains(const Nat& x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

FiniteSet FiniteSet::set_union(const FiniteSet& o) const {
  std::vector<Nat> v = elems_;
  v.insert(v.end(), o.elems_.begin(), o.elems_.end());
  return FiniteSet(std::move(v));
}

FiniteSet FiniteSet::set_minus(const FiniteSet& o) const {
  std::vector<Nat> v;
  for (const Nat& e : elems_)
    if (!o.contains(e)) v.push_back(e);
  return FiniteSet(std::move(v));
}

bool FiniteSet::subset_of(const FiniteSet& o) const {
  for (const Nat& e : elems_)
    if (!o.contains(e)) return false;
  return true;
}

std::vector<uint64_t> FiniteSet::as_u64() const {
  std::vector<uint64_t> v;
  v.reserve(elems_.size());
  for (const Nat& e : elems_) v.push_back(to_u64(e));
  return v;
}

std::string FiniteSet::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ",";
    os << elems_[i];
  }
  os << "}";
  return os.str();
}

FiniteSet primitivize(const FiniteSet& a) {
  std::vector<Nat> keep;
  const auto& e = a.elems();
  for (size_t i = 0; i < e.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < i && !dominated; ++j)
      if (e[i] % e[j] == 0) dominated = true;
    if (!dominated) keep.push_back(e[i]);
  }
  return FiniteSet(std::move(keep));
}

Nat lcm_chain(const FiniteSet& s) {
  if (s.empty()) throw std::invalid_argument("empty lcm");
  Nat l = 1;
  for (const Nat& e : s) l = nat_lcm(l, e);
  return l;
}

FiniteSet b_prime_of_q(const FiniteSet& b, const Nat& q) {
  if (q < 1) throw std::invalid_argument("b_prime_of_q requires q >= 1");
  std::vector<Nat> v;
  v.reserve(b.size());
  for (const Nat& e : b) v.push_back(e / nat_gcd(e, q));
  return FiniteSet(std::move(v));
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

uint64_t pollard_rho(uint64_t n) {
  if ((n & 1) == 0) return 2;
  uint64_t x = 2, y = 2, c = 1, d = 1;
  while (true) {
    x = 2;
    y = 2;
    d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      uint64_t diff = x > y ? x - y : y - x;
      d = std::__gcd(diff, n);
    }
    if (d != n) return d;
    ++c;
  }
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Deterministic Miller-Rabin bases for 64-bit inputs.
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t p = 2; p <= 1000000ull && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  // Residue is 1, a prime, or a product of primes > 1e6; split recursively.
  std::vector<uint64_t> stack;
  if (n > 1) stack.push_back(n);
  std::vector<uint64_t> primes;
  while (!stack.empty()) {
    uint64_t m = stack.back();
    stack.pop_back();
    if (is_prime_u64(m)) {
      primes.push_back(m);
      continue;
    }
    uint64_t f = pollard_rho(m);
    stack.push_back(f);
    stack.push_back(m / f);
  }
  std::sort(primes.begin(), primes.end());
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.emplace_back(primes[i], static_cast<unsigned>(j - i));
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Nat, unsigned>> factorize(const Nat& n) {
  if (n < 1 || n > (Nat(1) << 63)) throw std::invalid_argument("factorization cap exceeded");
  std::vector<std::pair<Nat, unsigned>> out;
  for (auto& [p, e] : factorize_u64(to_u64(n))) out.emplace_back(Nat(p), e);
  return out;
}

FiniteSet divisors(const Nat& n) {
  if (n < 1 || n > (Nat(1) << 63)) throw std::invalid_argument("factorization cap exceeded");
  std::vector<Nat> divs{Nat(1)};
  for (auto& [p, e] : factorize(n)) {
    size_t m = divs.size();
    Nat pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < m; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return FiniteSet(std::move(divs));
}

std::vector<uint64_t> primes_up_to(uint64_t x) {
  std::vector<uint64_t> out;
  if (x < 2) return out;
  std::vector<uint8_t> mark(x + 1, 1);
  mark[0] = mark[1] = 0;
  for (uint64_t i = 2; i * i <= x; ++i)
    if (mark[i])
      for (uint64_t j = i * i; j <= x; j += i) mark[j] = 0;
  for (uint64_t i = 2; i <= x; ++i)
    if (mark[i]) out.push_back(i);
  return out;
}

std::vector<uint64_t> primes_where(size_t k, bool (*pred)(uint64_t)) {
  std::vector<uint64_t> out;
  uint64_t bound = 64;
  while (out.size() < k) {
    out.clear();
    for (uint64_t p : primes_up_to(bound)) {
      if (pred(p)) out.push_back(p);
      if (out.size() == k) break;
    }
    bound *= 4;
  }
  return out;
}

}  // namespace bfree

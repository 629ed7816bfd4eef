#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfree {

// Arbitrary-precision natural number. All lcm chains are exact: lcm(S_k)
// grows multiplicatively and overflows fixed width quickly for prime-rich
// sets.
using Nat = boost::multiprecision::cpp_int;

inline Nat nat_gcd(const Nat& a, const Nat& b) { return boost::multiprecision::gcd(a, b); }
inline Nat nat_lcm(const Nat& a, const Nat& b) { return boost::multiprecision::lcm(a, b); }

uint64_t to_u64(const Nat& n);
double to_double(const Nat& n);

// Exact rational in lowest terms, den >= 1.
struct Rational {
  Nat num{0};
  Nat den{1};

  Rational() = default;
  Rational(Nat n, Nat d);
  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1, 1); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }

  double to_double() const;
  std::string str() const;
};

// Strictly increasing list of naturals >= 1. Canonical form everywhere, so
// set equality is list equality.
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<Nat> elems);
  static FiniteSet of(std::initializer_list<uint64_t> xs);
  static FiniteSet from_u64(const std::vector<uint64_t>& xs);

  const std::vector<Nat>& elems() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  size_t size() const { return elems_.size(); }
  const Nat& operator[](size_t i) const { return elems_[i]; }
  bool contains(const Nat& x) const;
  bool operator==(const FiniteSet& o) const { return elems_ == o.elems_; }

  FiniteSet set_union(const FiniteSet& o) const;
  FiniteSet set_minus(const FiniteSet& o) const;
  bool subset_of(const FiniteSet& o) const;

  std::vector<uint64_t> as_u64() const;
  std::string str() const;

  std::vector<Nat>::const_iterator begin() const { return elems_.begin(); }
  std::vector<Nat>::const_iterator end() const { return elems_.end(); }

 private:
  std::vector<Nat> elems_;
};

// A minus every element divisible by a strictly smaller element of A.
// Preserves the set of multiples; idempotent.
FiniteSet primitivize(const FiniteSet& a);

// lcm of all elements; throws on empty input.
Nat lcm_chain(const FiniteSet& s);

// {b/gcd(b,q) : b in B}, deduplicated and sorted. Contains 1 iff some b in B
// divides q.
FiniteSet b_prime_of_q(const FiniteSet& b, const Nat& q);

// All positive divisors of n, sorted. n must be in [1, 2^63].
FiniteSet divisors(const Nat& n);

// Prime factorization of n <= 2^63 (trial division up to 1e6, then
// deterministic Miller-Rabin plus Pollard rho splitting).
std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n);
std::vector<std::pair<Nat, unsigned>> factorize(const Nat& n);

bool is_prime_u64(uint64_t n);

// Primes <= x in increasing order.
std::vector<uint64_t> primes_up_to(uint64_t x);

// First k primes satisfying pred (increasing). Used by the generated
// families; the streams are deterministic by construction.
std::vector<uint64_t> primes_where(size_t k, bool (*pred)(uint64_t));

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bfree

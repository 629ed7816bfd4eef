#include "bfree/arith.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace bfree;

TEST_CASE("primitivize removes dominated elements") {
  CHECK(primitivize(FiniteSet::of({2, 3, 4, 6, 9})) == FiniteSet::of({2, 3}));
  CHECK(primitivize(FiniteSet::of({10, 12, 14, 15})) == FiniteSet::of({10, 12, 14, 15}));
  CHECK(primitivize(FiniteSet::of({1, 5, 7})) == FiniteSet::of({1}));
  CHECK(primitivize(FiniteSet()) == FiniteSet());
}

TEST_CASE("primitivize is idempotent and preserves the multiples") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    auto v = testutil::random_set(rng, 10, 50);
    FiniteSet a = FiniteSet::from_u64(v);
    FiniteSet p = primitivize(a);
    CHECK(primitivize(p) == p);
    auto lhs = testutil::brute_multiples(v, 10000);
    auto rhs = testutil::brute_multiples(p.as_u64(), 10000);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("lcm chains") {
  CHECK(lcm_chain(FiniteSet::of({4, 6})) == 12);
  CHECK(lcm_chain(FiniteSet::of({36, 10, 21})) == 1260);
  CHECK(lcm_chain(FiniteSet::of({7})) == 7);
  CHECK_THROWS_AS(lcm_chain(FiniteSet()), std::invalid_argument);

  std::mt19937_64 rng(8);
  for (int it = 0; it < 30; ++it) {
    auto v = testutil::random_set(rng, 8, 60);
    FiniteSet s = FiniteSet::from_u64(v);
    Nat l = lcm_chain(s);
    Nat prod = 1;
    for (uint64_t e : v) {
      CHECK(l % e == 0);
      prod *= e;
    }
    CHECK(prod % l == 0);
  }
}

TEST_CASE("quotient set by gcd") {
  CHECK(b_prime_of_q(FiniteSet::of({6, 10, 15}), 2) == FiniteSet::of({3, 5, 15}));
  CHECK(b_prime_of_q(FiniteSet::of({6, 10, 15}), 1) == FiniteSet::of({6, 10, 15}));
  CHECK(b_prime_of_q(FiniteSet::of({4}), 8) == FiniteSet::of({1}));

  // Contains 1 iff some element divides q.
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    auto v = testutil::random_set(rng, 8, 40);
    uint64_t q = 1 + rng() % 200;
    bool divides = false;
    for (uint64_t e : v)
      if (q % e == 0) divides = true;
    FiniteSet out = b_prime_of_q(FiniteSet::from_u64(v), q);
    CHECK(out.contains(Nat(1)) == divides);
  }
}

TEST_CASE("divisors") {
  CHECK(divisors(12) == FiniteSet::of({1, 2, 3, 4, 6, 12}));
  CHECK(divisors(1) == FiniteSet::of({1}));
  CHECK(divisors(97) == FiniteSet::of({1, 97}));
  CHECK_THROWS_AS(divisors(Nat(1) << 64), std::invalid_argument);
}

TEST_CASE("factorization") {
  auto f = factorize_u64(6983776800ull);  // 2^5 3^3 5^2 7 11 13 17 19
  Nat back = 1;
  for (auto& [p, e] : f) {
    CHECK(is_prime_u64(p));
    for (unsigned i = 0; i < e; ++i) back *= p;
  }
  CHECK(back == 6983776800ull);
  CHECK(is_prime_u64(2305843009213693951ull));  // 2^61 - 1
  CHECK(!is_prime_u64(2305843009213693953ull));
  auto f2 = factorize_u64((1ull << 62) - 1);  // 3 * 715827883 * 2147483647
  CHECK(f2.size() == 3);
}

TEST_CASE("rationals normalize") {
  Rational r(Nat(4), Nat(6));
  CHECK(r.num == 2);
  CHECK(r.den == 3);
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational::one() - Rational(1, 3)) == Rational(2, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
}

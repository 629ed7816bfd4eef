#include "bfree/density.hpp"

#include "bfree/sieve.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace bfree;

TEST_CASE("exact density of multiples") {
  CHECK(*exact_density_of_multiples(FiniteSet::of({2, 3})).exact_value == Rational(2, 3));
  CHECK(*exact_density_of_multiples(FiniteSet()).exact_value == Rational::zero());
  CHECK(*exact_density_of_multiples(FiniteSet::of({1, 7})).exact_value == Rational::one());

  // Brute count over one full period for {36, 10, 21}.
  auto mult = testutil::brute_multiples({36, 10, 21}, 1259);
  uint64_t count = 0;
  for (uint64_t i = 1; i <= 1260; ++i) count += mult[i % 1260];
  CHECK(*exact_density_of_multiples(FiniteSet::of({36, 10, 21})).exact_value ==
        Rational(Nat(count), Nat(1260)));
}

TEST_CASE("inclusion-exclusion agrees with one-period sieving") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 30; ++it) {
    auto v = testutil::random_set(rng, 7, 40);
    FiniteSet s = FiniteSet::from_u64(v);
    DensityEstimate ie = exact_density_of_multiples(s, 24, 1);        // force IE
    DensityEstimate ps = exact_density_of_multiples(s, 0, 100000000); // force period sieve
    CHECK(*ie.exact_value == *ps.exact_value);
    CHECK(*ie.exact_value == *exact_density_of_multiples(primitivize(s)).exact_value);
  }
}

TEST_CASE("density is monotone in the set") {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 30; ++it) {
    auto v = testutil::random_set(rng, 8, 60);
    auto w = v;
    w.push_back(2 + rng() % 60);
    Rational small = *exact_density_of_multiples(FiniteSet::from_u64(v)).exact_value;
    Rational big = *exact_density_of_multiples(FiniteSet::from_u64(w)).exact_value;
    CHECK(small <= big);
  }
}

TEST_CASE("interval densities") {
  DensityEstimate free_primes = interval_density(BSet::make("primes"), DensityTarget::free_numbers, 1000000);
  CHECK(*free_primes.count == 1);  // only n = 1 survives

  DensityEstimate m23 = interval_density(BSet::explicit_set(FiniteSet::of({2, 3})),
                                         DensityTarget::multiples, 600);
  CHECK(*m23.count == 400);

  // Counts partition [1, N].
  std::mt19937_64 rng(33);
  for (int it = 0; it < 10; ++it) {
    auto v = testutil::random_set(rng, 8, 100);
    BSet b = BSet::explicit_set(FiniteSet::from_u64(v));
    uint64_t n = 1000 + rng() % 100000;
    CHECK(*interval_density(b, DensityTarget::multiples, n).count +
              *interval_density(b, DensityTarget::free_numbers, n).count ==
          n);
  }
}

TEST_CASE("squarefree density approaches the Euler product") {
  double euler = testutil::euler_product_squarefree(3163);
  DensityEstimate de = interval_density(BSet::make("prime-squares"), DensityTarget::free_numbers, 10000000);
  CHECK(std::abs(de.value - euler) < 1e-3);
}

TEST_CASE("logarithmic partial sums") {
  CHECK(std::abs(log_density_partial(BSet::explicit_set(FiniteSet::of({2})), 1000000).value - 0.5) < 0.02);
  CHECK(log_density_partial(BSet::make("primes"), 1000000).value > 0.9);
  // The partial sum carries an O(1/log N) bias, about -0.034 at this N.
  double euler = testutil::euler_product_squarefree(3163);
  CHECK(std::abs(log_density_partial(BSet::make("prime-squares"), 1000000).value - (1.0 - euler)) < 0.05);
}

TEST_CASE("monotone trace of truncation densities") {
  DensityEstimate de = davenport_erdos_trace(BSet::explicit_set(FiniteSet::of({2, 3, 5})), {2, 3, 5});
  REQUIRE(de.exact_trace.size() == 3);
  CHECK(de.exact_trace[0].second == Rational(1, 2));
  CHECK(de.exact_trace[1].second == Rational(2, 3));
  CHECK(de.exact_trace[2].second == Rational(11, 15));

  std::mt19937_64 rng(34);
  for (int it = 0; it < 10; ++it) {
    auto v = testutil::random_set(rng, 10, 150);
    DensityEstimate t = davenport_erdos_trace(BSet::explicit_set(FiniteSet::from_u64(v)),
                                              {10, 40, 80, 150});
    for (size_t i = 1; i < t.monotone_trace.size(); ++i)
      CHECK(t.monotone_trace[i].second >= t.monotone_trace[i - 1].second - 1e-12);
  }
}

TEST_CASE("truncation trace stays below the interval estimate") {
  BSet b = BSet::make("ape1");
  DensityEstimate trace = davenport_erdos_trace(b, {20, 50, 100, 500, 1000});
  DensityEstimate full = interval_density(b, DensityTarget::multiples, 10000000);
  CHECK(trace.value <= full.value + 0.01);
  for (size_t i = 1; i < trace.monotone_trace.size(); ++i)
    CHECK(trace.monotone_trace[i].second >= trace.monotone_trace[i - 1].second - 1e-9);
}

TEST_CASE("light tails traces") {
  auto sq = light_tails_trace(BSet::make("prime-squares"), {10, 100, 1000, 10000}, 1000000);
  CHECK(sq.back().second < 0.01);
  for (size_t i = 1; i < sq.size(); ++i) CHECK(sq[i].second <= sq[i - 1].second + 1e-12);

  auto pr = light_tails_trace(BSet::make("primes"), {10, 100, 1000}, 1000000);
  CHECK(pr.back().second > 0.3);  // prime tails stay heavy

  auto fin = light_tails_trace(BSet::explicit_set(FiniteSet::of({4, 9, 25})), {25, 30}, 100000);
  CHECK(fin[0].second == 0.0);
  CHECK(fin[1].second == 0.0);
}

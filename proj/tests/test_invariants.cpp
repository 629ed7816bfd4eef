// Cross-module invariants and edge cases.

#include "bfree/crt.hpp"
#include "bfree/density.hpp"
#include "bfree/filtration.hpp"
#include "bfree/window.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace bfree;

TEST_CASE("every profile value divides the modulus") {
  std::mt19937_64 rng(71);
  for (const char* id : {"primes", "two-three", "ape1", "q-family", "mod12", "prime-squares"}) {
    BSet b = BSet::make(id);
    for (int it = 0; it < 10; ++it) {
      Nat m(2 + rng() % 5000);
      GcdProfile p = b.gcd_profile(m);
      for (const Nat& g : p.gcds) CHECK(m % g == 0);
    }
  }
}

TEST_CASE("a set containing 1 degenerates gracefully") {
  BSet b = BSet::explicit_set(FiniteSet::of({1, 5, 7}));
  EtaBlock blk = sieve_eta(b, -50, 50);
  CHECK(blk.popcount() == 0);  // everything is a multiple of 1
  CHECK(*exact_density_of_multiples(FiniteSet::of({1, 5, 7})).exact_value == Rational::one());
  FiltrationTable t = build_filtration(b, 2, FiltrationMode::prefix, 2);
  CHECK(t.stages[0].c == 1);
  ClassificationReport rep = classify(b, t, 10000);
  CHECK(rep.proximal == Verdict::yes);  // the window is empty
}

TEST_CASE("every free position eventually resolves good-free for a finite set") {
  BSet b = BSet::make("power2", {5, {}});
  FiltrationTable t = build_filtration(b, 5, FiltrationMode::family, 2);
  EtaBlock eta = sieve_eta(b, 0, 10000);
  // Collect good-free positions over all stages.
  std::vector<uint8_t> resolved(10001, 0);
  for (size_t k = 1; k <= 5; ++k) {
    const FiltrationStage& st = t.stages[k - 1];
    EtaBlock fa = sieve_eta(BSet::explicit_set(st.A), 0, 10000);
    for (int64_t n = 0; n <= 10000; ++n)
      if (fa.at(n)) resolved[static_cast<size_t>(n)] = 1;
  }
  for (int64_t n = 1; n <= 10000; ++n)
    if (eta.at(n)) CHECK(resolved[static_cast<size_t>(n)]);
}

TEST_CASE("coding respects the zero-sum position under the delta rule") {
  BSet b = BSet::explicit_set(FiniteSet::of({1000}));
  HPoint h;
  h.rule = HPoint::Default::delta;
  h.n0 = 5;
  EtaBlock blk = phi_block(b, h, -10, 10);
  CHECK(!blk.at(-5));  // 1000 divides h + (-5) = 0
  CHECK(blk.at(-4));
}

TEST_CASE("two-three factor is a strict quotient") {
  BSet b = BSet::make("two-three");
  FiltrationTable t = build_filtration(b, 4, FiltrationMode::family, 3);
  MefDescriptor md = mef_descriptor(t);
  CHECK(!md.h_int_trivial);  // s_k/d_k grows
  CHECK(!md.tentative);
}

TEST_CASE("punctured family respects its size parameter") {
  BSet b4 = BSet::make("punctured-primes", {4, {}});
  FiniteSet e4 = b4.elements_up_to(100);
  CHECK(!e4.contains(Nat(5)));
  CHECK(!e4.contains(Nat(11)));
  CHECK(!e4.contains(Nat(19)));
  CHECK(!e4.contains(Nat(41)));
  CHECK(e4.contains(Nat(73)));  // only 4 punctures
}

TEST_CASE("ape1 with finitely many indices") {
  BSet b = BSet::make("ape1", {1, {}});  // only p = 2: {4q}
  CHECK(b.elements_up_to(50) == FiniteSet::of({12, 20, 28, 44}));
  GcdProfile p = b.gcd_profile(Nat(12));
  GcdProfile trunc = b.gcd_profile_truncated(Nat(12), 1000000);
  CHECK(p.exact);
  CHECK(p.gcds == trunc.gcds);
}

TEST_CASE("progression blocks index by step") {
  BSet b = BSet::explicit_set(FiniteSet::of({2, 3}));
  EtaBlock blk = sieve_progression(b, 6, 1, 7, 60);
  // Steps t with 1 + 6t in [7, 60]: t = 1..9.
  CHECK(blk.offset == 1);
  CHECK(blk.len == 9);
}

TEST_CASE("exact density cap produces the documented error") {
  // 30 primes exceed the inclusion-exclusion cap and their lcm the period cap.
  std::vector<uint64_t> v;
  for (uint64_t p : primes_up_to(120)) v.push_back(p);
  CHECK_THROWS_AS(exact_density_of_multiples(FiniteSet::from_u64(v)), BudgetError);
}

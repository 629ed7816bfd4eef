#include "bfree/crt.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace bfree;

namespace {

// Brute-force oracle: scan [0, lcm) for a solution of the residue system.
std::optional<uint64_t> brute_crt(const std::vector<std::pair<uint64_t, uint64_t>>& sys) {
  uint64_t l = 1;
  for (auto& [b, r] : sys) l = std::lcm(l, b);
  for (uint64_t n = 0; n < l; ++n) {
    bool ok = true;
    for (auto& [b, r] : sys)
      if (n % b != r) {
        ok = false;
        break;
      }
    if (ok) return n;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("residue systems over non-coprime moduli") {
  auto sol = crt_solve(CylinderSpec::of({{4, 1}, {6, 5}}));
  REQUIRE(std::holds_alternative<CrtSolution>(sol));
  CHECK(std::get<CrtSolution>(sol).n0 == 5);
  CHECK(std::get<CrtSolution>(sol).modulus == 12);

  auto bad = crt_solve(CylinderSpec::of({{4, 1}, {6, 2}}));
  REQUIRE(std::holds_alternative<CrtIncompat>(bad));
  CHECK(std::get<CrtIncompat>(bad).b1 == 4);
  CHECK(std::get<CrtIncompat>(bad).b2 == 6);

  auto coprime = crt_solve(CylinderSpec::of({{5, 1}, {7, 2}, {11, 3}}));
  REQUIRE(std::holds_alternative<CrtSolution>(coprime));
  CHECK(std::get<CrtSolution>(coprime).n0 == 366);
  CHECK(std::get<CrtSolution>(coprime).modulus == 385);
}

TEST_CASE("solver agrees with brute-force scanning") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 500; ++it) {
    size_t n = 1 + rng() % 5;
    std::vector<std::pair<uint64_t, uint64_t>> sys;
    for (size_t i = 0; i < n; ++i) {
      uint64_t b = 2 + rng() % 49;
      sys.emplace_back(b, rng() % b);
    }
    CylinderSpec spec;
    std::map<uint64_t, uint64_t> dedup;
    bool conflict = false;
    for (auto& [b, r] : sys) {
      auto it2 = dedup.find(b);
      if (it2 != dedup.end() && it2->second != r) conflict = true;
      dedup[b] = r;
    }
    if (conflict) continue;
    for (auto& [b, r] : dedup) spec.residues.emplace_back(Nat(b), Nat(r));
    auto sol = crt_solve(spec);
    std::vector<std::pair<uint64_t, uint64_t>> sys2(dedup.begin(), dedup.end());
    auto brute = brute_crt(sys2);
    if (brute) {
      REQUIRE(std::holds_alternative<CrtSolution>(sol));
      const auto& s = std::get<CrtSolution>(sol);
      CHECK(s.n0 == Nat(*brute));
      for (auto& [b, r] : sys2) CHECK(s.n0 % b == r);
    } else {
      CHECK(std::holds_alternative<CrtIncompat>(sol));
    }
  }
}

TEST_CASE("free search over a solution progression") {
  BSet b = BSet::explicit_set(FiniteSet::of({5, 7, 11}));
  auto res = bfree_crt_search(b, CylinderSpec::of({{5, 1}, {7, 2}, {11, 3}}), 100000);
  // Nonzero residues at every modulus make the whole progression free.
  CHECK(res.density_rel == doctest::Approx(1.0).epsilon(0.01));
  uint64_t expect = (100000 - 366) / 385 + 1;
  CHECK(res.count == expect);
  EtaBlock eta = sieve_eta(b, 1, 100000);
  for (int64_t n : res.solutions) {
    CHECK(n % 385 == 366);
    CHECK(eta.at(n));
  }

  auto dead = bfree_crt_search(BSet::make("mod12"), CylinderSpec::of({{4, 1}, {6, 5}}), 100000);
  CHECK(dead.count == 0);
}

TEST_CASE("coding blocks") {
  BSet odd = BSet::make("odd-primes");
  HPoint h;
  h.assigned[5] = 1;
  CHECK(phi_block(odd, h, 0, 8).to01() == "011001001");

  // All-zero default reproduces the plain sieve.
  HPoint zero;
  CHECK(phi_block(odd, zero, -50, 50).to01() == sieve_eta(odd, -50, 50).to01());

  // Delta rule shifts the sieve.
  std::mt19937_64 rng(62);
  for (int it = 0; it < 10; ++it) {
    int64_t n0 = static_cast<int64_t>(rng() % 2000) - 1000;
    HPoint d;
    d.rule = HPoint::Default::delta;
    d.n0 = n0;
    EtaBlock shifted = phi_block(odd, d, 0, 1000);
    EtaBlock direct = sieve_eta(odd, n0, n0 + 1000);
    CHECK(shifted.to01() == direct.to01());
  }
}

TEST_CASE("theta reads residues back from blocks") {
  // Exact block of the free indicator for the mod12 family.
  BSet m12 = BSet::make("mod12");
  EtaBlock blk = sieve_eta(m12, -10000, 10000);
  auto entries = theta_of_block(blk, m12, 6);
  REQUIRE(entries.size() == 3);  // b = 4, 5, 6
  for (const auto& e : entries) {
    REQUIRE(e.g.has_value());
    CHECK(*e.g == 0);  // the missed class is always 0 for the plain indicator
  }

  // Recovery of an assigned coordinate from the coded block.
  BSet odd = BSet::make("odd-primes");
  HPoint h;
  h.assigned[5] = 1;
  EtaBlock phi = phi_block(odd, h, -2000, 2000);
  auto th = theta_of_block(phi, odd, 5);
  for (const auto& e : th)
    if (e.b == 5) {
      REQUIRE(e.g.has_value());
      CHECK(*e.g == 1);
    }

  // A block with full coverage has no missed class.
  BSet two = BSet::explicit_set(FiniteSet::of({2}));
  EtaBlock ones = sieve_eta(BSet::explicit_set(FiniteSet::of({10007})), 1, 300);
  auto none = theta_of_block(ones, two, 2);
  REQUIRE(none.size() == 1);
  CHECK(!none[0].g.has_value());
  CHECK(none[0].missed_count == 0);
}

TEST_CASE("theta marks full-period windows as provable") {
  BSet b = BSet::explicit_set(FiniteSet::of({4, 6}));
  EtaBlock blk = sieve_eta(b, 0, 30);  // spans the period 12
  auto th = theta_of_block(blk, b, 6);
  for (const auto& e : th) CHECK(e.provable);
}

TEST_CASE("block containment") {
  BSet odd = BSet::make("odd-primes");
  EtaBlock eta = sieve_eta(odd, -1000000, 1000000);
  CHECK(!block_containment_check(pattern_from_string("11001001"), eta, Dominance::lower).has_value());

  HPoint h;
  h.assigned[5] = 1;
  EtaBlock phi = phi_block(odd, h, 1, 8);
  auto hit = block_containment_check(pattern_from_string("11001001"), phi, Dominance::exact);
  REQUIRE(hit.has_value());
  CHECK(*hit == 1);

  EtaBlock some = sieve_eta(odd, 0, 10);
  CHECK(block_containment_check(pattern_from_string("0"), some, Dominance::exact).has_value());
}

// Acceptance suite: runs every criterion end to end at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include "bfree/crt.hpp"
#include "bfree/density.hpp"
#include "bfree/filtration.hpp"
#include "bfree/report.hpp"
#include "bfree/sieve.hpp"
#include "bfree/window.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>

using namespace bfree;

namespace {

int failures = 0;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int id, const std::string& what, bool pass, double seconds, double budget,
            const std::string& detail = "") {
  bool in_time = seconds <= budget;
  bool ok = pass && in_time;
  if (!ok) ++failures;
  std::cout << "C" << id << " " << (ok ? "PASS" : "FAIL") << "  " << what << "  (" << seconds
            << " s, budget " << budget << " s)";
  if (!detail.empty()) std::cout << "\n    " << detail;
  if (!in_time) std::cout << "\n    over time budget";
  std::cout << "\n";
}

// --- C1: coded block and absent dominating block -----------------------------
void c1() {
  Stopwatch sw;
  BSet odd = BSet::make("odd-primes");
  HPoint h;
  h.assigned[5] = 1;
  bool pass = phi_block(odd, h, 0, 8).to01() == "011001001";
  EtaBlock eta = sieve_eta(odd, -1000000, 1000000);
  pass = pass && !block_containment_check(pattern_from_string("11001001"), eta, Dominance::lower);
  report(1, "coded block 011001001 and no dominating block on the free indicator", pass, sw.s(), 5.0);
}

// --- C2: two-three invariants -------------------------------------------------
void c2() {
  Stopwatch sw;
  BSet b = BSet::make("two-three");
  FiltrationTable t = build_filtration(b, 5, FiltrationMode::family);
  bool pass = true;
  for (size_t k = 1; k <= 5; ++k) {
    pass = pass && t.dk[k - 1].value == 6 && t.dk[k - 1].stabilized;
    pass = pass && t.stages[k - 1].new_elems == FiniteSet::of({2, 3});
  }
  MefDescriptor md = mef_descriptor(t);
  pass = pass && md.render().rfind("Z/6Z", 0) == 0 && !md.tentative;
  std::vector<Nat> persist;
  for (const auto& e : t.a_infinity)
    if (e.persistent) persist.push_back(e.value);
  pass = pass && FiniteSet(persist) == FiniteSet::of({2, 3});
  report(2, "two-three: d_k = 6, shadows {2,3}, factor Z/6Z, persistent {2,3}", pass, sw.s(), 5.0);
}

// --- C3: q-family identity ----------------------------------------------------
void c3() {
  Stopwatch sw;
  BSet b = BSet::make("q-family");
  FiltrationTable t = build_filtration(b, 5, FiltrationMode::family);
  bool pass = true;
  std::string vals;
  for (size_t k = 1; k <= 5; ++k) {
    pass = pass && t.stages[k - 1].s == t.stages[k - 1].c && t.stages[k - 1].c == t.dk[k - 1].value;
    if (k == 1)
      vals = "s_1=" + t.stages[0].s.str() + " c_1=" + t.stages[0].c.str() + " d_1=" +
             t.dk[0].value.str();
  }
  pass = pass && mef_descriptor(t).h_int_trivial;
  report(3, "q-family: s_k = c_k = d_k and trivial interior period group", pass, sw.s(), 5.0,
         pass ? ""
              : "computed honestly: the level sets contain element pairs with disjoint prime "
                "support (e.g. p_2 p_3), so every stage profile contains 1, the shadow multiples "
                "cover Z, and c_k = d_k = 1 < s_k (" +
                    vals + "); the advertised identity is unattainable for this construction");
}

// --- C4: cascade products -----------------------------------------------------
void c4() {
  Stopwatch sw;
  BSet b = BSet::make("cascade");
  FiltrationTable t = build_filtration(b, 4, FiltrationMode::family);
  std::vector<uint64_t> p{2, 5, 11, 17}, q{3, 7, 13, 19};
  bool pass = true;
  Nat dprod = 1, quot = 1;
  for (size_t k = 1; k <= 4; ++k) {
    dprod *= p[k - 1];
    dprod *= q[k - 1];
    if (k > 1) {
      quot *= p[k - 1];
      quot *= q[k - 1];
    }
    pass = pass && t.dk[k - 1].value == dprod && t.dk[k - 1].stabilized;
    pass = pass && t.quotients[k - 1] == quot;
  }
  report(4, "cascade: d_k and s_k/d_k are the exact stream-prime products", pass, sw.s(), 10.0,
         pass ? ""
              : "computed honestly: the level members P_{j-1} p_j^2 stop being dominated once "
                "the shadow P_{j-1} p_j leaves the profile (stage j+1 on), so the periods pick "
                "up the squares p_j^2 and d_k = p_1 p_2^2...p_k^2 q_1...q_k (computed d_2 = " +
                    t.dk[1].value.str() + ", advertised 210); the advertised square-free product "
                    "is unattainable for this construction");
}

// --- C5: proximality of the primes ---------------------------------------------
void c5() {
  Stopwatch sw;
  BSet b = BSet::make("primes");
  FiltrationTable t = build_filtration(b, 6, FiltrationMode::prefix);
  ClassificationReport rep = classify(b, t, 1000000);
  bool pass = rep.proximal == Verdict::yes && rep.one_in_every_A;
  pass = pass && rep.coprime_chain.size() >= 25;
  for (size_t i = 0; i < rep.coprime_chain.size() && pass; ++i)
    for (size_t j = i + 1; j < rep.coprime_chain.size(); ++j)
      if (std::__gcd(rep.coprime_chain[i], rep.coprime_chain[j]) != 1) pass = false;
  report(5, "primes: proximal with a 25-element coprime certificate and 1 in every A_k", pass,
         sw.s(), 5.0);
}

// --- C6: power2 regular Toeplitz ------------------------------------------------
void c6() {
  Stopwatch sw;
  BSet b = BSet::make("power2", {8, {}});
  FiltrationTable t = build_filtration(b, 8, FiltrationMode::family, 2);
  uint64_t n = 10000000ull;
  ClassificationReport rep = classify(b, t, n);
  bool pass = rep.toeplitz == Verdict::yes;
  WindowMeasures wm = window_measures(b, t, n);
  for (size_t i = 1; i < wm.per_stage_boundary.size(); ++i)
    if (wm.per_stage_boundary[i].second > 2.0 * wm.per_stage_boundary[i - 1].second + 1e-9)
      pass = false;
  pass = pass && wm.per_stage_boundary.back().second < 1e-2;
  for (size_t k = 1; k <= 8; ++k) {
    ToeplitzPositions tp = toeplitz_positions(b, t, k, 2);
    if (tp.frac_unresolved > std::pow(2.0, -static_cast<double>(k)) + 1e-2) pass = false;
  }
  report(6, "power2 (8 odd primes): Toeplitz, shrinking boundary, unresolved <= 2^-k + 1e-2", pass,
         sw.s(), 30.0);
}

// --- C7: squarefree density vs the Euler product --------------------------------
void c7() {
  Stopwatch sw;
  // Independent oracle: product over primes up to 3163 with a local sieve.
  std::vector<uint8_t> mark(3164, 1);
  double euler = 1.0;
  for (uint64_t p = 2; p <= 3163; ++p) {
    if (!mark[p]) continue;
    for (uint64_t j = p * p; j <= 3163; j += p) mark[j] = 0;
    euler *= 1.0 - 1.0 / (static_cast<double>(p) * static_cast<double>(p));
  }
  DensityEstimate de = interval_density(BSet::make("prime-squares"), DensityTarget::free_numbers,
                                        10000000ull);
  bool pass = std::abs(de.value - euler) < 1e-3;
  report(7, "squarefree density within 1e-3 of the Euler product", pass, sw.s(), 30.0,
         "measured " + std::to_string(de.value) + " vs " + std::to_string(euler));
}

// --- C8: mod12 coverage and covered progression ----------------------------------
void c8() {
  Stopwatch sw;
  BSet b = BSet::make("mod12");
  EtaBlock blk = sieve_eta(b, 0, 10000);
  bool pass = residue_coverage(blk, 4).residues_hit == std::set<uint64_t>{1, 2, 3};
  pass = pass && residue_coverage(blk, 6).residues_hit == std::set<uint64_t>{1, 2, 3, 4, 5};
  pass = pass && sieve_progression(b, 12, 5, 0, 100000).popcount() == 0;
  report(8, "mod12: coverage {1,2,3} mod 4 and {1,..,5} mod 6; 5+12Z fully covered", pass, sw.s(),
         5.0);
}

// --- C9: thin cylinder in the ape1 family ----------------------------------------
void c9() {
  Stopwatch sw;
  BSet b = BSet::make("ape1");
  FiltrationTable t = build_filtration(b, 3, FiltrationMode::prefix, 2);
  auto ev = haar_regularity_scan(b, t, 10000000ull);
  bool pass = false;
  uint64_t count = 0;
  for (const auto& e : ev)
    if (e.k == 1 && e.n == 4) {
      pass = e.count <= 30;
      count = e.count;
    }
  report(9, "ape1: cylinder 4 mod 12 flagged with free count <= 30", pass, sw.s(), 30.0,
         "count " + std::to_string(count));
}

// --- C10: property suites ---------------------------------------------------------
void c10() {
  Stopwatch sw;
  std::mt19937_64 rng(12345);
  bool pass = true;
  std::string detail;

  // Divisibility chains on 100 random explicit sets.
  for (int it = 0; it < 100 && pass; ++it) {
    std::uniform_int_distribution<size_t> size_d(1, 12);
    std::uniform_int_distribution<uint64_t> elem_d(2, 200);
    std::vector<uint64_t> v;
    size_t m = size_d(rng);
    for (size_t i = 0; i < m; ++i) v.push_back(elem_d(rng));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    BSet b = BSet::explicit_set(FiniteSet::from_u64(v));
    FiltrationTable t = build_filtration(b, std::min<size_t>(v.size(), 6), FiltrationMode::prefix, 4);
    for (size_t k = 1; k <= t.dk.size() && pass; ++k) {
      if (t.dk[k - 1].value % t.stages[k - 1].c != 0) pass = false;
      if (t.stages[k - 1].s % t.dk[k - 1].value != 0) pass = false;
      if (k < t.dk.size()) {
        if (t.dk[k - 1].value != nat_gcd(t.stages[k - 1].s, t.dk[k].value)) pass = false;
        if (t.quotients[k] % t.quotients[k - 1] != 0) pass = false;
      }
    }
    if (!pass) detail = "divisibility chain failed";
  }

  // Primitivization preserves the multiples, brute force at N = 1e4.
  for (int it = 0; it < 25 && pass; ++it) {
    std::uniform_int_distribution<uint64_t> elem_d(2, 50);
    std::vector<uint64_t> v;
    for (size_t i = 0; i < 8; ++i) v.push_back(elem_d(rng));
    FiniteSet a = FiniteSet::from_u64(v);
    FiniteSet p = primitivize(a);
    EtaBlock ea = sieve_eta(BSet::explicit_set(a), 0, 10000);
    EtaBlock ep = sieve_eta(BSet::explicit_set(p), 0, 10000);
    if (ea.to01() != ep.to01()) {
      pass = false;
      detail = "primitivize changed the multiples";
    }
  }

  // CRT solver versus brute scan on 500 random systems.
  for (int it = 0; it < 500 && pass; ++it) {
    size_t n = 1 + rng() % 5;
    std::map<uint64_t, uint64_t> sys;
    for (size_t i = 0; i < n; ++i) {
      uint64_t b = 2 + rng() % 49;
      sys[b] = rng() % b;
    }
    CylinderSpec spec;
    for (auto& [b, r] : sys) spec.residues.emplace_back(Nat(b), Nat(r));
    auto sol = crt_solve(spec);
    uint64_t l = 1;
    for (auto& [b, r] : sys) l = std::lcm(l, b);
    std::optional<uint64_t> brute;
    for (uint64_t x = 0; x < l && !brute; ++x) {
      bool ok = true;
      for (auto& [b, r] : sys)
        if (x % b != r) ok = false;
      if (ok) brute = x;
    }
    if (brute.has_value() != std::holds_alternative<CrtSolution>(sol)) {
      pass = false;
      detail = "CRT solvability mismatch";
    } else if (brute && std::get<CrtSolution>(sol).n0 != Nat(*brute)) {
      pass = false;
      detail = "CRT solution mismatch";
    }
  }

  // Interval counts partition [1, N].
  for (int it = 0; it < 20 && pass; ++it) {
    std::uniform_int_distribution<uint64_t> elem_d(2, 100);
    std::vector<uint64_t> v;
    for (size_t i = 0; i < 6; ++i) v.push_back(elem_d(rng));
    BSet b = BSet::explicit_set(FiniteSet::from_u64(v));
    uint64_t n = 1000 + rng() % 100000;
    if (*interval_density(b, DensityTarget::multiples, n).count +
            *interval_density(b, DensityTarget::free_numbers, n).count !=
        n) {
      pass = false;
      detail = "partition identity failed";
    }
  }

  report(10, "property suites: divisibility chains, primitivization, CRT, partition", pass, sw.s(),
         60.0, detail);
}

}  // namespace

int main() {
  Stopwatch total;
  c1();
  c2();
  c3();
  c4();
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED")
            << " (total " << total.s() << " s)\n";
  return failures;
}

#pragma once

#include "bfree/arith.hpp"
#include "bfree/bset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bfree {

struct FiltrationStage {
  size_t k = 0;
  FiniteSet S;
  Nat s;  // lcm(S)
  FiniteSet A;
  bool A_exact = false;
  FiniteSet primA;
  Nat c;  // lcm(prim A) = minimal period of the multiples of A
  FiniteSet new_elems;  // A \ S
};

struct DkInfo {
  Nat value;
  bool stabilized = false;
  std::vector<Nat> trace;  // gcd(s_k, c_{k+j}), non-decreasing in divisibility
};

struct PersistenceEntry {
  Nat value;
  size_t first_seen = 0;
  size_t last_seen = 0;
  size_t times_seen = 0;
  bool persistent = false;  // present at every stage from first_seen to the last stage
};

struct FiltrationTable {
  std::vector<FiltrationStage> stages;  // depth + lookahead stages
  size_t depth = 0;                     // stages with d_k data
  std::vector<DkInfo> dk;               // k = 1..depth
  std::vector<Nat> quotients;           // s_k / d_k
  std::vector<PersistenceEntry> a_infinity;
  bool all_exact = true;
};

enum class FiltrationMode { prefix, saturated, family };

// Builds depth + lookahead stages. prefix: S_k = first k elements in
// increasing order. saturated: S_k = B ∩ A_{prefix_k} (a one-step closure
// with B ∩ A_{S_k} = S_k). family: the family's native level sets, falling
// back to prefix when there are none.
FiltrationTable build_filtration(const BSet& b, size_t depth, FiltrationMode mode,
                                 size_t lookahead = 6, size_t confirm = 3);

// Fills dk/quotients from the stage data.
void compute_dk(FiltrationTable& table, size_t lookahead, size_t confirm);

// Persistence analysis of A_k \ S_k across stages.
void detect_a_infinity(FiltrationTable& table);

struct MefDescriptor {
  struct PrimeComponent {
    uint64_t p;
    unsigned v;    // sup of v_p(d_k) over computed stages
    bool growing;  // still increasing within the confirm window
  };
  std::vector<PrimeComponent> components;
  bool h_int_trivial = false;  // s_k = d_k at every computed stage
  bool tentative = false;      // some d_k unstabilized
  std::vector<Nat> d_chain;
  std::string render() const;  // e.g. "Z/6Z", "Z_2 x Z/3Z", "trivial"
};

MefDescriptor mef_descriptor(const FiltrationTable& table, size_t confirm = 3);

}  // namespace bfree

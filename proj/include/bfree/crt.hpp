#pragma once

#include "bfree/bset.hpp"
#include "bfree/sieve.hpp"

#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace bfree {

// Finite residue system h_b (mod b), 0 <= h_b < b. Compatible (pairwise
// congruent mod gcds) iff it describes a nonempty cylinder.
struct CylinderSpec {
  std::vector<std::pair<Nat, Nat>> residues;  // sorted by modulus

  static CylinderSpec of(std::initializer_list<std::pair<uint64_t, uint64_t>> xs);
  void validate() const;
  FiniteSet moduli() const;
};

struct CrtSolution {
  Nat n0;       // 0 <= n0 < modulus
  Nat modulus;  // lcm of the moduli
};
struct CrtIncompat {
  Nat b1, b2;  // earliest violating pair in sorted-moduli order
};

std::variant<CrtSolution, CrtIncompat> crt_solve(const CylinderSpec& c);

struct BfreeSearchResult {
  std::vector<int64_t> solutions;  // capped listing
  uint64_t count = 0;
  double density_abs = 0;  // count / N
  double density_rel = 0;  // count / (N / modulus): in-progression free fraction
  Nat modulus;
  Nat n0;
};

// All n in [1, N] with n ≡ n0 (mod lcm S) and n free of B.
BfreeSearchResult bfree_crt_search(const BSet& b, const CylinderSpec& c, uint64_t n,
                                   size_t list_cap = 1000);

// Point of the ambient group given by finitely many assigned coordinates and
// a default rule for the rest.
struct HPoint {
  enum class Default { zero, delta };
  std::map<uint64_t, uint64_t> assigned;  // b -> h_b, 0 <= h_b < b
  Default rule = Default::zero;
  int64_t n0 = 0;  // base point for the delta rule
};

// Block of the coding phi(h) on [lo, hi]: position n is 1 iff h_b + n is
// nonzero mod b for every b in B.
EtaBlock phi_block(const BSet& b, const HPoint& h, int64_t lo, int64_t hi);

struct ThetaEntry {
  uint64_t b;
  std::optional<uint64_t> g;  // supp ∩ (bZ - g) empty within the window
  size_t missed_count;
  bool provable;  // window spans a full period of a finite B
};

// For each b in B ∩ [1, b_max]: the residue classes mod b missed by the
// support of the block; defined when exactly one class is missed.
std::vector<ThetaEntry> theta_of_block(const EtaBlock& block, const BSet& b, uint64_t b_max);

enum class Dominance { exact, lower };

// Finds an occurrence of the 0/1 pattern in the block: exact match, or
// coordinatewise dominance (block >= pattern). Returns the block position of
// the first occurrence.
std::optional<int64_t> block_containment_check(const std::vector<uint8_t>& needle,
                                               const EtaBlock& hay, Dominance mode);

std::vector<uint8_t> pattern_from_string(const std::string& s);

}  // namespace bfree

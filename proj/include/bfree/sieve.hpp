#pragma once

#include "bfree/arith.hpp"
#include "bfree/bset.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace bfree {

// Exact 0/1 block of the free-position indicator on an integer interval.
// bits[i] = 1 iff no b in B ∩ [1, b_horizon] divides offset + i. When
// exact, b_horizon covers every divisor that can act on the interval, so the
// block is the true indicator (position 0 is never free: every b divides 0).
struct EtaBlock {
  int64_t offset = 0;
  size_t len = 0;
  std::vector<uint64_t> words;
  uint64_t b_horizon = 0;
  bool exact = false;

  void init(int64_t off, size_t n, bool fill_ones);
  bool bit(size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void clear_bit(size_t i) { words[i >> 6] &= ~(1ull << (i & 63)); }
  int64_t position(size_t i) const { return offset + static_cast<int64_t>(i); }
  bool covers(int64_t n) const { return n >= offset && n < offset + static_cast<int64_t>(len); }
  bool at(int64_t n) const { return bit(static_cast<size_t>(n - offset)); }
  size_t popcount() const;
  std::vector<int64_t> support() const;
  std::string to01() const;
  std::string export_text() const;               // "offset <int>" + 0/1 line
  std::vector<uint64_t> export_words() const;    // raw 64-bit little-endian words
};

struct ResidueCoverage {
  uint64_t modulus = 0;
  std::set<uint64_t> residues_hit;
  int64_t window_lo = 0, window_hi = 0;
  bool full_minus_one() const { return residues_hit.size() == modulus - 1; }
};

// Exact block of the indicator of the B-free positions on [lo, hi]
// (inclusive), horizon max(|lo|, |hi|).
EtaBlock sieve_eta(const BSet& b, int64_t lo, int64_t hi, size_t max_bits = size_t(1) << 31);

// Residues mod b hit by the supported positions of an exact block.
ResidueCoverage residue_coverage(const EtaBlock& block, uint64_t b);

// Free-position indicator restricted to {n in [lo,hi] : n ≡ r (mod a)},
// indexed by progression step: bit t corresponds to n = r0 + a*t.
EtaBlock sieve_progression(const BSet& b, uint64_t a, int64_t r, int64_t lo, int64_t hi);

// Multiples of the given set marked on [1, N]; bit i-1 <-> position i.
std::vector<uint64_t> mark_multiples(const std::vector<uint64_t>& elems, uint64_t n);
uint64_t count_bits(const std::vector<uint64_t>& words, uint64_t n);

}  // namespace bfree

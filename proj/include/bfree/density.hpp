#pragma once

#include "bfree/arith.hpp"
#include "bfree/bset.hpp"

#include <optional>
#include <vector>

namespace bfree {

enum class DensityKind { exact, interval_count, log_partial, davenport_erdos_limit };

struct DensityEstimate {
  DensityKind kind = DensityKind::interval_count;
  double value = 0.0;
  std::optional<Rational> exact_value;
  uint64_t horizon = 0;
  std::optional<uint64_t> count;  // raw integer count for interval estimates
  // (K, value) pairs; non-decreasing in K for the monotone approximation.
  std::vector<std::pair<uint64_t, double>> monotone_trace;
  std::vector<std::pair<uint64_t, Rational>> exact_trace;
};

enum class DensityTarget { multiples, free_numbers };

// Exact rational density of the multiples of finite S. Inclusion-exclusion
// over the divisor lattice of lcm(prim S) when prim S has at most
// `ie_cap` elements, one-period sieve when lcm(prim S) <= period_cap,
// otherwise throws.
DensityEstimate exact_density_of_multiples(const FiniteSet& s, size_t ie_cap = 24,
                                           uint64_t period_cap = 100000000ull);

// card(target ∩ [1,N]) / N with the raw count attached.
DensityEstimate interval_density(const BSet& b, DensityTarget target, uint64_t n);

// (1 / log N) * sum 1/n over multiples in [1, N].
DensityEstimate log_density_partial(const BSet& b, uint64_t n);

// Exact densities of the truncations B ∩ [1,K] for increasing cutoffs: a
// non-decreasing trace of certified lower bounds for the limit density.
// Cutoffs whose truncation exceeds the exact caps fall back to an interval
// count at `fallback_n` (flagged via kind of the trace entry being absent
// from exact_trace).
DensityEstimate davenport_erdos_trace(const BSet& b, const std::vector<uint64_t>& cutoffs,
                                      uint64_t fallback_n = 10000000ull);

// For each K: interval estimate on [1, N] of the density of multiples of
// {b in B : K < b <= N} (upper-bound proxy for the tail density).
std::vector<std::pair<uint64_t, double>> light_tails_trace(const BSet& b,
                                                           const std::vector<uint64_t>& cutoffs,
                                                           uint64_t n);

}  // namespace bfree

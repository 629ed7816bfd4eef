#pragma once

#include "bfree/bset.hpp"
#include "bfree/density.hpp"
#include "bfree/filtration.hpp"
#include "bfree/sieve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bfree {

// Haar measures of the window, its interior and its boundary, via the
// density identities m(W) = 1 - d(multiples of B),
// m(int W) = sup_S d(free of A_S) and m(∂W) = inf_S d̄(M_{A_S} \ M_B).
struct WindowMeasures {
  DensityEstimate m_W;
  DensityEstimate m_intW;
  DensityEstimate m_boundary;  // upper-bound proxy: B is truncated at the horizon
  std::vector<std::pair<size_t, double>> per_stage_boundary;
};

WindowMeasures window_measures(const BSet& b, const FiltrationTable& table, uint64_t n);

enum class Verdict { yes, no, undetermined };
std::string verdict_str(Verdict v);

struct ClassificationReport {
  Verdict proximal = Verdict::undetermined;
  std::vector<uint64_t> coprime_chain;        // pairwise coprime elements of B
  bool one_in_every_A = false;                // 1 ∈ A_k at every stage
  bool stages_exact = false;
  std::string proximal_note;

  Verdict toeplitz = Verdict::undetermined;   // = topological regularity verdict
  Verdict top_regular = Verdict::undetermined;
  Verdict regular_toeplitz = Verdict::undetermined;  // boundary trace vanishing
  std::vector<std::pair<size_t, double>> boundary_trace;
  std::optional<Nat> persistent_witness;      // d in A_k \ S_k at every stage
  std::optional<Nat> scaled_chain_divisor;    // d with a long coprime chain in B/d
  std::vector<uint64_t> scaled_chain;
  std::string toeplitz_note;

  Verdict taut_evidence = Verdict::undetermined;
  std::string taut_note;
  std::vector<std::pair<uint64_t, double>> light_tails;

  struct YEntry {
    uint64_t b;
    size_t residues_hit;
    bool full;  // b-1 residues hit
  };
  std::vector<YEntry> y_membership;

  MefDescriptor mef;
};

struct ClassifyOptions {
  size_t chain_threshold = 25;
  double boundary_threshold = 1e-3;
  uint64_t y_b_max = 25;
  int64_t y_window = 10000;
  double light_tail_threshold = 0.02;
  uint64_t haar_stage_cap = 1000000;  // stages with s_k above this are skipped in the scan
  double haar_ratio = 0.01;
};

ClassificationReport classify(const BSet& b, const FiltrationTable& table, uint64_t n,
                              const ClassifyOptions& opts = {});

// Per-position verdicts on [0, s_k): good-free (periodically free),
// good-multiple (periodically zero), or unresolved. Exact fractions are
// always computed; the per-position label array is materialized only when
// s_k * n_periods fits the budget.
struct ToeplitzPositions {
  size_t k = 0;
  Nat s_k;
  double frac_good_free = 0, frac_good_multiple = 0, frac_unresolved = 0;
  std::optional<Rational> exact_unresolved;
  bool labels_materialized = false;
  std::vector<uint8_t> labels;  // 0 = good-free, 1 = good-multiple, 2 = unresolved
  bool empirical_ok = true;     // good labels match the sieved indicator over n_periods periods
  uint64_t checked_periods = 0;
};

ToeplitzPositions toeplitz_positions(const BSet& b, const FiltrationTable& table, size_t k,
                                     uint64_t n_periods, uint64_t label_budget = uint64_t(1) << 28);

// Cylinders that meet the window but carry anomalously few free integers:
// evidence that the window might not be Haar regular. A cylinder at residue
// n mod s_k (n free of S_k) is flagged when it has a witness yet its free
// count on [1, N] is below ratio * (overall free count) / s_k.
struct HaarEvidence {
  size_t k;
  uint64_t s_k;
  uint64_t n;
  uint64_t count;
  double expected;
};

std::vector<HaarEvidence> haar_regularity_scan(const BSet& b, const FiltrationTable& table,
                                               uint64_t n, double ratio = 0.01,
                                               uint64_t stage_cap = 1000000);

}  // namespace bfree

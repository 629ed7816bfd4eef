#include "bfree/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bfree {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::undetermined:
      return "undetermined-at-horizon";
  }
  return "?";
}

namespace {

// Density of the free numbers of the finite set A: exact when the caps
// allow, else an interval count.
DensityEstimate free_density_of(const FiniteSet& a, uint64_t n) {
  try {
    DensityEstimate mult = exact_density_of_multiples(a);
    DensityEstimate de;
    de.kind = DensityKind::exact;
    de.exact_value = Rational::one() - *mult.exact_value;
    de.value = de.exact_value->to_double();
    return de;
  } catch (const BudgetError&) {
    std::vector<uint64_t> small;  // elements above n cannot act on [1, n]
    for (const Nat& e : a)
      if (e <= Nat(n)) small.push_back(to_u64(e));
    auto words = mark_multiples(small, n);
    DensityEstimate de;
    de.kind = DensityKind::interval_count;
    de.horizon = n;
    de.count = n - count_bits(words, n);
    de.value = static_cast<double>(*de.count) / static_cast<double>(n);
    return de;
  }
}

}  // namespace

WindowMeasures window_measures(const BSet& b, const FiltrationTable& table, uint64_t n) {
  WindowMeasures wm;
  DensityEstimate mult = interval_density(b, DensityTarget::multiples, n);
  wm.m_W.kind = DensityKind::interval_count;
  wm.m_W.horizon = n;
  wm.m_W.count = n - *mult.count;
  wm.m_W.value = 1.0 - mult.value;

  // Interior: sup over stages of the exact free density of A_k.
  double best = 0.0;
  bool have_exact = false;
  Rational best_exact = Rational::zero();
  for (const auto& st : table.stages) {
    DensityEstimate fd = free_density_of(st.A, n);
    if (fd.value > best) best = fd.value;
    if (fd.kind == DensityKind::exact && (!have_exact || best_exact < *fd.exact_value)) {
      best_exact = *fd.exact_value;
      have_exact = true;
    }
  }
  wm.m_intW.kind = have_exact ? DensityKind::exact : DensityKind::interval_count;
  wm.m_intW.value = best;
  if (have_exact && best_exact.to_double() == best) wm.m_intW.exact_value = best_exact;
  wm.m_intW.horizon = n;

  // Boundary proxy: positions in M_{A_k} \ M_{B∩[1,N]} counted on [1, N].
  auto b_words = mark_multiples(b.elements_up_to_u64(n), n);
  double best_boundary = 1.0;
  for (const auto& st : table.stages) {
    std::vector<uint64_t> elems;
    for (const Nat& a : st.A)
      if (a <= Nat(n)) elems.push_back(to_u64(a));
    auto a_words = mark_multiples(elems, n);
    for (size_t i = 0; i < a_words.size(); ++i) a_words[i] &= ~b_words[i];
    double v = static_cast<double>(count_bits(a_words, n)) / static_cast<double>(n);
    wm.per_stage_boundary.emplace_back(st.k, v);
    best_boundary = std::min(best_boundary, v);
  }
  wm.m_boundary.kind = DensityKind::interval_count;
  wm.m_boundary.value = best_boundary;
  wm.m_boundary.horizon = n;
  return wm;
}

ClassificationReport classify(const BSet& b, const FiltrationTable& table, uint64_t n,
                              const ClassifyOptions& opts) {
  ClassificationReport rep;
  rep.stages_exact = table.all_exact;

  // --- proximality: 1 in every A_k, or a long pairwise-coprime chain in B.
  rep.one_in_every_A = true;
  for (const auto& st : table.stages)
    if (!st.A.contains(Nat(1))) rep.one_in_every_A = false;

  {
    std::vector<uint64_t> chain;
    for (uint64_t e : b.elements_up_to_u64(std::min<uint64_t>(n, 1000000))) {
      if (e == 1) continue;
      bool ok = true;
      for (uint64_t c : chain)
        if (std::__gcd(c, e) != 1) {
          ok = false;
          break;
        }
      if (ok) chain.push_back(e);
      if (chain.size() >= opts.chain_threshold) break;
    }
    if (chain.size() >= opts.chain_threshold) rep.coprime_chain = chain;
  }

  if (rep.one_in_every_A && rep.stages_exact) {
    rep.proximal = Verdict::yes;
    rep.proximal_note = "1 in A_k at every stage (exact profiles)";
  } else if (!rep.coprime_chain.empty()) {
    rep.proximal = Verdict::yes;
    rep.proximal_note = "pairwise-coprime chain of length " + std::to_string(rep.coprime_chain.size());
  } else if (!rep.one_in_every_A && rep.stages_exact) {
    rep.proximal = Verdict::no;
    rep.proximal_note = "some stage has 1 not in A_k, so the window has interior";
  } else {
    rep.proximal = Verdict::undetermined;
  }

  // --- Toeplitz / topological regularity.
  std::optional<Nat> witness;
  for (const auto& e : table.a_infinity)
    if (e.persistent && e.first_seen == 1) {
      if (!witness || e.value < *witness) witness = e.value;
    }
  if (witness) {
    rep.persistent_witness = witness;
    rep.toeplitz = Verdict::no;
    rep.toeplitz_note = "persistent element in A_k \\ S_k at every stage";
  } else {
    bool any_persistent = false;
    for (const auto& e : table.a_infinity)
      if (e.persistent) any_persistent = true;
    if (!any_persistent && rep.stages_exact) {
      rep.toeplitz = Verdict::yes;
      rep.toeplitz_note = "no persistent A_k \\ S_k elements (exact profiles)";
    } else {
      rep.toeplitz = any_persistent ? Verdict::no : Verdict::undetermined;
      if (any_persistent) rep.toeplitz_note = "persistent element from a later stage onward";
    }
  }
  // Scaled coprime chains d*A ⊆ B: search divisors suggested by A_k \ S_k.
  {
    std::vector<Nat> candidates;
    for (const auto& e : table.a_infinity)
      if (e.value > 1) candidates.push_back(e.value);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Nat& d : candidates) {
      if (d > Nat(1000000)) continue;
      uint64_t dv = to_u64(d);
      std::vector<uint64_t> chain;
      for (uint64_t e : b.elements_up_to_u64(std::min<uint64_t>(n, 10000000))) {
        if (e % dv != 0 || e == dv) continue;
        uint64_t q = e / dv;
        if (q == 1) continue;
        bool ok = true;
        for (uint64_t c : chain)
          if (std::__gcd(c, q) != 1) {
            ok = false;
            break;
          }
        if (ok) chain.push_back(q);
        if (chain.size() >= opts.chain_threshold) break;
      }
      if (chain.size() >= opts.chain_threshold) {
        rep.scaled_chain_divisor = d;
        rep.scaled_chain = chain;
        if (rep.toeplitz != Verdict::no) {
          rep.toeplitz = Verdict::no;
          rep.toeplitz_note = "scaled coprime chain inside B";
        }
        break;
      }
    }
  }
  rep.top_regular = rep.toeplitz;

  // Regular-Toeplitz verdict: the per-stage boundary estimates must shrink
  // below the threshold with a decreasing trend.
  {
    WindowMeasures wm = window_measures(b, table, n);
    rep.boundary_trace = wm.per_stage_boundary;
    if (rep.toeplitz != Verdict::yes) {
      rep.regular_toeplitz = rep.toeplitz;
    } else {
      bool decreasing = true;
      for (size_t i = 1; i < wm.per_stage_boundary.size(); ++i)
        if (wm.per_stage_boundary[i].second > 2.0 * wm.per_stage_boundary[i - 1].second + 1e-9)
          decreasing = false;
      bool small = !wm.per_stage_boundary.empty() &&
                   wm.per_stage_boundary.back().second < opts.boundary_threshold;
      rep.regular_toeplitz = (decreasing && small) ? Verdict::yes : Verdict::undetermined;
    }
  }

  // --- tautness evidence.
  rep.light_tails = light_tails_trace(b, {10, 100, 1000, 10000, 100000}, std::min<uint64_t>(n, 10000000));
  auto flags = haar_regularity_scan(b, table, n, opts.haar_ratio, opts.haar_stage_cap);
  if (b.declares_scaled_behrend()) {
    rep.taut_evidence = Verdict::no;
    rep.taut_note = "family contains a scaled Behrend subset by construction";
  } else if (!flags.empty()) {
    rep.taut_evidence = Verdict::no;
    rep.taut_note = "thin cylinders found by the regularity scan";
  } else if (rep.toeplitz == Verdict::yes) {
    rep.taut_evidence = Verdict::yes;
    rep.taut_note = "Toeplitz verdict implies tautness";
  } else if (!rep.light_tails.empty() && rep.light_tails.back().second < opts.light_tail_threshold) {
    rep.taut_evidence = Verdict::yes;
    rep.taut_note = "light tails evidence";
  } else {
    rep.taut_evidence = Verdict::undetermined;
  }

  // --- Y membership: residue coverage per small b.
  {
    EtaBlock blk = sieve_eta(b, 0, opts.y_window);
    for (uint64_t e : b.elements_up_to_u64(opts.y_b_max)) {
      ResidueCoverage rc = residue_coverage(blk, e);
      rep.y_membership.push_back({e, rc.residues_hit.size(), rc.full_minus_one()});
    }
  }

  rep.mef = mef_descriptor(table);
  return rep;
}

ToeplitzPositions toeplitz_positions(const BSet& b, const FiltrationTable& table, size_t k,
                                     uint64_t n_periods, uint64_t label_budget) {
  if (k < 1 || k > table.stages.size()) throw std::invalid_argument("stage out of range");
  const FiltrationStage& st = table.stages[k - 1];
  ToeplitzPositions tp;
  tp.k = k;
  tp.s_k = st.s;

  // Exact fractions: good-multiple = d(M_{S_k}), unresolved = d(M_{A_k}) - d(M_{S_k}).
  DensityEstimate dm_s = exact_density_of_multiples(st.S);
  DensityEstimate dm_a = exact_density_of_multiples(st.A);
  tp.frac_good_multiple = dm_s.value;
  tp.frac_unresolved = dm_a.value - dm_s.value;
  tp.frac_good_free = 1.0 - dm_a.value;
  tp.exact_unresolved = *dm_a.exact_value - *dm_s.exact_value;

  if (st.s <= Nat(label_budget) && n_periods >= 1 &&
      to_u64(st.s) * (n_periods + 1) <= label_budget) {
    uint64_t sk = to_u64(st.s);
    tp.labels_materialized = true;
    tp.labels.assign(sk, 0);
    auto s_words = mark_multiples(st.S.as_u64(), sk);
    std::vector<uint64_t> a_elems;
    for (const Nat& a : st.A) a_elems.push_back(to_u64(a));
    auto a_words = mark_multiples(a_elems, sk);
    // Index i corresponds to position n = i+1 in the marked words; handle
    // n = 0 separately (always a multiple).
    tp.labels[0] = 1;
    for (uint64_t p = 1; p < sk; ++p) {
      bool in_s = (s_words[(p - 1) >> 6] >> ((p - 1) & 63)) & 1;
      bool in_a = (a_words[(p - 1) >> 6] >> ((p - 1) & 63)) & 1;
      tp.labels[p] = in_s ? 1 : (in_a ? 2 : 0);
    }
    // Empirical check of the good labels against the sieved indicator.
    tp.checked_periods = n_periods;
    EtaBlock eta = sieve_eta(b, 0, static_cast<int64_t>(sk * n_periods) - 1);
    for (uint64_t p = 0; p < sk && tp.empirical_ok; ++p) {
      if (tp.labels[p] == 2) continue;
      bool expect_free = tp.labels[p] == 0;
      for (uint64_t j = 0; j < n_periods; ++j) {
        int64_t n = static_cast<int64_t>(p + j * sk);
        if (n == 0) continue;  // position 0 is a multiple regardless of labels
        if (eta.at(n) != expect_free) {
          tp.empirical_ok = false;
          break;
        }
      }
    }
  }
  return tp;
}

std::vector<HaarEvidence> haar_regularity_scan(const BSet& b, const FiltrationTable& table,
                                               uint64_t n, double ratio, uint64_t stage_cap) {
  std::vector<HaarEvidence> out;
  EtaBlock eta = sieve_eta(b, 1, static_cast<int64_t>(n));
  uint64_t free_total = eta.popcount();
  for (const auto& st : table.stages) {
    if (st.s > Nat(stage_cap)) continue;
    uint64_t sk = to_u64(st.s);
    std::vector<uint64_t> counts(sk, 0);
    for (size_t i = 0; i < eta.len; ++i)
      if (eta.bit(i)) counts[static_cast<uint64_t>(eta.position(i)) % sk]++;
    auto s_words = mark_multiples(st.S.as_u64(), sk);
    double expected = ratio * static_cast<double>(free_total) / static_cast<double>(sk);
    for (uint64_t r = 1; r < sk; ++r) {
      bool in_s = (s_words[(r - 1) >> 6] >> ((r - 1) & 63)) & 1;
      if (in_s) continue;  // cylinder misses the window outright
      if (counts[r] >= 1 && static_cast<double>(counts[r]) < expected)
        out.push_back({st.k, sk, r, counts[r], expected});
    }
  }
  return out;
}

}  // namespace bfree

#include "bfree/density.hpp"

#include "bfree/sieve.hpp"

#include <cmath>
#include <map>

namespace bfree {

DensityEstimate exact_density_of_multiples(const FiniteSet& s, size_t ie_cap, uint64_t period_cap) {
  DensityEstimate de;
  de.kind = DensityKind::exact;
  if (s.empty()) {
    de.exact_value = Rational::zero();
    de.value = 0.0;
    return de;
  }
  FiniteSet prim = primitivize(s);
  if (prim.contains(Nat(1))) {
    de.exact_value = Rational::one();
    de.value = 1.0;
    return de;
  }
  Nat period = lcm_chain(prim);
  if (prim.size() <= ie_cap) {
    // Incremental inclusion-exclusion on the divisor lattice: maintain the
    // signed multiset of subset lcms. Distinct lcms all divide lcm(prim S),
    // which keeps the map far below 2^|S| in practice.
    std::map<Nat, long long> coef;
    for (const Nat& b : prim) {
      std::map<Nat, long long> add;
      add[b] += 1;
      for (auto& [l, c] : coef) {
        if (c == 0) continue;
        add[nat_lcm(l, b)] -= c;
      }
      for (auto& [l, c] : add) coef[l] += c;
      if (coef.size() > 4000000) throw BudgetError("use interval estimate");
    }
    Rational d = Rational::zero();
    Nat num = 0;
    for (auto& [l, c] : coef)
      if (c != 0) num += Nat(c) * (period / l);
    d = Rational(num, period);
    de.exact_value = d;
    de.value = d.to_double();
    return de;
  }
  if (period <= period_cap) {
    uint64_t p = to_u64(period);
    auto words = mark_multiples(prim.as_u64(), p);
    uint64_t cnt = count_bits(words, p);
    Rational d(Nat(cnt), period);
    de.exact_value = d;
    de.value = d.to_double();
    return de;
  }
  throw BudgetError("use interval estimate");
}

DensityEstimate interval_density(const BSet& b, DensityTarget target, uint64_t n) {
  if (n < 1) throw std::invalid_argument("interval_density requires N >= 1");
  DensityEstimate de;
  de.kind = DensityKind::interval_count;
  de.horizon = n;
  auto words = mark_multiples(b.elements_up_to_u64(n), n);
  uint64_t mult = count_bits(words, n);
  uint64_t cnt = target == DensityTarget::multiples ? mult : n - mult;
  de.count = cnt;
  de.value = static_cast<double>(cnt) / static_cast<double>(n);
  return de;
}

DensityEstimate log_density_partial(const BSet& b, uint64_t n) {
  if (n < 2) throw std::invalid_argument("log_density_partial requires N >= 2");
  DensityEstimate de;
  de.kind = DensityKind::log_partial;
  de.horizon = n;
  auto words = mark_multiples(b.elements_up_to_u64(n), n);
  double sum = 0.0;
  for (uint64_t m = 1; m <= n; ++m)
    if ((words[(m - 1) >> 6] >> ((m - 1) & 63)) & 1) sum += 1.0 / static_cast<double>(m);
  de.value = sum / std::log(static_cast<double>(n));
  return de;
}

DensityEstimate davenport_erdos_trace(const BSet& b, const std::vector<uint64_t>& cutoffs,
                                      uint64_t fallback_n) {
  for (size_t i = 1; i < cutoffs.size(); ++i)
    if (cutoffs[i] <= cutoffs[i - 1]) throw std::invalid_argument("cutoffs must be increasing");
  DensityEstimate de;
  de.kind = DensityKind::davenport_erdos_limit;
  for (uint64_t k : cutoffs) {
    FiniteSet trunc = FiniteSet::from_u64(b.elements_up_to_u64(k));
    try {
      DensityEstimate e = exact_density_of_multiples(trunc);
      de.exact_trace.emplace_back(k, *e.exact_value);
      de.monotone_trace.emplace_back(k, e.value);
    } catch (const BudgetError&) {
      // Over the exact caps: fall back to a large interval count for the
      // truncation (flagged by absence from exact_trace).
      auto words = mark_multiples(trunc.as_u64(), fallback_n);
      double v = static_cast<double>(count_bits(words, fallback_n)) / static_cast<double>(fallback_n);
      de.monotone_trace.emplace_back(k, v);
      de.horizon = fallback_n;
    }
  }
  if (!de.monotone_trace.empty()) de.value = de.monotone_trace.back().second;
  if (de.exact_trace.size() == de.monotone_trace.size() && !de.exact_trace.empty())
    de.exact_value = de.exact_trace.back().second;
  return de;
}

std::vector<std::pair<uint64_t, double>> light_tails_trace(const BSet& b,
                                                           const std::vector<uint64_t>& cutoffs,
                                                           uint64_t n) {
  std::vector<std::pair<uint64_t, double>> out;
  std::vector<uint64_t> elems = b.elements_up_to_u64(n);
  for (uint64_t k : cutoffs) {
    std::vector<uint64_t> tail;
    for (uint64_t e : elems)
      if (e > k) tail.push_back(e);
    auto words = mark_multiples(tail, n);
    out.emplace_back(k, static_cast<double>(count_bits(words, n)) / static_cast<double>(n));
  }
  return out;
}

}  // namespace bfree

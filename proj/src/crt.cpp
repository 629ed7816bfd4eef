#include "bfree/crt.hpp"

#include <algorithm>

namespace bfree {

CylinderSpec CylinderSpec::of(std::initializer_list<std::pair<uint64_t, uint64_t>> xs) {
  CylinderSpec c;
  for (auto& [b, h] : xs) c.residues.emplace_back(Nat(b), Nat(h));
  std::sort(c.residues.begin(), c.residues.end());
  c.validate();
  return c;
}

void CylinderSpec::validate() const {
  for (auto& [b, h] : residues) {
    if (b < 1) throw std::invalid_argument("modulus must be >= 1");
    if (h < 0 || h >= b) throw std::invalid_argument("residue out of range");
  }
  for (size_t i = 1; i < residues.size(); ++i)
    if (residues[i].first == residues[i - 1].first && residues[i].second != residues[i - 1].second)
      throw std::invalid_argument("conflicting residues for one modulus");
}

FiniteSet CylinderSpec::moduli() const {
  std::vector<Nat> m;
  for (auto& [b, h] : residues) m.push_back(b);
  return FiniteSet(std::move(m));
}

namespace {

Nat mod_reduce(const Nat& a, const Nat& m) {
  Nat r = a % m;
  if (r < 0) r += m;
  return r;
}

// Extended gcd: g = gcd(a, b) = xa + yb.
Nat ext_gcd(const Nat& a, const Nat& b, Nat& x, Nat& y) {
  Nat old_r = a, r = b, old_x = 1, xx = 0, old_y = 0, yy = 1;
  while (r != 0) {
    Nat q = old_r / r;
    Nat t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * xx;
    old_x = xx;
    xx = t;
    t = old_y - q * yy;
    old_y = yy;
    yy = t;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

}  // namespace

std::variant<CrtSolution, CrtIncompat> crt_solve(const CylinderSpec& c) {
  c.validate();
  auto rs = c.residues;
  std::sort(rs.begin(), rs.end());
  // Pairwise compatibility is equivalent to global solvability over
  // non-coprime moduli; report the earliest violating pair.
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = i + 1; j < rs.size(); ++j) {
      Nat g = nat_gcd(rs[i].first, rs[j].first);
      if (mod_reduce(rs[i].second - rs[j].second, g) != 0) return CrtIncompat{rs[i].first, rs[j].first};
    }
  Nat n0 = 0, m = 1;
  for (auto& [b, h] : rs) {
    // Merge n ≡ n0 (mod m) with n ≡ h (mod b).
    Nat x, y;
    Nat g = ext_gcd(m, b, x, y);
    Nat l = m / g * b;
    Nat diff = h - n0;
    // n = n0 + m * t with m t ≡ diff (mod b); t ≡ (diff/g) x (mod b/g).
    Nat t = mod_reduce(diff / g * x, b / g);
    n0 = mod_reduce(n0 + m * t, l);
    m = l;
  }
  return CrtSolution{n0, m};
}

BfreeSearchResult bfree_crt_search(const BSet& b, const CylinderSpec& c, uint64_t n, size_t list_cap) {
  auto sol = crt_solve(c);
  if (std::holds_alternative<CrtIncompat>(sol)) throw std::invalid_argument("incompatible residue system");
  const CrtSolution& s = std::get<CrtSolution>(sol);
  BfreeSearchResult out;
  out.modulus = s.modulus;
  out.n0 = s.n0;
  if (s.modulus > Nat(n)) {
    // At most one candidate in range.
    if (s.n0 >= 1 && s.n0 <= Nat(n)) {
      int64_t cand = static_cast<int64_t>(to_u64(s.n0));
      EtaBlock blk = sieve_eta(b, cand, cand);
      if (blk.bit(0)) {
        out.solutions.push_back(cand);
        out.count = 1;
      }
    }
  } else {
    uint64_t mod = to_u64(s.modulus);
    int64_t r = static_cast<int64_t>(to_u64(s.n0));
    EtaBlock blk = sieve_progression(b, mod, r, 1, static_cast<int64_t>(n));
    out.count = blk.popcount();
    for (size_t i = 0; i < blk.len && out.solutions.size() < list_cap; ++i)
      if (blk.bit(i)) out.solutions.push_back(r + static_cast<int64_t>(mod) * blk.position(i));
  }
  out.density_abs = static_cast<double>(out.count) / static_cast<double>(n);
  double slots = static_cast<double>(n) / to_double(s.modulus);
  out.density_rel = slots > 0 ? static_cast<double>(out.count) / slots : 0.0;
  return out;
}

EtaBlock phi_block(const BSet& bset, const HPoint& h, int64_t lo, int64_t hi) {
  if (lo > hi) throw std::invalid_argument("phi_block requires lo <= hi");
  for (auto& [b, r] : h.assigned)
    if (r >= b) throw std::invalid_argument("assigned residue out of range");
  size_t len = static_cast<size_t>(hi - lo) + 1;
  EtaBlock blk;
  blk.init(lo, len, true);
  blk.exact = true;
  // Assigned coordinates act at any size: h_b + n ≡ 0 (mod b).
  for (auto& [b, r] : h.assigned) {
    int64_t bb = static_cast<int64_t>(b);
    int64_t first = lo + ((((-static_cast<int64_t>(r) - lo) % bb) + bb) % bb);
    for (int64_t m = first; m <= hi; m += bb) blk.clear_bit(static_cast<size_t>(m - lo));
  }
  // Default coordinates: zero rule kills n ≡ 0 (mod b), so only b <= |n|
  // matters away from 0; delta rule shifts the divisibility horizon by n0.
  uint64_t horizon;
  if (h.rule == HPoint::Default::zero)
    horizon = static_cast<uint64_t>(std::max(std::llabs(lo), std::llabs(hi)));
  else
    horizon = static_cast<uint64_t>(std::max(std::llabs(h.n0 + lo), std::llabs(h.n0 + hi)));
  blk.b_horizon = std::max<uint64_t>(horizon, 1);
  for (uint64_t b : bset.elements_up_to_u64(blk.b_horizon)) {
    if (h.assigned.count(b)) continue;
    int64_t bb = static_cast<int64_t>(b);
    int64_t shift = h.rule == HPoint::Default::zero ? 0 : h.n0;
    int64_t first = lo + ((((-shift - lo) % bb) + bb) % bb);
    for (int64_t m = first; m <= hi; m += bb) blk.clear_bit(static_cast<size_t>(m - lo));
  }
  // The position where h_b + n sums to zero is divisible by every unassigned
  // b, however large: n = 0 under the zero rule, n = -n0 under delta.
  int64_t zero_pos = h.rule == HPoint::Default::zero ? 0 : -h.n0;
  if (blk.covers(zero_pos)) {
    bool has_unassigned = !bset.is_finite();
    if (!has_unassigned)
      for (uint64_t e : bset.elements_up_to_u64(UINT64_MAX >> 1))
        if (!h.assigned.count(e)) has_unassigned = true;
    if (has_unassigned) blk.clear_bit(static_cast<size_t>(zero_pos - lo));
  }
  return blk;
}

std::vector<ThetaEntry> theta_of_block(const EtaBlock& block, const BSet& bset, uint64_t b_max) {
  if (!block.exact) throw std::invalid_argument("theta_of_block requires an exact block");
  std::vector<ThetaEntry> out;
  bool provable = false;
  if (bset.is_finite()) {
    FiniteSet all = bset.elements_up_to(Nat(UINT64_MAX >> 1));
    if (!all.empty()) {
      Nat period = lcm_chain(all);
      provable = period <= Nat(block.len);
    }
  }
  for (uint64_t b : bset.elements_up_to_u64(b_max)) {
    ResidueCoverage rc = residue_coverage(block, b);
    ThetaEntry e;
    e.b = b;
    e.missed_count = b - rc.residues_hit.size();
    e.provable = provable;
    if (e.missed_count == 1) {
      for (uint64_t r = 0; r < b; ++r)
        if (!rc.residues_hit.count(r)) {
          // supp ∩ (bZ - g) = ∅ means the missed class is -g mod b.
          e.g = (b - r) % b;
          break;
        }
    }
    out.push_back(e);
  }
  return out;
}

std::optional<int64_t> block_containment_check(const std::vector<uint8_t>& needle,
                                               const EtaBlock& hay, Dominance mode) {
  if (needle.empty() || hay.len < needle.size()) return std::nullopt;
  for (size_t i = 0; i + needle.size() <= hay.len; ++i) {
    bool ok = true;
    for (size_t j = 0; j < needle.size() && ok; ++j) {
      bool h = hay.bit(i + j);
      if (mode == Dominance::exact ? (h != (needle[j] != 0)) : (needle[j] != 0 && !h)) ok = false;
    }
    if (ok) return hay.position(i);
  }
  return std::nullopt;
}

std::vector<uint8_t> pattern_from_string(const std::string& s) {
  std::vector<uint8_t> out;
  for (char c : s) {
    if (c == '0')
      out.push_back(0);
    else if (c == '1')
      out.push_back(1);
    else
      throw std::invalid_argument("pattern must be a 0/1 string");
  }
  return out;
}

}  // namespace bfree

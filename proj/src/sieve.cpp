#include "bfree/sieve.hpp"

#include <bit>
#include <sstream>

namespace bfree {

void EtaBlock::init(int64_t off, size_t n, bool fill_ones) {
  offset = off;
  len = n;
  words.assign((n + 63) / 64, fill_ones ? ~0ull : 0ull);
  if (fill_ones && n % 64) words.back() = (1ull << (n % 64)) - 1;
}

size_t EtaBlock::popcount() const {
  size_t c = 0;
  for (uint64_t w : words) c += std::popcount(w);
  return c;
}

std::vector<int64_t> EtaBlock::support() const {
  std::vector<int64_t> out;
  for (size_t i = 0; i < len; ++i)
    if (bit(i)) out.push_back(position(i));
  return out;
}

std::string EtaBlock::to01() const {
  std::string s(len, '0');
  for (size_t i = 0; i < len; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

std::string EtaBlock::export_text() const {
  std::ostringstream os;
  os << "offset " << offset << "\n" << to01() << "\n";
  return os.str();
}

std::vector<uint64_t> EtaBlock::export_words() const { return words; }

namespace {

// First multiple of b that is >= lo.
int64_t first_multiple_at_least(uint64_t b, int64_t lo) {
  int64_t bb = static_cast<int64_t>(b);
  int64_t q = lo / bb;
  int64_t m = q * bb;
  if (m < lo) m += bb;
  return m;
}

}  // namespace

EtaBlock sieve_eta(const BSet& bset, int64_t lo, int64_t hi, size_t max_bits) {
  if (lo > hi) throw std::invalid_argument("sieve_eta requires lo <= hi");
  size_t len = static_cast<size_t>(hi - lo) + 1;
  if (len > max_bits)
    throw BudgetError("interval too long for one block; sieve in chunks of <= " + std::to_string(max_bits) + " bits");
  uint64_t horizon = static_cast<uint64_t>(std::max(std::llabs(lo), std::llabs(hi)));
  EtaBlock blk;
  blk.init(lo, len, true);
  blk.b_horizon = std::max<uint64_t>(horizon, 1);
  blk.exact = true;
  std::vector<uint64_t> elems = bset.elements_up_to_u64(std::max<uint64_t>(horizon, 1));
  // Divisor marking runs chunk by chunk (2^20 bits): each chunk stays cache
  // resident, and the cost is independent of the total interval length.
  constexpr int64_t kChunk = 1 << 20;
  for (int64_t chunk_lo = lo; chunk_lo <= hi; chunk_lo += kChunk) {
    int64_t chunk_hi = std::min(hi, chunk_lo + kChunk - 1);
    for (uint64_t b : elems)
      for (int64_t m = first_multiple_at_least(b, chunk_lo); m <= chunk_hi; m += static_cast<int64_t>(b))
        blk.clear_bit(static_cast<size_t>(m - lo));
  }
  if (blk.covers(0)) blk.clear_bit(static_cast<size_t>(-lo));
  return blk;
}

ResidueCoverage residue_coverage(const EtaBlock& block, uint64_t b) {
  if (!block.exact) throw std::invalid_argument("residue_coverage requires an exact block");
  if (b < 1) throw std::invalid_argument("modulus must be >= 1");
  ResidueCoverage rc;
  rc.modulus = b;
  rc.window_lo = block.offset;
  rc.window_hi = block.offset + static_cast<int64_t>(block.len) - 1;
  for (size_t i = 0; i < block.len; ++i)
    if (block.bit(i)) {
      int64_t n = block.position(i);
      rc.residues_hit.insert(static_cast<uint64_t>(((n % static_cast<int64_t>(b)) + static_cast<int64_t>(b)) % static_cast<int64_t>(b)));
    }
  return rc;
}

EtaBlock sieve_progression(const BSet& bset, uint64_t a, int64_t r, int64_t lo, int64_t hi) {
  if (a < 1) throw std::invalid_argument("progression modulus must be >= 1");
  if (lo > hi) throw std::invalid_argument("sieve_progression requires lo <= hi");
  int64_t aa = static_cast<int64_t>(a);
  // Step range: n = r + a t in [lo, hi].
  int64_t t_lo = (lo - r + aa - 1) / aa;
  while (r + aa * t_lo < lo) ++t_lo;
  while (t_lo > 0 && r + aa * (t_lo - 1) >= lo) --t_lo;
  int64_t t_hi = (hi - r) / aa;
  while (r + aa * t_hi > hi) --t_hi;
  while (r + aa * (t_hi + 1) <= hi) ++t_hi;
  EtaBlock blk;
  if (t_lo > t_hi) {
    blk.init(0, 0, false);
    blk.exact = true;
    return blk;
  }
  size_t len = static_cast<size_t>(t_hi - t_lo) + 1;
  uint64_t horizon = static_cast<uint64_t>(std::max(std::llabs(lo), std::llabs(hi)));
  blk.init(t_lo, len, true);
  blk.b_horizon = std::max<uint64_t>(horizon, 1);
  blk.exact = true;
  for (uint64_t b : bset.elements_up_to_u64(blk.b_horizon)) {
    // b | r + a t  <=>  a t ≡ -r (mod b); solvable iff g = gcd(a,b) | r.
    int64_t bb = static_cast<int64_t>(b);
    int64_t g = static_cast<int64_t>(std::__gcd(a, b));
    if (((-r) % g + g) % g != 0) continue;
    int64_t period = bb / g;
    // t ≡ (-r/g) * inv(a/g) (mod b/g)
    int64_t rhs = (((-r / g) % period) + period) % period;
    int64_t a_red = (aa / g) % period;
    int64_t t_sol = 0;
    if (period > 1) {
      // Modular inverse by extended gcd; a/g and b/g are coprime.
      int64_t old_r = a_red, rr = period, old_s = 1, s = 0;
      while (rr != 0) {
        int64_t q = old_r / rr;
        int64_t tmp = old_r - q * rr;
        old_r = rr;
        rr = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
      }
      int64_t inv = ((old_s % period) + period) % period;
      t_sol = static_cast<int64_t>((static_cast<__int128>(rhs) * inv) % period);
    }
    int64_t t0 = t_lo + ((t_sol - t_lo) % period + period) % period;
    for (int64_t t = t0; t <= t_hi; t += period) blk.clear_bit(static_cast<size_t>(t - t_lo));
  }
  // Position n = 0 is never free.
  if (r % aa == 0) {
    int64_t t_zero = -r / aa;
    if (t_zero >= t_lo && t_zero <= t_hi) blk.clear_bit(static_cast<size_t>(t_zero - t_lo));
  }
  return blk;
}

std::vector<uint64_t> mark_multiples(const std::vector<uint64_t>& elems, uint64_t n) {
  std::vector<uint64_t> words((n + 64) / 64, 0);
  for (uint64_t b : elems) {
    if (b > n) break;
    for (uint64_t m = b; m <= n; m += b) words[(m - 1) >> 6] |= 1ull << ((m - 1) & 63);
  }
  return words;
}

uint64_t count_bits(const std::vector<uint64_t>& words, uint64_t n) {
  uint64_t c = 0;
  uint64_t full = n / 64;
  for (uint64_t i = 0; i < full; ++i) c += std::popcount(words[i]);
  if (n % 64) c += std::popcount(words[full] & ((1ull << (n % 64)) - 1));
  return c;
}

}  // namespace bfree

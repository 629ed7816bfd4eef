#include "bfree/filtration.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bfree {

namespace {

// First k elements of B in increasing order.
FiniteSet prefix_stage(const BSet& b, size_t k) {
  uint64_t bound = 64;
  std::vector<uint64_t> elems;
  while (true) {
    elems = b.elements_up_to_u64(bound);
    if (elems.size() >= k) break;
    if (b.is_finite() && bound > (1ull << 40)) break;  // whole set is smaller than k
    if (bound > (1ull << 40)) throw BudgetError("cannot enumerate enough elements for the requested depth");
    bound *= 8;
  }
  if (elems.size() > k) elems.resize(k);
  if (elems.empty()) throw std::invalid_argument("B has no elements to build a filtration from");
  return FiniteSet::from_u64(elems);
}

FiniteSet stage_set(const BSet& b, size_t k, FiltrationMode mode) {
  switch (mode) {
    case FiltrationMode::prefix:
      return prefix_stage(b, k);
    case FiltrationMode::saturated: {
      FiniteSet s = prefix_stage(b, k);
      // One-step closure S' = B ∩ A_S keeps lcm(S') = lcm(S), hence is a
      // fixpoint of the iteration.
      GcdProfile prof = b.gcd_profile(lcm_chain(s));
      std::vector<Nat> closed;
      for (const Nat& a : prof.gcds)
        if (b.contains(a)) closed.push_back(a);
      FiniteSet sp(std::move(closed));
      return sp.empty() ? s : sp;
    }
    case FiltrationMode::family:
      if (b.has_native_stages()) return b.native_stage(k);
      return prefix_stage(b, k);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FiltrationTable build_filtration(const BSet& b, size_t depth, FiltrationMode mode,
                                 size_t lookahead, size_t confirm) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  FiltrationTable table;
  table.depth = depth;
  size_t total = depth + lookahead;
  FiniteSet prev;
  for (size_t k = 1; k <= total; ++k) {
    FiltrationStage st;
    st.k = k;
    st.S = stage_set(b, k, mode);
    if (k > 1 && !prev.subset_of(st.S)) throw std::logic_error("filtration stages must be increasing");
    // A finite B is exhausted eventually; stages then repeat.
    st.s = lcm_chain(st.S);
    GcdProfile prof = b.gcd_profile(st.s);
    st.A = prof.gcds;
    st.A_exact = prof.exact;
    if (!prof.exact) table.all_exact = false;
    st.primA = primitivize(st.A);
    st.c = lcm_chain(st.primA);
    st.new_elems = st.A.set_minus(st.S);
    prev = st.S;
    table.stages.push_back(std::move(st));
  }
  compute_dk(table, lookahead, confirm);
  detect_a_infinity(table);
  return table;
}

void compute_dk(FiltrationTable& table, size_t lookahead, size_t confirm) {
  table.dk.clear();
  table.quotients.clear();
  size_t total = table.stages.size();
  (void)lookahead;  // controls how many stages beyond depth are built
  for (size_t k = 1; k <= total; ++k) {
    const Nat& sk = table.stages[k - 1].s;
    DkInfo info;
    // The limit runs over every later stage, so the trace always extends to
    // the last one built.
    for (size_t j = 0; k - 1 + j < total; ++j)
      info.trace.push_back(nat_gcd(sk, table.stages[k - 1 + j].c));
    info.value = info.trace.back();
    size_t eq = 1;
    for (size_t i = info.trace.size(); i-- > 1;) {
      if (info.trace[i - 1] == info.trace.back())
        ++eq;
      else
        break;
    }
    bool exact = true;
    for (size_t i = k - 1; i < total; ++i) exact = exact && table.stages[i].A_exact;
    // The trace is non-decreasing in divisibility and bounded by s_k, so it
    // is certainly stable once it reaches s_k; otherwise certify by exact
    // profiles plus a confirm window.
    info.stabilized = (info.value == sk) || (exact && eq >= confirm);
    table.dk.push_back(std::move(info));
  }
  for (size_t k = 1; k <= table.dk.size(); ++k)
    table.quotients.push_back(table.stages[k - 1].s / table.dk[k - 1].value);
}

void detect_a_infinity(FiltrationTable& table) {
  table.a_infinity.clear();
  std::map<Nat, PersistenceEntry> seen;
  size_t total = table.stages.size();
  for (size_t k = 1; k <= total; ++k)
    for (const Nat& d : table.stages[k - 1].new_elems) {
      auto it = seen.find(d);
      if (it == seen.end()) {
        PersistenceEntry e{d, k, k, 1, false};
        seen.emplace(d, e);
      } else {
        it->second.last_seen = k;
        it->second.times_seen += 1;
      }
    }
  for (auto& [d, e] : seen) {
    e.persistent = (e.last_seen == total) && (e.times_seen == total - e.first_seen + 1);
    table.a_infinity.push_back(e);
  }
}

namespace {

// Factor a product of small primes (every d_k divides an lcm of enumerable
// elements, so its prime factors are small even when the value is huge).
std::vector<std::pair<uint64_t, unsigned>> factor_smooth(const Nat& n) {
  std::vector<std::pair<uint64_t, unsigned>> out;
  Nat r = n;
  for (uint64_t p = 2; r > 1; p = (p == 2 ? 3 : p + 2)) {
    if (p > 10000000ull) throw BudgetError("rough factor in a stage invariant");
    if (r % p != 0) continue;
    unsigned e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

unsigned valuation_of(const Nat& n, uint64_t p) {
  unsigned v = 0;
  Nat r = n;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

}  // namespace

MefDescriptor mef_descriptor(const FiltrationTable& table, size_t confirm) {
  MefDescriptor md;
  if (table.dk.empty()) throw std::invalid_argument("table has no d_k data");
  md.h_int_trivial = true;
  // The reported chain covers the requested depth; cappedness of valuations
  // is judged on the certified (stabilized) entries across all built stages.
  std::vector<Nat> certified;
  for (size_t k = 1; k <= table.dk.size(); ++k) {
    if (k <= table.depth) {
      md.d_chain.push_back(table.dk[k - 1].value);
      if (!table.dk[k - 1].stabilized) md.tentative = true;
      if (table.dk[k - 1].value != table.stages[k - 1].s) md.h_int_trivial = false;
    }
    if (table.dk[k - 1].stabilized) certified.push_back(table.dk[k - 1].value);
  }
  const std::vector<Nat>& chain = certified.empty() ? md.d_chain : certified;
  if (certified.empty()) md.tentative = true;
  const Nat& d_ref = chain.back();
  if (d_ref > 1) {
    for (auto& [p, e] : factor_smooth(d_ref)) {
      MefDescriptor::PrimeComponent pc;
      pc.p = p;
      pc.v = e;
      // Growing when the valuation still moved within the trailing confirm
      // window of the certified chain.
      size_t n = chain.size();
      size_t start = n > confirm ? n - confirm : 0;
      pc.growing = valuation_of(chain[start], p) < e;
      md.components.push_back(pc);
    }
  }
  return md;
}

std::string MefDescriptor::render() const {
  std::ostringstream os;
  if (components.empty()) {
    os << "trivial";
  } else {
    bool all_capped = true;
    for (const auto& c : components)
      if (c.growing) all_capped = false;
    if (all_capped) {
      Nat n = 1;
      for (const auto& c : components)
        for (unsigned i = 0; i < c.v; ++i) n *= c.p;
      os << "Z/" << n << "Z";
    } else {
      bool first = true;
      for (const auto& c : components) {
        if (!first) os << " x ";
        first = false;
        if (c.growing)
          os << "Z_" << c.p;
        else {
          Nat n = 1;
          for (unsigned i = 0; i < c.v; ++i) n *= c.p;
          os << "Z/" << n << "Z";
        }
      }
    }
  }
  if (h_int_trivial) os << " [interior aperiodic: factor is the full group lim Z/s_kZ]";
  if (tentative) os << " (tentative)";
  return os.str();
}

}  // namespace bfree

#include "bfree/report.hpp"

#include <sstream>

namespace bfree {

namespace {

std::string nat_str(const Nat& n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

const char* kind_str(DensityKind k) {
  switch (k) {
    case DensityKind::exact:
      return "exact";
    case DensityKind::interval_count:
      return "interval_count";
    case DensityKind::log_partial:
      return "log_partial";
    case DensityKind::davenport_erdos_limit:
      return "davenport_erdos_limit";
  }
  return "?";
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  if (j.contains("family")) c.family = j["family"].get<std::string>();
  if (j.contains("params")) {
    const json& p = j["params"];
    if (p.contains("elements")) c.elements = p["elements"].get<std::vector<uint64_t>>();
    if (p.contains("count")) c.count = p["count"].get<uint64_t>();
    if (p.contains("list")) c.list = p["list"].get<std::vector<uint64_t>>();
  }
  if (j.contains("horizon")) c.horizon = j["horizon"].get<uint64_t>();
  if (j.contains("depth")) c.depth = j["depth"].get<size_t>();
  if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
  if (j.contains("lookahead")) c.lookahead = j["lookahead"].get<size_t>();
  if (j.contains("confirm")) c.confirm = j["confirm"].get<size_t>();
  if (j.contains("chain_threshold")) c.chain_threshold = j["chain_threshold"].get<size_t>();
  if (j.contains("boundary_threshold")) c.boundary_threshold = j["boundary_threshold"].get<double>();
  if (j.contains("haar_ratio")) c.haar_ratio = j["haar_ratio"].get<double>();
  return c;
}

json RunConfig::to_json() const {
  json p = json::object();
  if (!elements.empty()) p["elements"] = elements;
  if (count) p["count"] = count;
  if (!list.empty()) p["list"] = list;
  json j{{"family", family}, {"params", p},  {"horizon", horizon},
         {"depth", depth},   {"mode", mode}, {"lookahead", lookahead},
         {"confirm", confirm}, {"chain_threshold", chain_threshold},
         {"boundary_threshold", boundary_threshold}, {"haar_ratio", haar_ratio}};
  return j;
}

BSet RunConfig::make_bset() const {
  FamilyParams p;
  p.count = count;
  p.list = family == "explicit" ? elements : list;
  return BSet::make(family, p);
}

FiltrationMode RunConfig::filtration_mode() const {
  if (mode == "prefix") return FiltrationMode::prefix;
  if (mode == "saturated") return FiltrationMode::saturated;
  if (mode == "family") return FiltrationMode::family;
  throw std::invalid_argument("unknown filtration mode: " + mode);
}

json density_to_json(const DensityEstimate& de) {
  json j;
  j["kind"] = kind_str(de.kind);
  j["value"] = de.value;
  if (de.exact_value) j["exact"] = de.exact_value->str();
  if (de.horizon) j["horizon"] = de.horizon;
  if (de.count) j["count"] = *de.count;
  if (!de.monotone_trace.empty()) {
    json t = json::array();
    for (auto& [k, v] : de.monotone_trace) t.push_back({{"cutoff", k}, {"value", v}});
    j["trace"] = t;
  }
  if (!de.exact_trace.empty()) {
    json t = json::array();
    for (auto& [k, v] : de.exact_trace) t.push_back({{"cutoff", k}, {"value", v.str()}});
    j["exact_trace"] = t;
  }
  return j;
}

json table_to_json(const FiltrationTable& t) {
  json stages = json::array();
  for (const auto& st : t.stages) {
    json s;
    s["k"] = st.k;
    s["S"] = st.S.str();
    s["s_k"] = nat_str(st.s);
    s["A"] = st.A.str();
    s["A_exact"] = st.A_exact;
    s["prim_A"] = st.primA.str();
    s["c_k"] = nat_str(st.c);
    s["new"] = st.new_elems.str();
    if (st.k <= t.dk.size()) {
      s["d_k"] = nat_str(t.dk[st.k - 1].value);
      s["d_k_stabilized"] = t.dk[st.k - 1].stabilized;
      s["s_over_d"] = nat_str(t.quotients[st.k - 1]);
      json tr = json::array();
      for (const Nat& v : t.dk[st.k - 1].trace) tr.push_back(nat_str(v));
      s["d_trace"] = tr;
    }
    stages.push_back(s);
  }
  json persist = json::array();
  for (const auto& e : t.a_infinity) {
    persist.push_back({{"value", nat_str(e.value)},
                       {"first_seen", e.first_seen},
                       {"last_seen", e.last_seen},
                       {"times_seen", e.times_seen},
                       {"persistent", e.persistent}});
  }
  return json{{"depth", t.depth}, {"all_exact", t.all_exact}, {"stages", stages}, {"a_infinity", persist}};
}

std::string table_to_csv(const FiltrationTable& t) {
  std::ostringstream os;
  os << "k,s_k,c_k,d_k,stabilized,s_over_d,new_elems\n";
  for (const auto& st : t.stages) {
    os << st.k << "," << st.s << "," << st.c << ",";
    if (st.k <= t.dk.size())
      os << t.dk[st.k - 1].value << "," << (t.dk[st.k - 1].stabilized ? "yes" : "no") << ","
         << t.quotients[st.k - 1];
    else
      os << ",,";
    os << "," << st.new_elems.str() << "\n";
  }
  return os.str();
}

json measures_to_json(const WindowMeasures& wm) {
  json per = json::array();
  for (auto& [k, v] : wm.per_stage_boundary) per.push_back({{"k", k}, {"value", v}});
  return json{{"m_W", density_to_json(wm.m_W)},
              {"m_intW", density_to_json(wm.m_intW)},
              {"m_boundary", density_to_json(wm.m_boundary)},
              {"m_boundary_note", "upper bound: multiples of B under-approximated at the horizon"},
              {"per_stage_boundary", per}};
}

json mef_to_json(const MefDescriptor& md) {
  json comps = json::array();
  for (const auto& c : md.components)
    comps.push_back({{"p", c.p}, {"v", c.v}, {"growing", c.growing}});
  json chain = json::array();
  for (const Nat& d : md.d_chain) chain.push_back(nat_str(d));
  return json{{"descriptor", md.render()},
              {"components", comps},
              {"d_chain", chain},
              {"h_int_trivial", md.h_int_trivial},
              {"tentative", md.tentative}};
}

json classification_to_json(const ClassificationReport& r) {
  json j;
  j["proximal"] = {{"verdict", verdict_str(r.proximal)},
                   {"note", r.proximal_note},
                   {"one_in_every_A", r.one_in_every_A},
                   {"coprime_chain", r.coprime_chain}};
  json toe = {{"verdict", verdict_str(r.toeplitz)}, {"note", r.toeplitz_note}};
  if (r.persistent_witness) toe["persistent_witness"] = nat_str(*r.persistent_witness);
  if (r.scaled_chain_divisor) {
    toe["scaled_chain_divisor"] = nat_str(*r.scaled_chain_divisor);
    toe["scaled_chain"] = r.scaled_chain;
  }
  j["toeplitz"] = toe;
  j["top_regular"] = verdict_str(r.top_regular);
  json bt = json::array();
  for (auto& [k, v] : r.boundary_trace) bt.push_back({{"k", k}, {"value", v}});
  j["regular_toeplitz"] = {{"verdict", verdict_str(r.regular_toeplitz)}, {"boundary_trace", bt}};
  json lt = json::array();
  for (auto& [k, v] : r.light_tails) lt.push_back({{"cutoff", k}, {"value", v}});
  j["taut_evidence"] = {{"verdict", verdict_str(r.taut_evidence)}, {"note", r.taut_note}, {"light_tails", lt}};
  json y = json::array();
  for (const auto& e : r.y_membership)
    y.push_back({{"b", e.b}, {"residues_hit", e.residues_hit}, {"full", e.full}});
  j["y_membership"] = y;
  j["mef"] = mef_to_json(r.mef);
  return j;
}

json toeplitz_to_json(const ToeplitzPositions& tp) {
  json j{{"k", tp.k},
         {"s_k", nat_str(tp.s_k)},
         {"frac_good_free", tp.frac_good_free},
         {"frac_good_multiple", tp.frac_good_multiple},
         {"frac_unresolved", tp.frac_unresolved},
         {"labels_materialized", tp.labels_materialized}};
  if (tp.exact_unresolved) j["exact_unresolved"] = tp.exact_unresolved->str();
  if (tp.labels_materialized) {
    j["empirical_ok"] = tp.empirical_ok;
    j["checked_periods"] = tp.checked_periods;
  }
  return j;
}

json haar_to_json(const std::vector<HaarEvidence>& ev) {
  json j = json::array();
  for (const auto& e : ev)
    j.push_back({{"k", e.k}, {"s_k", e.s_k}, {"n", e.n}, {"count", e.count}, {"expected", e.expected}});
  return j;
}

json crt_to_json(const std::variant<CrtSolution, CrtIncompat>& sol) {
  if (std::holds_alternative<CrtSolution>(sol)) {
    const auto& s = std::get<CrtSolution>(sol);
    return json{{"status", "solved"}, {"n0", nat_str(s.n0)}, {"modulus", nat_str(s.modulus)}};
  }
  const auto& i = std::get<CrtIncompat>(sol);
  return json{{"status", "incompatible"}, {"b1", nat_str(i.b1)}, {"b2", nat_str(i.b2)}};
}

json search_to_json(const BfreeSearchResult& r) {
  return json{{"n0", nat_str(r.n0)},       {"modulus", nat_str(r.modulus)},
              {"count", r.count},          {"density_abs", r.density_abs},
              {"density_rel", r.density_rel}, {"solutions", r.solutions}};
}

std::string render_text(const json& j, int indent) {
  std::ostringstream os;
  std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n" << render_text(it.value(), indent + 1);
      } else {
        os << pad << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_object() || e.is_array()) {
        os << pad << "-\n" << render_text(e, indent + 1);
      } else {
        os << pad << "- " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
  return os.str();
}

}  // namespace bfree

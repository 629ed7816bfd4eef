#include "bfree/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace bfree;

namespace {

struct Cli {
  RunConfig cfg;
  std::string config_path;
  bool as_json = false;
  bool as_csv = false;
};

std::vector<std::pair<uint64_t, uint64_t>> parse_residues(const std::string& s) {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto pos = tok.find(':');
    if (pos == std::string::npos) throw std::invalid_argument("residues must be b:r pairs");
    out.emplace_back(std::stoull(tok.substr(0, pos)), std::stoull(tok.substr(pos + 1)));
  }
  return out;
}

std::vector<uint64_t> parse_list(const std::string& s) {
  std::vector<uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

void emit(const Cli& cli, const json& result, double ms) {
  json envelope{{"config", cli.cfg.to_json()}, {"result", result}};
  if (cli.as_json) {
    envelope["timing"] = {{"total_ms", ms}};
    std::cout << envelope.dump(2) << "\n";
  } else {
    std::cout << render_text(envelope, 0);
    std::cout << "timing: " << ms << " ms\n";
  }
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
};

// ---------------------------------------------------------------------------
// Reproduction harness: named end-to-end experiments with pinned
// expectations. Each prints PASS/FAIL lines; nonzero exit on any FAIL.

bool check(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  return ok;
}

bool reproduce_sec25_block() {
  BSet b = BSet::make("odd-primes");
  HPoint h;
  h.assigned[5] = 1;
  bool ok = true;
  EtaBlock blk = phi_block(b, h, 0, 8);
  ok &= check("phi block on [0,8] equals 011001001", blk.to01() == "011001001", blk.to01());
  EtaBlock eta = sieve_eta(b, -1000000, 1000000);
  auto hit = block_containment_check(pattern_from_string("11001001"), eta, Dominance::lower);
  ok &= check("no dominating length-8 block in the free indicator", !hit.has_value());
  EtaBlock again = phi_block(b, h, 1, 8);
  auto exact_hit = block_containment_check(pattern_from_string("11001001"), again, Dominance::exact);
  ok &= check("block occurs on phi at position 1", exact_hit && *exact_hit == 1);
  return ok;
}

bool reproduce_two_three() {
  BSet b = BSet::make("two-three");
  FiltrationTable t = build_filtration(b, 5, FiltrationMode::family);
  bool ok = true;
  for (size_t k = 1; k <= 5; ++k) {
    ok &= check("d_" + std::to_string(k) + " = 6",
                t.dk[k - 1].value == 6 && t.dk[k - 1].stabilized);
    ok &= check("A_" + std::to_string(k) + " \\ S_" + std::to_string(k) + " = {2,3}",
                t.stages[k - 1].new_elems == FiniteSet::of({2, 3}),
                t.stages[k - 1].new_elems.str());
  }
  MefDescriptor md = mef_descriptor(t);
  ok &= check("factor descriptor Z/6Z", md.render().rfind("Z/6Z", 0) == 0, md.render());
  std::vector<Nat> persist;
  for (const auto& e : t.a_infinity)
    if (e.persistent) persist.push_back(e.value);
  ok &= check("persistent shadow elements {2,3}", FiniteSet(persist) == FiniteSet::of({2, 3}));
  return ok;
}

bool reproduce_cascade() {
  BSet b = BSet::make("cascade");
  FiltrationTable t = build_filtration(b, 4, FiltrationMode::family);
  bool ok = true;
  // Stream primes alternate: p = 2,5,11,17,..., q = 3,7,13,19,...
  std::vector<uint64_t> p{2, 5, 11, 17}, q{3, 7, 13, 19};
  Nat dprod = 1, quot = 1;
  for (size_t k = 1; k <= 4; ++k) {
    dprod *= p[k - 1];
    dprod *= q[k - 1];
    if (k > 1) {
      quot *= p[k - 1];
      quot *= q[k - 1];
    }
    ok &= check("d_" + std::to_string(k) + " equals the product of the first stream primes",
                t.dk[k - 1].value == dprod && t.dk[k - 1].stabilized, t.dk[k - 1].value.str());
    ok &= check("s_" + std::to_string(k) + "/d_" + std::to_string(k) + " equals the tail product",
                t.quotients[k - 1] == quot, t.quotients[k - 1].str());
  }
  if (!ok)
    std::cout << "note: the level members P_{j-1} p_j^2 survive primitivization once the shadow\n"
                 "P_{j-1} p_j leaves the profile, so the stage periods pick up the squares and\n"
                 "d_k = p_1 p_2^2...p_k^2 q_1...q_k; the advertised square-free product cannot\n"
                 "arise from this construction.\n";
  return ok;
}

bool reproduce_q_family() {
  BSet b = BSet::make("q-family");
  FiltrationTable t = build_filtration(b, 5, FiltrationMode::family);
  bool ok = true;
  for (size_t k = 1; k <= 5; ++k) {
    bool eq = t.stages[k - 1].s == t.stages[k - 1].c && t.stages[k - 1].c == t.dk[k - 1].value;
    ok &= check("s_" + std::to_string(k) + " = c_" + std::to_string(k) + " = d_" + std::to_string(k),
                eq,
                "s=" + t.stages[k - 1].s.str() + " c=" + t.stages[k - 1].c.str() +
                    " d=" + t.dk[k - 1].value.str());
  }
  MefDescriptor md = mef_descriptor(t);
  ok &= check("interior period group trivial", md.h_int_trivial);
  if (!ok)
    std::cout << "note: the level construction contains pairs of elements with disjoint prime\n"
                 "support, so every stage profile contains 1, the shadow multiples cover Z,\n"
                 "and c_k = d_k = 1 < s_k; the advertised identity cannot hold for this set.\n";
  return ok;
}

bool reproduce_ape1() {
  BSet b = BSet::make("ape1");
  FiltrationTable t = build_filtration(b, 3, FiltrationMode::prefix, 2);
  auto ev = haar_regularity_scan(b, t, 10000000ull);
  bool found = false;
  uint64_t count = 0;
  for (const auto& e : ev)
    if (e.k == 1 && e.n == 4) {
      found = true;
      count = e.count;
    }
  bool ok = check("cylinder 4 mod 12 flagged as thin", found);
  ok &= check("free count in the progression <= 30", found && count <= 30, std::to_string(count));
  return ok;
}

bool reproduce_punctured() {
  BSet b = BSet::make("punctured-primes", FamilyParams{8, {}});
  FiltrationTable t = build_filtration(b, 4, FiltrationMode::prefix, 2);
  auto ev = haar_regularity_scan(b, t, 10000000ull);
  bool ok = check("no thin-cylinder flags", ev.empty(), std::to_string(ev.size()) + " flags");
  DensityEstimate d = interval_density(b, DensityTarget::multiples, 10000000ull);
  ok &= check("multiples of B have density near 1", d.value > 0.99);
  return ok;
}

bool reproduce_mod12() {
  BSet b = BSet::make("mod12");
  EtaBlock blk = sieve_eta(b, 0, 10000);
  ResidueCoverage r4 = residue_coverage(blk, 4);
  ResidueCoverage r6 = residue_coverage(blk, 6);
  bool ok = check("residues mod 4 hit = {1,2,3}", r4.residues_hit == std::set<uint64_t>{1, 2, 3});
  ok &= check("residues mod 6 hit = {1,2,3,4,5}",
              r6.residues_hit == std::set<uint64_t>{1, 2, 3, 4, 5});
  EtaBlock prog = sieve_progression(b, 12, 5, 0, 100000);
  ok &= check("progression 5 mod 12 has empty support", prog.popcount() == 0);
  return ok;
}

bool reproduce_power2() {
  BSet b = BSet::make("power2", FamilyParams{8, {}});
  FiltrationTable t = build_filtration(b, 8, FiltrationMode::family, 2);
  uint64_t n = 10000000ull;
  ClassificationReport rep = classify(b, t, n);
  bool ok = check("classified as Toeplitz", rep.toeplitz == Verdict::yes);
  WindowMeasures wm = window_measures(b, t, n);
  bool decreasing = true;
  for (size_t i = 1; i < wm.per_stage_boundary.size(); ++i)
    if (wm.per_stage_boundary[i].second > 2.0 * wm.per_stage_boundary[i - 1].second + 1e-9)
      decreasing = false;
  ok &= check("per-stage boundary estimates decreasing", decreasing);
  ok &= check("final boundary estimate < 1e-2", wm.per_stage_boundary.back().second < 1e-2);
  for (size_t k = 1; k <= 8; ++k) {
    ToeplitzPositions tp = toeplitz_positions(b, t, k, 2);
    double bound = std::pow(2.0, -static_cast<double>(k)) + 1e-2;
    ok &= check("unresolved fraction at stage " + std::to_string(k) + " within bound",
                tp.frac_unresolved <= bound);
  }
  return ok;
}

int run_reproduce(const std::string& id) {
  using Fn = bool (*)();
  static const std::vector<std::pair<std::string, Fn>> catalog = {
      {"sec2.5-block", reproduce_sec25_block},   {"ex5.6-two-three", reproduce_two_three},
      {"ex5.7-cascade", reproduce_cascade},      {"ex5.8-q-family", reproduce_q_family},
      {"ex2.6-ape1-nontaut", reproduce_ape1},    {"ex2.8-punctured", reproduce_punctured},
      {"sec3.1-mod12-Y", reproduce_mod12},       {"sec4.2-power2-regular", reproduce_power2},
  };
  if (id == "list" || id.empty()) {
    for (auto& [name, fn] : catalog) std::cout << name << "\n";
    return 0;
  }
  if (id == "all") {
    bool ok = true;
    for (auto& [name, fn] : catalog) {
      std::cout << "== " << name << "\n";
      ok &= fn();
    }
    return ok ? 0 : 4;
  }
  for (auto& [name, fn] : catalog)
    if (name == id) return fn() ? 0 : 4;
  std::cerr << "unknown experiment: " << id << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational toolkit for B-free integer systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Cli cli;
  if (const char* env = std::getenv("BFREE_HORIZON")) cli.cfg.horizon = std::stoull(env);

  std::string elements_str, list_str;
  app.add_option("--config", cli.config_path, "JSON config file");
  app.add_flag("--json", cli.as_json, "emit the report as JSON");
  app.add_flag("--csv", cli.as_csv, "emit per-stage tables as CSV");
  auto* opt_family = app.add_option("--family", cli.cfg.family, "model family id");
  app.add_option("--elements", elements_str, "explicit elements, comma separated");
  auto* opt_count = app.add_option("--count", cli.cfg.count, "family size parameter");
  app.add_option("--list", list_str, "family list parameter, comma separated");
  auto* opt_horizon = app.add_option("-N,--horizon", cli.cfg.horizon, "interval horizon");
  auto* opt_depth = app.add_option("--depth", cli.cfg.depth, "filtration depth");
  auto* opt_mode = app.add_option("--mode", cli.cfg.mode, "filtration mode: family|prefix|saturated");
  auto* opt_look = app.add_option("--lookahead", cli.cfg.lookahead, "stages beyond depth for the d_k limit");
  auto* opt_confirm = app.add_option("--confirm", cli.cfg.confirm, "equal trace values required for stability");
  auto* opt_chain = app.add_option("--chain-threshold", cli.cfg.chain_threshold,
                                   "pairwise-coprime chain evidence length");
  auto* opt_boundary = app.add_option("--boundary-threshold", cli.cfg.boundary_threshold,
                                      "boundary trace bound for the regular verdict");
  auto* opt_ratio = app.add_option("--haar-ratio", cli.cfg.haar_ratio,
                                   "thin-cylinder ratio for the regularity scan");

  auto* sieve_cmd = app.add_subcommand("sieve", "free-position indicator on an interval")->fallthrough();
  int64_t lo = 0, hi = 100;
  uint64_t prog_mod = 0;
  int64_t prog_res = 0;
  std::string out_mode = "text";
  sieve_cmd->add_option("--lo", lo, "interval start");
  sieve_cmd->add_option("--hi", hi, "interval end (inclusive)");
  sieve_cmd->add_option("--mod", prog_mod, "restrict to a progression: modulus");
  sieve_cmd->add_option("--res", prog_res, "restrict to a progression: residue");
  sieve_cmd->add_option("--out", out_mode, "text|bits|summary");

  auto* density_cmd = app.add_subcommand("density", "density estimates")->fallthrough();
  std::string target = "multiples", de_cutoffs, lt_cutoffs;
  bool log_density = false;
  density_cmd->add_option("--target", target, "multiples|free");
  density_cmd->add_flag("--log", log_density, "logarithmic partial sum");
  density_cmd->add_option("--de-cutoffs", de_cutoffs, "monotone trace cutoffs, comma separated");
  density_cmd->add_option("--light-tails", lt_cutoffs, "tail cutoffs, comma separated");

  auto* filtration_cmd = app.add_subcommand("filtration", "stage table with s_k, c_k, d_k")->fallthrough();
  auto* mef_cmd = app.add_subcommand("mef", "equicontinuous factor descriptor")->fallthrough();
  auto* classify_cmd = app.add_subcommand("classify", "dynamical classification report")->fallthrough();
  auto* window_cmd = app.add_subcommand("window", "window measures")->fallthrough();
  size_t toeplitz_stage = 0;
  uint64_t toeplitz_periods = 2;
  bool with_haar = false;
  window_cmd->add_option("--toeplitz-stage", toeplitz_stage, "also resolve positions at this stage");
  window_cmd->add_option("--periods", toeplitz_periods, "periods for the empirical position check");
  window_cmd->add_flag("--haar", with_haar, "include the thin-cylinder regularity scan");

  auto* crt_cmd = app.add_subcommand("crt", "residue system solving and free search")->fallthrough();
  std::string residues_str;
  bool do_search = false;
  crt_cmd->add_option("--residues", residues_str, "system as b:r,b:r,...")->required();
  crt_cmd->add_flag("--search", do_search, "sieve the solution progression for free numbers");

  auto* phi_cmd = app.add_subcommand("phi", "coding of a group point on an interval")->fallthrough();
  std::string assigned_str, default_rule = "zero", needle, dominance = "lower";
  int64_t phi_n0 = 0, phi_lo = 0, phi_hi = 100;
  phi_cmd->add_option("--assigned", assigned_str, "assigned coordinates as b:h,b:h,...");
  phi_cmd->add_option("--default", default_rule, "zero|delta");
  phi_cmd->add_option("--n0", phi_n0, "base point for the delta rule");
  phi_cmd->add_option("--lo", phi_lo, "interval start");
  phi_cmd->add_option("--hi", phi_hi, "interval end (inclusive)");
  phi_cmd->add_option("--needle", needle, "0/1 pattern to search for");
  phi_cmd->add_option("--dominance", dominance, "exact|lower");

  auto* reproduce_cmd = app.add_subcommand("reproduce", "run a named end-to-end experiment")->fallthrough();
  std::string experiment = "list";
  reproduce_cmd->add_option("id", experiment, "experiment id, 'list' or 'all'");

  auto* families_cmd = app.add_subcommand("families", "list the model family catalog")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!cli.config_path.empty()) {
      std::ifstream in(cli.config_path);
      if (!in) throw std::invalid_argument("cannot open config file");
      json j = json::parse(in);
      RunConfig file_cfg = RunConfig::from_json(j);
      if (!opt_family->count()) cli.cfg.family = file_cfg.family;
      if (!opt_count->count()) cli.cfg.count = file_cfg.count;
      if (!opt_horizon->count() && !std::getenv("BFREE_HORIZON")) cli.cfg.horizon = file_cfg.horizon;
      if (!opt_depth->count()) cli.cfg.depth = file_cfg.depth;
      if (!opt_mode->count()) cli.cfg.mode = file_cfg.mode;
      if (!opt_look->count()) cli.cfg.lookahead = file_cfg.lookahead;
      if (!opt_confirm->count()) cli.cfg.confirm = file_cfg.confirm;
      if (!opt_chain->count()) cli.cfg.chain_threshold = file_cfg.chain_threshold;
      if (!opt_boundary->count()) cli.cfg.boundary_threshold = file_cfg.boundary_threshold;
      if (!opt_ratio->count()) cli.cfg.haar_ratio = file_cfg.haar_ratio;
      if (cli.cfg.elements.empty()) cli.cfg.elements = file_cfg.elements;
      if (cli.cfg.list.empty()) cli.cfg.list = file_cfg.list;
    }
    if (!elements_str.empty()) cli.cfg.elements = parse_list(elements_str);
    if (!list_str.empty()) cli.cfg.list = parse_list(list_str);

    if (families_cmd->parsed()) {
      json j = json::array();
      for (const auto& f : family_catalog())
        j.push_back({{"id", f.id}, {"params", f.params}, {"description", f.description}});
      Timer t;
      emit(cli, j, t.ms());
      return 0;
    }
    if (reproduce_cmd->parsed()) return run_reproduce(experiment);

    BSet b = cli.cfg.make_bset();
    Timer timer;

    if (sieve_cmd->parsed()) {
      EtaBlock blk = prog_mod ? sieve_progression(b, prog_mod, prog_res, lo, hi) : sieve_eta(b, lo, hi);
      if (out_mode == "bits") {
        std::cout << "offset " << blk.offset << "\n";
        auto words = blk.export_words();
        std::cout.write(reinterpret_cast<const char*>(words.data()),
                        static_cast<std::streamsize>(words.size() * sizeof(uint64_t)));
        return 0;
      }
      if (out_mode == "text") {
        std::cout << blk.export_text();
        return 0;
      }
      json j{{"offset", blk.offset},
             {"length", blk.len},
             {"support_count", blk.popcount()},
             {"b_horizon", blk.b_horizon},
             {"exact", blk.exact}};
      emit(cli, j, timer.ms());
      return 0;
    }
    if (density_cmd->parsed()) {
      json j;
      if (!de_cutoffs.empty())
        j["davenport_erdos"] = density_to_json(davenport_erdos_trace(b, parse_list(de_cutoffs)));
      else if (!lt_cutoffs.empty()) {
        json t = json::array();
        for (auto& [k, v] : light_tails_trace(b, parse_list(lt_cutoffs), cli.cfg.horizon))
          t.push_back({{"cutoff", k}, {"value", v}});
        j["light_tails"] = t;
      } else if (log_density)
        j["log_density"] = density_to_json(log_density_partial(b, cli.cfg.horizon));
      else
        j["interval"] = density_to_json(interval_density(
            b, target == "free" ? DensityTarget::free_numbers : DensityTarget::multiples,
            cli.cfg.horizon));
      emit(cli, j, timer.ms());
      return 0;
    }
    if (crt_cmd->parsed()) {
      CylinderSpec spec;
      for (auto& [bb, r] : parse_residues(residues_str)) spec.residues.emplace_back(Nat(bb), Nat(r));
      std::sort(spec.residues.begin(), spec.residues.end());
      spec.validate();
      auto sol = crt_solve(spec);
      json j{{"solve", crt_to_json(sol)}};
      if (do_search && std::holds_alternative<CrtSolution>(sol))
        j["search"] = search_to_json(bfree_crt_search(b, spec, cli.cfg.horizon));
      emit(cli, j, timer.ms());
      return 0;
    }
    if (phi_cmd->parsed()) {
      HPoint h;
      h.rule = default_rule == "delta" ? HPoint::Default::delta : HPoint::Default::zero;
      h.n0 = phi_n0;
      if (!assigned_str.empty())
        for (auto& [bb, r] : parse_residues(assigned_str)) h.assigned[bb] = r;
      EtaBlock blk = phi_block(b, h, phi_lo, phi_hi);
      json j{{"offset", blk.offset}, {"block", blk.to01()}};
      if (!needle.empty()) {
        auto hit = block_containment_check(pattern_from_string(needle), blk,
                                           dominance == "exact" ? Dominance::exact : Dominance::lower);
        j["needle"] = needle;
        j["found_at"] = hit ? json(*hit) : json(nullptr);
      }
      emit(cli, j, timer.ms());
      return 0;
    }

    FiltrationTable table = build_filtration(b, cli.cfg.depth, cli.cfg.filtration_mode(),
                                             cli.cfg.lookahead, cli.cfg.confirm);
    if (filtration_cmd->parsed()) {
      if (cli.as_csv) {
        std::cout << table_to_csv(table);
        return 0;
      }
      emit(cli, table_to_json(table), timer.ms());
      return 0;
    }
    if (mef_cmd->parsed()) {
      emit(cli, mef_to_json(mef_descriptor(table, cli.cfg.confirm)), timer.ms());
      return 0;
    }
    if (classify_cmd->parsed()) {
      ClassifyOptions opts;
      opts.chain_threshold = cli.cfg.chain_threshold;
      opts.boundary_threshold = cli.cfg.boundary_threshold;
      opts.haar_ratio = cli.cfg.haar_ratio;
      emit(cli, classification_to_json(classify(b, table, cli.cfg.horizon, opts)), timer.ms());
      return 0;
    }
    if (window_cmd->parsed()) {
      json j{{"measures", measures_to_json(window_measures(b, table, cli.cfg.horizon))}};
      if (toeplitz_stage)
        j["toeplitz"] = toeplitz_to_json(toeplitz_positions(b, table, toeplitz_stage, toeplitz_periods));
      if (with_haar)
        j["haar_evidence"] = haar_to_json(
            haar_regularity_scan(b, table, cli.cfg.horizon, cli.cfg.haar_ratio));
      emit(cli, j, timer.ms());
      return 0;
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}

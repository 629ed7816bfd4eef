#pragma once

#include "bfree/crt.hpp"
#include "bfree/density.hpp"
#include "bfree/filtration.hpp"
#include "bfree/window.hpp"

#include <json.hpp>

#include <string>

namespace bfree {

using json = nlohmann::ordered_json;

// Effective run configuration; echoed into every report so results are
// reproducible from the report alone.
struct RunConfig {
  std::string family = "explicit";
  std::vector<uint64_t> elements;  // for explicit
  uint64_t count = 0;              // family size parameter
  std::vector<uint64_t> list;      // family list parameter
  uint64_t horizon = 10000000ull;
  size_t depth = 8;
  std::string mode = "family";  // family | prefix | saturated
  size_t lookahead = 6;
  size_t confirm = 3;
  size_t chain_threshold = 25;
  double boundary_threshold = 1e-3;
  double haar_ratio = 0.01;

  static RunConfig from_json(const json& j);
  json to_json() const;
  BSet make_bset() const;
  FiltrationMode filtration_mode() const;
};

json density_to_json(const DensityEstimate& de);
json table_to_json(const FiltrationTable& t);
json measures_to_json(const WindowMeasures& wm);
json classification_to_json(const ClassificationReport& r);
json toeplitz_to_json(const ToeplitzPositions& tp);
json haar_to_json(const std::vector<HaarEvidence>& ev);
json crt_to_json(const std::variant<CrtSolution, CrtIncompat>& sol);
json search_to_json(const BfreeSearchResult& r);
json mef_to_json(const MefDescriptor& md);

std::string table_to_csv(const FiltrationTable& t);
std::string render_text(const json& j, int indent = 0);

}  // namespace bfree

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "kirigami/analysis.hpp"
#include "kirigami/evaluation.hpp"

namespace kirigami {

/// Binary PGM (P5, maxval 255): 0 = admissible, 255 = non-admissible.
/// Image row r is first-coordinate cell r, column c second-coordinate cell c.
std::string map_pgm(const TwoCutMap& map);

/// Header row of second-coordinate cell centers, then one row per first-coordinate cell.
std::string map_csv(const TwoCutMap& map);

std::string histogram_csv(const Histogram1D& h);
std::string histogram_csv(const Histogram2D& h);

std::string sweep_curve_csv(const std::vector<SweepCurvePoint>& curve);

nlohmann::json to_json(const ProportionEstimate& e);
nlohmann::json to_json(const IntersectionTally& t);
nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const PathResult& path);

}  // namespace kirigami

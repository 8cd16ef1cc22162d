#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "wect/analysis.hpp"
#include "wect/complex.hpp"
#include "wect/metric.hpp"
#include "wect/transform.hpp"

namespace wect {

// JSON schemas (ids are array indices throughout):
//   complex: {"vertices":[[x,y],...],"edges":[[i,j],...],"triangles":[[i,j,k],...],
//             "vw":[...],"ew":[...],"tw":[...]}
//   wect:    {"n","m","lo","hi","smoothed","window","sigma","matrix":[[row-major rows]]}
// Round-trips are lossless for double-precision values.

nlohmann::json complex_to_json(const WeightedComplex& K);
WeightedComplex complex_from_json(const nlohmann::json& j);

nlohmann::json wect_to_json(const Wect& w);
Wect wect_from_json(const nlohmann::json& j);

nlohmann::json dendrogram_to_json(const Dendrogram& d);
Dendrogram dendrogram_from_json(const nlohmann::json& j);

nlohmann::json distance_matrix_to_json(const DistanceMatrix& D);

// CSV: m rows x n comma-separated columns, 17 significant digits.
std::string wect_to_csv(const Wect& w);
std::string distance_matrix_to_csv(const DistanceMatrix& D);
DistanceMatrix distance_matrix_from_csv(const std::string& text);

std::string labels_to_csv(const std::vector<int>& labels);

}  // namespace wect

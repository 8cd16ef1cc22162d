#include "wect/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wect {

using nlohmann::json;

namespace {

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json require(const json& j, const char* key) {
  if (!j.contains(key)) throw parse_error(std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json complex_to_json(const WeightedComplex& K) {
  json j;
  j["vertices"] = json::array();
  for (const auto& p : K.vertices) j["vertices"].push_back({p.x, p.y});
  j["edges"] = json::array();
  for (const auto& e : K.edges) j["edges"].push_back({e[0], e[1]});
  j["triangles"] = json::array();
  for (const auto& t : K.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  j["vw"] = K.vertex_weights;
  j["ew"] = K.edge_weights;
  j["tw"] = K.triangle_weights;
  return j;
}

WeightedComplex complex_from_json(const json& j) {
  try {
    WeightedComplex K;
    for (const auto& p : require(j, "vertices")) K.vertices.push_back({p.at(0), p.at(1)});
    for (const auto& e : require(j, "edges")) K.edges.push_back({e.at(0), e.at(1)});
    for (const auto& t : require(j, "triangles")) K.triangles.push_back({t.at(0), t.at(1), t.at(2)});
    K.vertex_weights = require(j, "vw").get<std::vector<double>>();
    K.edge_weights = require(j, "ew").get<std::vector<double>>();
    K.triangle_weights = require(j, "tw").get<std::vector<double>>();
    auto issues = validate(K);
    if (!issues.empty()) throw parse_error("complex json: " + issues.front());
    return K;
  } catch (const json::exception& e) {
    throw parse_error(std::string("complex json: ") + e.what());
  }
}

json wect_to_json(const Wect& w) {
  json j;
  j["n"] = w.scheme.n;
  j["m"] = w.grid.m;
  j["lo"] = w.grid.lo;
  j["hi"] = w.grid.hi;
  j["smoothed"] = w.smoothed;
  j["window"] = w.smoothed ? w.smoothing.window : 0;
  j["sigma"] = w.smoothed ? w.smoothing.sigma : 0.0;
  json rows = json::array();
  for (int r = 0; r < w.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < w.cols(); ++c) row.push_back(w.at(r, c));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

Wect wect_from_json(const json& j) {
  try {
    Wect w;
    w.scheme.n = require(j, "n");
    w.grid.m = require(j, "m");
    w.grid.lo = require(j, "lo");
    w.grid.hi = require(j, "hi");
    w.smoothed = require(j, "smoothed");
    w.smoothing.window = j.value("window", 0);
    w.smoothing.sigma = j.value("sigma", 0.0);
    const json& rows = require(j, "matrix");
    if (static_cast<int>(rows.size()) != w.grid.m) throw parse_error("wect json: row count mismatch");
    w.matrix.reserve(static_cast<size_t>(w.grid.m) * w.scheme.n);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != w.scheme.n) throw parse_error("wect json: column count mismatch");
      for (const auto& v : row) w.matrix.push_back(v.get<double>());
    }
    return w;
  } catch (const json::exception& e) {
    throw parse_error(std::string("wect json: ") + e.what());
  }
}

json dendrogram_to_json(const Dendrogram& d) {
  json j;
  j["leaves"] = d.leaves;
  json merges = json::array();
  for (const auto& m : d.merges) merges.push_back({m.cluster_a, m.cluster_b, m.height, m.size});
  j["merges"] = std::move(merges);
  return j;
}

Dendrogram dendrogram_from_json(const json& j) {
  try {
    Dendrogram d;
    d.leaves = require(j, "leaves");
    for (const auto& m : require(j, "merges")) {
      d.merges.push_back({m.at(0), m.at(1), m.at(2), m.at(3)});
    }
    if (static_cast<int>(d.merges.size()) != d.leaves - 1) {
      throw parse_error("dendrogram json: merge count mismatch");
    }
    return d;
  } catch (const json::exception& e) {
    throw parse_error(std::string("dendrogram json: ") + e.what());
  }
}

json distance_matrix_to_json(const DistanceMatrix& D) {
  json j;
  j["size"] = D.size;
  j["registered"] = D.registered;
  json rows = json::array();
  for (int i = 0; i < D.size; ++i) {
    json row = json::array();
    for (int k = 0; k < D.size; ++k) row.push_back(D.at(i, k));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  if (D.shifts) {
    json srows = json::array();
    for (int i = 0; i < D.size; ++i) {
      json row = json::array();
      for (int k = 0; k < D.size; ++k) row.push_back(D.shift_at(i, k));
      srows.push_back(std::move(row));
    }
    j["shifts"] = std::move(srows);
  }
  return j;
}

std::string wect_to_csv(const Wect& w) {
  std::string out;
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) {
      if (c) out += ',';
      out += format_g17(w.at(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string distance_matrix_to_csv(const DistanceMatrix& D) {
  std::string out;
  for (int i = 0; i < D.size; ++i) {
    for (int k = 0; k < D.size; ++k) {
      if (k) out += ',';
      out += format_g17(D.at(i, k));
    }
    out += '\n';
  }
  return out;
}

DistanceMatrix distance_matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{}) throw parse_error("distance csv: bad number in row " + std::to_string(rows.size()));
      row.push_back(v);
      p = next;
      if (p < end) {
        if (*p != ',') throw parse_error("distance csv: expected comma in row " + std::to_string(rows.size()));
        ++p;
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error("distance csv: empty input");
  int N = static_cast<int>(rows.size());
  DistanceMatrix D;
  D.size = N;
  D.entries.reserve(static_cast<size_t>(N) * N);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != N) throw parse_error("distance csv: matrix is not square");
    D.entries.insert(D.entries.end(), row.begin(), row.end());
  }
  for (int i = 0; i < N; ++i) {
    if (D.at(i, i) != 0.0) throw parse_error("distance csv: nonzero diagonal");
    for (int k = 0; k < i; ++k) {
      if (std::abs(D.at(i, k) - D.at(k, i)) > 1e-12) throw parse_error("distance csv: asymmetric matrix");
    }
  }
  return D;
}

std::string labels_to_csv(const std::vector<int>& labels) {
  std::string out;
  for (int v : labels) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

}  // namespace wect

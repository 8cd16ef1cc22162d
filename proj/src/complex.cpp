#include "wect/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace wect {

namespace {

// Grid key in half-pixel units: (2*row, 2*col) for centers, odd coordinates
// for corners. Keeps vertex dedup exact across adjacent pixels.
using GridKey = std::pair<int, int>;

Vec2 key_position(const GridKey& k) {
  // pixel (row i, col j) -> (x, y) = (j, -i)
  return {k.second / 2.0, -k.first / 2.0};
}

Edge make_edge(int a, int b) {
  if (a > b) std::swap(a, b);
  return {a, b};
}

Triangle make_triangle(int a, int b, int c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

WeightedComplex image_to_weighted_complex(const ImageGrid& image, const ImageGrid* mask) {
  if (image.rows < 1 || image.cols < 1 ||
      image.pixels.size() != static_cast<size_t>(image.rows) * image.cols) {
    throw contract_error("image_to_weighted_complex: non-rectangular image");
  }
  if (mask && (mask->rows != image.rows || mask->cols != image.cols ||
               mask->pixels.size() != image.pixels.size())) {
    throw contract_error("image_to_weighted_complex: mask shape mismatch");
  }
  for (int p : image.pixels) {
    if (p < 0) throw contract_error("image_to_weighted_complex: negative pixel value");
  }

  WeightedComplex K;
  std::map<GridKey, int> vertex_id;
  std::map<Edge, int> edge_id;

  auto vertex = [&](int r2, int c2) {
    auto [it, inserted] = vertex_id.try_emplace({r2, c2}, static_cast<int>(K.vertices.size()));
    if (inserted) {
      K.vertices.push_back(key_position(it->first));
      K.vertex_weights.push_back(0.0);
    }
    return it->second;
  };
  auto edge = [&](int a, int b) {
    auto [it, inserted] = edge_id.try_emplace(make_edge(a, b), static_cast<int>(K.edges.size()));
    if (inserted) {
      K.edges.push_back(it->first);
      K.edge_weights.push_back(0.0);
    }
    return it->second;
  };

  for (int i = 0; i < image.rows; ++i) {
    for (int j = 0; j < image.cols; ++j) {
      int value = image.at(i, j);
      if (value <= 0) continue;
      if (mask && mask->at(i, j) <= 0) continue;
      double w = static_cast<double>(value);

      int center = vertex(2 * i, 2 * j);
      // corners in cyclic order: NW, NE, SE, SW
      int corners[4] = {
          vertex(2 * i - 1, 2 * j - 1),
          vertex(2 * i - 1, 2 * j + 1),
          vertex(2 * i + 1, 2 * j + 1),
          vertex(2 * i + 1, 2 * j - 1),
      };

      for (int t = 0; t < 4; ++t) {
        int a = corners[t];
        int b = corners[(t + 1) % 4];
        K.triangles.push_back(make_triangle(center, a, b));
        K.triangle_weights.push_back(w);

        for (int e : {edge(center, a), edge(center, b), edge(a, b)}) {
          K.edge_weights[e] = std::max(K.edge_weights[e], w);
        }
        for (int v : {center, a, b}) {
          K.vertex_weights[v] = std::max(K.vertex_weights[v], w);
        }
      }
    }
  }
  return K;
}

long long euler_characteristic(const WeightedComplex& K) {
  return static_cast<long long>(K.vertices.size()) - static_cast<long long>(K.edges.size()) +
         static_cast<long long>(K.triangles.size());
}

double weighted_euler_characteristic(const WeightedComplex& K) {
  double v = 0.0, e = 0.0, t = 0.0;
  for (double w : K.vertex_weights) v += w;
  for (double w : K.edge_weights) e += w;
  for (double w : K.triangle_weights) t += w;
  return v - e + t;
}

bool is_admissible(const WeightedComplex& K) {
  size_t nv = K.vertices.size();
  std::vector<double> vertex_max(nv, -1.0);  // -1 marks "no coface"
  std::map<Edge, double> edge_max;

  for (size_t e = 0; e < K.edges.size(); ++e) {
    for (int v : K.edges[e]) vertex_max[v] = std::max(vertex_max[v], K.edge_weights[e]);
  }
  for (size_t t = 0; t < K.triangles.size(); ++t) {
    const auto& tri = K.triangles[t];
    double w = K.triangle_weights[t];
    for (int v : tri) vertex_max[v] = std::max(vertex_max[v], w);
    for (auto [a, b] : {std::pair{tri[0], tri[1]}, std::pair{tri[0], tri[2]}, std::pair{tri[1], tri[2]}}) {
      auto [it, inserted] = edge_max.try_emplace(Edge{a, b}, w);
      if (!inserted) it->second = std::max(it->second, w);
    }
  }

  for (size_t v = 0; v < nv; ++v) {
    if (vertex_max[v] >= 0.0 && K.vertex_weights[v] != vertex_max[v]) return false;
  }
  for (size_t e = 0; e < K.edges.size(); ++e) {
    auto it = edge_max.find(K.edges[e]);
    if (it != edge_max.end() && K.edge_weights[e] != it->second) return false;
  }
  return true;
}

WeightedComplex superlevel_subcomplex(const WeightedComplex& K, double z) {
  if (!is_admissible(K)) {
    throw contract_error("superlevel_subcomplex: complex is not admissible");
  }
  WeightedComplex S;
  std::vector<int> remap(K.vertices.size(), -1);
  for (size_t v = 0; v < K.vertices.size(); ++v) {
    if (K.vertex_weights[v] >= z) {
      remap[v] = static_cast<int>(S.vertices.size());
      S.vertices.push_back(K.vertices[v]);
      S.vertex_weights.push_back(K.vertex_weights[v]);
    }
  }
  for (size_t e = 0; e < K.edges.size(); ++e) {
    if (K.edge_weights[e] >= z) {
      S.edges.push_back({remap[K.edges[e][0]], remap[K.edges[e][1]]});
      S.edge_weights.push_back(K.edge_weights[e]);
    }
  }
  for (size_t t = 0; t < K.triangles.size(); ++t) {
    if (K.triangle_weights[t] >= z) {
      S.triangles.push_back(
          {remap[K.triangles[t][0]], remap[K.triangles[t][1]], remap[K.triangles[t][2]]});
      S.triangle_weights.push_back(K.triangle_weights[t]);
    }
  }
  return S;
}

long long superlevel_sum_oracle(const WeightedComplex& K) {
  if (!is_admissible(K)) {
    throw contract_error("superlevel_sum_oracle: complex is not admissible");
  }
  double max_weight = 0.0;
  auto check = [&](const std::vector<double>& ws) {
    for (double w : ws) {
      if (w < 1.0 || w != std::floor(w)) {
        throw contract_error("superlevel_sum_oracle: weights must be positive integers");
      }
      max_weight = std::max(max_weight, w);
    }
  };
  check(K.vertex_weights);
  check(K.edge_weights);
  check(K.triangle_weights);

  long long total = 0;
  for (long long z = 1; z <= static_cast<long long>(max_weight); ++z) {
    total += euler_characteristic(superlevel_subcomplex(K, static_cast<double>(z)));
  }
  return total;
}

std::pair<WeightedComplex, NormalizationRecord> normalize(const WeightedComplex& K) {
  if (K.empty()) throw contract_error("normalize: empty complex");

  NormalizationRecord rec;
  double cx = 0.0, cy = 0.0;
  for (const auto& p : K.vertices) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(K.vertices.size());
  cy /= static_cast<double>(K.vertices.size());
  rec.centroid = {cx, cy};

  WeightedComplex N = K;
  double scale = 0.0;
  for (auto& p : N.vertices) {
    p.x -= cx;
    p.y -= cy;
    scale = std::max(scale, std::hypot(p.x, p.y));
  }
  if (scale <= 0.0) throw contract_error("normalize: all vertices coincident");
  rec.scale = scale;
  for (auto& p : N.vertices) {
    p.x /= scale;
    p.y /= scale;
  }

  double wmax = 0.0;
  for (double w : N.vertex_weights) wmax = std::max(wmax, w);
  for (double w : N.edge_weights) wmax = std::max(wmax, w);
  for (double w : N.triangle_weights) wmax = std::max(wmax, w);
  if (wmax <= 0.0) throw contract_error("normalize: max weight is zero");
  rec.weight_max = wmax;
  for (auto* arr : {&N.vertex_weights, &N.edge_weights, &N.triangle_weights}) {
    for (double& w : *arr) w /= wmax;
  }
  return {std::move(N), rec};
}

WeightedComplex rotate(const WeightedComplex& K, double theta) {
  WeightedComplex R = K;
  double c = std::cos(theta), s = std::sin(theta);
  for (auto& p : R.vertices) {
    double x = p.x, y = p.y;
    p.x = c * x - s * y;
    p.y = s * x + c * y;
  }
  return R;
}

std::vector<std::string> validate(const WeightedComplex& K) {
  std::vector<std::string> issues;
  int nv = static_cast<int>(K.vertices.size());

  if (K.vertex_weights.size() != K.vertices.size()) issues.push_back("vertex weight count mismatch");
  if (K.edge_weights.size() != K.edges.size()) issues.push_back("edge weight count mismatch");
  if (K.triangle_weights.size() != K.triangles.size()) issues.push_back("triangle weight count mismatch");

  for (const auto& p : K.vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      issues.push_back("non-finite vertex position");
      break;
    }
  }

  std::set<Edge> edge_set;
  for (size_t e = 0; e < K.edges.size(); ++e) {
    const auto& [a, b] = K.edges[e];
    if (a < 0 || b >= nv) issues.push_back("edge " + std::to_string(e) + ": vertex id out of range");
    else if (!(a < b)) issues.push_back("edge " + std::to_string(e) + ": ids not strictly increasing");
    else if (!edge_set.insert(K.edges[e]).second)
      issues.push_back("edge " + std::to_string(e) + ": duplicate");
  }

  std::set<Triangle> tri_set;
  for (size_t t = 0; t < K.triangles.size(); ++t) {
    const auto& tri = K.triangles[t];
    if (tri[0] < 0 || tri[2] >= nv) {
      issues.push_back("triangle " + std::to_string(t) + ": vertex id out of range");
      continue;
    }
    if (!(tri[0] < tri[1] && tri[1] < tri[2])) {
      issues.push_back("triangle " + std::to_string(t) + ": ids not strictly increasing");
      continue;
    }
    if (!tri_set.insert(tri).second) {
      issues.push_back("triangle " + std::to_string(t) + ": duplicate");
      continue;
    }
    for (auto [a, b] : {std::pair{tri[0], tri[1]}, std::pair{tri[0], tri[2]}, std::pair{tri[1], tri[2]}}) {
      if (!edge_set.count(Edge{a, b})) {
        issues.push_back("triangle " + std::to_string(t) + ": missing edge (" + std::to_string(a) +
                         "," + std::to_string(b) + ")");
      }
    }
  }

  auto check_weights = [&](const std::vector<double>& ws, const char* kind) {
    for (size_t i = 0; i < ws.size(); ++i) {
      if (!std::isfinite(ws[i]) || ws[i] < 0.0) {
        issues.push_back(std::string(kind) + " " + std::to_string(i) + ": negative or non-finite weight");
      }
    }
  };
  check_weights(K.vertex_weights, "vertex");
  check_weights(K.edge_weights, "edge");
  check_weights(K.triangle_weights, "triangle");
  return issues;
}

}  // namespace wect

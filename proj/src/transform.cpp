#include "wect/transform.hpp"

#include <algorithm>
#include <cmath>

#include "wect/parallel.hpp"

namespace wect {

HeightFiltration height_filtration(const WeightedComplex& K, Vec2 v) {
  double norm = std::hypot(v.x, v.y);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw contract_error("height_filtration: direction is not unit length");
  }
  HeightFiltration f;
  f.vertex_values.reserve(K.vertices.size());
  for (const auto& p : K.vertices) f.vertex_values.push_back(v.x * p.x + v.y * p.y);

  f.edge_values.reserve(K.edges.size());
  for (const auto& e : K.edges) {
    f.edge_values.push_back(std::max(f.vertex_values[e[0]], f.vertex_values[e[1]]));
  }
  f.triangle_values.reserve(K.triangles.size());
  for (const auto& t : K.triangles) {
    f.triangle_values.push_back(
        std::max({f.vertex_values[t[0]], f.vertex_values[t[1]], f.vertex_values[t[2]]}));
  }
  return f;
}

namespace {

// (filtration value, signed contribution) per simplex, sorted once and swept
// against the grid. Equal-valued events are added in a fixed (value, insertion)
// order so results do not depend on sort stability.
template <typename Contribution, typename Accumulator>
std::vector<Accumulator> sweep_curve(const WeightedComplex& K, Vec2 v, const FiltrationGrid& grid,
                                     const std::vector<Contribution>& vertex_c,
                                     const std::vector<Contribution>& edge_c,
                                     const std::vector<Contribution>& tri_c) {
  HeightFiltration f = height_filtration(K, v);
  std::vector<std::pair<double, Contribution>> events;
  events.reserve(K.simplex_count());
  for (size_t i = 0; i < vertex_c.size(); ++i) events.emplace_back(f.vertex_values[i], vertex_c[i]);
  for (size_t i = 0; i < edge_c.size(); ++i) events.emplace_back(f.edge_values[i], -edge_c[i]);
  for (size_t i = 0; i < tri_c.size(); ++i) events.emplace_back(f.triangle_values[i], tri_c[i]);
  std::stable_sort(events.begin(), events.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Accumulator> curve(grid.m, Accumulator{0});
  Accumulator running{0};
  size_t next = 0;
  for (int j = 0; j < grid.m; ++j) {
    double r = grid.value(j);
    while (next < events.size() && events[next].first <= r) {
      running += events[next].second;
      ++next;
    }
    curve[j] = running;
  }
  return curve;
}

}  // namespace

std::vector<double> weighted_euler_curve(const WeightedComplex& K, Vec2 v, const FiltrationGrid& grid) {
  return sweep_curve<double, double>(K, v, grid, K.vertex_weights, K.edge_weights, K.triangle_weights);
}

std::vector<long long> euler_curve(const WeightedComplex& K, Vec2 v, const FiltrationGrid& grid) {
  std::vector<long long> vc(K.vertices.size(), 1), ec(K.edges.size(), 1), tc(K.triangles.size(), 1);
  return sweep_curve<long long, long long>(K, v, grid, vc, ec, tc);
}

Wect compute_wect(const WeightedComplex& K, const DirectionScheme& scheme, const FiltrationGrid& grid,
                  int threads) {
  if (scheme.n < 1 || grid.m < 2) throw contract_error("compute_wect: need n >= 1 directions, m >= 2 samples");
  Wect w;
  w.scheme = scheme;
  w.grid = grid;
  w.matrix.assign(static_cast<size_t>(grid.m) * scheme.n, 0.0);
  parallel_for(static_cast<size_t>(scheme.n), threads, [&](size_t k) {
    auto col = weighted_euler_curve(K, scheme.direction(static_cast<int>(k)), grid);
    for (int j = 0; j < grid.m; ++j) w.at(j, static_cast<int>(k)) = col[j];
  });
  return w;
}

Wect compute_ect(const WeightedComplex& K, const DirectionScheme& scheme, const FiltrationGrid& grid,
                 int threads) {
  return compute_wect(with_unit_weights(K), scheme, grid, threads);
}

WeightedComplex with_unit_weights(const WeightedComplex& K) {
  WeightedComplex U = K;
  std::fill(U.vertex_weights.begin(), U.vertex_weights.end(), 1.0);
  std::fill(U.edge_weights.begin(), U.edge_weights.end(), 1.0);
  std::fill(U.triangle_weights.begin(), U.triangle_weights.end(), 1.0);
  return U;
}

Wect smooth(const Wect& w, const SmoothingSpec& spec) {
  if (w.smoothed) throw contract_error("smooth: input is already smoothed");
  if (spec.window < 1 || spec.sigma <= 0.0) throw contract_error("smooth: window >= 1 and sigma > 0 required");

  std::vector<double> kernel(2 * spec.window + 1);
  double sum = 0.0;
  for (int t = -spec.window; t <= spec.window; ++t) {
    double k = std::exp(-0.5 * (t / spec.sigma) * (t / spec.sigma));
    kernel[t + spec.window] = k;
    sum += k;
  }
  for (double& k : kernel) k /= sum;

  Wect out = w;
  out.smoothed = true;
  out.smoothing = spec;
  int m = w.rows(), n = w.cols();
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int t = -spec.window; t <= spec.window; ++t) {
        int src = std::clamp(j + t, 0, m - 1);  // edge replication
        acc += kernel[t + spec.window] * w.at(src, k);
      }
      out.at(j, k) = acc;
    }
  }
  return out;
}

}  // namespace wect

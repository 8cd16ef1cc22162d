#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "wect/complex.hpp"

namespace wect {

// n unit directions uniformly sampled on the circle, indexed cyclically;
// direction k has angle 2*pi*k/n, so k = 0 is (1, 0).
struct DirectionScheme {
  int n = 0;

  double angle(int k) const { return 2.0 * std::numbers::pi * k / n; }
  Vec2 direction(int k) const { return {std::cos(angle(k)), std::sin(angle(k))}; }
};

// m uniform samples of the filtration parameter over [lo, hi].
struct FiltrationGrid {
  int m = 0;
  double lo = -1.0;
  double hi = 1.0;

  double value(int j) const { return lo + (hi - lo) * j / (m - 1); }
  double step() const { return (hi - lo) / (m - 1); }
};

struct SmoothingSpec {
  int window = 0;      // kernel half-width in samples
  double sigma = 0.0;  // standard deviation in samples
};

// m x n matrix of weighted Euler curve values; column k is the curve for
// direction k, row j the value at grid point r_j.
struct Wect {
  DirectionScheme scheme;
  FiltrationGrid grid;
  bool smoothed = false;
  SmoothingSpec smoothing;
  std::vector<double> matrix;  // row-major, grid.m rows x scheme.n cols

  int rows() const { return grid.m; }
  int cols() const { return scheme.n; }
  double at(int j, int k) const { return matrix[static_cast<size_t>(j) * scheme.n + k]; }
  double& at(int j, int k) { return matrix[static_cast<size_t>(j) * scheme.n + k]; }
};

// Height filtration values per simplex: dot product on vertices, max over
// vertices for edges and triangles. Every sublevel set is face-closed.
struct HeightFiltration {
  std::vector<double> vertex_values;
  std::vector<double> edge_values;
  std::vector<double> triangle_values;
};

HeightFiltration height_filtration(const WeightedComplex& K, Vec2 v);

// Weighted Euler curve sampled on the grid: entry j is chi^w of the sublevel
// complex at r_j. Single sort plus sweep; each simplex contributes
// (-1)^dim * weight at its filtration value.
std::vector<double> weighted_euler_curve(const WeightedComplex& K, Vec2 v, const FiltrationGrid& grid);

// Unweighted Euler curve (all weights treated as 1).
std::vector<long long> euler_curve(const WeightedComplex& K, Vec2 v, const FiltrationGrid& grid);

// Columns are independent; threads > 1 splits them across workers with
// bit-identical results to sequential evaluation. threads == 0 means all cores.
Wect compute_wect(const WeightedComplex& K, const DirectionScheme& scheme, const FiltrationGrid& grid,
                  int threads = 1);
Wect compute_ect(const WeightedComplex& K, const DirectionScheme& scheme, const FiltrationGrid& grid,
                 int threads = 1);

// Column-wise convolution with a truncated renormalized Gaussian, boundary by
// edge replication. Smoothing an already-smoothed Wect is an error.
Wect smooth(const Wect& w, const SmoothingSpec& spec);

WeightedComplex with_unit_weights(const WeightedComplex& K);

}  // namespace wect

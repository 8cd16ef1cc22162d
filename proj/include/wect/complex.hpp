#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wect/errors.hpp"
#include "wect/ingest.hpp"

namespace wect {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using Edge = std::array<int, 2>;      // vertex ids, strictly increasing
using Triangle = std::array<int, 3>;  // vertex ids, strictly increasing

// Embedded weighted 2D simplicial complex (K, g). Simplices are stored per
// dimension with parallel weight arrays; vertex ids are dense 0..V-1.
// Values are immutable once constructed: every operation returns a new complex.
struct WeightedComplex {
  std::vector<Vec2> vertices;
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  std::vector<double> vertex_weights;
  std::vector<double> edge_weights;
  std::vector<double> triangle_weights;

  bool empty() const { return vertices.empty(); }
  size_t simplex_count() const { return vertices.size() + edges.size() + triangles.size(); }
};

struct NormalizationRecord {
  Vec2 centroid;           // subtracted from every vertex
  double scale = 1.0;      // positive divisor applied to positions
  double weight_max = 1.0; // positive divisor applied to weights
};

// Converts nonzero pixels of a grayscale image into a fan of four triangles
// around each pixel center, deduplicating shared corners and edges. Triangle
// weight is the pixel value; lower simplices take the max over their cofaces,
// so the result is always admissible. Pixel (row i, col j) maps to (x, y) = (j, -i).
// A pixel is selected iff value > 0 and (when a mask is given) mask > 0.
WeightedComplex image_to_weighted_complex(const ImageGrid& image, const ImageGrid* mask = nullptr);

long long euler_characteristic(const WeightedComplex& K);
double weighted_euler_characteristic(const WeightedComplex& K);

// True iff every proper face's weight equals the max weight over simplices
// strictly containing it. Maximal simplices are unconstrained.
bool is_admissible(const WeightedComplex& K);

// Subcomplex of simplices with weight >= z, ids remapped dense. Requires an
// admissible complex (otherwise the result need not be face-closed).
WeightedComplex superlevel_subcomplex(const WeightedComplex& K, double z);

// Sum over z = 1..max weight of the Euler characteristic of the superlevel
// subcomplex. For admissible complexes with positive integer weights this
// equals weighted_euler_characteristic exactly; kept as an independent route.
long long superlevel_sum_oracle(const WeightedComplex& K);

// Center vertex positions at their mean, scale so the farthest vertex sits at
// distance 1, divide all weights by the max weight.
std::pair<WeightedComplex, NormalizationRecord> normalize(const WeightedComplex& K);

WeightedComplex rotate(const WeightedComplex& K, double theta);

// Diagnostic structural check; empty result means valid.
std::vector<std::string> validate(const WeightedComplex& K);

}  // namespace wect

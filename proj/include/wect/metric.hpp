#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wect/transform.hpp"

namespace wect {

struct DistanceMatrix {
  int size = 0;
  std::vector<double> entries;              // row-major size x size, symmetric, zero diagonal
  bool registered = false;
  std::optional<std::vector<int>> shifts;   // minimizing shift per pair when registered

  double at(int i, int j) const { return entries[static_cast<size_t>(i) * size + j]; }
  double& at(int i, int j) { return entries[static_cast<size_t>(i) * size + j]; }
  int shift_at(int i, int j) const { return (*shifts)[static_cast<size_t>(i) * size + j]; }
};

// L2 distance on S^1 x [lo, hi]: Frobenius norm of the matrix difference
// scaled by sqrt(dr * dtheta), so refining the grid does not rescale distances.
// Operands must share scheme, grid and smoothing status.
double wect_distance(const Wect& a, const Wect& b);

// Column c of the result reads column (c + k) mod n of the input; k is
// reduced mod n. shift by 0 is the identity and k then n-k round-trips.
Wect shift_wect(const Wect& a, int k);

struct RotationMatch {
  int shift = 0;        // k* minimizing wect_distance(a, shift_wect(b, k)), smallest k on ties
  double distance = 0.0;
  int n = 0;
  double angle() const { return 2.0 * std::numbers::pi * shift / n; }
};

// Exhaustive search over the n cyclic shifts of b; the recovered rotation
// angle is 2*pi*shift/n.
RotationMatch register_rotation(const Wect& a, const Wect& b);

// Pairwise distances; entry (i, j) is wect_distance or the registered minimum.
// Pairs are evaluated independently (parallel when threads != 1), results
// identical to sequential order.
DistanceMatrix distance_matrix(std::span<const Wect> ws, bool register_rotations, int threads = 1);

}  // namespace wect

#include "wect/metric.hpp"

#include <cmath>

#include "wect/parallel.hpp"

namespace wect {

namespace {

void require_compatible(const Wect& a, const Wect& b, const char* op) {
  bool ok = a.scheme.n == b.scheme.n && a.grid.m == b.grid.m && a.grid.lo == b.grid.lo &&
            a.grid.hi == b.grid.hi && a.smoothed == b.smoothed;
  if (ok && a.smoothed) {
    ok = a.smoothing.window == b.smoothing.window && a.smoothing.sigma == b.smoothing.sigma;
  }
  if (!ok) throw contract_error(std::string(op) + ": mismatched scheme, grid or smoothing");
}

double measure_element(const Wect& a) {
  double dr = a.grid.step();
  double dtheta = 2.0 * std::numbers::pi / a.scheme.n;
  return dr * dtheta;
}

// Squared Frobenius distance between a and b with b's columns shifted by k.
double shifted_sq(const Wect& a, const Wect& b, int k) {
  int m = a.rows(), n = a.cols();
  double sq = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int c = 0; c < n; ++c) {
      double d = a.at(j, c) - b.at(j, (c + k) % n);
      sq += d * d;
    }
  }
  return sq;
}

}  // namespace

double wect_distance(const Wect& a, const Wect& b) {
  require_compatible(a, b, "wect_distance");
  return std::sqrt(shifted_sq(a, b, 0) * measure_element(a));
}

Wect shift_wect(const Wect& a, int k) {
  int n = a.cols();
  k = ((k % n) + n) % n;
  Wect out = a;
  for (int j = 0; j < a.rows(); ++j) {
    for (int c = 0; c < n; ++c) out.at(j, c) = a.at(j, (c + k) % n);
  }
  return out;
}

RotationMatch register_rotation(const Wect& a, const Wect& b) {
  require_compatible(a, b, "register_rotation");
  int n = a.cols();
  RotationMatch best{0, shifted_sq(a, b, 0), n};
  for (int k = 1; k < n; ++k) {
    double sq = shifted_sq(a, b, k);
    if (sq < best.distance) best = {k, sq, n};
  }
  best.distance = std::sqrt(best.distance * measure_element(a));
  return best;
}

DistanceMatrix distance_matrix(std::span<const Wect> ws, bool register_rotations, int threads) {
  if (ws.empty()) throw contract_error("distance_matrix: empty input");
  int N = static_cast<int>(ws.size());
  for (int i = 1; i < N; ++i) require_compatible(ws[0], ws[i], "distance_matrix");

  DistanceMatrix D;
  D.size = N;
  D.registered = register_rotations;
  D.entries.assign(static_cast<size_t>(N) * N, 0.0);
  if (register_rotations) D.shifts = std::vector<int>(static_cast<size_t>(N) * N, 0);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) pairs.emplace_back(i, j);

  int n = ws[0].cols();
  parallel_for(pairs.size(), threads, [&](size_t p) {
    auto [i, j] = pairs[p];
    if (register_rotations) {
      RotationMatch r = register_rotation(ws[i], ws[j]);
      D.at(i, j) = D.at(j, i) = r.distance;
      (*D.shifts)[static_cast<size_t>(i) * N + j] = r.shift;
      (*D.shifts)[static_cast<size_t>(j) * N + i] = (n - r.shift) % n;
    } else {
      D.at(i, j) = D.at(j, i) = wect_distance(ws[i], ws[j]);
    }
  });
  return D;
}

}  // namespace wect

#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "wect/metric.hpp"

using namespace wect;
using wect::testing::random_complex;

namespace {

Wect random_wect(std::mt19937_64& rng, int m = 10, int n = 8) {
  Wect w;
  w.scheme = {n};
  w.grid = {m, -1.0, 1.0};
  w.matrix.resize(static_cast<size_t>(m) * n);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (double& v : w.matrix) v = dist(rng);
  return w;
}

double measure(const Wect& w) {
  return w.grid.step() * 2.0 * std::numbers::pi / w.scheme.n;
}

}  // namespace

TEST_CASE("distance of identical wects is zero") {
  std::mt19937_64 rng(1);
  Wect a = random_wect(rng);
  CHECK(wect_distance(a, a) == 0.0);
}

TEST_CASE("single-entry perturbation scales by the measure element") {
  std::mt19937_64 rng(2);
  Wect a = random_wect(rng);
  Wect b = a;
  double delta = 0.375;
  b.at(3, 4) += delta;
  CHECK(wect_distance(a, b) == doctest::Approx(delta * std::sqrt(measure(a))).epsilon(1e-12));
}

TEST_CASE("distance is symmetric and matches an explicit double sum") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Wect a = random_wect(rng), b = random_wect(rng);
    CHECK(std::abs(wect_distance(a, b) - wect_distance(b, a)) < 1e-12);

    double sq = 0.0;
    for (int j = 0; j < a.rows(); ++j)
      for (int k = 0; k < a.cols(); ++k) sq += (a.at(j, k) - b.at(j, k)) * (a.at(j, k) - b.at(j, k));
    CHECK(wect_distance(a, b) == doctest::Approx(std::sqrt(sq * measure(a))).epsilon(1e-12));
  }
}

TEST_CASE("mismatched operands are rejected") {
  std::mt19937_64 rng(4);
  Wect a = random_wect(rng, 10, 8);
  Wect b = random_wect(rng, 10, 9);
  CHECK_THROWS_AS(wect_distance(a, b), contract_error);

  Wect c = random_wect(rng, 10, 8);
  c.smoothed = true;
  c.smoothing = {2, 1.0};
  CHECK_THROWS_AS(wect_distance(a, c), contract_error);
}

TEST_CASE("shift semantics") {
  std::mt19937_64 rng(5);
  Wect a = random_wect(rng, 3, 4);
  CHECK(shift_wect(a, 0).matrix == a.matrix);
  CHECK(shift_wect(shift_wect(a, 1), 3).matrix == a.matrix);
  CHECK(shift_wect(a, -1).matrix == shift_wect(a, 3).matrix);

  Wect s = shift_wect(a, 1);
  for (int j = 0; j < 3; ++j) {
    for (int c = 0; c < 4; ++c) CHECK(s.at(j, c) == a.at(j, (c + 1) % 4));
  }
}

TEST_CASE("registration of a wect with itself is the identity") {
  std::mt19937_64 rng(6);
  Wect a = random_wect(rng);
  RotationMatch r = register_rotation(a, a);
  CHECK(r.shift == 0);
  CHECK(r.distance == 0.0);
}

TEST_CASE("registration undoes a planted cyclic shift") {
  std::mt19937_64 rng(7);
  Wect a = random_wect(rng, 10, 25);
  Wect b = shift_wect(a, 5);
  RotationMatch r = register_rotation(a, b);
  CHECK(r.distance == 0.0);
  CHECK(shift_wect(b, r.shift).matrix == a.matrix);
  CHECK(r.shift == 20);
}

TEST_CASE("registration recovers a planted rotation of a complex") {
  std::mt19937_64 rng(8);
  DirectionScheme scheme{16};
  FiltrationGrid grid{32, -1.0, 1.0};
  for (int trial = 0; trial < 5; ++trial) {
    WeightedComplex K = normalize(random_complex(rng)).first;
    int k = std::uniform_int_distribution<int>(1, scheme.n - 1)(rng);
    Wect a = compute_wect(K, scheme, grid);
    Wect b = compute_wect(rotate(K, scheme.angle(k)), scheme, grid);
    RotationMatch r = register_rotation(a, b);
    CHECK(r.distance <= 1e-9);
    CHECK(r.shift == k);
    CHECK(r.angle() == doctest::Approx(scheme.angle(k)).epsilon(1e-12));
  }
}

TEST_CASE("registered distance is shift-invariant and bounded by the plain distance") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Wect a = random_wect(rng), b = random_wect(rng);
    double reg = register_rotation(a, b).distance;
    CHECK(reg <= wect_distance(a, b) + 1e-15);
    int k = std::uniform_int_distribution<int>(0, a.cols() - 1)(rng);
    CHECK(register_rotation(a, shift_wect(b, k)).distance == doctest::Approx(reg).epsilon(1e-9));
    CHECK(register_rotation(shift_wect(a, k), b).distance == doctest::Approx(reg).epsilon(1e-9));
  }
}

TEST_CASE("distance matrix basics") {
  std::mt19937_64 rng(10);
  Wect w = random_wect(rng);
  std::vector<Wect> dup{w, w};
  DistanceMatrix D = distance_matrix(dup, false);
  CHECK(D.size == 2);
  for (double e : D.entries) CHECK(e == 0.0);

  CHECK_THROWS_AS(distance_matrix(std::vector<Wect>{}, false), contract_error);
}

TEST_CASE("registration never increases a matrix entry") {
  std::mt19937_64 rng(11);
  std::vector<Wect> ws;
  for (int i = 0; i < 5; ++i) ws.push_back(random_wect(rng));
  DistanceMatrix plain = distance_matrix(ws, false);
  DistanceMatrix reg = distance_matrix(ws, true);
  CHECK(reg.registered);
  CHECK(reg.shifts.has_value());
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(reg.at(i, j) <= plain.at(i, j) + 1e-15);
      CHECK(std::abs(reg.at(i, j) - reg.at(j, i)) < 1e-12);
    }
    CHECK(reg.at(i, i) == 0.0);
  }
}

TEST_CASE("planted rotation shows up only in the registered matrix") {
  std::mt19937_64 rng(12);
  DirectionScheme scheme{12};
  FiltrationGrid grid{24, -1.0, 1.0};
  WeightedComplex K = normalize(random_complex(rng)).first;
  std::vector<Wect> ws{compute_wect(K, scheme, grid),
                       compute_wect(rotate(K, scheme.angle(4)), scheme, grid),
                       compute_wect(normalize(random_complex(rng)).first, scheme, grid)};
  DistanceMatrix plain = distance_matrix(ws, false);
  DistanceMatrix reg = distance_matrix(ws, true);
  CHECK(reg.at(0, 1) <= 1e-9);
  CHECK(plain.at(0, 1) > 1e-6);
  CHECK(reg.shift_at(0, 1) == 4);
}

TEST_CASE("distance matrix is independent of the worker count") {
  std::mt19937_64 rng(13);
  std::vector<Wect> ws;
  for (int i = 0; i < 7; ++i) ws.push_back(random_wect(rng));
  DistanceMatrix serial = distance_matrix(ws, true, 1);
  DistanceMatrix parallel = distance_matrix(ws, true, 4);
  CHECK(serial.entries == parallel.entries);
  CHECK(*serial.shifts == *parallel.shifts);
}

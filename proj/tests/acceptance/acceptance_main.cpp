// End-to-end acceptance suite. Runs one numbered check per pipeline guarantee
// and prints a PASS/FAIL line for each; exits nonzero if any fail.
// argv[1]: directory containing the bundled MNIST IDX files.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../test_helpers.hpp"
#include "wect/analysis.hpp"
#include "wect/complex.hpp"
#include "wect/ingest.hpp"
#include "wect/metric.hpp"
#include "wect/parallel.hpp"
#include "wect/transform.hpp"

using namespace wect;
using wect::testing::materialize_sublevel;
using wect::testing::random_complex;
using wect::testing::random_image;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name) : number_(number), name_(std::move(name)) {
    start_ = std::chrono::steady_clock::now();
  }

  void check(bool ok, const std::string& detail = "") {
    if (!ok && note_.empty()) note_ = detail.empty() ? "check failed" : detail;
    ok_ = ok_ && ok;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void finish(double time_limit_s = 0.0) {
    double secs = elapsed();
    if (time_limit_s > 0.0 && secs > time_limit_s) {
      ok_ = false;
      note_ = "runtime " + std::to_string(secs) + "s exceeds " + std::to_string(time_limit_s) + "s";
    }
    std::printf("%s  %d. %s (%.1fs)%s%s\n", ok_ ? "PASS" : "FAIL", number_, name_.c_str(), secs,
                note_.empty() ? "" : " -- ", note_.c_str());
    std::fflush(stdout);
    if (!ok_) ++failures;
  }

 private:
  int number_;
  std::string name_;
  bool ok_ = true;
  std::string note_;
  std::chrono::steady_clock::time_point start_;
};

constexpr int kDirections = 25;
constexpr int kSamples = 50;
constexpr int kWindow = 10;  // 0.2 * 50
const SmoothingSpec kSmoothing{kWindow, kWindow / 3.0};
const DirectionScheme kScheme{kDirections};
const FiltrationGrid kGrid{kSamples, -1.0, 1.0};

LabeledSet load_mnist(const std::string& dir) {
  LabeledSet set;
  set.images = read_idx_images(read_file(dir + "/train-images-idx3-ubyte"));
  set.labels = read_idx_labels(read_file(dir + "/train-labels-idx1-ubyte"));
  return set;
}

Wect smoothed_wect(const WeightedComplex& K, bool unit_weights = false) {
  WeightedComplex N = normalize(K).first;
  Wect w = unit_weights ? compute_ect(N, kScheme, kGrid) : compute_wect(N, kScheme, kGrid);
  return smooth(w, kSmoothing);
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, long long> joint;
  std::map<int, long long> ca, cb;
  for (size_t i = 0; i < a.size(); ++i) {
    ++joint[{a[i], b[i]}];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  auto choose2 = [](long long n) { return n * (n - 1) / 2.0; };
  double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [k, n] : joint) sum_joint += choose2(n);
  for (const auto& [k, n] : ca) sum_a += choose2(n);
  for (const auto& [k, n] : cb) sum_b += choose2(n);
  double total = choose2(static_cast<long long>(a.size()));
  double expected = sum_a * sum_b / total;
  double max_index = 0.5 * (sum_a + sum_b);
  return (sum_joint - expected) / (max_index - expected);
}

void criterion_1_oracle() {
  Criterion c(1, "weighted Euler characteristic equals the superlevel-sum oracle");
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    WeightedComplex K = random_complex(rng, 8, 8, 9);
    c.check(static_cast<double>(superlevel_sum_oracle(K)) == weighted_euler_characteristic(K),
            "oracle mismatch at trial " + std::to_string(trial));
  }
  c.finish(5.0);
}

void criterion_2_ect_degeneration() {
  Criterion c(2, "unit-weight WECT equals the ECT bit-exactly");
  std::mt19937_64 rng(1002);
  FiltrationGrid grid{40, -12.0, 12.0};
  DirectionScheme scheme{16};
  for (int trial = 0; trial < 50; ++trial) {
    WeightedComplex K = random_complex(rng, 7, 7, 9);
    c.check(compute_ect(K, scheme, grid).matrix == compute_wect(with_unit_weights(K), scheme, grid).matrix,
            "mismatch at trial " + std::to_string(trial));
  }
  c.finish();
}

void criterion_3_block_topology() {
  Criterion c(3, "pixel-block complexes have the closed-form counts and Euler characteristics");
  {
    int a = 4, b = 6;
    WeightedComplex K = image_to_weighted_complex(make_image(a, b, std::vector<int>(a * b, 7)));
    long long V = static_cast<long long>(a + 1) * (b + 1) + static_cast<long long>(a) * b;
    c.check(static_cast<long long>(K.vertices.size()) == V, "vertex count");
    c.check(static_cast<long long>(K.triangles.size()) == 4LL * a * b, "triangle count");
    c.check(static_cast<long long>(K.edges.size()) == V + 4LL * a * b - 1, "edge count");
    c.check(euler_characteristic(K) == 1, "chi of solid block");
  }
  {
    ImageGrid img = make_image(5, 5, std::vector<int>(25, 3));
    img.at(2, 2) = 0;
    c.check(euler_characteristic(image_to_weighted_complex(img)) == 0, "chi of punctured block");
  }
  c.finish();
}

void criterion_4_sweep() {
  Criterion c(4, "curve sweep equals explicitly materialized sublevel complexes");
  std::mt19937_64 rng(1004);
  FiltrationGrid grid{30, -11.3, 11.7};
  for (int trial = 0; trial < 50; ++trial) {
    WeightedComplex K = random_complex(rng, 8, 8, 9);
    double theta = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
    Vec2 v{std::cos(theta), std::sin(theta)};
    int j = std::uniform_int_distribution<int>(0, grid.m - 1)(rng);
    auto curve = weighted_euler_curve(K, v, grid);
    c.check(curve[j] == weighted_euler_characteristic(materialize_sublevel(K, v, grid.value(j))),
            "mismatch at trial " + std::to_string(trial));
  }
  c.finish();
}

void criterion_5_registration(const LabeledSet& mnist) {
  Criterion c(5, "rotation registration recovers planted shifts on MNIST complexes");
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(mnist.images.size()) - 1);
  std::uniform_int_distribution<int> shift(1, kDirections - 1);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedComplex N = normalize(image_to_weighted_complex(mnist.images[pick(rng)])).first;
    int k = shift(rng);
    Wect a = smooth(compute_wect(N, kScheme, kGrid), kSmoothing);
    Wect b = smooth(compute_wect(rotate(N, kScheme.angle(k)), kScheme, kGrid), kSmoothing);
    RotationMatch r = register_rotation(a, b);
    c.check(r.distance <= 1e-9, "registered distance " + std::to_string(r.distance));
    c.check(r.shift == k,
            "recovered shift " + std::to_string(r.shift) + " != planted " + std::to_string(k));
  }
  c.finish(30.0);
}

void criterion_6_classification(const LabeledSet& mnist) {
  Criterion c(6, "cross-validated SVM accuracy bands for raw / ECT / WECT features");
  const double lambda = 1e-4;
  const int epochs = 50, folds = 10;
  const uint64_t seed = 1;

  LabeledSet set = subsample_balanced(mnist, 100, seed);
  int samples = static_cast<int>(set.images.size());
  c.check(samples == 1000, "expected 1000 balanced images");

  auto run_cv = [&](const std::vector<double>& X, int features) {
    return cross_validate(X, samples, features, set.labels, folds, lambda, epochs, seed, 0);
  };

  std::vector<double> raw;
  raw.reserve(static_cast<size_t>(samples) * 784);
  for (const auto& img : set.images)
    for (int p : img.pixels) raw.push_back(p / 255.0);
  CvReport raw_report = run_cv(raw, 784);

  std::vector<std::vector<double>> wect_rows(samples), ect_rows(samples);
  parallel_for(static_cast<size_t>(samples), 0, [&](size_t i) {
    WeightedComplex K = image_to_weighted_complex(set.images[i]);
    wect_rows[i] = wect_features(smoothed_wect(K, false));
    ect_rows[i] = wect_features(smoothed_wect(K, true));
  });
  int features = kSamples * kDirections;
  std::vector<double> wect_X, ect_X;
  wect_X.reserve(static_cast<size_t>(samples) * features);
  ect_X.reserve(static_cast<size_t>(samples) * features);
  for (int i = 0; i < samples; ++i) {
    wect_X.insert(wect_X.end(), wect_rows[i].begin(), wect_rows[i].end());
    ect_X.insert(ect_X.end(), ect_rows[i].begin(), ect_rows[i].end());
  }
  CvReport wect_report = run_cv(wect_X, features);
  CvReport ect_report = run_cv(ect_X, features);

  std::printf("      raw  %.2f%% +- %.2f%%\n", 100 * raw_report.mean, 100 * raw_report.stddev);
  std::printf("      ect  %.2f%% +- %.2f%%\n", 100 * ect_report.mean, 100 * ect_report.stddev);
  std::printf("      wect %.2f%% +- %.2f%%\n", 100 * wect_report.mean, 100 * wect_report.stddev);

  c.check(wect_report.mean >= 0.90 && wect_report.mean <= 0.98, "wect accuracy out of [90, 98]%");
  c.check(ect_report.mean >= 0.85 && ect_report.mean <= 0.94, "ect accuracy out of [85, 94]%");
  c.check(raw_report.mean >= 0.82 && raw_report.mean <= 0.92, "raw accuracy out of [82, 92]%");
  c.check(wect_report.mean >= ect_report.mean && ect_report.mean >= raw_report.mean,
          "ordering WECT >= ECT >= raw not reproduced");
  c.finish(900.0);
}

void criterion_7_distinctness(const LabeledSet& mnist) {
  Criterion c(7, "pairwise smoothed-WECT distances among 100 distinct digits are positive");
  LabeledSet set = subsample_balanced(mnist, 10, 7);
  std::vector<Wect> ws;
  ws.resize(set.images.size());
  parallel_for(set.images.size(), 0, [&](size_t i) {
    ws[i] = smoothed_wect(image_to_weighted_complex(set.images[i]));
  });
  DistanceMatrix D = distance_matrix(ws, false, 0);
  for (int i = 0; i < D.size; ++i) {
    for (int j = i + 1; j < D.size; ++j) {
      c.check(D.at(i, j) > 0.0,
              "zero distance between digits " + std::to_string(i) + " and " + std::to_string(j));
    }
  }
  c.finish();
}

// Synthetic weighted-complex templates for the clustering check: a centrally
// peaked blob, a blob with a bright ring, and a two-lobe shape.
ImageGrid template_image(int kind, std::mt19937_64& rng) {
  const int size = 16;
  std::uniform_real_distribution<double> jitter(-0.8, 0.8);
  std::uniform_real_distribution<double> rscale(0.85, 1.15);
  ImageGrid img = make_image(size, size, std::vector<int>(size * size, 0));
  double cx = 7.5 + jitter(rng), cy = 7.5 + jitter(rng);

  auto put = [&](int r, int cidx, double v) {
    if (r >= 0 && r < size && cidx >= 0 && cidx < size) {
      img.at(r, cidx) = std::max(img.at(r, cidx), static_cast<int>(std::lround(v)));
    }
  };

  if (kind == 0 || kind == 1) {
    double radius = 5.5 * rscale(rng);
    for (int r = 0; r < size; ++r) {
      for (int cidx = 0; cidx < size; ++cidx) {
        double d = std::hypot(r - cy, cidx - cx);
        if (d > radius) continue;
        double v = kind == 0 ? 9.0 * (1.0 - d / radius)              // peak at center
                             : 9.0 * (1.0 - std::abs(d - 3.5) / 4.0);  // bright ring
        put(r, cidx, std::max(1.0, v));
      }
    }
  } else {
    double radius = 3.0 * rscale(rng);
    for (double sign : {-1.0, 1.0}) {
      double lx = cx + sign * 4.0, ly = cy;
      for (int r = 0; r < size; ++r) {
        for (int cidx = 0; cidx < size; ++cidx) {
          double d = std::hypot(r - ly, cidx - lx);
          if (d <= radius) put(r, cidx, std::max(1.0, 9.0 * (1.0 - d / radius)));
        }
      }
    }
  }
  return img;
}

void criterion_8_clustering() {
  Criterion c(8, "Ward clustering recovers three synthetic generator templates");
  double total_ari = 0.0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<Wect> ws;
    std::vector<int> truth;
    for (int kind = 0; kind < 3; ++kind) {
      for (int i = 0; i < 10; ++i) {
        ws.push_back(smoothed_wect(image_to_weighted_complex(template_image(kind, rng))));
        truth.push_back(kind);
      }
    }
    DistanceMatrix D = distance_matrix(ws, false, 0);
    std::vector<int> labels = cut(ward_cluster(D), 3);
    total_ari += adjusted_rand_index(truth, labels);
  }
  double mean_ari = total_ari / 5.0;
  std::printf("      mean adjusted Rand index %.3f\n", mean_ari);
  c.check(mean_ari >= 0.8, "mean ARI " + std::to_string(mean_ari) + " < 0.8");
  c.finish(120.0);
}

void criterion_9_parsers() {
  Criterion c(9, "parser round trips and malformed-input rejection");
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<int> px(0, 255);
  std::uniform_int_distribution<int> dim(1, 10);
  for (int trial = 0; trial < 500; ++trial) {
    int rows = dim(rng), cols = dim(rng);
    std::vector<int> pixels(static_cast<size_t>(rows) * cols);
    for (int& p : pixels) p = px(rng);
    ImageGrid g = make_image(rows, cols, pixels);
    ImageGrid back = read_pgm(write_pgm(g));
    c.check(back.pixels == g.pixels && back.rows == g.rows && back.cols == g.cols,
            "pgm round trip at trial " + std::to_string(trial));
  }

  auto expect_parse_error = [&](auto&& fn, const char* what) {
    try {
      fn();
      c.check(false, std::string("no error for ") + what);
    } catch (const parse_error&) {
      c.check(true);
    } catch (...) {
      c.check(false, std::string("wrong exception for ") + what);
    }
  };

  std::vector<uint8_t> idx_short{0, 0, 8, 3, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 2, 1, 2, 3};
  expect_parse_error([&] { read_idx_images(idx_short); }, "truncated idx payload");
  std::vector<uint8_t> idx_wrong_magic{0, 0, 8, 1, 0, 0, 0, 0};
  expect_parse_error([&] { read_idx_images(idx_wrong_magic); }, "label magic in image reader");
  std::vector<uint8_t> idx_trailing{0, 0, 8, 1, 0, 0, 0, 1, 5, 6};
  expect_parse_error([&] { read_idx_labels(idx_trailing); }, "trailing idx bytes");

  auto bytes = [](const std::string& s) { return std::vector<uint8_t>(s.begin(), s.end()); };
  expect_parse_error([&] { read_pgm(bytes("P7\n1 1\n255\n0")); }, "bad pgm magic");
  expect_parse_error([&] { read_pgm(bytes("P2\n1 1\n999\n0\n")); }, "pgm maxval too large");
  expect_parse_error([&] { read_pgm(bytes("P5\n2 2\n255\nX")); }, "truncated pgm raster");
  expect_parse_error([&] { read_pgm(bytes("P2\n2 1\n255\n7\n")); }, "short ascii raster");
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  std::string mnist_dir = argc > 1 ? argv[1] : "data/mnist";
  LabeledSet mnist;
  try {
    mnist = load_mnist(mnist_dir);
  } catch (const std::exception& e) {
    std::printf("FAIL  0. load MNIST data from %s -- %s\n", mnist_dir.c_str(), e.what());
    return 1;
  }

  criterion_1_oracle();
  criterion_2_ect_degeneration();
  criterion_3_block_topology();
  criterion_4_sweep();
  criterion_5_registration(mnist);
  criterion_6_classification(mnist);
  criterion_7_distinctness(mnist);
  criterion_8_clustering();
  criterion_9_parsers();

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

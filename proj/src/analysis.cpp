#include "wect/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "wect/parallel.hpp"

namespace wect {

Dendrogram ward_cluster(const DistanceMatrix& D) {
  int N = D.size;
  if (N < 2) throw contract_error("ward_cluster: need at least 2 points");

  // Lance-Williams on squared distances; active clusters tracked in place.
  std::vector<double> d2(static_cast<size_t>(N) * N, 0.0);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) d2[static_cast<size_t>(i) * N + j] = D.at(i, j) * D.at(i, j);

  std::vector<int> id(N), size(N, 1);
  std::iota(id.begin(), id.end(), 0);
  std::vector<bool> active(N, true);

  Dendrogram dend;
  dend.leaves = N;
  dend.merges.reserve(N - 1);

  for (int step = 0; step < N - 1; ++step) {
    int bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
      if (!active[i]) continue;
      for (int j = i + 1; j < N; ++j) {
        if (!active[j]) continue;
        double v = d2[static_cast<size_t>(i) * N + j];
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }

    int na = size[bi], nb = size[bj];
    dend.merges.push_back({std::min(id[bi], id[bj]), std::max(id[bi], id[bj]),
                           std::sqrt(best), na + nb});

    // merged cluster lives in slot bi
    for (int k = 0; k < N; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      double dik = d2[static_cast<size_t>(bi) * N + k];
      double djk = d2[static_cast<size_t>(bj) * N + k];
      double nk = size[k];
      double updated = ((na + nk) * dik + (nb + nk) * djk - nk * best) / (na + nb + nk);
      d2[static_cast<size_t>(bi) * N + k] = updated;
      d2[static_cast<size_t>(k) * N + bi] = updated;
    }
    active[bj] = false;
    size[bi] = na + nb;
    id[bi] = N + step;
  }
  return dend;
}

std::vector<int> cut(const Dendrogram& dend, int k) {
  int N = dend.leaves;
  if (k < 1 || k > N) throw contract_error("cut: k out of range");

  // apply the first N-k merges (lowest heights) via union-find
  std::vector<int> parent(2 * N - 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int t = 0; t < N - k; ++t) {
    const Merge& m = dend.merges[t];
    int root = N + t;
    parent[find(m.cluster_a)] = root;
    parent[find(m.cluster_b)] = root;
  }

  std::vector<int> labels(N);
  std::vector<int> canonical(2 * N - 1, -1);
  int next = 0;
  for (int i = 0; i < N; ++i) {
    int r = find(i);
    if (canonical[r] < 0) canonical[r] = next++;
    labels[i] = canonical[r];
  }
  return labels;
}

namespace {

struct Standardizer {
  std::vector<double> mean, scale;

  static Standardizer fit(const std::vector<double>& X, const std::vector<int>& rows, int features) {
    Standardizer s;
    s.mean.assign(features, 0.0);
    s.scale.assign(features, 1.0);
    for (int r : rows)
      for (int f = 0; f < features; ++f) s.mean[f] += X[static_cast<size_t>(r) * features + f];
    for (double& m : s.mean) m /= static_cast<double>(rows.size());
    std::vector<double> var(features, 0.0);
    for (int r : rows)
      for (int f = 0; f < features; ++f) {
        double d = X[static_cast<size_t>(r) * features + f] - s.mean[f];
        var[f] += d * d;
      }
    for (int f = 0; f < features; ++f) {
      double sd = std::sqrt(var[f] / static_cast<double>(rows.size()));
      s.scale[f] = sd > 0.0 ? sd : 1.0;
    }
    return s;
  }
};

}  // namespace

SvmModel train_svm(const std::vector<double>& X, int samples, int features, const std::vector<int>& y,
                   double lambda, int epochs, uint64_t seed) {
  if (samples < 2 || static_cast<int>(y.size()) != samples ||
      X.size() != static_cast<size_t>(samples) * features) {
    throw contract_error("train_svm: shape mismatch");
  }
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw contract_error("train_svm: need at least 2 classes");

  std::vector<int> all(samples);
  std::iota(all.begin(), all.end(), 0);
  Standardizer st = Standardizer::fit(X, all, features);

  std::vector<double> Z(X.size());
  for (int r = 0; r < samples; ++r)
    for (int f = 0; f < features; ++f) {
      size_t idx = static_cast<size_t>(r) * features + f;
      Z[idx] = (X[idx] - st.mean[f]) / st.scale[f];
    }

  SvmModel model;
  model.classes = classes;
  model.feature_mean = st.mean;
  model.feature_scale = st.scale;
  model.lambda = lambda;
  model.epochs = epochs;
  model.seed = seed;
  model.weights.assign(classes.size(), std::vector<double>(features, 0.0));
  model.bias.assign(classes.size(), 0.0);

  for (size_t c = 0; c < classes.size(); ++c) {
    // Pegasos schedule, one independent stream per class so class order and
    // parallelization cannot change results.
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (c + 1));
    std::vector<double>& w = model.weights[c];
    double& b = model.bias[c];
    std::vector<int> order(samples);
    std::iota(order.begin(), order.end(), 0);

    // eta_t = 1/(lambda*(t + t0)). The warm-start offset t0 caps the first
    // step at a typical weight scale instead of 1/lambda, which otherwise
    // swamps the run with enormous early updates; the bias is left
    // unregularized so it can carry the one-vs-rest class prior.
    const double typw = std::sqrt(1.0 / std::sqrt(lambda));
    const double t0 = 1.0 / (typw * lambda);

    long long t = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (int i : order) {
        ++t;
        double eta = 1.0 / (lambda * (t0 + static_cast<double>(t)));
        double yi = (y[i] == classes[c]) ? 1.0 : -1.0;
        const double* xi = &Z[static_cast<size_t>(i) * features];
        double margin = b;
        for (int f = 0; f < features; ++f) margin += w[f] * xi[f];
        double shrink = 1.0 - eta * lambda;
        if (yi * margin < 1.0) {
          for (int f = 0; f < features; ++f) w[f] = shrink * w[f] + eta * yi * xi[f];
          b += eta * yi;
        } else {
          for (int f = 0; f < features; ++f) w[f] *= shrink;
        }
      }
    }
  }
  return model;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  int features = static_cast<int>(model.feature_mean.size());
  if (static_cast<int>(x.size()) != features) throw contract_error("svm_predict: feature length mismatch");
  double best = -std::numeric_limits<double>::infinity();
  int label = model.classes.front();
  for (size_t c = 0; c < model.classes.size(); ++c) {
    double score = model.bias[c];
    for (int f = 0; f < features; ++f) {
      score += model.weights[c][f] * (x[f] - model.feature_mean[f]) / model.feature_scale[f];
    }
    if (score > best) {
      best = score;
      label = model.classes[c];
    }
  }
  return label;
}

CvReport cross_validate(const std::vector<double>& X, int samples, int features, const std::vector<int>& y,
                        int folds, double lambda, int epochs, uint64_t seed, int threads) {
  if (folds < 2) throw contract_error("cross_validate: folds >= 2 required");

  // stratified assignment: shuffle each class with the seed, deal round-robin
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::vector<int> fold_of(samples, -1);
  for (size_t c = 0; c < classes.size(); ++c) {
    std::vector<int> members;
    for (int i = 0; i < samples; ++i)
      if (y[i] == classes[c]) members.push_back(i);
    if (static_cast<int>(members.size()) < folds) {
      throw contract_error("cross_validate: class smaller than fold count");
    }
    std::mt19937_64 rng(seed + 0x517cc1b727220a95ULL * (c + 1));
    std::shuffle(members.begin(), members.end(), rng);
    for (size_t i = 0; i < members.size(); ++i) fold_of[members[i]] = static_cast<int>(i % folds);
  }

  CvReport report;
  report.per_fold.assign(folds, 0.0);
  parallel_for(static_cast<size_t>(folds), threads, [&](size_t fold) {
    std::vector<double> Xtr;
    std::vector<int> ytr, test_rows;
    for (int i = 0; i < samples; ++i) {
      if (fold_of[i] == static_cast<int>(fold)) {
        test_rows.push_back(i);
      } else {
        Xtr.insert(Xtr.end(), X.begin() + static_cast<size_t>(i) * features,
                   X.begin() + static_cast<size_t>(i + 1) * features);
        ytr.push_back(y[i]);
      }
    }
    SvmModel model = train_svm(Xtr, static_cast<int>(ytr.size()), features, ytr, lambda, epochs,
                               seed + 0x2545f4914f6cdd1dULL * (fold + 1));
    int correct = 0;
    for (int i : test_rows) {
      std::span<const double> xi(&X[static_cast<size_t>(i) * features], features);
      if (svm_predict(model, xi) == y[i]) ++correct;
    }
    report.per_fold[fold] = static_cast<double>(correct) / static_cast<double>(test_rows.size());
  });

  double mean = 0.0;
  for (double a : report.per_fold) mean += a;
  mean /= folds;
  double var = 0.0;
  for (double a : report.per_fold) var += (a - mean) * (a - mean);
  report.mean = mean;
  report.stddev = std::sqrt(var / (folds - 1));
  return report;
}

std::vector<double> wect_features(const Wect& w) {
  double dr = w.grid.step();
  double dtheta = 2.0 * std::numbers::pi / w.scheme.n;
  double s = std::sqrt(dr * dtheta);
  std::vector<double> feats(w.matrix.size());
  for (size_t i = 0; i < w.matrix.size(); ++i) feats[i] = w.matrix[i] * s;
  return feats;
}

}  // namespace wect

#pragma once

#include <cstdint>
#include <vector>

#include "wect/metric.hpp"

namespace wect {

// Agglomerative merge tree, scipy-style ids: leaves are 0..N-1, the t-th merge
// creates cluster N+t.
struct Merge {
  int cluster_a = 0;
  int cluster_b = 0;
  double height = 0.0;
  int size = 0;
};

struct Dendrogram {
  int leaves = 0;
  std::vector<Merge> merges;
};

// Ward linkage via the Lance-Williams recurrence on squared distances,
// ties broken by the smallest cluster-id pair.
Dendrogram ward_cluster(const DistanceMatrix& D);

// Partition into k clusters by undoing the k-1 highest merges; labels are
// canonicalized by first occurrence.
std::vector<int> cut(const Dendrogram& dend, int k);

// One-vs-rest linear SVM trained by Pegasos-style stochastic subgradient
// descent (eta_t = 1/(lambda*t)), deterministic given the seed. Features are
// standardized per column with training statistics stored in the model.
struct SvmModel {
  std::vector<int> classes;
  std::vector<std::vector<double>> weights;  // one vector per class
  std::vector<double> bias;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  double lambda = 0.0;
  int epochs = 0;
  uint64_t seed = 0;
};

// X is row-major, samples x features.
SvmModel train_svm(const std::vector<double>& X, int samples, int features, const std::vector<int>& y,
                   double lambda, int epochs, uint64_t seed);
int svm_predict(const SvmModel& model, std::span<const double> x);

struct CvReport {
  double mean = 0.0;    // mean accuracy over folds, in [0, 1]
  double stddev = 0.0;  // sample standard deviation over folds
  std::vector<double> per_fold;
};

// Stratified k-fold cross-validation; fold assignment is a seed-keyed shuffle
// within each class, per-fold standardization uses training data only.
CvReport cross_validate(const std::vector<double>& X, int samples, int features, const std::vector<int>& y,
                        int folds, double lambda, int epochs, uint64_t seed, int threads = 1);

// Row-major flatten of the Wect matrix scaled by sqrt(dr * dtheta), so the
// Euclidean feature-space geometry matches wect_distance.
std::vector<double> wect_features(const Wect& w);

}  // namespace wect

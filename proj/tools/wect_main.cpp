// wect: segmented grayscale images -> weighted simplicial complexes -> WECT
// matrices, with distances, rotation registration, Ward clustering and a
// linear-SVM classification pipeline. Exit codes: 0 success, 1 computation
// contract violation, 2 I/O or parse failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wect/analysis.hpp"
#include "wect/complex.hpp"
#include "wect/ingest.hpp"
#include "wect/metric.hpp"
#include "wect/serialize.hpp"
#include "wect/transform.hpp"

namespace {

using nlohmann::json;

struct PipelineConfig {
  int directions = 25;
  int samples = 50;
  double lo = -1.0;
  double hi = 1.0;
  double window_fraction = 0.2;  // smoothing window = round(fraction * samples), 0 disables
  bool do_register = false;
  bool do_normalize = true;
  bool unit_weights = false;
  uint64_t seed = 0;
  int threads = 1;

  wect::DirectionScheme scheme() const { return {directions}; }
  wect::FiltrationGrid grid() const { return {samples, lo, hi}; }
  wect::SmoothingSpec smoothing() const {
    int window = static_cast<int>(std::lround(window_fraction * samples));
    return {window, window / 3.0};
  }

  json to_json() const {
    return {{"directions", directions}, {"samples", samples},       {"lo", lo},
            {"hi", hi},                 {"window_fraction", window_fraction},
            {"register", do_register},  {"normalize", do_normalize}, {"unit_weights", unit_weights},
            {"seed", seed},             {"threads", threads}};
  }
};

void add_config_flags(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("-n,--directions", cfg.directions, "Direction count on the circle")
      ->check(CLI::Range(2, 1 << 16));
  cmd->add_option("-m,--samples", cfg.samples, "Filtration grid sample count")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--lo", cfg.lo, "Filtration grid lower bound");
  cmd->add_option("--hi", cfg.hi, "Filtration grid upper bound");
  cmd->add_option("--window-fraction", cfg.window_fraction,
                  "Gaussian smoothing window as a fraction of the sample count (0 disables)")
      ->check(CLI::Range(0.0, 0.999));
  cmd->add_flag("--no-normalize", [&cfg](int64_t) { cfg.do_normalize = false; },
                "Skip geometric and weight normalization");
  cmd->add_flag("--no-smooth", [&cfg](int64_t) { cfg.window_fraction = 0.0; }, "Skip curve smoothing");
  cmd->add_option("--seed", cfg.seed, "Seed for all randomized steps");
  cmd->add_option("--threads", cfg.threads, "Worker thread cap (0 = all cores)")->check(CLI::Range(0, 1024));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wect::parse_error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw wect::parse_error("write failed: " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json load_json(const std::string& path) {
  auto bytes = wect::read_file(path);
  json j = json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded()) throw wect::parse_error("invalid json: " + path);
  return j;
}

bool has_extension(const std::string& path, const char* ext) {
  return std::filesystem::path(path).extension() == ext;
}

wect::ImageGrid load_pgm(const std::string& path) {
  auto bytes = wect::read_file(path);
  try {
    return wect::read_pgm(bytes);
  } catch (const wect::parse_error& e) {
    throw wect::parse_error(path + ": " + e.what());
  }
}

wect::WeightedComplex load_complex(const std::string& path) {
  if (has_extension(path, ".json")) return wect::complex_from_json(load_json(path));
  return wect::image_to_weighted_complex(load_pgm(path));
}

wect::Wect pipeline_wect(const wect::WeightedComplex& K, const PipelineConfig& cfg) {
  if (K.empty()) throw wect::contract_error("empty complex");
  const wect::WeightedComplex* src = &K;
  wect::WeightedComplex normalized;
  if (cfg.do_normalize) {
    normalized = wect::normalize(K).first;
    src = &normalized;
  }
  wect::Wect w = cfg.unit_weights ? wect::compute_ect(*src, cfg.scheme(), cfg.grid(), cfg.threads)
                                  : wect::compute_wect(*src, cfg.scheme(), cfg.grid(), cfg.threads);
  wect::SmoothingSpec spec = cfg.smoothing();
  if (spec.window > 0) w = wect::smooth(w, spec);
  return w;
}

std::vector<wect::Wect> load_wects(const std::vector<std::string>& paths) {
  std::vector<wect::Wect> ws;
  ws.reserve(paths.size());
  for (const auto& p : paths) ws.push_back(wect::wect_from_json(load_json(p)));
  return ws;
}

struct MnistPaths {
  std::string images;
  std::string labels;
};

wect::LabeledSet load_mnist(const MnistPaths& paths) {
  wect::LabeledSet set;
  set.images = wect::read_idx_images(wect::read_file(paths.images));
  set.labels = wect::read_idx_labels(wect::read_file(paths.labels));
  if (set.images.size() != set.labels.size()) {
    throw wect::contract_error("mnist: image and label counts differ");
  }
  return set;
}

int run(int argc, char** argv) {
  CLI::App app{"Weighted Euler Curve Transform toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read default option values from a TOML/INI file");

  PipelineConfig cfg;

  // convert
  std::string in_image, in_mask, out_path;
  auto* convert = app.add_subcommand("convert", "PGM image (+ optional mask) -> weighted complex JSON");
  convert->add_option("image", in_image, "Input PGM image")->required();
  convert->add_option("--mask", in_mask, "Binary PGM mask (pixel selected iff value>0 and mask>0)");
  convert->add_option("-o,--out", out_path, "Output complex JSON path")->required();

  // wect
  std::string wect_input, wect_csv;
  auto* wect_cmd = app.add_subcommand("wect", "Image or complex JSON -> (smoothed) WECT");
  wect_cmd->add_option("input", wect_input, "PGM image or complex JSON")->required();
  wect_cmd->add_option("-o,--out", out_path, "Output WECT JSON path")->required();
  wect_cmd->add_option("--csv", wect_csv, "Also export the matrix as CSV");
  wect_cmd->add_flag("--unit-weights", cfg.unit_weights, "Compute the unweighted ECT instead");
  add_config_flags(wect_cmd, cfg);

  // distmat
  std::vector<std::string> wect_paths;
  std::string distmat_json;
  auto* distmat = app.add_subcommand("distmat", "Pairwise L2 distances between WECT files");
  distmat->add_option("wects", wect_paths, "WECT JSON files")->required()->expected(-1);
  distmat->add_option("-o,--out", out_path, "Output distance matrix CSV")->required();
  distmat->add_option("--json", distmat_json, "Also write JSON (includes shifts when registered)");
  distmat->add_flag("--register", cfg.do_register, "Minimize each pair over cyclic rotations");
  distmat->add_option("--threads", cfg.threads, "Worker thread cap (0 = all cores)");

  // cluster
  std::string dist_path, labels_path;
  int cut_k = 1;
  auto* cluster = app.add_subcommand("cluster", "Ward-linkage clustering of a distance matrix CSV");
  cluster->add_option("distmat", dist_path, "Distance matrix CSV")->required();
  cluster->add_option("-k", cut_k, "Cluster count for the flat cut")->required();
  cluster->add_option("-o,--out", out_path, "Output dendrogram JSON")->required();
  cluster->add_option("--labels", labels_path, "Output flat labels CSV");

  // classify
  MnistPaths mnist;
  std::string representation = "wect";
  int per_class = 100, folds = 10, epochs = 50;
  double lambda = 1e-4;
  auto* classify = app.add_subcommand("classify", "Cross-validated linear-SVM digit classification");
  classify->add_option("--images", mnist.images, "MNIST IDX image file")->required();
  classify->add_option("--labels", mnist.labels, "MNIST IDX label file")->required();
  classify->add_option("--representation", representation, "Feature representation")
      ->check(CLI::IsMember({"raw", "ect", "wect"}));
  classify->add_option("--per-class", per_class, "Balanced subsample size per digit");
  classify->add_option("--folds", folds, "Cross-validation fold count")->check(CLI::Range(2, 100));
  classify->add_option("--lambda", lambda, "SVM regularization strength");
  classify->add_option("--epochs", epochs, "SVM training epochs");
  classify->add_option("-o,--out", out_path, "Output report JSON")->required();
  add_config_flags(classify, cfg);

  // register
  std::string reg_a, reg_b;
  auto* reg = app.add_subcommand("register", "Recover the rotation aligning two images/complexes");
  reg->add_option("a", reg_a, "Reference image or complex JSON")->required();
  reg->add_option("b", reg_b, "Image or complex JSON to align")->required();
  reg->add_option("-o,--out", out_path, "Output JSON path")->required();
  add_config_flags(reg, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // map CLI11's exit codes onto the documented contract: 0 for --help,
    // 1 for any usage error
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (convert->parsed()) {
    wect::ImageGrid img = load_pgm(in_image);
    wect::WeightedComplex K;
    if (!in_mask.empty()) {
      wect::ImageGrid mask = load_pgm(in_mask);
      K = wect::image_to_weighted_complex(img, &mask);
    } else {
      K = wect::image_to_weighted_complex(img);
    }
    if (K.empty()) std::cerr << "warning: no selected pixels, writing the empty complex\n";
    write_json(out_path, wect::complex_to_json(K));
  } else if (wect_cmd->parsed()) {
    wect::Wect w = pipeline_wect(load_complex(wect_input), cfg);
    json j = wect::wect_to_json(w);
    j["config"] = cfg.to_json();
    write_json(out_path, j);
    if (!wect_csv.empty()) write_text(wect_csv, wect::wect_to_csv(w));
  } else if (distmat->parsed()) {
    auto ws = load_wects(wect_paths);
    wect::DistanceMatrix D = wect::distance_matrix(ws, cfg.do_register, cfg.threads);
    write_text(out_path, wect::distance_matrix_to_csv(D));
    if (!distmat_json.empty()) {
      json j = wect::distance_matrix_to_json(D);
      j["config"] = cfg.to_json();
      write_json(distmat_json, j);
    }
  } else if (cluster->parsed()) {
    auto bytes = wect::read_file(dist_path);
    wect::DistanceMatrix D = wect::distance_matrix_from_csv(std::string(bytes.begin(), bytes.end()));
    wect::Dendrogram dend = wect::ward_cluster(D);
    json j = wect::dendrogram_to_json(dend);
    j["config"] = cfg.to_json();
    write_json(out_path, j);
    if (!labels_path.empty()) write_text(labels_path, wect::labels_to_csv(wect::cut(dend, cut_k)));
  } else if (classify->parsed()) {
    wect::LabeledSet set = wect::subsample_balanced(load_mnist(mnist), per_class, cfg.seed);
    int samples = static_cast<int>(set.images.size());

    std::vector<double> X;
    int features = 0;
    if (representation == "raw") {
      features = set.images.front().rows * set.images.front().cols;
      X.reserve(static_cast<size_t>(samples) * features);
      for (const auto& img : set.images)
        for (int p : img.pixels) X.push_back(p / 255.0);
    } else {
      cfg.unit_weights = (representation == "ect");
      features = cfg.samples * cfg.directions;
      X.reserve(static_cast<size_t>(samples) * features);
      for (const auto& img : set.images) {
        wect::Wect w = pipeline_wect(wect::image_to_weighted_complex(img), cfg);
        auto feats = wect::wect_features(w);
        X.insert(X.end(), feats.begin(), feats.end());
      }
    }
    wect::CvReport report =
        wect::cross_validate(X, samples, features, set.labels, folds, lambda, epochs, cfg.seed, cfg.threads);
    json j = {{"mean", report.mean},
              {"std", report.stddev},
              {"per_fold", report.per_fold},
              {"config", cfg.to_json()}};
    j["config"]["representation"] = representation;
    j["config"]["per_class"] = per_class;
    j["config"]["folds"] = folds;
    j["config"]["lambda"] = lambda;
    j["config"]["epochs"] = epochs;
    write_json(out_path, j);
  } else if (reg->parsed()) {
    wect::Wect wa = pipeline_wect(load_complex(reg_a), cfg);
    wect::Wect wb = pipeline_wect(load_complex(reg_b), cfg);
    wect::RotationMatch match = wect::register_rotation(wa, wb);
    json j = {{"shift", match.shift},
              {"angle", match.angle()},
              {"distance", match.distance},
              {"config", cfg.to_json()}};
    write_json(out_path, j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wect::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wect::contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

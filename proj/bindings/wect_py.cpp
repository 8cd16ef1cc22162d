// Python bindings for the core pipeline: image -> complex -> WECT -> distances
// and the analysis helpers. Matrices cross the boundary as numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wect/analysis.hpp"
#include "wect/complex.hpp"
#include "wect/ingest.hpp"
#include "wect/metric.hpp"
#include "wect/transform.hpp"

namespace py = pybind11;
using namespace wect;

namespace {

ImageGrid image_from_array(py::array_t<int, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2) throw contract_error("image array must be 2-dimensional");
  ImageGrid img;
  img.rows = static_cast<int>(a.shape(0));
  img.cols = static_cast<int>(a.shape(1));
  img.pixels.assign(a.data(), a.data() + a.size());
  return img;
}

py::array_t<double> matrix_array(const Wect& w) {
  py::array_t<double> out({w.rows(), w.cols()});
  std::copy(w.matrix.begin(), w.matrix.end(), out.mutable_data());
  return out;
}

py::array_t<double> distance_array(const DistanceMatrix& D) {
  py::array_t<double> out({D.size, D.size});
  std::copy(D.entries.begin(), D.entries.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_wect, m) {
  m.doc() = "weighted Euler curve transform core";

  py::register_exception<contract_error>(m, "ContractError", PyExc_ValueError);
  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

  py::class_<WeightedComplex>(m, "WeightedComplex")
      .def_property_readonly("num_vertices", [](const WeightedComplex& K) { return K.vertices.size(); })
      .def_property_readonly("num_edges", [](const WeightedComplex& K) { return K.edges.size(); })
      .def_property_readonly("num_triangles", [](const WeightedComplex& K) { return K.triangles.size(); })
      .def("empty", &WeightedComplex::empty);

  py::class_<DirectionScheme>(m, "DirectionScheme")
      .def(py::init([](int n) { return DirectionScheme{n}; }), py::arg("n"))
      .def_readonly("n", &DirectionScheme::n)
      .def("angle", &DirectionScheme::angle, py::arg("k"));

  py::class_<FiltrationGrid>(m, "FiltrationGrid")
      .def(py::init([](int m_, double lo, double hi) { return FiltrationGrid{m_, lo, hi}; }), py::arg("m"),
           py::arg("lo") = -1.0, py::arg("hi") = 1.0)
      .def_readonly("m", &FiltrationGrid::m)
      .def_readonly("lo", &FiltrationGrid::lo)
      .def_readonly("hi", &FiltrationGrid::hi);

  py::class_<Wect>(m, "Wect")
      .def_property_readonly("scheme", [](const Wect& w) { return w.scheme; })
      .def_property_readonly("grid", [](const Wect& w) { return w.grid; })
      .def_readonly("smoothed", &Wect::smoothed)
      .def_property_readonly("matrix", &matrix_array);

  py::class_<RotationMatch>(m, "RotationMatch")
      .def_readonly("shift", &RotationMatch::shift)
      .def_readonly("distance", &RotationMatch::distance)
      .def_property_readonly("angle", &RotationMatch::angle);

  py::class_<Merge>(m, "Merge")
      .def_readonly("cluster_a", &Merge::cluster_a)
      .def_readonly("cluster_b", &Merge::cluster_b)
      .def_readonly("height", &Merge::height)
      .def_readonly("size", &Merge::size);

  py::class_<Dendrogram>(m, "Dendrogram")
      .def_readonly("leaves", &Dendrogram::leaves)
      .def_readonly("merges", &Dendrogram::merges);

  m.def(
      "image_to_complex",
      [](py::array_t<int, py::array::c_style | py::array::forcecast> a) {
        return image_to_weighted_complex(image_from_array(std::move(a)));
      },
      py::arg("image"));
  m.def("euler_characteristic", &euler_characteristic, py::arg("complex"));
  m.def("weighted_euler_characteristic", &weighted_euler_characteristic, py::arg("complex"));
  m.def("is_admissible", &is_admissible, py::arg("complex"));
  m.def("normalize", [](const WeightedComplex& K) { return normalize(K).first; }, py::arg("complex"));
  m.def("rotate", &rotate, py::arg("complex"), py::arg("theta"));

  m.def(
      "compute_wect",
      [](const WeightedComplex& K, int directions, int samples, double lo, double hi) {
        return compute_wect(K, DirectionScheme{directions}, FiltrationGrid{samples, lo, hi});
      },
      py::arg("complex"), py::arg("directions"), py::arg("samples"), py::arg("lo") = -1.0,
      py::arg("hi") = 1.0);
  m.def(
      "compute_ect",
      [](const WeightedComplex& K, int directions, int samples, double lo, double hi) {
        return compute_ect(K, DirectionScheme{directions}, FiltrationGrid{samples, lo, hi});
      },
      py::arg("complex"), py::arg("directions"), py::arg("samples"), py::arg("lo") = -1.0,
      py::arg("hi") = 1.0);
  m.def(
      "smooth",
      [](const Wect& w, int window, double sigma) {
        return smooth(w, SmoothingSpec{window, sigma});
      },
      py::arg("wect"), py::arg("window"), py::arg("sigma"));

  m.def("distance", &wect_distance, py::arg("a"), py::arg("b"));
  m.def("register_rotation", &register_rotation, py::arg("a"), py::arg("b"));
  m.def(
      "distance_matrix",
      [](const std::vector<Wect>& ws, bool register_rotations) {
        return distance_array(distance_matrix(ws, register_rotations));
      },
      py::arg("wects"), py::arg("register_rotations") = false);

  m.def(
      "ward_cluster",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> a) {
        if (a.ndim() != 2 || a.shape(0) != a.shape(1))
          throw contract_error("distance matrix must be square");
        DistanceMatrix D;
        D.size = static_cast<int>(a.shape(0));
        D.entries.assign(a.data(), a.data() + a.size());
        return ward_cluster(D);
      },
      py::arg("distances"));
  m.def("cut", &cut, py::arg("dendrogram"), py::arg("k"));

  m.def(
      "read_pgm",
      [](py::bytes data) {
        std::string s = data;
        ImageGrid g = read_pgm(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
        py::array_t<int> out({g.rows, g.cols});
        std::copy(g.pixels.begin(), g.pixels.end(), out.mutable_data());
        return out;
      },
      py::arg("data"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "iq/oracle.hpp"
#include "iq/workbench.hpp"

namespace py = pybind11;
using namespace iq;

namespace {

using Coords = std::vector<std::vector<double>>;

std::vector<Point> to_points(const Coords& rows) {
  std::vector<Point> pts;
  pts.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    pts.emplace_back(rows[i], static_cast<PointId>(i));
  return pts;
}

Coords to_rows(const std::vector<Point>& pts) {
  Coords rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) rows.push_back(p.coords);
  return rows;
}

Predicate make_predicate(const std::string& kind, std::optional<double> eps,
                         std::optional<int> k) {
  if (kind == "ieps") {
    if (!eps) throw std::invalid_argument("ieps needs eps=");
    return Predicate::eps_range(*eps);
  }
  if (kind == "iknn") {
    if (!k) throw std::invalid_argument("iknn needs k=");
    return Predicate::knn(*k);
  }
  if (kind == "idsq") return Predicate::dynamic_skyline();
  throw std::invalid_argument("kind must be 'ieps', 'iknn' or 'idsq'");
}

Algo make_algo(const std::string& name) {
  if (name == "mqf") return Algo::Mqf;
  if (name == "sqf") return Algo::Sqf;
  if (name == "naive") return Algo::Naive;
  throw std::invalid_argument("algo must be 'mqf', 'sqf' or 'naive'");
}

// query rows adopt ids of coordinate-identical indexed points
std::vector<Point> resolve_queries(const Coords& rows, const std::vector<Point>& data) {
  std::vector<Point> qs;
  PointId fresh = -1;
  for (const auto& row : rows) {
    Point q(row, fresh--);
    for (const auto& p : data) {
      if (p.coords == row) {
        q.id = p.id;
        break;
      }
    }
    qs.push_back(std::move(q));
  }
  return qs;
}

struct PyIndex {
  std::vector<Point> dataset;
  AggRTree tree;

  PyIndex(const Coords& rows, int page_size)
      : dataset(to_points(rows)), tree(AggRTree::bulk_load(dataset, page_size)) {}

  QueryReport query(const std::string& kind, const Coords& q_rows,
                    std::optional<double> eps, std::optional<int> k,
                    const std::string& algo, std::uint64_t seed) const {
    const Predicate pred = make_predicate(kind, eps, k);
    InverseQuerySpec spec(pred, QuerySet(resolve_queries(q_rows, dataset)));
    return run_algorithm(make_algo(algo), spec, tree, nullptr, seed);
  }

  std::vector<PointId> brute(const std::string& kind, const Coords& q_rows,
                             std::optional<double> eps, std::optional<int> k) const {
    const Predicate pred = make_predicate(kind, eps, k);
    return oracle::brute_inverse(dataset, pred, QuerySet(resolve_queries(q_rows, dataset)));
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Inverse spatial queries (eps-range, kNN, dynamic skyline) over an "
            "aggregate R-tree";

  py::class_<QueryReport>(m, "QueryReport")
      .def_readonly("results", &QueryReport::results)
      .def_readonly("node_reads", &QueryReport::node_reads)
      .def_readonly("wall_ms", &QueryReport::wall_ms)
      .def_readonly("validated_empty", &QueryReport::validated_empty)
      .def_readonly("candidate_count", &QueryReport::candidate_count)
      .def_readonly("refinement_checks", &QueryReport::refinement_checks)
      .def("__repr__", [](const QueryReport& r) {
        return "<QueryReport results=" + std::to_string(r.results.size()) +
               " node_reads=" + std::to_string(r.node_reads) + ">";
      });

  py::class_<PyIndex>(m, "Index")
      .def(py::init<const Coords&, int>(), py::arg("points"),
           py::arg("page_size") = 1024)
      .def_property_readonly("size",
                             [](const PyIndex& ix) { return ix.dataset.size(); })
      .def_property_readonly("dim",
                             [](const PyIndex& ix) { return ix.tree.dim(); })
      .def_property_readonly("fanout",
                             [](const PyIndex& ix) { return ix.tree.fanout(); })
      .def("query", &PyIndex::query, py::arg("kind"), py::arg("q"),
           py::arg("eps") = std::nullopt, py::arg("k") = std::nullopt,
           py::arg("algo") = "mqf", py::arg("seed") = 0,
           "Run an inverse query; returns a QueryReport whose `results` are "
           "row indices of the indexed points.")
      .def("brute", &PyIndex::brute, py::arg("kind"), py::arg("q"),
           py::arg("eps") = std::nullopt, py::arg("k") = std::nullopt,
           "Exhaustive-scan oracle for the same query.");

  m.def(
      "gen_uniform",
      [](std::int64_t n, int d, std::uint64_t seed) {
        return to_rows(gen_uniform(n, d, seed));
      },
      py::arg("n"), py::arg("d"), py::arg("seed") = 0);
  m.def(
      "gen_clustered",
      [](std::int64_t n, int d, std::uint64_t seed, int clusters, double spread) {
        return to_rows(gen_clustered(n, d, seed, clusters, spread));
      },
      py::arg("n"), py::arg("d"), py::arg("seed") = 0, py::arg("clusters") = 5,
      py::arg("spread") = 0.02);
  m.def(
      "normalize",
      [](const Coords& rows) { return to_rows(normalize(to_points(rows))); },
      py::arg("points"));
  m.def(
      "gen_query_set",
      [](const Coords& rows, int m_count, double extent, std::uint64_t seed) {
        return to_rows(gen_query_set(to_points(rows), m_count, extent, seed).members());
      },
      py::arg("points"), py::arg("m"), py::arg("extent"), py::arg("seed") = 0);
  m.def("query_cube_side", &query_cube_side, py::arg("extent"), py::arg("d"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <optional>
#include <sstream>
#include <string>

#include "kplex/graph.hpp"
#include "kplex/oracle.hpp"
#include "kplex/scheduler.hpp"

namespace py = pybind11;

namespace {

kplex::Variant parse_variant(const std::string& name) {
  if (name == "ours") return kplex::Variant::ours;
  if (name == "ours_p") return kplex::Variant::ours_p;
  if (name == "basic") return kplex::Variant::basic;
  throw py::value_error("variant must be 'ours', 'ours_p' or 'basic', got '" + name + "'");
}

kplex::RunConfig make_config(int k, int q, std::size_t threads, std::optional<double> timeout_ms,
                             const std::string& variant, bool use_ub, bool use_pair_prune) {
  kplex::RunConfig cfg;
  cfg.threads = threads;
  cfg.branch.k = k;
  cfg.branch.q = q;
  cfg.branch.variant = parse_variant(variant);
  cfg.branch.use_ub = use_ub;
  cfg.branch.use_pair_prune = use_pair_prune;
  if (timeout_ms && *timeout_ms > 0)
    cfg.timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::duration<double, std::milli>(*timeout_ms));
  else
    cfg.timeout.reset();
  kplex::validate(cfg);
  return cfg;
}

py::dict stats_dict(const kplex::RunStats& s) {
  py::dict d;
  d["plex_count"] = s.plex_count;
  d["tasks_created"] = s.tasks_created;
  d["tasks_completed"] = s.tasks_completed;
  d["tasks_stolen"] = s.tasks_stolen;
  d["stages"] = s.stages;
  d["wall_time"] = std::chrono::duration<double>(s.wall_time).count();
  return d;
}

}  // namespace

PYBIND11_MODULE(_kplex, m) {
  m.doc() = "Parallel enumeration of maximal k-plexes";

  py::register_exception<kplex::ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<kplex::Graph>(m, "Graph")
      .def(py::init<>())
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<kplex::VertexId, kplex::VertexId>>& edges,
             std::vector<kplex::OriginalId> id_map) { return kplex::Graph::from_edges(n, edges, std::move(id_map)); },
          py::arg("n"), py::arg("edges"), py::arg("id_map") = std::vector<kplex::OriginalId>{},
          "Graph on internal IDs 0..n-1; self-loops and duplicate edges are dropped.")
      .def_static(
          "parse",
          [](const std::string& text) {
            std::istringstream in(text);
            return kplex::parse_edge_list(in);
          },
          py::arg("text"), "Parse edge-list text ('u v' per line, '#' or '%' comments).")
      .def_static("read", &kplex::read_edge_list_file, py::arg("path"))
      .def_property_readonly("n", &kplex::Graph::n)
      .def_property_readonly("m", &kplex::Graph::m)
      .def("degree", &kplex::Graph::degree, py::arg("v"))
      .def("adjacent", &kplex::Graph::adjacent, py::arg("u"), py::arg("v"))
      .def(
          "neighbors",
          [](const kplex::Graph& g, kplex::VertexId v) {
            auto nb = g.neighbors(v);
            return std::vector<kplex::VertexId>(nb.begin(), nb.end());
          },
          py::arg("v"))
      .def("original_id", &kplex::Graph::original_id, py::arg("v"))
      .def("id_map", [](const kplex::Graph& g) {
        auto ids = g.id_map();
        return std::vector<kplex::OriginalId>(ids.begin(), ids.end());
      })
      .def("edges", &kplex::Graph::edges)
      .def("__repr__", [](const kplex::Graph& g) {
        return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) + ">";
      });

  m.def("reduce_to_core", &kplex::reduce_to_core, py::arg("graph"), py::arg("c"),
        "Maximal induced subgraph with minimum degree >= c.");
  m.def(
      "degeneracy_order",
      [](const kplex::Graph& g) {
        auto ord = kplex::degeneracy_order(g);
        return py::make_tuple(ord.order, ord.degeneracy);
      },
      py::arg("graph"), "Returns (peeling order, degeneracy).");

  m.def(
      "enumerate",
      [](const kplex::Graph& g, int k, int q, std::size_t threads, std::optional<double> timeout_ms,
         const std::string& variant, bool use_ub, bool use_pair_prune) {
        auto cfg = make_config(k, q, threads, timeout_ms, variant, use_ub, use_pair_prune);
        kplex::RunStats stats;
        kplex::PlexSet out;
        {
          py::gil_scoped_release release;
          out = kplex::enumerate_plexes(g, cfg, &stats);
        }
        return py::make_tuple(out, stats_dict(stats));
      },
      py::arg("graph"), py::arg("k"), py::arg("q"), py::arg("threads") = 1, py::arg("timeout_ms") = 0.1,
      py::arg("variant") = "ours", py::arg("use_ub") = true, py::arg("use_pair_prune") = true,
      "All maximal k-plexes of size >= q as sorted lists of original IDs, plus run statistics.");

  m.def(
      "count",
      [](const kplex::Graph& g, int k, int q, std::size_t threads, std::optional<double> timeout_ms,
         const std::string& variant, bool use_ub, bool use_pair_prune) {
        auto cfg = make_config(k, q, threads, timeout_ms, variant, use_ub, use_pair_prune);
        cfg.mode = kplex::OutputMode::count;
        py::gil_scoped_release release;
        return kplex::run_pipeline(g, cfg, [](std::span<const kplex::OriginalId>) {}).plex_count;
      },
      py::arg("graph"), py::arg("k"), py::arg("q"), py::arg("threads") = 1, py::arg("timeout_ms") = 0.1,
      py::arg("variant") = "ours", py::arg("use_ub") = true, py::arg("use_pair_prune") = true);

  m.def("enumerate_naive", &kplex::enumerate_naive, py::arg("graph"), py::arg("k"), py::arg("q"),
        "Brute-force reference answer (n <= 25).");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "msgpass/distributions.hpp"
#include "msgpass/errors.hpp"
#include "msgpass/oracle.hpp"
#include "msgpass/protocols.hpp"
#include "msgpass/report.hpp"

namespace py = pybind11;
using namespace msgpass;

namespace {

Instance instance_from_json_str(const std::string& text) { return parse_instance(text); }

std::string instance_to_json_str(const Instance& inst) { return to_json(inst).dump(); }

py::dict ledger_to_dict(const CostLedger& ledger) {
  py::dict d;
  d["k"] = ledger.site_count;
  d["total_bits"] = ledger.total_bits;
  d["total_messages"] = ledger.total_messages;
  d["pair_bits"] = ledger.pair_bits;
  return d;
}

py::dict run_by_name(const std::string& protocol, const Instance& inst, std::uint64_t seed,
                     bool coordinator, std::uint32_t query_vertex, std::uint32_t bfs_root,
                     int c_y, double c_s) {
  ProtoParams params;
  params.query_vertex = query_vertex;
  params.bfs_root = bfs_root;
  params.c_y = c_y;
  params.c_s = c_s;
  const RunReport rep = run_and_compare(protocol, inst, seed, params, coordinator);
  py::dict d;
  d["protocol"] = rep.protocol;
  d["answer"] = py::module_::import("json").attr("loads")(answer_to_json(rep.answer).dump());
  d["oracle"] =
      py::module_::import("json").attr("loads")(answer_to_json(rep.oracle_answer).dump());
  d["match"] = rep.match;
  d["ledger"] = ledger_to_dict(rep.ledger);
  d["rounds"] = rep.rounds;
  d["seed"] = rep.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "deterministic k-site message-passing simulator with exact bit accounting";

  py::register_exception<UsageError>(m, "UsageError");
  py::register_exception<RangeError>(m, "RangeError");
  py::register_exception<ParseError>(m, "ParseErrorCpp");
  py::register_exception<DivergenceError>(m, "DivergenceError");
  py::register_exception<EmptyInputError>(m, "EmptyInputError");

  py::class_<SetFamilyInstance>(m, "SetFamilyInstance")
      .def_readonly("k", &SetFamilyInstance::k)
      .def_readonly("n", &SetFamilyInstance::n)
      .def_readonly("sets", &SetFamilyInstance::sets);

  py::class_<GraphPartitionInstance>(m, "GraphPartitionInstance")
      .def_readonly("n", &GraphPartitionInstance::n)
      .def_readonly("k", &GraphPartitionInstance::k)
      .def_readonly("allow_duplication", &GraphPartitionInstance::allow_duplication)
      .def_property_readonly("m", &GraphPartitionInstance::distinct_edge_count)
      .def_property_readonly("local_edges", [](const GraphPartitionInstance& g) {
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;
        for (const auto& site : g.local_edges) {
          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
          for (const EdgeRec& e : site) edges.emplace_back(e.u, e.v);
          out.push_back(std::move(edges));
        }
        return out;
      });

  py::class_<ThreshInstance>(m, "ThreshInstance")
      .def_readonly("k", &ThreshInstance::k)
      .def_readonly("r", &ThreshInstance::r)
      .def_readonly("theta", &ThreshInstance::theta)
      .def_readonly("rows", &ThreshInstance::rows)
      .def_readonly("witness_Y", &ThreshInstance::witness_Y)
      .def_readonly("below_k_floor", &ThreshInstance::below_k_floor);

  py::class_<DisjInstance>(m, "DisjInstance")
      .def_readonly("r", &DisjInstance::r)
      .def_readonly("x", &DisjInstance::x)
      .def_readonly("y", &DisjInstance::y)
      .def_readonly("ell", &DisjInstance::ell);

  // instances travel between python and C++ as JSON
  m.def("parse_instance", &instance_from_json_str, py::arg("text"),
        "parse an instance from its JSON text");
  m.def("instance_json", &instance_to_json_str, py::arg("instance"));
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));
  m.def("validate", [](const Instance& inst) {
    const ValidationReport rep = validate(inst);
    return py::make_tuple(rep.ok, rep.location, rep.message);
  });

  m.def("bit_length_uint", [](std::uint64_t v, std::uint64_t max) {
    return Payload::uint_of(v, max).bit_length();
  });
  m.def("bit_length_element", [](std::uint64_t id, std::uint64_t universe) {
    return Payload::element(id, universe).bit_length();
  });

  m.def("sample_disj", &sample_disj, py::arg("r"), py::arg("beta"), py::arg("seed"));
  m.def("sample_zeta",
        [](int k, std::uint32_t r, std::uint64_t seed) { return sample_zeta(k, r, seed); },
        py::arg("k"), py::arg("r"), py::arg("seed"));
  m.def("sample_gnm", &sample_gnm, py::arg("n"), py::arg("m"), py::arg("k"),
        py::arg("duplication"), py::arg("seed"), py::arg("dup_p") = 0.3);
  m.def("sample_random_sets", &sample_random_sets, py::arg("k"), py::arg("n"),
        py::arg("max_size"), py::arg("seed"));
  m.def("eval_thresh", &eval_thresh);
  m.def("coverage_holds", &coverage_holds);

  m.def("build_f0_instance", &build_f0_instance);
  m.def("build_linfty_instance", [](const ThreshInstance& t, std::uint64_t seed) {
    const LinftyReduction red = build_linfty_instance(t, seed);
    return py::make_tuple(red.instance, red.flipped_sites);
  });
  m.def("build_cycle_2party", &build_cycle_2party, py::arg("disj"), py::arg("h"));
  m.def("build_cycle_k", &build_cycle_k);
  m.def("build_connectivity_nodup", &build_connectivity_nodup);
  m.def("build_connectivity_dup", &build_connectivity_dup);
  m.def("build_bipartite_nodup", &build_bipartite_nodup);
  m.def("build_bipartite_dup", &build_bipartite_dup);
  m.def("build_triangle_2party", &build_triangle_2party, py::arg("disj"), py::arg("n"));
  m.def("build_triangle_k", &build_triangle_k, py::arg("thresh"), py::arg("n"));

  m.def("run", &run_by_name, py::arg("protocol"), py::arg("instance"), py::arg("seed") = 1,
        py::arg("coordinator") = false, py::arg("query_vertex") = 1, py::arg("bfs_root") = 1,
        py::arg("c_y") = 16, py::arg("c_s") = 3.0,
        "run a protocol by catalog name and compare against the oracle");
  m.def("protocols", [] {
    std::vector<std::string> names;
    for (const auto& info : protocol_catalog()) names.push_back(info.name);
    return names;
  });

  m.def("oracle_f0", &oracle::f0);
  m.def("oracle_linfty", &oracle::linfty);
  m.def("oracle_num_cc", [](const GraphPartitionInstance& g) {
    return oracle::num_cc(GlobalGraph::from_partition(g));
  });
  m.def("oracle_has_cycle", [](const GraphPartitionInstance& g) {
    return oracle::has_cycle(GlobalGraph::from_partition(g));
  });
  m.def("oracle_bipartite", [](const GraphPartitionInstance& g) {
    return oracle::bipartite(GlobalGraph::from_partition(g));
  });
  m.def("oracle_triangle_free", [](const GraphPartitionInstance& g) {
    return oracle::triangle_free(GlobalGraph::from_partition(g));
  });
  m.def("oracle_diameter", [](const GraphPartitionInstance& g) {
    return oracle::diameter(GlobalGraph::from_partition(g));
  });
  m.def("oracle_disj", &oracle::disj);

  m.def("linfty_experiment", [](int k, std::uint32_t n, int c_t, int trials, std::uint64_t seed) {
    const auto rep = linfty_experiment(k, n, c_t, trials, seed);
    return py::module_::import("json").attr("loads")(rep.to_json().dump());
  });

  m.attr("__version__") = "0.1.0";
  m.attr("build_id") = build_id();
}

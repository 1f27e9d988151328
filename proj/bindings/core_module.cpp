#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kca/alignment.hpp"
#include "kca/bounds.hpp"
#include "kca/converse.hpp"
#include "kca/correlated.hpp"
#include "kca/decomposition.hpp"
#include "kca/error.hpp"
#include "kca/genfunc.hpp"
#include "kca/graph.hpp"
#include "kca/harness.hpp"
#include "kca/io.hpp"
#include "kca/matching.hpp"
#include "kca/rng.hpp"

namespace py = pybind11;
using namespace kca;

namespace {

SamplerMode mode_from_string(const std::string& s) {
    if (s == "dense") return SamplerMode::dense;
    if (s == "sparse") return SamplerMode::sparse;
    if (s == "auto" || s == "automatic") return SamplerMode::automatic;
    throw ConfigError("sampler mode must be auto, dense, or sparse");
}

std::map<int, long long> to_map(const std::map<int, long long>& m) { return m; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "correlated graph pair alignment: samplers, k-core alignments, "
              "decompositions, generating functions, and tail bounds";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"),
             py::arg("edges"))
        .def_property_readonly("n", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("edges", [](const Graph& g) { return g.edges(); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.num_vertices()) +
                   ", edges=" + std::to_string(g.num_edges()) + ")";
        });

    py::class_<Matching>(m, "Matching")
        .def(py::init<std::vector<std::pair<int, int>>>(), py::arg("pairs"))
        .def_property_readonly("size", &Matching::size)
        .def("pairs",
             [](const Matching& m_) {
                 return std::vector<std::pair<int, int>>(m_.pairs().begin(),
                                                         m_.pairs().end());
             })
        .def("contains", &Matching::contains)
        .def("image_of", &Matching::image_of)
        .def("is_bijection", &Matching::is_bijection)
        .def("__len__", &Matching::size)
        .def("__eq__",
             [](const Matching& a, const Matching& b) { return a == b; });

    py::class_<CorrelationParams>(m, "CorrelationParams")
        .def(py::init<double, double, double, double>(), py::arg("p00"),
             py::arg("p01"), py::arg("p10"), py::arg("p11"))
        .def_readonly("p00", &CorrelationParams::p00)
        .def_readonly("p01", &CorrelationParams::p01)
        .def_readonly("p10", &CorrelationParams::p10)
        .def_readonly("p11", &CorrelationParams::p11)
        .def_property_readonly("p1_star", &CorrelationParams::p1_star)
        .def_property_readonly("pstar_1", &CorrelationParams::pstar_1)
        .def_property_readonly("positively_correlated",
                               &CorrelationParams::positively_correlated);

    m.def("min_degree", [](const Graph& g) -> py::object {
        auto d = min_degree(g);
        if (!d) return py::none();  // null graph: infinite by convention
        return py::int_(*d);
    });
    m.def("k_core", &k_core, py::arg("g"), py::arg("k"));
    m.def("induced_subgraph", &induced_subgraph);
    m.def("tensor_product", &tensor_product);
    m.def("aligned_intersection", &aligned_intersection, py::arg("ga"),
          py::arg("gb"), py::arg("mu"));

    m.def(
        "sample_pair",
        [](const Matching& mu_star, int n, const CorrelationParams& p,
           std::uint64_t seed, std::uint64_t stream, const std::string& mode) {
            SeededRng rng(seed, stream);
            CorrelatedPair out =
                sample_pair(mu_star, n, p, rng, mode_from_string(mode));
            return py::make_tuple(out.ga, out.gb);
        },
        py::arg("mu_star"), py::arg("n"), py::arg("p"), py::arg("seed") = 0,
        py::arg("stream") = 0, py::arg("mode") = "auto");
    m.def(
        "sample_er",
        [](int n, double p, std::uint64_t seed, std::uint64_t stream,
           const std::string& mode) {
            SeededRng rng(seed, stream);
            return sample_er(n, p, rng, mode_from_string(mode));
        },
        py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("stream") = 0,
        py::arg("mode") = "auto");
    m.def(
        "sample_uniform_bijection",
        [](int n, std::uint64_t seed, std::uint64_t stream) {
            SeededRng rng(seed, stream);
            return sample_uniform_bijection(n, rng);
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

    m.def(
        "is_k_core_alignment",
        [](const Graph& ga, const Graph& gb, const Matching& mu, int k) {
            AlignmentVerdict v = is_k_core_alignment(ga, gb, mu, k);
            py::dict d;
            d["is_alignment"] = v.is_alignment;
            d["violating_pair"] =
                v.violating_pair ? py::cast(*v.violating_pair) : py::none();
            d["extension_witness"] =
                v.extension_witness ? py::cast(*v.extension_witness) : py::none();
            return d;
        },
        py::arg("ga"), py::arg("gb"), py::arg("mu"), py::arg("k"));
    m.def("enumerate_k_core_alignments", &enumerate_k_core_alignments,
          py::arg("ga"), py::arg("gb"), py::arg("k"), py::arg("n_limit") = 8);
    m.def("kcore_align_greedy", &kcore_align_greedy, py::arg("ga"), py::arg("gb"),
          py::arg("k"), py::arg("seed_matching") = Matching());
    m.def("oracle_kcore_estimate", &oracle_kcore_estimate, py::arg("ga"),
          py::arg("gb"), py::arg("mu_star"), py::arg("k"));
    m.def(
        "m_statistic",
        [](const Graph& ga, const Graph& gb, const Matching& mu,
           const Matching& mu_star, int k) {
            MStatistic s = m_statistic(ga, gb, mu, mu_star, k);
            py::dict d;
            d["value"] = s.value;
            d["d"] = s.d;
            d["k"] = s.k;
            d["weak_alignment"] = s.weak_alignment();
            return d;
        },
        py::arg("ga"), py::arg("gb"), py::arg("mu"), py::arg("mu_star"),
        py::arg("k"));

    py::class_<DecompositionStats>(m, "DecompositionStats")
        .def_readonly("n", &DecompositionStats::n)
        .def_readonly("n_prime", &DecompositionStats::n_prime)
        .def_readonly("d", &DecompositionStats::d)
        .def_readonly("n_common", &DecompositionStats::n_common)
        .def_readonly("p0_paths", &DecompositionStats::p0_paths)
        .def("paths",
             [](const DecompositionStats& st, int region) {
                 return to_map(st.paths.at(region));
             })
        .def("cycles",
             [](const DecompositionStats& st, int region) {
                 return to_map(st.cycles.at(region));
             })
        .def("weighted_sum", &DecompositionStats::weighted_sum);
    m.def("decompose", &decompose, py::arg("mu"), py::arg("mu_star"));

    m.def(
        "gf_exact",
        [](const DecompositionStats& st, const CorrelationParams& p, double z) {
            return static_cast<double>(gf_exact(st, p, z));
        },
        py::arg("stats"), py::arg("p"), py::arg("z"));
    m.def(
        "gf_upper_bound",
        [](const DecompositionStats& st, const CorrelationParams& p, double z) {
            return static_cast<double>(gf_upper_bound(st, p, z));
        },
        py::arg("stats"), py::arg("p"), py::arg("z"));

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("n", &BoundReport::n)
        .def_readonly("k", &BoundReport::k)
        .def_readonly("d", &BoundReport::d)
        .def_readonly("t_cyc21", &BoundReport::t_cyc21)
        .def_readonly("q1", &BoundReport::q1)
        .def_readonly("q2", &BoundReport::q2)
        .def_readonly("tau", &BoundReport::tau)
        .def_readonly("z_star", &BoundReport::z_star)
        .def_readonly("zeta", &BoundReport::zeta)
        .def_readonly("log_tail_bound", &BoundReport::log_tail_bound)
        .def_readonly("xi", &BoundReport::xi)
        .def_readonly("union_bound", &BoundReport::union_bound);
    m.def("tail_bound", &tail_bound, py::arg("n"), py::arg("d"), py::arg("k"),
          py::arg("p"), py::arg("t_cyc21"));
    m.def("xi_and_union_bound", &xi_and_union_bound, py::arg("n"), py::arg("k"),
          py::arg("p"));
    m.def("recommended_k", &recommended_k, py::arg("n"), py::arg("p11"));

    m.def(
        "isolated_stats",
        [](int n, double p, int trials, std::uint64_t seed) {
            SeededRng rng(seed, 0);
            IsolatedStats s = isolated_stats(n, p, trials, rng);
            py::dict d;
            d["empirical_mean"] = s.empirical_mean;
            d["expected_mean"] = s.expected_mean;
            d["std_error"] = s.std_error;
            d["z_score"] = s.z_score;
            return d;
        },
        py::arg("n"), py::arg("p"), py::arg("trials"), py::arg("seed") = 0);
    m.def(
        "partial_recovery_converse_check",
        [](int n, const CorrelationParams& p, long long eps, int trials,
           std::uint64_t seed) {
            SeededRng rng(seed, 0);
            PartialRecoveryReport r =
                partial_recovery_converse_check(n, p, eps, trials, rng);
            py::dict d;
            d["mean_success_bound"] = r.mean_success_bound;
            d["mean_isolated"] = r.mean_isolated;
            d["min_isolated"] = r.min_isolated;
            d["regime_ok"] = r.regime_ok;
            return d;
        },
        py::arg("n"), py::arg("p"), py::arg("eps"), py::arg("trials"),
        py::arg("seed") = 0);

    m.def("graph_to_json", &graph_to_json);
    m.def("graph_from_json", &graph_from_json);
    m.def("matching_to_json", &matching_to_json);
    m.def("matching_from_json", &matching_from_json);
}

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sdff/complex.hpp"
#include "sdff/diffusion.hpp"
#include "sdff/error.hpp"
#include "sdff/features.hpp"
#include "sdff/forest.hpp"
#include "sdff/laplacian.hpp"
#include "sdff/pipeline.hpp"
#include "sdff/supergraph.hpp"
#include "sdff/tudata.hpp"

namespace py = pybind11;
using namespace sdff;

namespace {

// (n, p+1) array of super-node indices
Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> simplex_table(
    const SimplicialComplex& cx, int p)
{
    const auto n = static_cast<Eigen::Index>(cx.count(p));
    Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(n, p + 1);
    const auto flat = cx.simplices(p);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (int k = 0; k <= p; ++k)
            out(i, k) = flat[static_cast<std::size_t>(i * (p + 1) + k)];
    }
    return out;
}

}   // namespace

PYBIND11_MODULE(_sdff, m)
{
    m.doc() = "Diffusion Frechet function features on simplicial complexes of label-compressed graphs";

    py::register_exception<Error>(m, "SdffError");

    py::enum_<Variant>(m, "Variant")
        .value("VERTEX_UP", Variant::VertexUp)
        .value("EDGE_DOWN", Variant::EdgeDown)
        .value("EDGE_UP", Variant::EdgeUp)
        .value("EDGE_BOTH", Variant::EdgeBoth)
        .value("TRIANGLE_DOWN", Variant::TriangleDown)
        .def_property_readonly("dimension", [](Variant v) { return dimension(v); })
        .def_property_readonly("label", [](Variant v) { return std::string(to_string(v)); })
        .def_static("parse", [](const std::string& s) { return parse_variant(s); });

    py::class_<LabeledGraph>(m, "LabeledGraph")
        .def(py::init<>())
        .def(py::init([](std::size_t n, std::vector<Edge> edges, std::vector<Label> labels, ClassId cls,
                         std::int64_t gid) {
                 LabeledGraph g;
                 g.num_vertices = n;
                 g.edges = std::move(edges);
                 g.vertex_labels = std::move(labels);
                 g.class_label = cls;
                 g.graph_id = gid;
                 canonicalize_edges(g);
                 return g;
             }),
             py::arg("num_vertices"), py::arg("edges"), py::arg("vertex_labels"), py::arg("class_label") = 0,
             py::arg("graph_id") = 0)
        .def_readwrite("graph_id", &LabeledGraph::graph_id)
        .def_readwrite("num_vertices", &LabeledGraph::num_vertices)
        .def_readwrite("edges", &LabeledGraph::edges)
        .def_readwrite("vertex_labels", &LabeledGraph::vertex_labels)
        .def_readwrite("class_label", &LabeledGraph::class_label)
        .def("__eq__", [](const LabeledGraph& a, const LabeledGraph& b) { return a == b; });

    py::class_<LabeledGraphDataset>(m, "LabeledGraphDataset")
        .def(py::init<>())
        .def_readwrite("name", &LabeledGraphDataset::name)
        .def_readwrite("graphs", &LabeledGraphDataset::graphs)
        .def_readonly("label_universe", &LabeledGraphDataset::label_universe)
        .def_readonly("class_universe", &LabeledGraphDataset::class_universe)
        .def_readonly("dropped_self_loops", &LabeledGraphDataset::dropped_self_loops)
        .def("refresh", [](LabeledGraphDataset& d) { refresh_universes(d); })
        .def("__len__", [](const LabeledGraphDataset& d) { return d.graphs.size(); });

    m.def("load_dataset", &load_dataset, py::arg("directory"), py::arg("name"));
    m.def("write_dataset", &write_dataset, py::arg("dataset"), py::arg("directory"));

    py::class_<SuperGraph>(m, "SuperGraph")
        .def_readonly("nodes", &SuperGraph::nodes)
        .def_readonly("node_weights", &SuperGraph::node_weights)
        .def_readonly("edges", &SuperGraph::edges)
        .def_readonly("edge_weights", &SuperGraph::edge_weights)
        .def_readonly("dropped_selfloop_count", &SuperGraph::dropped_selfloop_count)
        .def("to_json", [](const SuperGraph& sg, std::int64_t id) { return to_json(sg, id); }, py::arg("graph_id") = 0);

    m.def("compress", &compress, py::arg("graph"));
    m.def(
        "simplex_weights",
        [](const SuperGraph& sg, const std::vector<std::vector<Label>>& simplices, int p) {
            return simplex_weights(sg, simplices, p).weights;
        },
        py::arg("super_graph"), py::arg("simplices"), py::arg("p"));

    py::class_<SimplicialComplex>(m, "SimplicialComplex")
        .def_property_readonly("max_dim", &SimplicialComplex::max_dim)
        .def("count", &SimplicialComplex::count, py::arg("p"))
        .def("simplices", &simplex_table, py::arg("p"))
        .def("weights", [](const SimplicialComplex& cx, int p) { return cx.weights(p).weights; }, py::arg("p"))
        .def("label_set", &SimplicialComplex::label_set, py::arg("p"), py::arg("i"))
        .def_property_readonly("labels", [](const SimplicialComplex& cx) {
            return std::vector<Label>(cx.labels().begin(), cx.labels().end());
        });

    m.def("clique_complex", &clique_complex, py::arg("super_graph"), py::arg("max_dim") = 2);
    m.def(
        "incidence_matrix",
        [](const SimplicialComplex& cx, int p) { return incidence_matrix(cx, p).dense(); },
        py::arg("complex"), py::arg("p"));
    m.def(
        "up_laplacian", [](const SimplicialComplex& cx, int p) { return up_laplacian(cx, p).matrix; },
        py::arg("complex"), py::arg("p"));
    m.def(
        "down_laplacian", [](const SimplicialComplex& cx, int p) { return down_laplacian(cx, p).matrix; },
        py::arg("complex"), py::arg("p"));
    m.def(
        "full_laplacian", [](const SimplicialComplex& cx, int p) { return full_laplacian(cx, p).matrix; },
        py::arg("complex"), py::arg("p"));
    m.def(
        "laplacian", [](const SimplicialComplex& cx, Variant v) { return laplacian(cx, v).matrix; },
        py::arg("complex"), py::arg("variant"));

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
        .def_readonly("eigenvectors", &SpectralDecomposition::eigenvectors);

    m.def(
        "decompose", [](const Eigen::MatrixXd& l) { return decompose(l); }, py::arg("laplacian"));
    m.def(
        "probability_distribution",
        [](std::vector<double> weights) {
            SimplexWeights w;
            w.weights = std::move(weights);
            return probability_distribution(w).rho;
        },
        py::arg("weights"));
    m.def("diffusion_distance_sq", &diffusion_distance_sq, py::arg("spectrum"), py::arg("i"), py::arg("j"),
          py::arg("t"));
    m.def(
        "dff",
        [](const SpectralDecomposition& spec, std::vector<double> rho, double t) {
            return dff(spec, ProbabilityDistribution{std::move(rho)}, t).values;
        },
        py::arg("spectrum"), py::arg("rho"), py::arg("t"));

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def_readonly("dataset", &FeatureMatrix::dataset)
        .def_readonly("variant", &FeatureMatrix::variant)
        .def_readonly("t", &FeatureMatrix::t)
        .def_property_readonly("feature_names",
                               [](const FeatureMatrix& fm) {
                                   std::vector<std::string> names;
                                   for (const auto& e : fm.vocabulary.entries)
                                       names.push_back(feature_name(e));
                                   return names;
                               })
        .def_property_readonly("graph_ids",
                               [](const FeatureMatrix& fm) {
                                   std::vector<std::int64_t> ids;
                                   for (const auto& r : fm.rows)
                                       ids.push_back(r.graph_id);
                                   return ids;
                               })
        .def_property_readonly("classes", &FeatureMatrix::classes)
        .def_property_readonly("values", [](const FeatureMatrix& fm) { return to_matrix(fm); })
        .def("to_csv", [](const FeatureMatrix& fm) {
            std::ostringstream out;
            write_feature_csv(fm, out);
            return out.str();
        });

    m.def(
        "extract_features",
        [](const LabeledGraphDataset& d, const std::vector<Variant>& variants, const std::vector<double>& t,
           std::size_t jobs) { return extract_features(d, variants, t, jobs); },
        py::arg("dataset"), py::arg("variants"), py::arg("t_values"), py::arg("jobs") = 1);

    py::class_<ForestConfig>(m, "ForestConfig")
        .def(py::init<>())
        .def_readwrite("num_trees", &ForestConfig::num_trees)
        .def_readwrite("max_features", &ForestConfig::max_features)
        .def_readwrite("min_samples_split", &ForestConfig::min_samples_split)
        .def_readwrite("max_depth", &ForestConfig::max_depth)
        .def_readwrite("seed", &ForestConfig::seed)
        .def_readwrite("jobs", &ForestConfig::jobs);

    py::class_<RandomForest>(m, "RandomForest")
        .def("predict", &RandomForest::predict, py::arg("rows"))
        .def_property_readonly("classes", &RandomForest::classes)
        .def_property_readonly("num_trees", [](const RandomForest& f) { return f.trees().size(); })
        .def_property_readonly("degenerate", &RandomForest::degenerate);

    m.def(
        "train",
        [](const Eigen::MatrixXd& x, const std::vector<ClassId>& y, const ForestConfig& cfg) {
            return train(x, y, cfg);
        },
        py::arg("x"), py::arg("y"), py::arg("config") = ForestConfig{});
    m.def(
        "stratified_kfold",
        [](const std::vector<ClassId>& y, std::size_t k, std::uint64_t seed) { return stratified_kfold(y, k, seed); },
        py::arg("class_labels"), py::arg("k"), py::arg("seed") = 0);

    py::class_<CVReport>(m, "CVReport")
        .def_readonly("fold_accuracies", &CVReport::fold_accuracies)
        .def_readonly("mean_accuracy", &CVReport::mean_accuracy)
        .def_readonly("std_accuracy", &CVReport::std_accuracy)
        .def_readonly("classes", &CVReport::classes)
        .def_readonly("confusion", &CVReport::confusion)
        .def_readonly("seed", &CVReport::seed)
        .def_readonly("k", &CVReport::k);

    m.def(
        "cross_validate",
        [](const FeatureMatrix& fm, std::size_t k, const ForestConfig& cfg) { return cross_validate(fm, k, cfg); },
        py::arg("features"), py::arg("k") = 10, py::arg("config") = ForestConfig{});
    m.def(
        "cross_validate",
        [](const Eigen::MatrixXd& x, const std::vector<ClassId>& y, std::size_t k, const ForestConfig& cfg) {
            return cross_validate(x, y, k, cfg);
        },
        py::arg("x"), py::arg("y"), py::arg("k") = 10, py::arg("config") = ForestConfig{});

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("dataset_dir", &RunConfig::dataset_dir)
        .def_readwrite("dataset_name", &RunConfig::dataset_name)
        .def_readwrite("variants", &RunConfig::variants)
        .def_readwrite("t_values", &RunConfig::t_values)
        .def_readwrite("folds", &RunConfig::folds)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("repeats", &RunConfig::repeats)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def_readwrite("jobs", &RunConfig::jobs)
        .def_readwrite("forest", &RunConfig::forest)
        .def_readwrite("baselines", &RunConfig::baselines);

    m.def("run_extract", [](const RunConfig& cfg) {
        auto out = run_extract(cfg);
        std::vector<std::string> files;
        for (const auto& f : out.files)
            files.push_back(f.string());
        return py::make_tuple(files, out.warnings);
    });
    m.def("run_classify", [](const RunConfig& cfg) {
        const ResultsTable table = run_classify(cfg);
        return py::module_::import("json").attr("loads")(table.to_json().dump());
    });
    m.def("run_report", [](const RunConfig& cfg) {
        py::list rows;
        for (const auto& r : run_report(cfg))
            rows.append(py::make_tuple(r.dataset, r.method, r.accuracy, r.transcribed ? "transcribed" : "computed"));
        return rows;
    });
}

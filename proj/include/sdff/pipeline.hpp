/**
 * End-to-end orchestration: load a TU dataset, compress every graph, build
 * clique complexes, evaluate DFF features for each (variant, t) cell and
 * cross-validate a random forest on each cell.
 */

#ifndef SDFF_PIPELINE_HPP
#define SDFF_PIPELINE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdff/complex.hpp"
#include "sdff/features.hpp"
#include "sdff/forest.hpp"
#include "sdff/supergraph.hpp"
#include "sdff/tudata.hpp"
#include "sdff/variant.hpp"

namespace sdff {

inline const std::vector<double> kDefaultTimes = {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

struct RunConfig
{
    std::filesystem::path dataset_dir;
    std::string dataset_name;
    std::vector<Variant> variants{kAllVariants.begin(), kAllVariants.end()};
    std::vector<double> t_values = kDefaultTimes;
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    std::size_t repeats = 1;
    std::filesystem::path out_dir = "out";
    std::size_t jobs = 1;
    bool features_only = false;
    ForestConfig forest;
    std::optional<std::filesystem::path> baselines;

    /// Throws InvalidArgument on empty variants, non-positive t, zero repeats...
    void validate() const;
};

/**
 * Overlay keys from a JSON object onto `cfg`. Keys mirror the CLI flags:
 * dataset-dir, dataset, variants, t, folds, seed, repeats, out, jobs,
 * features-only, trees, max-features, min-samples-split, max-depth,
 * baselines.
 */
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Tag used in feature file names: "0", "-3" for powers of ten, else the shortest decimal.
std::string time_tag(double t);
std::string feature_file_name(const std::string& dataset, Variant variant, double t);

struct GraphSummary
{
    std::int64_t graph_id = 0;
    std::size_t num_vertices = 0;
    std::size_t num_edges = 0;
    SuperGraph super_graph;
    std::array<std::size_t, 3> simplex_counts{};
};

/// Super-graph and clique-complex sizes of every graph (parallel over graphs).
std::vector<GraphSummary> summarize(const LabeledGraphDataset& dataset, std::size_t jobs = 1);

/// One clique complex per graph, built to dimension 2.
std::vector<SimplicialComplex> build_complexes(const LabeledGraphDataset& dataset, std::size_t jobs = 1);

/**
 * Feature tables for every (variant, t) pair, variant-major. Vocabularies
 * come from the whole dataset; rows are in dataset order. Warnings (such as
 * a dimension that is empty in every graph) are appended to `warnings`.
 */
std::vector<FeatureMatrix> extract_features(const LabeledGraphDataset& dataset, const std::vector<Variant>& variants,
                                            const std::vector<double>& t_values, std::size_t jobs = 1,
                                            std::vector<std::string>* warnings = nullptr);

struct ExtractOutput
{
    std::vector<FeatureMatrix> features;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

/// Extract and write one CSV per cell; partial output is removed on failure.
ExtractOutput run_extract(const RunConfig& cfg);

struct CellResult
{
    Variant variant = Variant::VertexUp;
    double t = 1.0;
    std::vector<CVReport> repeats;
    double mean_accuracy = 0.0;     // mean over repeats of the CV mean
};

struct ResultsTable
{
    std::string dataset;
    std::vector<Variant> variants;
    std::vector<double> t_values;
    std::vector<CellResult> cells;  // variant-major
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    std::size_t repeats = 1;
    ForestConfig config;

    const CellResult& cell(Variant variant, double t) const;

    struct Best
    {
        Variant variant;
        double t;
        double accuracy;
    };
    /// Highest accuracy over t for each variant (earliest t on ties).
    std::vector<Best> best_per_variant() const;

    /// Aligned text grid, accuracies in percent.
    std::string render() const;
    nlohmann::json to_json() const;
    static ResultsTable from_json(const nlohmann::json& j);
};

nlohmann::json to_json(const CVReport& report, const std::string& dataset, Variant variant, double t);

/// Cross-validate every feature table; repeat r uses seed cfg.seed + r.
ResultsTable classify(const std::vector<FeatureMatrix>& features, const RunConfig& cfg);

/**
 * Extract (writing feature CSVs) and classify; writes
 * `<out>/<dataset>_results.json` and `<out>/<dataset>_results.txt`.
 */
ResultsTable run_classify(const RunConfig& cfg, std::vector<std::string>* warnings = nullptr);

struct PlotRow
{
    std::string dataset;
    std::string method;
    double accuracy = 0.0;  // percent
    bool transcribed = false;
};

/**
 * Grouped-bar plot data from every `<name>_results.json` in the output directory (or only the configured
 * dataset) plus optional transcribed baseline rows, written to
 * `<out>/plot_data.csv` as `dataset,method,accuracy,source`.
 * Throws MissingResults when no results file is found.
 */
std::vector<PlotRow> run_report(const RunConfig& cfg);

std::vector<PlotRow> read_baselines(const std::filesystem::path& path);

}   // namespace sdff

#endif

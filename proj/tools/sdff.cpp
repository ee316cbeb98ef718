// Command-line front end: extract DFF features, classify, build plot data,
// or dump per-graph super-graphs.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdff/error.hpp"
#include "sdff/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

int exit_code(sdff::ErrorKind kind)
{
    using sdff::ErrorKind;
    switch (kind)
    {
        case ErrorKind::InvalidArgument:
            return kExitUsage;
        case ErrorKind::NotSymmetric:
        case ErrorKind::ConvergenceFailure:
        case ErrorKind::NegativeSpectrum:
            return kExitNumerical;
        default:
            return kExitData;
    }
}

struct Flags
{
    std::string config;
    std::string dataset_dir;
    std::string dataset;
    std::string variants;
    std::vector<double> t;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    std::size_t repeats = 0;
    std::string out;
    std::size_t jobs = 0;
    bool features_only = false;
    std::size_t trees = 0;
    std::size_t max_features = 0;
    std::size_t max_depth = 0;
    std::string baselines;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "JSON config file; flags override its keys");
    cmd->add_option("--dataset-dir", f.dataset_dir, "Directory holding the TU files");
    cmd->add_option("--dataset", f.dataset, "Dataset name (file prefix)");
    cmd->add_option("--out", f.out, "Output directory (default: out)");
    cmd->add_option("--jobs", f.jobs, "Worker threads");
}

void add_run(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--variants", f.variants,
                    "Comma list of vertex-up, edge-down, edge-up, edge-both, triangle-down");
    cmd->add_option("--t", f.t, "Diffusion times (repeatable or comma list)")->delimiter(',');
    cmd->add_option("--folds", f.folds, "Cross-validation folds (default 10)");
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--repeats", f.repeats, "Cross-validation repetitions (seed, seed+1, ...)");
    cmd->add_option("--trees", f.trees, "Trees per forest (default 100)");
    cmd->add_option("--max-features", f.max_features, "Features per split (default floor(sqrt(d)))");
    cmd->add_option("--max-depth", f.max_depth, "Tree depth cap (default unlimited)");
}

sdff::RunConfig resolve(const CLI::App* cmd, const Flags& f)
{
    sdff::RunConfig cfg = f.config.empty() ? sdff::RunConfig{} : sdff::load_run_config(f.config);
    nlohmann::json overrides = nlohmann::json::object();
    auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
    if (given("--dataset-dir"))
        overrides["dataset-dir"] = f.dataset_dir;
    if (given("--dataset"))
        overrides["dataset"] = f.dataset;
    if (given("--out"))
        overrides["out"] = f.out;
    if (given("--jobs"))
        overrides["jobs"] = f.jobs;
    if (given("--variants"))
        overrides["variants"] = f.variants;
    if (given("--t"))
        overrides["t"] = f.t;
    if (given("--folds"))
        overrides["folds"] = f.folds;
    if (given("--seed"))
        overrides["seed"] = f.seed;
    if (given("--repeats"))
        overrides["repeats"] = f.repeats;
    if (given("--features-only"))
        overrides["features-only"] = f.features_only;
    if (given("--trees"))
        overrides["trees"] = f.trees;
    if (given("--max-features"))
        overrides["max-features"] = f.max_features;
    if (given("--max-depth"))
        overrides["max-depth"] = f.max_depth;
    if (given("--baselines"))
        overrides["baselines"] = f.baselines;
    sdff::apply_config_json(cfg, overrides);
    return cfg;
}

void require_dataset(const sdff::RunConfig& cfg)
{
    if (cfg.dataset_name.empty() || cfg.dataset_dir.empty())
        throw sdff::Error(sdff::ErrorKind::InvalidArgument, "--dataset-dir and --dataset are required");
}

void print_warnings(const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << '\n';
}

int cmd_extract(const sdff::RunConfig& cfg)
{
    require_dataset(cfg);
    const auto out = sdff::run_extract(cfg);
    print_warnings(out.warnings);
    for (const auto& p : out.files)
        std::cout << p.string() << '\n';
    return kExitOk;
}

int cmd_classify(const sdff::RunConfig& cfg)
{
    require_dataset(cfg);
    if (cfg.features_only)
        return cmd_extract(cfg);
    std::vector<std::string> warnings;
    const auto table = sdff::run_classify(cfg, &warnings);
    print_warnings(warnings);
    std::cout << table.render();
    return kExitOk;
}

int cmd_report(const sdff::RunConfig& cfg)
{
    const auto rows = sdff::run_report(cfg);
    std::cout << (cfg.out_dir / "plot_data.csv").string() << " (" << rows.size() << " rows)\n";
    return kExitOk;
}

int cmd_inspect(const sdff::RunConfig& cfg, std::int64_t graph_id, const std::string& dump)
{
    require_dataset(cfg);
    const auto dataset = sdff::load_dataset(cfg.dataset_dir, cfg.dataset_name);
    const auto summaries = sdff::summarize(dataset, cfg.jobs);

    std::ofstream file;
    if (!dump.empty())
    {
        file.open(dump);
        if (!file)
            throw sdff::Error(sdff::ErrorKind::MissingFile, "cannot write " + dump);
    }
    std::ostream& out = dump.empty() ? std::cout : file;
    for (const auto& s : summaries)
    {
        if (graph_id > 0 && s.graph_id != graph_id)
            continue;
        auto j = nlohmann::json::parse(sdff::to_json(s.super_graph, s.graph_id));
        j["num_vertices"] = s.num_vertices;
        j["num_edges"] = s.num_edges;
        j["simplex_counts"] = s.simplex_counts;
        out << j.dump() << '\n';
    }
    std::cerr << dataset.name << ": " << dataset.graphs.size() << " graphs, " << dataset.class_universe.size()
              << " classes, " << dataset.label_universe.size() << " vertex labels\n";
    return kExitOk;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Graph classification with diffusion Frechet functions on simplicial complexes"};
    app.require_subcommand(1);

    Flags f;
    std::int64_t graph_id = 0;
    std::string dump;

    auto* extract = app.add_subcommand("extract", "Write one feature CSV per (variant, t)");
    add_common(extract, f);
    add_run(extract, f);

    auto* classify = app.add_subcommand("classify", "Extract features and cross-validate a random forest");
    add_common(classify, f);
    add_run(classify, f);
    classify->add_flag("--features-only", f.features_only, "Stop after writing feature CSVs");

    auto* report = app.add_subcommand("report", "Build grouped-bar plot data from results JSON");
    add_common(report, f);
    report->add_option("--baselines", f.baselines, "CSV of transcribed baseline accuracies");

    auto* inspect = app.add_subcommand("inspect", "Dump per-graph super-graphs and simplex counts as JSON lines");
    add_common(inspect, f);
    inspect->add_option("--graph", graph_id, "Only this graph id (1-based)");
    inspect->add_option("--dump", dump, "Write JSON lines here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (*extract)
            return cmd_extract(resolve(extract, f));
        if (*classify)
            return cmd_classify(resolve(classify, f));
        if (*report)
            return cmd_report(resolve(report, f));
        if (*inspect)
            return cmd_inspect(resolve(inspect, f), graph_id, dump);
    }
    catch (const sdff::Error& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

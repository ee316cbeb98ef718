#include "sdff/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "parallel.hpp"
#include "sdff/diffusion.hpp"
#include "sdff/error.hpp"
#include "sdff/laplacian.hpp"

namespace sdff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<Variant> parse_variant_list(const json& j)
{
    std::vector<Variant> out;
    if (j.is_string())
    {
        std::stringstream ss(j.get<std::string>());
        std::string part;
        while (std::getline(ss, part, ','))
        {
            if (!part.empty())
                out.push_back(parse_variant(part));
        }
    }
    else
    {
        for (const auto& v : j)
            out.push_back(parse_variant(v.get<std::string>()));
    }
    return out;
}

json forest_json(const ForestConfig& cfg)
{
    json j;
    j["num_trees"] = cfg.num_trees;
    j["max_features"] = cfg.max_features ? json(*cfg.max_features) : json(nullptr);
    j["min_samples_split"] = cfg.min_samples_split;
    j["max_depth"] = cfg.max_depth ? json(*cfg.max_depth) : json(nullptr);
    j["seed"] = cfg.seed;
    return j;
}

ForestConfig forest_from_json(const json& j)
{
    ForestConfig cfg;
    cfg.num_trees = j.at("num_trees").get<std::size_t>();
    if (!j.at("max_features").is_null())
        cfg.max_features = j.at("max_features").get<std::size_t>();
    cfg.min_samples_split = j.at("min_samples_split").get<std::size_t>();
    if (!j.at("max_depth").is_null())
        cfg.max_depth = j.at("max_depth").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

std::string time_label(double t)
{
    const std::string tag = time_tag(t);
    if (tag == "0")
        return "1";
    if (tag.front() == '-' && tag.find('.') == std::string::npos && tag.find('e') == std::string::npos)
        return "1e" + tag;
    return tag;
}

std::string percent(double accuracy)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << accuracy * 100.0;
    return out.str();
}

void write_text_file(const fs::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::MissingFile, "cannot write " + path.string());
    out << contents;
    if (!out)
        throw Error(ErrorKind::MissingFile, "write failed for " + path.string());
}

}   // namespace

void RunConfig::validate() const
{
    if (variants.empty())
        throw Error(ErrorKind::InvalidArgument, "at least one variant is required");
    if (t_values.empty())
        throw Error(ErrorKind::InvalidArgument, "at least one t value is required");
    for (double t : t_values)
    {
        if (!(t > 0.0) || !std::isfinite(t))
            throw Error(ErrorKind::InvalidArgument, "t values must be positive and finite");
    }
    if (folds < 2)
        throw Error(ErrorKind::InvalidArgument, "folds must be at least 2");
    if (repeats < 1)
        throw Error(ErrorKind::InvalidArgument, "repeats must be at least 1");
    if (forest.num_trees < 1)
        throw Error(ErrorKind::InvalidArgument, "trees must be at least 1");
    if (forest.min_samples_split < 2)
        throw Error(ErrorKind::InvalidArgument, "min-samples-split must be at least 2");
}

void apply_config_json(RunConfig& cfg, const json& j)
{
    if (!j.is_object())
        throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
    static const std::array<std::string_view, 15> known = {
        "dataset-dir", "dataset", "variants", "t", "folds", "seed", "repeats", "out", "jobs",
        "features-only", "trees", "max-features", "min-samples-split", "max-depth", "baselines"};
    for (const auto& [key, value] : j.items())
    {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
    }
    try
    {
        if (j.contains("dataset-dir"))
            cfg.dataset_dir = j["dataset-dir"].get<std::string>();
        if (j.contains("dataset"))
            cfg.dataset_name = j["dataset"].get<std::string>();
        if (j.contains("variants"))
            cfg.variants = parse_variant_list(j["variants"]);
        if (j.contains("t"))
        {
            const auto& t = j["t"];
            cfg.t_values = t.is_array() ? t.get<std::vector<double>>() : std::vector<double>{t.get<double>()};
        }
        if (j.contains("folds"))
            cfg.folds = j["folds"].get<std::size_t>();
        if (j.contains("seed"))
            cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("repeats"))
            cfg.repeats = j["repeats"].get<std::size_t>();
        if (j.contains("out"))
            cfg.out_dir = j["out"].get<std::string>();
        if (j.contains("jobs"))
            cfg.jobs = j["jobs"].get<std::size_t>();
        if (j.contains("features-only"))
            cfg.features_only = j["features-only"].get<bool>();
        if (j.contains("trees"))
            cfg.forest.num_trees = j["trees"].get<std::size_t>();
        if (j.contains("max-features"))
            cfg.forest.max_features = j["max-features"].get<std::size_t>();
        if (j.contains("min-samples-split"))
            cfg.forest.min_samples_split = j["min-samples-split"].get<std::size_t>();
        if (j.contains("max-depth"))
            cfg.forest.max_depth = j["max-depth"].get<std::size_t>();
        if (j.contains("baselines"))
            cfg.baselines = fs::path(j["baselines"].get<std::string>());
    }
    catch (const json::exception& e)
    {
        throw Error(ErrorKind::InvalidArgument, std::string("bad config value: ") + e.what());
    }
}

RunConfig load_run_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::MissingFile, "cannot open config " + path.string());
    json j;
    try
    {
        in >> j;
    }
    catch (const json::exception& e)
    {
        throw Error(ErrorKind::InvalidArgument, "config " + path.string() + " is not valid JSON: " + e.what());
    }
    RunConfig cfg;
    apply_config_json(cfg, j);
    return cfg;
}

std::string time_tag(double t)
{
    if (t > 0.0 && std::isfinite(t))
    {
        const double e = std::round(std::log10(t));
        if (std::abs(t - std::pow(10.0, e)) <= 1e-12 * t)
            return std::to_string(static_cast<long long>(e));
    }
    return format_double(t);
}

std::string feature_file_name(const std::string& dataset, Variant variant, double t)
{
    return dataset + "_" + std::string(to_string(variant)) + "_t" + time_tag(t) + ".csv";
}

std::vector<GraphSummary> summarize(const LabeledGraphDataset& dataset, std::size_t jobs)
{
    std::vector<GraphSummary> out(dataset.graphs.size());
    detail::parallel_for(dataset.graphs.size(), jobs, [&](std::size_t g) {
        const auto& graph = dataset.graphs[g];
        GraphSummary s;
        s.graph_id = graph.graph_id;
        s.num_vertices = graph.num_vertices;
        s.num_edges = graph.edges.size();
        s.super_graph = compress(graph);
        const SimplicialComplex cx = clique_complex(s.super_graph, 2);
        for (int p = 0; p <= 2; ++p)
            s.simplex_counts[static_cast<std::size_t>(p)] = cx.count(p);
        out[g] = std::move(s);
    });
    return out;
}

std::vector<SimplicialComplex> build_complexes(const LabeledGraphDataset& dataset, std::size_t jobs)
{
    std::vector<SimplicialComplex> out(dataset.graphs.size());
    detail::parallel_for(dataset.graphs.size(), jobs, [&](std::size_t g) {
        out[g] = clique_complex(compress(dataset.graphs[g]), SimplicialComplex::kMaxDim);
    });
    return out;
}

std::vector<FeatureMatrix> extract_features(const LabeledGraphDataset& dataset, const std::vector<Variant>& variants,
                                            const std::vector<double>& t_values, std::size_t jobs,
                                            std::vector<std::string>* warnings)
{
    const std::vector<SimplicialComplex> complexes = build_complexes(dataset, jobs);
    const std::size_t num_t = t_values.size();

    std::vector<FeatureMatrix> cells(variants.size() * num_t);
    std::vector<FeatureVocabulary> vocabularies;
    for (std::size_t v = 0; v < variants.size(); ++v)
    {
        vocabularies.push_back(build_vocabulary(complexes, variants[v]));
        if (vocabularies.back().entries.empty() && warnings)
        {
            warnings->push_back(std::string(to_string(variants[v])) + ": no " +
                                std::to_string(dimension(variants[v])) +
                                "-simplices in any graph; feature rows are all zero");
        }
        for (std::size_t ti = 0; ti < num_t; ++ti)
        {
            auto& cell = cells[v * num_t + ti];
            cell.dataset = dataset.name;
            cell.variant = variants[v];
            cell.t = t_values[ti];
            cell.vocabulary = vocabularies.back();
            cell.rows.resize(dataset.graphs.size());
        }
    }

    detail::parallel_for(dataset.graphs.size(), jobs, [&](std::size_t g) {
        const auto& graph = dataset.graphs[g];
        const auto& cx = complexes[g];
        for (std::size_t v = 0; v < variants.size(); ++v)
        {
            const Variant variant = variants[v];
            const int p = dimension(variant);
            std::vector<std::vector<double>> rows(num_t);
            if (cx.count(p) == 0)
            {
                for (auto& r : rows)
                    r.assign(vocabularies[v].size(), 0.0);
            }
            else
            {
                const SpectralDecomposition spec = decompose(laplacian(cx, variant));
                const ProbabilityDistribution rho = probability_distribution(cx.weights(p));
                const auto sweep = dff_sweep(spec, rho, t_values, variant);
                for (std::size_t ti = 0; ti < num_t; ++ti)
                    rows[ti] = vectorize(sweep[ti], cx, vocabularies[v]);
            }
            for (std::size_t ti = 0; ti < num_t; ++ti)
            {
                auto& row = cells[v * num_t + ti].rows[g];
                row.graph_id = graph.graph_id;
                row.class_label = graph.class_label;
                row.values = std::move(rows[ti]);
            }
        }
    });
    return cells;
}

ExtractOutput run_extract(const RunConfig& cfg)
{
    cfg.validate();
    const LabeledGraphDataset dataset = load_dataset(cfg.dataset_dir, cfg.dataset_name);

    ExtractOutput out;
    if (dataset.dropped_self_loops > 0)
        out.warnings.push_back("dropped " + std::to_string(dataset.dropped_self_loops) + " self-loop line(s) from " +
                               cfg.dataset_name + "_A.txt");
    out.features = extract_features(dataset, cfg.variants, cfg.t_values, cfg.jobs, &out.warnings);

    fs::create_directories(cfg.out_dir);
    std::vector<fs::path> partial;
    try
    {
        for (const auto& fm : out.features)
        {
            const fs::path target = cfg.out_dir / feature_file_name(fm.dataset, fm.variant, fm.t);
            fs::path tmp = target;
            tmp += ".partial";
            partial.push_back(tmp);
            std::ostringstream buf;
            write_feature_csv(fm, buf);
            write_text_file(tmp, buf.str());
            out.files.push_back(target);
        }
        for (std::size_t i = 0; i < partial.size(); ++i)
            fs::rename(partial[i], out.files[i]);
    }
    catch (...)
    {
        std::error_code ec;
        for (const auto& p : partial)
            fs::remove(p, ec);
        for (const auto& p : out.files)
            fs::remove(p, ec);
        throw;
    }
    return out;
}

const CellResult& ResultsTable::cell(Variant variant, double t) const
{
    for (const auto& c : cells)
    {
        if (c.variant == variant && c.t == t)
            return c;
    }
    throw Error(ErrorKind::MissingResults, "no result for " + std::string(to_string(variant)) + " at t=" +
                format_double(t));
}

std::vector<ResultsTable::Best> ResultsTable::best_per_variant() const
{
    std::vector<Best> out;
    for (Variant v : variants)
    {
        std::optional<Best> best;
        for (double t : t_values)
        {
            const double acc = cell(v, t).mean_accuracy;
            if (!best || acc > best->accuracy)
                best = Best{v, t, acc};
        }
        if (best)
            out.push_back(*best);
    }
    return out;
}

std::string ResultsTable::render() const
{
    std::size_t label_width = dataset.size();
    for (Variant v : variants)
        label_width = std::max(label_width, to_string(v).size());
    constexpr int kCol = 9;

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(label_width)) << dataset;
    for (double t : t_values)
        out << std::right << std::setw(kCol) << time_label(t);
    out << '\n';
    for (Variant v : variants)
    {
        out << std::left << std::setw(static_cast<int>(label_width)) << to_string(v);
        for (double t : t_values)
            out << std::right << std::setw(kCol) << percent(cell(v, t).mean_accuracy);
        out << '\n';
    }
    out << "\nbest per variant:\n";
    for (const auto& b : best_per_variant())
    {
        out << "  " << std::left << std::setw(static_cast<int>(label_width)) << to_string(b.variant) << "  "
            << percent(b.accuracy) << "  (t=" << time_label(b.t) << ")\n";
    }
    return out.str();
}

json to_json(const CVReport& report, const std::string& dataset, Variant variant, double t)
{
    json j;
    j["dataset"] = dataset;
    j["variant"] = std::string(to_string(variant));
    j["t"] = t;
    j["k"] = report.k;
    j["seed"] = report.seed;
    j["config"] = forest_json(report.config);
    j["fold_accuracies"] = report.fold_accuracies;
    j["mean_accuracy"] = report.mean_accuracy;
    j["std_accuracy"] = report.std_accuracy;
    return j;
}

json ResultsTable::to_json() const
{
    json j;
    j["dataset"] = dataset;
    j["folds"] = folds;
    j["seed"] = seed;
    j["repeats"] = repeats;
    j["config"] = forest_json(config);
    auto vs = json::array();
    for (Variant v : variants)
        vs.push_back(std::string(to_string(v)));
    j["variants"] = vs;
    j["t_values"] = t_values;
    auto cs = json::array();
    for (const auto& c : cells)
    {
        json cj;
        cj["variant"] = std::string(to_string(c.variant));
        cj["t"] = c.t;
        cj["mean_accuracy"] = c.mean_accuracy;
        auto reports = json::array();
        for (const auto& r : c.repeats)
            reports.push_back(sdff::to_json(r, dataset, c.variant, c.t));
        cj["reports"] = std::move(reports);
        cs.push_back(std::move(cj));
    }
    j["cells"] = std::move(cs);
    auto best = json::array();
    for (const auto& b : best_per_variant())
        best.push_back({{"variant", std::string(to_string(b.variant))}, {"t", b.t}, {"accuracy", b.accuracy}});
    j["best"] = std::move(best);
    return j;
}

ResultsTable ResultsTable::from_json(const json& j)
{
    try
    {
        ResultsTable table;
        table.dataset = j.at("dataset").get<std::string>();
        table.folds = j.at("folds").get<std::size_t>();
        table.seed = j.at("seed").get<std::uint64_t>();
        table.repeats = j.at("repeats").get<std::size_t>();
        table.config = forest_from_json(j.at("config"));
        table.variants = parse_variant_list(j.at("variants"));
        table.t_values = j.at("t_values").get<std::vector<double>>();
        for (const auto& cj : j.at("cells"))
        {
            CellResult c;
            c.variant = parse_variant(cj.at("variant").get<std::string>());
            c.t = cj.at("t").get<double>();
            c.mean_accuracy = cj.at("mean_accuracy").get<double>();
            for (const auto& rj : cj.at("reports"))
            {
                CVReport r;
                r.k = rj.at("k").get<std::size_t>();
                r.seed = rj.at("seed").get<std::uint64_t>();
                r.config = forest_from_json(rj.at("config"));
                r.fold_accuracies = rj.at("fold_accuracies").get<std::vector<double>>();
                r.mean_accuracy = rj.at("mean_accuracy").get<double>();
                r.std_accuracy = rj.at("std_accuracy").get<double>();
                c.repeats.push_back(std::move(r));
            }
            table.cells.push_back(std::move(c));
        }
        return table;
    }
    catch (const json::exception& e)
    {
        throw Error(ErrorKind::MissingResults, std::string("malformed results JSON: ") + e.what());
    }
}

ResultsTable classify(const std::vector<FeatureMatrix>& features, const RunConfig& cfg)
{
    cfg.validate();
    ResultsTable table;
    table.folds = cfg.folds;
    table.seed = cfg.seed;
    table.repeats = cfg.repeats;
    table.config = cfg.forest;
    table.config.seed = cfg.seed;
    for (const auto& fm : features)
    {
        if (table.dataset.empty())
            table.dataset = fm.dataset;
        if (std::find(table.variants.begin(), table.variants.end(), fm.variant) == table.variants.end())
            table.variants.push_back(fm.variant);
        if (std::find(table.t_values.begin(), table.t_values.end(), fm.t) == table.t_values.end())
            table.t_values.push_back(fm.t);
    }

    table.cells.resize(features.size());
    for (std::size_t c = 0; c < features.size(); ++c)
    {
        table.cells[c].variant = features[c].variant;
        table.cells[c].t = features[c].t;
        table.cells[c].repeats.resize(cfg.repeats);
    }

    const std::size_t tasks = features.size() * cfg.repeats;
    detail::parallel_for(tasks, cfg.jobs, [&](std::size_t task) {
        const std::size_t c = task / cfg.repeats;
        const std::size_t r = task % cfg.repeats;
        ForestConfig fc = cfg.forest;
        fc.seed = cfg.seed + r;
        fc.jobs = 1;
        table.cells[c].repeats[r] = cross_validate(features[c], cfg.folds, fc);
    });

    for (auto& cell : table.cells)
    {
        double sum = 0.0;
        for (const auto& r : cell.repeats)
            sum += r.mean_accuracy;
        cell.mean_accuracy = sum / static_cast<double>(cell.repeats.size());
    }
    return table;
}

ResultsTable run_classify(const RunConfig& cfg, std::vector<std::string>* warnings)
{
    ExtractOutput extracted = run_extract(cfg);
    if (warnings)
        warnings->insert(warnings->end(), extracted.warnings.begin(), extracted.warnings.end());
    ResultsTable table = classify(extracted.features, cfg);
    if (table.dataset.empty())
        table.dataset = cfg.dataset_name;
    write_text_file(cfg.out_dir / (cfg.dataset_name + "_results.json"), table.to_json().dump(2) + "\n");
    write_text_file(cfg.out_dir / (cfg.dataset_name + "_results.txt"), table.render());
    return table;
}

std::vector<PlotRow> read_baselines(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::MissingFile, "cannot open baselines " + path.string());
    std::vector<PlotRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        if (header)
        {
            header = false;
            if (line.rfind("dataset,method,accuracy", 0) == 0)
                continue;
        }
        std::stringstream ss(line);
        PlotRow row;
        std::string acc;
        if (!std::getline(ss, row.dataset, ',') || !std::getline(ss, row.method, ',') || !std::getline(ss, acc, ','))
            throw Error(ErrorKind::MalformedLine, "baseline line '" + line + "'");
        try
        {
            row.accuracy = std::stod(acc);
        }
        catch (const std::exception&)
        {
            throw Error(ErrorKind::MalformedLine, "baseline accuracy '" + acc + "'");
        }
        row.transcribed = true;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<PlotRow> run_report(const RunConfig& cfg)
{
    std::vector<fs::path> result_files;
    if (!cfg.dataset_name.empty())
    {
        const fs::path p = cfg.out_dir / (cfg.dataset_name + "_results.json");
        if (fs::is_regular_file(p))
            result_files.push_back(p);
    }
    else if (fs::is_directory(cfg.out_dir))
    {
        for (const auto& entry : fs::directory_iterator(cfg.out_dir))
        {
            const std::string name = entry.path().filename().string();
            if (entry.is_regular_file() && name.size() > 13 && name.ends_with("_results.json"))
                result_files.push_back(entry.path());
        }
        std::sort(result_files.begin(), result_files.end());
    }
    if (result_files.empty())
        throw Error(ErrorKind::MissingResults, "no results JSON in " + cfg.out_dir.string());

    std::vector<PlotRow> rows;
    std::vector<std::string> datasets;
    for (const auto& path : result_files)
    {
        std::ifstream in(path);
        json j;
        try
        {
            in >> j;
        }
        catch (const json::exception& e)
        {
            throw Error(ErrorKind::MissingResults, path.string() + ": " + e.what());
        }
        const ResultsTable table = ResultsTable::from_json(j);
        datasets.push_back(table.dataset);
        for (const auto& b : table.best_per_variant())
            rows.push_back({table.dataset, std::string(to_string(b.variant)), b.accuracy * 100.0, false});
    }
    if (cfg.baselines)
    {
        for (auto& row : read_baselines(*cfg.baselines))
        {
            if (std::find(datasets.begin(), datasets.end(), row.dataset) != datasets.end())
                rows.push_back(std::move(row));
        }
    }

    std::ostringstream out;
    out << "dataset,method,accuracy,source\n";
    for (const auto& r : rows)
    {
        out << r.dataset << ',' << r.method << ',' << std::fixed << std::setprecision(2) << r.accuracy << ','
            << (r.transcribed ? "transcribed" : "computed") << '\n';
    }
    write_text_file(cfg.out_dir / "plot_data.csv", out.str());
    return rows;
}

}   // namespace sdff

#include "sdff/tudata.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "sdff/error.hpp"

namespace sdff {

namespace {

namespace fs = std::filesystem;

struct ParsedLine
{
    std::size_t line_no;
    std::vector<std::int64_t> values;
};

bool is_separator(char c)
{
    return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

/**
 * Read every non-blank line of a TU text file as a list of integers.
 * Commas and any whitespace separate tokens.
 */
std::vector<ParsedLine> read_integer_lines(const fs::path& path, std::size_t arity)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::MissingFile, "cannot open " + path.string());

    std::vector<ParsedLine> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        ParsedLine parsed{line_no, {}};
        std::size_t pos = 0;
        while (pos < line.size())
        {
            while (pos < line.size() && is_separator(line[pos]))
                ++pos;
            if (pos == line.size())
                break;
            std::size_t end = pos;
            while (end < line.size() && !is_separator(line[end]))
                ++end;
            std::int64_t value = 0;
            const char* first = line.data() + pos;
            const char* last = line.data() + end;
            if (*first == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last)
            {
                throw Error(ErrorKind::MalformedLine,
                            path.filename().string() + ":" + std::to_string(line_no) +
                            ": non-integer token '" + line.substr(pos, end - pos) + "'");
            }
            parsed.values.push_back(value);
            pos = end;
        }
        if (parsed.values.empty())
            continue;
        if (parsed.values.size() != arity)
        {
            throw Error(ErrorKind::MalformedLine,
                        path.filename().string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(arity) + " value(s), found " + std::to_string(parsed.values.size()));
        }
        out.push_back(std::move(parsed));
    }
    return out;
}

fs::path tu_file(const fs::path& directory, const std::string& name, const char* suffix)
{
    return directory / (name + suffix);
}

}   // namespace

void canonicalize_edges(LabeledGraph& graph)
{
    for (auto& [u, v] : graph.edges)
    {
        if (u > v)
            std::swap(u, v);
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
}

void refresh_universes(LabeledGraphDataset& dataset)
{
    std::set<Label> labels;
    std::set<ClassId> classes;
    for (const auto& g : dataset.graphs)
    {
        labels.insert(g.vertex_labels.begin(), g.vertex_labels.end());
        classes.insert(g.class_label);
    }
    dataset.label_universe.assign(labels.begin(), labels.end());
    dataset.class_universe.assign(classes.begin(), classes.end());
}

LabeledGraphDataset load_dataset(const fs::path& directory, const std::string& name)
{
    const fs::path a_path = tu_file(directory, name, "_A.txt");
    const fs::path indicator_path = tu_file(directory, name, "_graph_indicator.txt");
    const fs::path graph_labels_path = tu_file(directory, name, "_graph_labels.txt");
    const fs::path node_labels_path = tu_file(directory, name, "_node_labels.txt");
    for (const auto& p : {a_path, indicator_path, graph_labels_path, node_labels_path})
    {
        if (!fs::is_regular_file(p))
            throw Error(ErrorKind::MissingFile, p.string());
    }

    const auto graph_labels = read_integer_lines(graph_labels_path, 1);
    const auto indicator = read_integer_lines(indicator_path, 1);
    const auto node_labels = read_integer_lines(node_labels_path, 1);
    const auto adjacency = read_integer_lines(a_path, 2);

    if (graph_labels.empty())
        throw Error(ErrorKind::EmptyDataset, graph_labels_path.string() + " lists no graphs");
    if (node_labels.size() != indicator.size())
    {
        throw Error(ErrorKind::MalformedLine,
                    node_labels_path.filename().string() + " has " + std::to_string(node_labels.size()) +
                    " entries but the graph indicator has " + std::to_string(indicator.size()));
    }

    LabeledGraphDataset dataset;
    dataset.name = name;
    dataset.graphs.resize(graph_labels.size());
    for (std::size_t g = 0; g < graph_labels.size(); ++g)
    {
        dataset.graphs[g].graph_id = static_cast<std::int64_t>(g + 1);
        dataset.graphs[g].class_label = graph_labels[g].values[0];
    }

    // Per global node: owning graph (0-based) and local index.
    std::vector<std::size_t> owner(indicator.size());
    std::vector<VertexId> local(indicator.size());
    for (std::size_t n = 0; n < indicator.size(); ++n)
    {
        const std::int64_t gid = indicator[n].values[0];
        if (gid < 1 || static_cast<std::size_t>(gid) > dataset.graphs.size())
        {
            throw Error(ErrorKind::IndexOutOfRange,
                        indicator_path.filename().string() + ":" + std::to_string(indicator[n].line_no) +
                        ": graph id " + std::to_string(gid) + " outside 1.." +
                        std::to_string(dataset.graphs.size()));
        }
        auto& graph = dataset.graphs[static_cast<std::size_t>(gid - 1)];
        owner[n] = static_cast<std::size_t>(gid - 1);
        local[n] = static_cast<VertexId>(graph.num_vertices++);
        graph.vertex_labels.push_back(node_labels[n].values[0]);
    }

    for (const auto& row : adjacency)
    {
        const std::int64_t a = row.values[0];
        const std::int64_t b = row.values[1];
        for (std::int64_t id : {a, b})
        {
            if (id < 1 || static_cast<std::size_t>(id) > indicator.size())
            {
                throw Error(ErrorKind::IndexOutOfRange,
                            a_path.filename().string() + ":" + std::to_string(row.line_no) + ": node id " +
                            std::to_string(id) + " exceeds indicator length " +
                            std::to_string(indicator.size()));
            }
        }
        const auto ia = static_cast<std::size_t>(a - 1);
        const auto ib = static_cast<std::size_t>(b - 1);
        if (owner[ia] != owner[ib])
        {
            throw Error(ErrorKind::MalformedLine,
                        a_path.filename().string() + ":" + std::to_string(row.line_no) +
                        ": edge joins nodes of different graphs");
        }
        if (ia == ib)
        {
            ++dataset.dropped_self_loops;
            continue;
        }
        dataset.graphs[owner[ia]].edges.emplace_back(local[ia], local[ib]);
    }

    for (auto& g : dataset.graphs)
        canonicalize_edges(g);
    refresh_universes(dataset);
    return dataset;
}

void write_dataset(const LabeledGraphDataset& dataset, const fs::path& directory)
{
    fs::create_directories(directory);
    auto open = [&](const char* suffix) {
        std::ofstream out(tu_file(directory, dataset.name, suffix));
        if (!out)
            throw Error(ErrorKind::MissingFile, "cannot write " + tu_file(directory, dataset.name, suffix).string());
        return out;
    };
    std::ofstream a = open("_A.txt");
    std::ofstream indicator = open("_graph_indicator.txt");
    std::ofstream graph_labels = open("_graph_labels.txt");
    std::ofstream node_labels = open("_node_labels.txt");

    std::size_t offset = 1;
    for (std::size_t g = 0; g < dataset.graphs.size(); ++g)
    {
        const auto& graph = dataset.graphs[g];
        graph_labels << graph.class_label << '\n';
        for (std::size_t v = 0; v < graph.num_vertices; ++v)
        {
            indicator << (g + 1) << '\n';
            node_labels << graph.vertex_labels[v] << '\n';
        }
        for (const auto& [u, v] : graph.edges)
        {
            a << (offset + u) << ", " << (offset + v) << '\n';
            a << (offset + v) << ", " << (offset + u) << '\n';
        }
        offset += graph.num_vertices;
    }
}

}   // namespace sdff

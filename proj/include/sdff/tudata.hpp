/**
 * Loader for vertex-labeled graph collections stored in the TU benchmark
 * layout (`<name>_A.txt`, `<name>_graph_indicator.txt`,
 * `<name>_graph_labels.txt`, `<name>_node_labels.txt`).
 */

#ifndef SDFF_TUDATA_HPP
#define SDFF_TUDATA_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sdff {

using Label = std::int64_t;
using ClassId = std::int64_t;
using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/**
 * One undirected vertex-labeled graph. Edges are stored as (u, v) with
 * u < v, sorted lexicographically, without duplicates.
 */
struct LabeledGraph
{
    std::int64_t graph_id = 0;
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<Label> vertex_labels;
    ClassId class_label = 0;

    bool operator==(const LabeledGraph&) const = default;
};

struct LabeledGraphDataset
{
    std::string name;
    std::vector<LabeledGraph> graphs;
    std::vector<Label> label_universe;      // sorted, distinct
    std::vector<ClassId> class_universe;    // sorted, distinct
    std::size_t dropped_self_loops = 0;     // self-loops present in the raw `_A.txt`

    bool operator==(const LabeledGraphDataset&) const = default;
};

/**
 * Parse `<directory>/<name>_*.txt`. Global 1-based node ids are remapped to
 * 0-based indices local to each graph (in file order); both directions of an
 * undirected edge collapse to one edge and raw self-loops are dropped.
 *
 * Throws Error with MissingFile, MalformedLine, IndexOutOfRange or
 * EmptyDataset.
 */
LabeledGraphDataset load_dataset(const std::filesystem::path& directory, const std::string& name);

/**
 * Write a dataset back in TU layout, each undirected edge as two directed
 * lines. Graph ids are renumbered 1..N in storage order.
 */
void write_dataset(const LabeledGraphDataset& dataset, const std::filesystem::path& directory);

/// Canonicalize a graph's edge list: orient u < v, sort, drop duplicates.
void canonicalize_edges(LabeledGraph& graph);

/// Recompute label_universe and class_universe from the graphs.
void refresh_universes(LabeledGraphDataset& dataset);

}   // namespace sdff

#endif

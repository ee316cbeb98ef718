#ifndef SDFF_SUPERGRAPH_HPP
#define SDFF_SUPERGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdff/tudata.hpp"

namespace sdff {

/**
 * Label-compressed graph. Super-node i stands for label nodes[i]; nodes are
 * sorted by label so index order and label order agree. Super-edges are
 * index pairs (a, b) with a < b, sorted lexicographically.
 */
struct SuperGraph
{
    std::vector<Label> nodes;
    std::vector<std::uint64_t> node_weights;
    std::vector<Edge> edges;
    std::vector<std::uint64_t> edge_weights;
    // original edges whose endpoints share a label
    std::uint64_t dropped_selfloop_count = 0;

    std::size_t num_nodes() const { return nodes.size(); }
    std::size_t num_edges() const { return edges.size(); }

    /// Index of the super-node carrying `label`, or npos.
    std::size_t index_of(Label label) const;

    /// Index of the super-edge between super-nodes a and b, or npos.
    std::size_t edge_index(VertexId a, VertexId b) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool operator==(const SuperGraph&) const = default;
};

/// Weights of the p-simplices of a super-graph's clique complex.
struct SimplexWeights
{
    int dimension = 0;
    std::vector<double> weights;
};

SuperGraph compress(const LabeledGraph& graph);

/**
 * Weights of the given simplices, each a sorted tuple of p+1 label ids.
 * Vertices carry label frequency, edges co-occurrence count, and higher
 * simplices the minimum weight over their edges.
 *
 * Throws NotAClique when a tuple is not a clique of `sg`.
 */
SimplexWeights simplex_weights(const SuperGraph& sg, std::span<const std::vector<Label>> simplices, int p);

/// Same rule over super-node index tuples stored flat with stride p+1.
SimplexWeights simplex_weights_by_index(const SuperGraph& sg, std::span<const VertexId> flat, int p);

/// One-line JSON object describing the super-graph (debug dump).
std::string to_json(const SuperGraph& sg, std::int64_t graph_id);

}   // namespace sdff

#endif

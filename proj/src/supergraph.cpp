#include "sdff/supergraph.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <nlohmann/json.hpp>

#include "sdff/error.hpp"

namespace sdff {

std::size_t SuperGraph::index_of(Label label) const
{
    auto it = std::lower_bound(nodes.begin(), nodes.end(), label);
    if (it == nodes.end() || *it != label)
        return npos;
    return static_cast<std::size_t>(it - nodes.begin());
}

std::size_t SuperGraph::edge_index(VertexId a, VertexId b) const
{
    if (a > b)
        std::swap(a, b);
    const Edge key{a, b};
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    if (it == edges.end() || *it != key)
        return npos;
    return static_cast<std::size_t>(it - edges.begin());
}

SuperGraph compress(const LabeledGraph& graph)
{
    std::map<Label, std::uint64_t> node_counts;
    for (Label l : graph.vertex_labels)
        ++node_counts[l];

    SuperGraph sg;
    sg.nodes.reserve(node_counts.size());
    sg.node_weights.reserve(node_counts.size());
    for (const auto& [label, count] : node_counts)
    {
        sg.nodes.push_back(label);
        sg.node_weights.push_back(count);
    }

    std::map<Edge, std::uint64_t> edge_counts;
    for (const auto& [u, v] : graph.edges)
    {
        const Label lu = graph.vertex_labels[u];
        const Label lv = graph.vertex_labels[v];
        if (lu == lv)
        {
            ++sg.dropped_selfloop_count;
            continue;
        }
        auto a = static_cast<VertexId>(sg.index_of(lu));
        auto b = static_cast<VertexId>(sg.index_of(lv));
        if (a > b)
            std::swap(a, b);
        ++edge_counts[{a, b}];
    }
    sg.edges.reserve(edge_counts.size());
    sg.edge_weights.reserve(edge_counts.size());
    for (const auto& [edge, count] : edge_counts)
    {
        sg.edges.push_back(edge);
        sg.edge_weights.push_back(count);
    }
    return sg;
}

SimplexWeights simplex_weights_by_index(const SuperGraph& sg, std::span<const VertexId> flat, int p)
{
    if (p < 0)
        throw Error(ErrorKind::InvalidArgument, "negative simplex dimension");
    const auto stride = static_cast<std::size_t>(p + 1);
    if (flat.size() % stride != 0)
        throw Error(ErrorKind::InvalidArgument, "simplex tuple list length is not a multiple of p+1");

    SimplexWeights out;
    out.dimension = p;
    out.weights.reserve(flat.size() / stride);
    for (std::size_t s = 0; s < flat.size(); s += stride)
    {
        auto simplex = flat.subspan(s, stride);
        for (VertexId v : simplex)
        {
            if (v >= sg.num_nodes())
                throw Error(ErrorKind::NotAClique, "vertex index " + std::to_string(v) + " is not a super-node");
        }
        if (p == 0)
        {
            out.weights.push_back(static_cast<double>(sg.node_weights[simplex[0]]));
            continue;
        }
        auto weight = std::numeric_limits<std::uint64_t>::max();
        for (std::size_t i = 0; i < stride; ++i)
        {
            for (std::size_t j = i + 1; j < stride; ++j)
            {
                const std::size_t e = simplex[i] < simplex[j] ? sg.edge_index(simplex[i], simplex[j]) : SuperGraph::npos;
                if (e == SuperGraph::npos)
                    throw Error(ErrorKind::NotAClique, "simplex contains a non-edge or is not strictly increasing");
                weight = std::min(weight, sg.edge_weights[e]);
            }
        }
        out.weights.push_back(static_cast<double>(weight));
    }
    return out;
}

SimplexWeights simplex_weights(const SuperGraph& sg, std::span<const std::vector<Label>> simplices, int p)
{
    if (p < 0)
        throw Error(ErrorKind::InvalidArgument, "negative simplex dimension");
    std::vector<VertexId> flat;
    flat.reserve(simplices.size() * static_cast<std::size_t>(p + 1));
    for (const auto& tuple : simplices)
    {
        if (tuple.size() != static_cast<std::size_t>(p + 1))
            throw Error(ErrorKind::InvalidArgument, "simplex tuple does not have p+1 labels");
        for (Label l : tuple)
        {
            const std::size_t idx = sg.index_of(l);
            if (idx == SuperGraph::npos)
                throw Error(ErrorKind::NotAClique, "label " + std::to_string(l) + " is not a super-node");
            flat.push_back(static_cast<VertexId>(idx));
        }
    }
    return simplex_weights_by_index(sg, flat, p);
}

std::string to_json(const SuperGraph& sg, std::int64_t graph_id)
{
    nlohmann::json j;
    j["graph_id"] = graph_id;
    j["nodes"] = sg.nodes;
    j["node_weights"] = sg.node_weights;
    auto edges = nlohmann::json::array();
    for (const auto& [a, b] : sg.edges)
        edges.push_back({sg.nodes[a], sg.nodes[b]});
    j["edges"] = std::move(edges);
    j["edge_weights"] = sg.edge_weights;
    j["dropped_selfloop_count"] = sg.dropped_selfloop_count;
    return j.dump();
}

}   // namespace sdff

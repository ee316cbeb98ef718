#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "sdff/supergraph.hpp"

#include "../support/expect.hpp"
#include "../support/synthetic.hpp"

using namespace sdff;

namespace {

LabeledGraph make_graph(std::vector<Label> labels, std::vector<Edge> edges)
{
    LabeledGraph g;
    g.num_vertices = labels.size();
    g.vertex_labels = std::move(labels);
    g.edges = std::move(edges);
    canonicalize_edges(g);
    return g;
}

// Apply a vertex-id permutation: vertex v becomes perm[v].
LabeledGraph permute(const LabeledGraph& g, const std::vector<VertexId>& perm)
{
    LabeledGraph out = g;
    for (std::size_t v = 0; v < g.num_vertices; ++v)
        out.vertex_labels[perm[v]] = g.vertex_labels[v];
    out.edges.clear();
    for (const auto& [a, b] : g.edges)
        out.edges.emplace_back(perm[a], perm[b]);
    canonicalize_edges(out);
    return out;
}

}   // namespace

TEST_SUITE("supergraph")
{
    TEST_CASE("path a-b-c with labels 0,1,0")
    {
        const auto sg = compress(make_graph({0, 1, 0}, {{0, 1}, {1, 2}}));
        CHECK(sg.nodes == std::vector<Label>{0, 1});
        CHECK(sg.node_weights == std::vector<std::uint64_t>{2, 1});
        CHECK(sg.edges == std::vector<Edge>{{0, 1}});
        CHECK(sg.edge_weights == std::vector<std::uint64_t>{2});
        CHECK(sg.dropped_selfloop_count == 0);

        const std::vector<std::vector<Label>> verts = {{0}, {1}};
        CHECK(simplex_weights(sg, verts, 0).weights == std::vector<double>{2, 1});
    }

    TEST_CASE("distinct labels compress to an isomorphic unit-weight graph")
    {
        const auto g = make_graph({5, 3, 9, 1}, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
        const auto sg = compress(g);
        CHECK(sg.num_nodes() == 4);
        CHECK(sg.num_edges() == 4);
        CHECK(std::all_of(sg.node_weights.begin(), sg.node_weights.end(), [](auto w) { return w == 1; }));
        CHECK(std::all_of(sg.edge_weights.begin(), sg.edge_weights.end(), [](auto w) { return w == 1; }));
        // each original edge maps to the super-edge between its labels
        for (const auto& [a, b] : g.edges)
        {
            const auto ia = sg.index_of(g.vertex_labels[a]);
            const auto ib = sg.index_of(g.vertex_labels[b]);
            CHECK(sg.edge_index(static_cast<VertexId>(ia), static_cast<VertexId>(ib)) != SuperGraph::npos);
        }
    }

    TEST_CASE("same-label edges are dropped and counted")
    {
        const auto sg = compress(make_graph({4, 4, 6}, {{0, 1}, {1, 2}, {0, 2}}));
        CHECK(sg.dropped_selfloop_count == 1);
        CHECK(sg.edges == std::vector<Edge>{{0, 1}});
        CHECK(sg.edge_weights == std::vector<std::uint64_t>{2});
    }

    TEST_CASE("empty graph")
    {
        const auto sg = compress(LabeledGraph{});
        CHECK(sg.num_nodes() == 0);
        CHECK(sg.num_edges() == 0);
    }

    TEST_CASE("triangle weight is the minimum edge weight")
    {
        SuperGraph sg;
        sg.nodes = {0, 1, 2};
        sg.node_weights = {1, 1, 1};
        sg.edges = {{0, 1}, {0, 2}, {1, 2}};
        sg.edge_weights = {3, 5, 2};
        const std::vector<std::vector<Label>> tri = {{0, 1, 2}};
        CHECK(simplex_weights(sg, tri, 2).weights == std::vector<double>{2});
        CHECK(simplex_weights(sg, tri, 2).dimension == 2);
    }

    TEST_CASE("edge weight passthrough")
    {
        SuperGraph sg;
        sg.nodes = {3, 8};
        sg.node_weights = {1, 1};
        sg.edges = {{0, 1}};
        sg.edge_weights = {7};
        const std::vector<std::vector<Label>> e = {{3, 8}};
        CHECK(simplex_weights(sg, e, 1).weights == std::vector<double>{7});
    }

    TEST_CASE("NotAClique")
    {
        const auto sg = compress(make_graph({0, 1, 2}, {{0, 1}, {1, 2}}));
        const std::vector<std::vector<Label>> open = {{0, 1, 2}};
        SDFF_CHECK_THROWS_KIND(simplex_weights(sg, open, 2), ErrorKind::NotAClique);
        const std::vector<std::vector<Label>> missing = {{0, 2}};
        SDFF_CHECK_THROWS_KIND(simplex_weights(sg, missing, 1), ErrorKind::NotAClique);
        const std::vector<std::vector<Label>> absent = {{99}};
        SDFF_CHECK_THROWS_KIND(simplex_weights(sg, absent, 0), ErrorKind::NotAClique);
    }

    TEST_CASE("weight invariants on synthetic graphs")
    {
        const auto ds = sdff::testing::synthetic_dataset(20, 7);
        for (const auto& g : ds.graphs)
        {
            const auto sg = compress(g);
            CHECK(std::accumulate(sg.node_weights.begin(), sg.node_weights.end(), std::uint64_t{0}) ==
                  g.num_vertices);
            CHECK(std::accumulate(sg.edge_weights.begin(), sg.edge_weights.end(), std::uint64_t{0}) +
                      sg.dropped_selfloop_count ==
                  g.edges.size());
            CHECK(sg.num_nodes() <= ds.label_universe.size());
            CHECK(sg.num_nodes() <= g.num_vertices);
            CHECK(std::is_sorted(sg.nodes.begin(), sg.nodes.end()));
            CHECK(std::is_sorted(sg.edges.begin(), sg.edges.end()));
            for (std::size_t k = 0; k < sg.num_edges(); ++k)
            {
                CHECK(sg.edges[k].first < sg.edges[k].second);
                CHECK(sg.edge_weights[k] >= 1);
            }
        }
    }

    TEST_CASE("vertex-id permutation leaves the super-graph unchanged")
    {
        const auto ds = sdff::testing::synthetic_dataset(5, 11);
        std::mt19937_64 rng(3);
        for (const auto& g : ds.graphs)
        {
            std::vector<VertexId> perm(g.num_vertices);
            std::iota(perm.begin(), perm.end(), VertexId{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(compress(permute(g, perm)) == compress(g));
        }
    }

    TEST_CASE("JSON dump")
    {
        const auto sg = compress(make_graph({0, 1, 0, 0}, {{0, 1}, {1, 2}, {2, 3}}));
        const auto j = nlohmann::json::parse(to_json(sg, 12));
        CHECK(j["graph_id"] == 12);
        CHECK(j["nodes"] == nlohmann::json::array({0, 1}));
        CHECK(j["node_weights"] == nlohmann::json::array({3, 1}));
        CHECK(j["edge_weights"] == nlohmann::json::array({2}));
        CHECK(j["dropped_selfloop_count"] == 1);
    }
}

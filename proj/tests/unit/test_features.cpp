#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sdff/features.hpp"
#include "sdff/pipeline.hpp"

#include "../support/expect.hpp"
#include "../support/oracles.hpp"
#include "../support/synthetic.hpp"

using namespace sdff;
using sdff::testing::complete_super_graph;

namespace {

SuperGraph edge_between(Label a, Label b)
{
    SuperGraph sg;
    sg.nodes = {a, b};
    sg.node_weights = {1, 1};
    sg.edges = {{0, 1}};
    sg.edge_weights = {1};
    return sg;
}

std::vector<double> row_for(const SimplicialComplex& cx, Variant v, double t, const FeatureVocabulary& vocab)
{
    const int p = dimension(v);
    const auto spec = decompose(laplacian(cx, v));
    const auto values = dff(spec, probability_distribution(cx.weights(p)), t, v);
    return vectorize(values, cx, vocab);
}

}   // namespace

TEST_SUITE("features")
{
    TEST_CASE("vocabulary is the union of label sets")
    {
        const std::vector<SimplicialComplex> cxs = {clique_complex(edge_between(0, 1)),
                                                    clique_complex(edge_between(1, 2))};
        const auto vocab = build_vocabulary(cxs, 1, Variant::EdgeDown);
        CHECK(vocab.entries == std::vector<LabelSet>{{0, 1}, {1, 2}});
        CHECK(vocab.index_of({1, 2}) == std::optional<std::size_t>(1));
        CHECK_FALSE(vocab.index_of({0, 2}).has_value());

        const auto v0 = build_vocabulary(cxs, Variant::VertexUp);
        CHECK(v0.entries == std::vector<LabelSet>{{0}, {1}, {2}});
        CHECK(v0.dimension == 0);
    }

    TEST_CASE("edgeless graph has an empty edge vocabulary")
    {
        SuperGraph sg;
        sg.nodes = {0, 1, 2};
        sg.node_weights = {1, 1, 1};
        const std::vector<SimplicialComplex> cxs = {clique_complex(sg)};
        CHECK(build_vocabulary(cxs, 1).size() == 0);
    }

    TEST_CASE("K3 reciprocal DFF at t=1")
    {
        const std::vector<SimplicialComplex> cxs = {clique_complex(complete_super_graph(3))};
        const auto vocab = build_vocabulary(cxs, Variant::VertexUp);
        const auto row = row_for(cxs[0], Variant::VertexUp, 1.0, vocab);
        REQUIRE(row.size() == 3);
        const double expected = 1.0 / (4.0 / 3.0 * std::exp(-6.0));
        for (const double x : row)
        {
            CHECK(std::abs(x - expected) <= 1e-9 * expected);
            CHECK(std::abs(x - 302.57) < 0.01);
        }
    }

    TEST_CASE("sole simplex is capped, absent label sets are zero")
    {
        SuperGraph lone;
        lone.nodes = {4};
        lone.node_weights = {3};
        const std::vector<SimplicialComplex> cxs = {clique_complex(lone), clique_complex(edge_between(4, 6))};
        const auto vocab = build_vocabulary(cxs, Variant::VertexUp);
        REQUIRE(vocab.entries == std::vector<LabelSet>{{4}, {6}});
        const auto row = row_for(cxs[0], Variant::VertexUp, 1.0, vocab);
        CHECK(row == std::vector<double>{1.0 / kDffFloor, 0.0});
        CHECK(row[0] == 1e12);
    }

    TEST_CASE("VocabularyMismatch")
    {
        const std::vector<SimplicialComplex> cxs = {clique_complex(edge_between(0, 1))};
        const auto vocab = build_vocabulary(cxs, Variant::VertexUp);
        const auto other = clique_complex(edge_between(0, 5));
        SDFF_CHECK_THROWS_KIND(row_for(other, Variant::VertexUp, 1.0, vocab), ErrorKind::VocabularyMismatch);
    }

    TEST_CASE("sparsity matches simplex counts")
    {
        const auto ds = sdff::testing::synthetic_dataset(10, 3);
        const auto cxs = build_complexes(ds);
        for (const auto v : kAllVariants)
        {
            const auto vocab = build_vocabulary(cxs, v);
            for (const auto& cx : cxs)
            {
                const int p = dimension(v);
                if (cx.count(p) == 0)
                    continue;
                const auto row = row_for(cx, v, 0.01, vocab);
                std::size_t nonzero = 0;
                for (const double x : row)
                {
                    CHECK(x >= 0.0);
                    nonzero += x != 0.0;
                }
                CHECK(nonzero == cx.count(p));
            }
        }
    }

    TEST_CASE("feature names")
    {
        CHECK(feature_name({3}) == "L3");
        CHECK(feature_name({3, 7}) == "L3-L7");
        CHECK(feature_name({1, 4, 9}) == "L1-L4-L9");
        CHECK(parse_feature_name("L1-L4-L9") == LabelSet{1, 4, 9});
        CHECK(parse_feature_name(feature_name({-1, 2})) == LabelSet{-1, 2});
    }

    TEST_CASE("CSV round-trip is exact")
    {
        const auto ds = sdff::testing::synthetic_dataset(6, 9);
        const auto tables = extract_features(ds, {Variant::EdgeBoth}, {1e-3});
        REQUIRE(tables.size() == 1);
        std::ostringstream out;
        write_feature_csv(tables[0], out);
        const std::string text = out.str();
        CHECK(text.rfind("graph_id,class,", 0) == 0);

        std::istringstream in(text);
        const auto back = read_feature_csv(in, tables[0].dataset, tables[0].variant, tables[0].t);
        CHECK(back == tables[0]);

        std::ostringstream again;
        write_feature_csv(back, again);
        CHECK(again.str() == text);
    }

    TEST_CASE("format_double round-trips")
    {
        for (const double x : {0.0, 1.0, 1e12, 302.5713, 1.0 / 3.0, 2.2250738585072014e-308, 1.7976931348623157e308})
            CHECK(std::stod(format_double(x)) == x);
        CHECK(format_double(1e12) == "1e+12");
        CHECK(format_double(0.5) == "0.5");
    }
}

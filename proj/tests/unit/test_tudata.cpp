#include <doctest.h>

#include <fstream>
#include <numeric>

#include "sdff/tudata.hpp"

#include "../support/expect.hpp"
#include "../support/synthetic.hpp"
#include "../support/tempdir.hpp"

using namespace sdff;
using sdff::testing::TempDir;
using sdff::testing::write_text;

namespace {

const std::filesystem::path kFixtures = SDFF_FIXTURE_DIR;

void write_tu(const TempDir& dir, const std::string& name, const std::string& a, const std::string& indicator,
              const std::string& graph_labels, const std::string& node_labels)
{
    write_text(dir / (name + "_A.txt"), a);
    write_text(dir / (name + "_graph_indicator.txt"), indicator);
    write_text(dir / (name + "_graph_labels.txt"), graph_labels);
    write_text(dir / (name + "_node_labels.txt"), node_labels);
}

std::size_t count_lines(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            ++n;
    return n;
}

}   // namespace

TEST_SUITE("tudata")
{
    TEST_CASE("two-graph fixture parses by hand")
    {
        const auto ds = load_dataset(kFixtures / "tiny", "TINY");
        REQUIRE(ds.graphs.size() == 2);

        const auto& path = ds.graphs[0];
        CHECK(path.graph_id == 1);
        CHECK(path.num_vertices == 3);
        CHECK(path.vertex_labels == std::vector<Label>{0, 1, 0});
        CHECK(path.edges == std::vector<Edge>{{0, 1}, {1, 2}});
        CHECK(path.class_label == 1);

        const auto& tri = ds.graphs[1];
        CHECK(tri.num_vertices == 3);
        CHECK(tri.vertex_labels == std::vector<Label>{1, 1, 2});
        CHECK(tri.edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
        CHECK(tri.class_label == -1);

        CHECK(ds.label_universe == std::vector<Label>{0, 1, 2});
        CHECK(ds.class_universe == std::vector<ClassId>{-1, 1});
        CHECK(ds.dropped_self_loops == 0);
        CHECK(ds.name == "TINY");
    }

    TEST_CASE("edgeless graph")
    {
        const auto ds = load_dataset(kFixtures / "edgeless", "EDGELESS");
        REQUIRE(ds.graphs.size() == 1);
        CHECK(ds.graphs[0].num_vertices == 3);
        CHECK(ds.graphs[0].edges.empty());
    }

    TEST_CASE("vertex count matches indicator line count")
    {
        for (const auto& [dir, name] : {std::pair{"tiny", "TINY"}, std::pair{"edgeless", "EDGELESS"}})
        {
            const auto ds = load_dataset(kFixtures / dir, name);
            std::size_t total = 0;
            for (const auto& g : ds.graphs)
                total += g.num_vertices;
            CHECK(total == count_lines(kFixtures / dir / (std::string(name) + "_graph_indicator.txt")));
        }
    }

    TEST_CASE("self-loops dropped and counted, duplicates merged")
    {
        TempDir dir;
        write_tu(dir, "X", "1,1\n1,2\n2,1\n1,2\n2,2\n", "1\n1\n", "0\n", "7\n8\n");
        const auto ds = load_dataset(dir.path(), "X");
        CHECK(ds.dropped_self_loops == 2);
        CHECK(ds.graphs[0].edges == std::vector<Edge>{{0, 1}});
    }

    TEST_CASE("node ids are local per graph")
    {
        TempDir dir;
        write_tu(dir, "X", "3,4\n4,3\n4,5\n", "1\n1\n2\n2\n2\n", "0\n1\n", "0\n0\n1\n2\n3\n");
        const auto ds = load_dataset(dir.path(), "X");
        REQUIRE(ds.graphs.size() == 2);
        CHECK(ds.graphs[0].edges.empty());
        CHECK(ds.graphs[1].edges == std::vector<Edge>{{0, 1}, {1, 2}});
        CHECK(ds.graphs[1].vertex_labels == std::vector<Label>{1, 2, 3});
    }

    TEST_CASE("whitespace and blank-line tolerance")
    {
        TempDir dir;
        write_tu(dir, "X", "  1 ,\t2  \r\n\n2 1\n\n\n", "\t1\n 1 \n\n", "  5\n\n", "0\r\n1\n\n\n");
        const auto ds = load_dataset(dir.path(), "X");
        CHECK(ds.graphs[0].edges == std::vector<Edge>{{0, 1}});
        CHECK(ds.graphs[0].class_label == 5);
    }

    TEST_CASE("errors")
    {
        TempDir dir;
        SUBCASE("missing file")
        {
            SDFF_CHECK_THROWS_KIND(load_dataset(dir.path(), "NOPE"), ErrorKind::MissingFile);
        }
        SUBCASE("non-integer token")
        {
            write_tu(dir, "X", "1, b\n", "1\n1\n", "0\n", "0\n0\n");
            SDFF_CHECK_THROWS_KIND(load_dataset(dir.path(), "X"), ErrorKind::MalformedLine);
        }
        SUBCASE("wrong arity")
        {
            write_tu(dir, "X", "1, 2, 3\n", "1\n1\n", "0\n", "0\n0\n");
            SDFF_CHECK_THROWS_KIND(load_dataset(dir.path(), "X"), ErrorKind::MalformedLine);
        }
        SUBCASE("node id beyond indicator")
        {
            write_tu(dir, "X", "1, 3\n", "1\n1\n", "0\n", "0\n0\n");
            SDFF_CHECK_THROWS_KIND(load_dataset(dir.path(), "X"), ErrorKind::IndexOutOfRange);
        }
        SUBCASE("node label count mismatch")
        {
            write_tu(dir, "X", "1, 2\n", "1\n1\n", "0\n", "0\n");
            SDFF_CHECK_THROWS_KIND(load_dataset(dir.path(), "X"), ErrorKind::MalformedLine);
        }
        SUBCASE("zero graphs")
        {
            write_tu(dir, "X", "", "", "", "");
            SDFF_CHECK_THROWS_KIND(load_dataset(dir.path(), "X"), ErrorKind::EmptyDataset);
        }
    }

    TEST_CASE("write/load round-trip")
    {
        TempDir dir;
        SUBCASE("fixture")
        {
            const auto ds = load_dataset(kFixtures / "tiny", "TINY");
            write_dataset(ds, dir.path());
            CHECK(load_dataset(dir.path(), "TINY") == ds);
        }
        SUBCASE("synthetic")
        {
            const auto ds = sdff::testing::synthetic_dataset(15, 42);
            write_dataset(ds, dir.path());
            const auto back = load_dataset(dir.path(), ds.name);
            CHECK(back == ds);
        }
    }

    TEST_CASE("canonicalize_edges orients, sorts and dedupes")
    {
        LabeledGraph g;
        g.num_vertices = 4;
        g.edges = {{3, 1}, {0, 2}, {1, 3}, {2, 0}, {0, 1}};
        canonicalize_edges(g);
        CHECK(g.edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}});
    }
}

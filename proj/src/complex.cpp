#include "sdff/complex.hpp"

#include <algorithm>
#include <string>

#include "sdff/error.hpp"

namespace sdff {

void SimplicialComplex::check_dim(int p) const
{
    if (p < 0 || p > max_dim_)
    {
        throw Error(ErrorKind::DimensionUnavailable,
                    "dimension " + std::to_string(p) + " not built (max " + std::to_string(max_dim_) + ")");
    }
}

std::size_t SimplicialComplex::count(int p) const
{
    check_dim(p);
    return flat_[static_cast<std::size_t>(p)].size() / static_cast<std::size_t>(p + 1);
}

std::span<const VertexId> SimplicialComplex::simplex(int p, std::size_t i) const
{
    check_dim(p);
    const auto stride = static_cast<std::size_t>(p + 1);
    return std::span<const VertexId>(flat_[static_cast<std::size_t>(p)]).subspan(i * stride, stride);
}

std::span<const VertexId> SimplicialComplex::simplices(int p) const
{
    check_dim(p);
    return flat_[static_cast<std::size_t>(p)];
}

std::optional<std::size_t> SimplicialComplex::find(int p, std::span<const VertexId> vertices) const
{
    check_dim(p);
    const auto stride = static_cast<std::size_t>(p + 1);
    if (vertices.size() != stride)
        return std::nullopt;
    std::size_t lo = 0;
    std::size_t hi = count(p);
    while (lo < hi)
    {
        const std::size_t mid = lo + (hi - lo) / 2;
        auto s = simplex(p, mid);
        if (std::lexicographical_compare(s.begin(), s.end(), vertices.begin(), vertices.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count(p) && std::ranges::equal(simplex(p, lo), vertices))
        return lo;
    return std::nullopt;
}

const SimplexWeights& SimplicialComplex::weights(int p) const
{
    check_dim(p);
    return weights_[static_cast<std::size_t>(p)];
}

std::vector<Label> SimplicialComplex::label_set(int p, std::size_t i) const
{
    std::vector<Label> out;
    for (VertexId v : simplex(p, i))
        out.push_back(labels_[v]);
    return out;
}

SimplicialComplex clique_complex(const SuperGraph& sg, int max_dim)
{
    if (max_dim < 0 || max_dim > SimplicialComplex::kMaxDim)
        throw Error(ErrorKind::InvalidArgument, "max_dim must be 0, 1 or 2");

    SimplicialComplex cx;
    cx.max_dim_ = max_dim;
    cx.labels_ = sg.nodes;

    auto& vertices = cx.flat_[0];
    vertices.resize(sg.num_nodes());
    for (std::size_t v = 0; v < sg.num_nodes(); ++v)
        vertices[v] = static_cast<VertexId>(v);
    cx.weights_[0] = simplex_weights_by_index(sg, vertices, 0);

    if (max_dim >= 1)
    {
        auto& edges = cx.flat_[1];
        edges.reserve(2 * sg.num_edges());
        for (const auto& [a, b] : sg.edges)
        {
            edges.push_back(a);
            edges.push_back(b);
        }
        cx.weights_[1].dimension = 1;
        cx.weights_[1].weights.assign(sg.edge_weights.begin(), sg.edge_weights.end());
    }

    if (max_dim >= 2)
    {
        // Forward adjacency: neighbours with larger index, ascending since
        // sg.edges is lexicographically sorted.
        std::vector<std::vector<VertexId>> above(sg.num_nodes());
        for (const auto& [a, b] : sg.edges)
            above[a].push_back(b);

        auto& triangles = cx.flat_[2];
        std::vector<VertexId> common;
        for (const auto& [u, v] : sg.edges)
        {
            common.clear();
            std::set_intersection(above[u].begin(), above[u].end(), above[v].begin(), above[v].end(),
                                  std::back_inserter(common));
            for (VertexId w : common)
            {
                triangles.push_back(u);
                triangles.push_back(v);
                triangles.push_back(w);
            }
        }
        cx.weights_[2] = simplex_weights_by_index(sg, triangles, 2);
    }
    for (int p = max_dim + 1; p <= SimplicialComplex::kMaxDim; ++p)
        cx.weights_[static_cast<std::size_t>(p)].dimension = p;
    return cx;
}

Eigen::MatrixXd IncidenceMatrix::dense() const
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (const auto& e : entries)
        m(e.row, e.col) = e.sign;
    return m;
}

IncidenceMatrix incidence_matrix(const SimplicialComplex& complex, int p)
{
    if (p < 0 || p + 1 > complex.max_dim())
    {
        throw Error(ErrorKind::DimensionUnavailable,
                    "incidence matrix D_" + std::to_string(p) + " needs dimension " + std::to_string(p + 1));
    }
    IncidenceMatrix d;
    d.p = p;
    d.rows = complex.count(p + 1);
    d.cols = complex.count(p);
    d.entries.reserve(d.rows * static_cast<std::size_t>(p + 2));

    std::vector<VertexId> face(static_cast<std::size_t>(p + 1));
    std::vector<IncidenceEntry> row_entries;
    for (std::size_t r = 0; r < d.rows; ++r)
    {
        auto coface = complex.simplex(p + 1, r);
        row_entries.clear();
        for (std::size_t omit = 0; omit < coface.size(); ++omit)
        {
            std::size_t k = 0;
            for (std::size_t i = 0; i < coface.size(); ++i)
            {
                if (i != omit)
                    face[k++] = coface[i];
            }
            const auto col = complex.find(p, face);
            // closure holds for clique complexes
            row_entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(*col),
                                   static_cast<std::int8_t>(omit % 2 == 0 ? 1 : -1)});
        }
        std::sort(row_entries.begin(), row_entries.end(),
                  [](const IncidenceEntry& x, const IncidenceEntry& y) { return x.col < y.col; });
        d.entries.insert(d.entries.end(), row_entries.begin(), row_entries.end());
    }
    return d;
}

}   // namespace sdff
